//! JSON and human-readable forms of [`RatFun`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use super::monomial::{Monomial, Var, MAX_VARS};
use super::ratfun::RatFun;
use super::zpoly::ZPoly;
use super::ExactError;

fn var_names(n: usize) -> Vec<String> {
    (0..n).map(|k| Var(k).name()).collect()
}

fn coeff_string(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn terms_json(p: &ZPoly, scale: &BigInt, nvars: usize) -> Value {
    Value::Array(
        p.terms()
            .iter()
            .map(|(m, c)| {
                let q = BigRational::new(c.clone(), scale.clone());
                let exps: Vec<i64> = m.exponents()[..nvars].iter().map(|&e| e as i64).collect();
                json!([coeff_string(&q), exps])
            })
            .collect(),
    )
}

/// JSON value `{"vars", "num", "den"}` over at least `min_vars` variables.
/// The denominator is scaled to integer content 1; numerator coefficients are rationals.
pub fn to_json_value_with_vars(f: &RatFun, min_vars: usize) -> Value {
    let nvars = f.width().max(min_vars).max(1);
    let k = f.den().content();
    json!({
        "vars": var_names(nvars),
        "num": terms_json(f.num(), &k, nvars),
        "den": terms_json(f.den(), &k, nvars),
    })
}

pub fn to_json_value(f: &RatFun) -> Value {
    to_json_value_with_vars(f, 1)
}

/// Compact, byte-stable JSON text.
pub fn to_json(f: &RatFun) -> String {
    to_json_value(f).to_string()
}

fn perr(pos: usize, msg: impl Into<String>) -> ExactError {
    ExactError::ParseError { pos, msg: msg.into() }
}

fn parse_coeff(s: &str, pos: usize) -> Result<BigRational, ExactError> {
    let mut parts = s.splitn(2, '/');
    let n: BigInt = parts
        .next()
        .unwrap_or("")
        .trim()
        .parse()
        .map_err(|_| perr(pos, format!("bad coefficient {s:?}")))?;
    let d: BigInt = match parts.next() {
        Some(d) => d.trim().parse().map_err(|_| perr(pos, format!("bad coefficient {s:?}")))?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(perr(pos, "zero coefficient denominator"));
    }
    Ok(BigRational::new(n, d))
}

fn parse_terms(v: &Value, nvars: usize, what: &str) -> Result<(ZPoly, BigInt), ExactError> {
    let arr = v.as_array().ok_or_else(|| perr(0, format!("\"{what}\" must be an array")))?;
    let mut terms = Vec::with_capacity(arr.len());
    for (idx, t) in arr.iter().enumerate() {
        let pair = t.as_array().filter(|p| p.len() == 2).ok_or_else(|| perr(idx, format!("{what}[{idx}] must be [coeff, exponents]")))?;
        let cs = pair[0].as_str().ok_or_else(|| perr(idx, format!("{what}[{idx}] coefficient must be a string")))?;
        let q = parse_coeff(cs, idx)?;
        let ev = pair[1].as_array().ok_or_else(|| perr(idx, format!("{what}[{idx}] exponents must be an array")))?;
        if ev.len() != nvars {
            return Err(perr(idx, format!("{what}[{idx}] has {} exponents, expected {nvars}", ev.len())));
        }
        let mut exps = Vec::with_capacity(nvars);
        for e in ev {
            let e = e.as_i64().filter(|e| e.abs() < i16::MAX as i64).ok_or_else(|| perr(idx, "exponent must be a small integer"))?;
            exps.push(e as i32);
        }
        terms.push((Monomial::from_exponents(&exps), q));
    }
    let mut l = BigInt::one();
    for (_, q) in &terms {
        l = l.lcm(q.denom());
    }
    let scale = BigRational::from_integer(l.clone());
    let ints = terms.into_iter().map(|(m, q)| (m, (q * &scale).to_integer()));
    Ok((ZPoly::from_terms(ints), l))
}

pub fn from_json_value(v: &Value) -> Result<RatFun, ExactError> {
    let obj = v.as_object().ok_or_else(|| perr(0, "expected a JSON object"))?;
    let vars = obj.get("vars").and_then(Value::as_array).ok_or_else(|| perr(0, "missing \"vars\" array"))?;
    if vars.is_empty() || vars.len() > MAX_VARS {
        return Err(perr(0, "\"vars\" must list between 1 and 16 variables"));
    }
    for (k, name) in vars.iter().enumerate() {
        if name.as_str() != Some(Var(k).name().as_str()) {
            return Err(perr(k, format!("variable {k} must be {:?}", Var(k).name())));
        }
    }
    let (pn, ln) = parse_terms(obj.get("num").ok_or_else(|| perr(0, "missing \"num\""))?, vars.len(), "num")?;
    let (pd, ld) = parse_terms(obj.get("den").ok_or_else(|| perr(0, "missing \"den\""))?, vars.len(), "den")?;
    RatFun::new(pn.scale(&ld), pd.scale(&ln))
}

pub fn from_json(text: &str) -> Result<RatFun, ExactError> {
    let v: Value = serde_json::from_str(text).map_err(|e| perr(e.column(), e.to_string()))?;
    from_json_value(&v)
}

impl serde::Serialize for RatFun {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        to_json_value(self).serialize(s)
    }
}

impl<'de> serde::Deserialize<'de> for RatFun {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        from_json_value(&v).map_err(serde::de::Error::custom)
    }
}

// ---------------------------------------------------------------------------
// human-readable form

fn monomial_human(m: &Monomial, squares: bool) -> String {
    let parts: Vec<String> = m
        .vars()
        .map(|(v, e)| {
            let (name, e) = if squares { (v.square_name(), e / 2) } else { (v.name(), e) };
            if e == 1 {
                name
            } else {
                format!("{name}^{e}")
            }
        })
        .collect();
    parts.join("*")
}

fn poly_human(p: &ZPoly, squares: bool) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms().iter().enumerate() {
        let neg = c.is_negative();
        let a = c.abs();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if m.is_one() {
            out.push_str(&a.to_string());
        } else {
            if !a.is_one() {
                out.push_str(&a.to_string());
                out.push('*');
            }
            out.push_str(&monomial_human(m, squares));
        }
    }
    out
}

/// Prints in `v, z_k` notation when every exponent is even, otherwise in `u, w_k`.
pub fn to_human(f: &RatFun) -> String {
    let squares = f.all_exponents_even();
    let n = poly_human(f.num(), squares);
    if f.den().is_one() {
        return n;
    }
    let d = poly_human(f.den(), squares);
    let n = if f.num().len() > 1 { format!("({n})") } else { n };
    let d = if f.den().len() > 1 || !f.den().terms()[0].0.is_one() && !f.den().terms()[0].1.is_one() {
        format!("({d})")
    } else {
        d
    };
    format!("{n}/{d}")
}

/// Parses the human-readable notation: integers, `u`, `v`, `wK`, `zK`,
/// `+ - * /`, `^` with an optionally signed integer exponent, and parentheses.
pub fn parse_human(text: &str) -> Result<RatFun, ExactError> {
    let mut p = Parser { s: text.as_bytes(), pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.s.len() {
        return Err(perr(p.pos, "unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<RatFun, ExactError> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                b'-' => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFun, ExactError> {
        let mut acc = self.unary()?;
        while let Some(c) = self.peek() {
            match c {
                b'*' => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?);
                }
                b'/' => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.unary()?;
                    acc = acc.div(&d).map_err(|_| perr(at, "division by zero"))?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RatFun, ExactError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RatFun, ExactError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let at = self.pos;
            let mut neg = false;
            if self.s.get(self.pos) == Some(&b'-') {
                neg = true;
                self.pos += 1;
            }
            let k = self.integer()?;
            let k: i32 = i32::try_from(k).map_err(|_| perr(at, "exponent too large"))?;
            return base.pow(if neg { -k } else { k }).map_err(|_| perr(at, "negative power of zero"));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt, ExactError> {
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(perr(start, "expected an integer"));
        }
        let txt = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits");
        Ok(txt.parse().expect("digits parse"))
    }

    fn atom(&mut self) -> Result<RatFun, ExactError> {
        let at = match self.peek() {
            None => return Err(perr(self.pos, "unexpected end of input")),
            Some(_) => self.pos,
        };
        let c = self.s[at];
        if c == b'(' {
            self.pos += 1;
            let e = self.expr()?;
            if self.peek() != Some(b')') {
                return Err(perr(self.pos, "expected ')'"));
            }
            self.pos += 1;
            return Ok(e);
        }
        if c.is_ascii_digit() {
            return Ok(RatFun::from_bigint(self.integer()?));
        }
        if c.is_ascii_alphabetic() {
            self.pos += 1;
            let idx_start = self.pos;
            while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let idx: Option<usize> = std::str::from_utf8(&self.s[idx_start..self.pos]).ok().and_then(|t| t.parse().ok());
            return match (c, idx) {
                (b'u', None) => Ok(RatFun::u()),
                (b'v', None) => Ok(RatFun::v()),
                (b'w', Some(k)) if (1..MAX_VARS).contains(&k) => Ok(RatFun::w(k)),
                (b'z', Some(k)) if (1..MAX_VARS).contains(&k) => Ok(RatFun::z(k)),
                _ => Err(perr(at, "unknown variable")),
            };
        }
        Err(perr(at, format!("unexpected character {:?}", c as char)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_and_variable_encodings() {
        assert_eq!(to_json(&RatFun::zero()), r#"{"den":[["1",[0]]],"num":[],"vars":["u"]}"#);
        let z1 = to_json_value(&RatFun::z(1));
        assert_eq!(z1["num"], json!([["1", [0, 2]]]));
        assert_eq!(z1["den"], json!([["1", [0, 0]]]));
    }

    #[test]
    fn json_round_trip_is_byte_identical() {
        let f = parse_human("(1 - v)*z1/(z2 - v*z1)").unwrap();
        let s = to_json(&f);
        let g = from_json(&s).unwrap();
        assert_eq!(f, g);
        assert_eq!(to_json(&g), s);
    }

    #[test]
    fn rational_coefficients_in_numerator() {
        let f = parse_human("z1/(2*z2 + 4)").unwrap();
        let v = to_json_value(&f);
        assert_eq!(v["den"][0][0], "1");
        assert_eq!(v["num"][0][0], "1/2");
        assert_eq!(from_json_value(&v).unwrap(), f);
    }

    #[test]
    fn human_form_uses_squares_when_possible() {
        let f = parse_human("z2 - v*z1").unwrap();
        assert_eq!(to_human(&f), "-v*z1 + z2");
        let g = parse_human("w1^-1 - u*w1").unwrap();
        assert_eq!(to_human(&g), "-u*w1 + w1^-1");
        assert_eq!(parse_human(&to_human(&g)).unwrap(), g);
    }

    #[test]
    fn parse_errors_carry_positions() {
        match parse_human("z1 + q") {
            Err(ExactError::ParseError { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("unexpected {other:?}"),
        }
        assert!(from_json("{\"vars\":[\"w1\"]}").is_err());
    }
}

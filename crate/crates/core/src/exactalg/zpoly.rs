use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::monomial::{Monomial, Var, MAX_VARS};

/// Sparse Laurent polynomial with integer coefficients.
///
/// Terms are kept sorted in descending graded-lex order with no zero
/// coefficients, so structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ZPoly {
    terms: Vec<(Monomial, BigInt)>,
}

impl ZPoly {
    pub fn zero() -> Self {
        ZPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::term(Monomial::ONE, c)
    }

    pub fn term(m: Monomial, c: BigInt) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            ZPoly { terms: vec![(m, c)] }
        }
    }

    pub fn var(v: Var) -> Self {
        Self::term(Monomial::var(v), BigInt::one())
    }

    /// Builds a polynomial from arbitrary (possibly repeated, unsorted) terms.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigInt)>>(iter: I) -> Self {
        let mut acc: HashMap<Monomial, BigInt> = HashMap::new();
        for (m, c) in iter {
            if c.is_zero() {
                continue;
            }
            *acc.entry(m).or_insert_with(BigInt::zero) += c;
        }
        Self::from_map(acc)
    }

    fn from_map(acc: HashMap<Monomial, BigInt>) -> Self {
        let mut terms: Vec<(Monomial, BigInt)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by_key(|t| std::cmp::Reverse(t.0));
        ZPoly { terms }
    }

    /// Trusted constructor: caller guarantees sorted, distinct, nonzero terms.
    fn from_sorted(terms: Vec<(Monomial, BigInt)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        ZPoly { terms }
    }

    pub fn terms(&self) -> &[(Monomial, BigInt)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.as_slice() {
            [] => Some(BigInt::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn leading(&self) -> Option<&(Monomial, BigInt)> {
        self.terms.first()
    }

    pub fn leading_coeff_sign_negative(&self) -> bool {
        self.terms.first().is_some_and(|(_, c)| c.is_negative())
    }

    pub fn width(&self) -> usize {
        self.terms.iter().map(|(m, _)| m.width()).max().unwrap_or(0)
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_polynomial())
    }

    /// Bitmask of variables that occur with nonzero exponent.
    pub fn var_mask(&self) -> u32 {
        let mut mask = 0u32;
        for (m, _) in &self.terms {
            for (v, _) in m.vars() {
                mask |= 1 << v.0;
            }
        }
        mask
    }

    pub fn degree_in(&self, v: Var) -> i32 {
        self.terms.iter().map(|(m, _)| m.exp(v)).max().unwrap_or(0)
    }

    pub fn min_degree_in(&self, v: Var) -> i32 {
        self.terms.iter().map(|(m, _)| m.exp(v)).min().unwrap_or(0)
    }

    pub fn total_degree_range(&self) -> (i32, i32) {
        let mut lo = i32::MAX;
        let mut hi = i32::MIN;
        for (m, _) in &self.terms {
            let d = m.degree();
            lo = lo.min(d);
            hi = hi.max(d);
        }
        (lo, hi)
    }

    /// Componentwise minimum exponent over all terms (the monomial content).
    pub fn min_monomial(&self) -> Monomial {
        let mut it = self.terms.iter();
        match it.next() {
            None => Monomial::ONE,
            Some((first, _)) => it.fold(*first, |acc, (m, _)| acc.meet(m)),
        }
    }

    /// Componentwise maximum exponent over all terms.
    pub fn exponent_ceiling(&self) -> Monomial {
        let mut it = self.terms.iter();
        match it.next() {
            None => Monomial::ONE,
            Some((first, _)) => it.fold(*first, |acc, (m, _)| acc.join(m)),
        }
    }

    pub fn exponent_floor(&self) -> Monomial {
        self.min_monomial()
    }

    /// Positive gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn neg(&self) -> ZPoly {
        ZPoly::from_sorted(self.terms.iter().map(|(m, c)| (*m, -c)).collect())
    }

    pub fn scale(&self, k: &BigInt) -> ZPoly {
        if k.is_zero() {
            return ZPoly::zero();
        }
        ZPoly::from_sorted(self.terms.iter().map(|(m, c)| (*m, c * k)).collect())
    }

    /// Exact division of every coefficient by `k`; panics if not exact.
    pub fn div_scalar_exact(&self, k: &BigInt) -> ZPoly {
        if k.is_one() {
            return self.clone();
        }
        ZPoly::from_sorted(
            self.terms
                .iter()
                .map(|(m, c)| {
                    let (q, r) = c.div_rem(k);
                    assert!(r.is_zero(), "inexact scalar division");
                    (*m, q)
                })
                .collect(),
        )
    }

    pub fn mul_monomial(&self, m: &Monomial) -> ZPoly {
        if m.is_one() {
            return self.clone();
        }
        // multiplication by a monomial preserves the term order
        ZPoly::from_sorted(self.terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect())
    }

    pub fn add(&self, other: &ZPoly) -> ZPoly {
        merge(&self.terms, &other.terms, false)
    }

    pub fn sub(&self, other: &ZPoly) -> ZPoly {
        merge(&self.terms, &other.terms, true)
    }

    pub fn mul(&self, other: &ZPoly) -> ZPoly {
        if self.is_zero() || other.is_zero() {
            return ZPoly::zero();
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_monomial(m).scale(c);
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_monomial(m).scale(c);
        }
        let mut acc: HashMap<Monomial, BigInt> = HashMap::with_capacity(self.len() * other.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let e = acc.entry(ma.mul(mb)).or_insert_with(BigInt::zero);
                *e += ca * cb;
            }
        }
        Self::from_map(acc)
    }

    pub fn pow(&self, k: u32) -> ZPoly {
        let mut out = ZPoly::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                out = out.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        out
    }

    /// `self - c*m*other`, used by division.
    fn sub_scaled_shift(&self, other: &ZPoly, m: &Monomial, c: &BigInt) -> ZPoly {
        let shifted: Vec<(Monomial, BigInt)> = other.terms.iter().map(|(t, d)| (t.mul(m), d * c)).collect();
        merge(&self.terms, &shifted, true)
    }

    /// Exact quotient `self / divisor` in the Laurent ring over Z, or `None`
    /// when the division leaves a remainder.
    pub fn div_exact(&self, divisor: &ZPoly) -> Option<ZPoly> {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(ZPoly::zero());
        }
        if divisor.terms.len() == 1 {
            let (m, c) = &divisor.terms[0];
            let inv = m.inv();
            let mut out = Vec::with_capacity(self.terms.len());
            for (t, d) in &self.terms {
                let (q, r) = d.div_rem(c);
                if !r.is_zero() {
                    return None;
                }
                out.push((t.mul(&inv), q));
            }
            return Some(ZPoly::from_sorted(out));
        }
        // per-variable degree ranges add under multiplication, which boxes in
        // every admissible quotient exponent and guarantees termination
        let (lo_p, hi_p) = (self.exponent_floor(), self.exponent_ceiling());
        let (lo_d, hi_d) = (divisor.exponent_floor(), divisor.exponent_ceiling());
        let lo_q = lo_p.div(&lo_d);
        let hi_q = hi_p.div(&hi_d);
        if !hi_q.divisible_by(&lo_q) {
            return None;
        }
        let (lm, lc) = divisor.terms[0].clone();
        let mut rem = self.clone();
        let mut quot: Vec<(Monomial, BigInt)> = Vec::new();
        while let Some((rm, rc)) = rem.terms.first().cloned() {
            let (q, r) = rc.div_rem(&lc);
            if !r.is_zero() {
                return None;
            }
            let qm = rm.div(&lm);
            if !qm.divisible_by(&lo_q) || !hi_q.divisible_by(&qm) {
                return None;
            }
            rem = rem.sub_scaled_shift(divisor, &qm, &q);
            quot.push((qm, q));
        }
        Some(ZPoly::from_sorted(quot))
    }

    pub fn map_monomials<F: Fn(&Monomial) -> Monomial>(&self, f: F) -> ZPoly {
        ZPoly::from_terms(self.terms.iter().map(|(m, c)| (f(m), c.clone())))
    }

    /// Exact value at a rational point given per variable (`point[k]` for `Var(k)`).
    /// Variables absent from the slice must not occur. Returns `None` if a
    /// negative power of a zero value is required.
    pub fn evaluate(&self, point: &[BigRational]) -> Option<BigRational> {
        let mut total = BigRational::zero();
        let mut cache: HashMap<(usize, i32), BigRational> = HashMap::new();
        for (m, c) in &self.terms {
            let mut val = BigRational::from_integer(c.clone());
            for (v, e) in m.vars() {
                let x = point.get(v.0)?;
                let p = match cache.get(&(v.0, e)) {
                    Some(p) => p.clone(),
                    None => {
                        let p = rat_pow(x, e)?;
                        cache.insert((v.0, e), p.clone());
                        p
                    }
                };
                val *= p;
            }
            total += val;
        }
        Some(total)
    }

    /// Splits into coefficients of powers of `v`: `self = sum_k coeffs[k] * v^(k + lo)`.
    pub fn to_univariate(&self, v: Var) -> (i32, Vec<ZPoly>) {
        if self.is_zero() {
            return (0, Vec::new());
        }
        let lo = self.min_degree_in(v);
        let hi = self.degree_in(v);
        let mut buckets: Vec<Vec<(Monomial, BigInt)>> = vec![Vec::new(); (hi - lo + 1) as usize];
        for (m, c) in &self.terms {
            let k = m.exp(v);
            let mut mm = *m;
            mm.set_exp(v, 0);
            buckets[(k - lo) as usize].push((mm, c.clone()));
        }
        let coeffs = buckets
            .into_iter()
            .map(|mut ts| {
                // removing one variable can reorder terms
                ts.sort_unstable_by_key(|t| std::cmp::Reverse(t.0));
                ZPoly::from_sorted(ts)
            })
            .collect();
        (lo, coeffs)
    }

    pub fn from_univariate(v: Var, lo: i32, coeffs: &[ZPoly]) -> ZPoly {
        let mut terms = Vec::new();
        for (k, c) in coeffs.iter().enumerate() {
            let shift = Monomial::var_pow(v, lo + k as i32);
            for (m, a) in &c.terms {
                terms.push((m.mul(&shift), a.clone()));
            }
        }
        ZPoly::from_terms(terms)
    }

    /// Value modulo the prime `p` at `point` (all exponents must be nonnegative).
    pub fn eval_mod(&self, point: &[u64; MAX_VARS], p: u64) -> u64 {
        let mut total: u64 = 0;
        for (m, c) in &self.terms {
            let mut val = bigint_mod(c, p);
            for (v, e) in m.vars() {
                debug_assert!(e >= 0);
                val = mulmod(val, powmod(point[v.0], e as u64, p), p);
            }
            total = (total + val) % p;
        }
        total
    }
}

fn merge(a: &[(Monomial, BigInt)], b: &[(Monomial, BigInt)], negate_b: bool) -> ZPoly {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Less => {
                let c = if negate_b { -&b[j].1 } else { b[j].1.clone() };
                out.push((b[j].0, c));
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let c = if negate_b { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    for (m, c) in &b[j..] {
        out.push((*m, if negate_b { -c } else { c.clone() }));
    }
    ZPoly::from_sorted(out)
}

pub(crate) fn rat_pow(x: &BigRational, e: i32) -> Option<BigRational> {
    if e < 0 && x.is_zero() {
        return None;
    }
    let base = if e < 0 { x.recip() } else { x.clone() };
    Some(num_traits::pow(base, e.unsigned_abs() as usize))
}

pub(crate) fn bigint_mod(c: &BigInt, p: u64) -> u64 {
    let r = c.mod_floor(&BigInt::from(p));
    u64::try_from(r).expect("residue fits in u64")
}

#[inline]
pub(crate) fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    r
}

impl fmt::Debug for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("{c}*{m:?}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(k: usize) -> ZPoly {
        ZPoly::var(Var::w(k))
    }

    #[test]
    fn exact_division_recovers_factor() {
        let a = w(1).sub(&w(2));
        let b = w(1).add(&w(2)).add(&ZPoly::var(Var::U));
        let p = a.mul(&b);
        assert_eq!(p.div_exact(&a), Some(b.clone()));
        assert_eq!(p.div_exact(&b), Some(a));
        assert_eq!(b.div_exact(&w(1).mul(&w(1)).add(&ZPoly::one())), None);
    }

    #[test]
    fn laurent_division_is_bounded() {
        // (w1 - 1) does not divide 1 in the Laurent ring; must terminate with None.
        let d = w(1).sub(&ZPoly::one());
        assert_eq!(ZPoly::one().div_exact(&d), None);
        let inv = ZPoly::term(Monomial::var_pow(Var::w(1), -1), BigInt::one());
        let p = d.mul(&inv);
        assert_eq!(p.div_exact(&d), Some(inv));
    }

    #[test]
    fn univariate_round_trip() {
        let p = w(1).mul(&w(2)).add(&w(2).pow(3)).sub(&ZPoly::constant(BigInt::from(7)));
        let (lo, cs) = p.to_univariate(Var::w(2));
        assert_eq!(ZPoly::from_univariate(Var::w(2), lo, &cs), p);
    }
}

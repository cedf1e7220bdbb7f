use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::gcd::gcd;
use super::monomial::{Monomial, Var, MAX_VARS};
use super::zpoly::{rat_pow, ZPoly};
use super::ExactError;

/// Exact element of Q(u, w1, ..., w15).
///
/// Canonical form: `den` is a polynomial with no monomial factor and a
/// positive leading coefficient; `num` is a Laurent polynomial; the two are
/// coprime over Z (polynomially and in their integer contents). Derived
/// equality is therefore equality of functions.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: ZPoly,
    den: ZPoly,
}

/// Assignment of rational values to variables.
pub type Point = BTreeMap<Var, BigRational>;

impl RatFun {
    pub fn zero() -> Self {
        RatFun { num: ZPoly::zero(), den: ZPoly::one() }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(k: i64) -> Self {
        Self::from_poly(ZPoly::constant(BigInt::from(k)))
    }

    pub fn from_bigint(k: BigInt) -> Self {
        Self::from_poly(ZPoly::constant(k))
    }

    pub fn from_rational(q: &BigRational) -> Self {
        // BigRational is already reduced with a positive denominator
        RatFun { num: ZPoly::constant(q.numer().clone()), den: ZPoly::constant(q.denom().clone()) }
    }

    /// Laurent polynomial viewed as a rational function.
    pub fn from_poly(p: ZPoly) -> Self {
        RatFun { num: p, den: ZPoly::one() }
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::from_poly(ZPoly::term(m, BigInt::one()))
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(Monomial::var(v))
    }

    /// `u = sqrt(v)`.
    pub fn u() -> Self {
        Self::var(Var::U)
    }

    /// `v = u^2`.
    pub fn v() -> Self {
        Self::monomial(Monomial::var_pow(Var::U, 2))
    }

    /// `w_k = sqrt(z_k)`.
    pub fn w(k: usize) -> Self {
        Self::var(Var::w(k))
    }

    /// `z_k = w_k^2`.
    pub fn z(k: usize) -> Self {
        Self::monomial(Monomial::var_pow(Var::w(k), 2))
    }

    /// Canonical representative of `num / den`.
    pub fn new(num: ZPoly, den: ZPoly) -> Result<Self, ExactError> {
        if den.is_zero() {
            return Err(ExactError::ZeroDenominator);
        }
        Ok(Self::canonicalize(num, den))
    }

    fn canonicalize(num: ZPoly, den: ZPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let md = den.min_monomial();
        let den = den.mul_monomial(&md.inv());
        let num = num.mul_monomial(&md.inv());
        let g = gcd_with_laurent(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        };
        Self::fix_units(num, den)
    }

    /// Makes the denominator's leading coefficient positive and removes a
    /// common integer factor. Assumes polynomial coprimality already holds.
    fn fix_units(mut num: ZPoly, mut den: ZPoly) -> Self {
        if den.leading_coeff_sign_negative() {
            num = num.neg();
            den = den.neg();
        }
        let k = num.content().gcd(&den.content());
        if !k.is_one() && !k.is_zero() {
            num = num.div_scalar_exact(&k);
            den = den.div_scalar_exact(&k);
        }
        RatFun { num, den }
    }

    pub fn num(&self) -> &ZPoly {
        &self.num
    }

    pub fn den(&self) -> &ZPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Constant value if this function has no variables.
    pub fn as_rational(&self) -> Option<BigRational> {
        let n = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        Some(BigRational::new(n, d))
    }

    /// Number of leading variables referenced (`u` counts as one).
    pub fn width(&self) -> usize {
        self.num.width().max(self.den.width())
    }

    pub fn neg(&self) -> RatFun {
        RatFun { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn add(&self, other: &RatFun) -> RatFun {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && other.den.is_one() {
            return Self::from_poly(self.num.add(&other.num));
        }
        if self.den == other.den {
            let num = self.num.add(&other.num);
            if num.is_zero() {
                return Self::zero();
            }
            return Self::canonicalize(num, self.den.clone());
        }
        let g = gcd(&self.den, &other.den);
        if g.is_one() {
            let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
            if num.is_zero() {
                return Self::zero();
            }
            return Self::fix_units(num, self.den.mul(&other.den));
        }
        let b1 = self.den.div_exact(&g).expect("gcd divides");
        let d1 = other.den.div_exact(&g).expect("gcd divides");
        let num = self.num.mul(&d1).add(&other.num.mul(&b1));
        if num.is_zero() {
            return Self::zero();
        }
        let h = gcd_with_laurent(&num, &g);
        let (num, g) = if h.is_one() {
            (num, g)
        } else {
            (num.div_exact(&h).expect("gcd divides"), g.div_exact(&h).expect("gcd divides"))
        };
        Self::fix_units(num, b1.mul(&d1).mul(&g))
    }

    pub fn sub(&self, other: &RatFun) -> RatFun {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RatFun) -> RatFun {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return Self::from_poly(self.num.mul(&other.num));
        }
        let g1 = gcd_with_laurent(&self.num, &other.den);
        let g2 = gcd_with_laurent(&other.num, &self.den);
        let a = self.num.div_exact(&g1).expect("gcd divides");
        let d = other.den.div_exact(&g1).expect("gcd divides");
        let c = other.num.div_exact(&g2).expect("gcd divides");
        let b = self.den.div_exact(&g2).expect("gcd divides");
        Self::fix_units(a.mul(&c), b.mul(&d))
    }

    pub fn inv(&self) -> Result<RatFun, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        // num = m * p with p monomial-free; 1/(m p/d) = m^-1 d / p
        let m = self.num.min_monomial();
        let p = self.num.mul_monomial(&m.inv());
        Ok(Self::fix_units(self.den.mul_monomial(&m.inv()), p))
    }

    pub fn div(&self, other: &RatFun) -> Result<RatFun, ExactError> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, k: i32) -> Result<RatFun, ExactError> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let e = k.unsigned_abs();
        // powers of coprime parts stay coprime
        Ok(RatFun { num: base.num.pow(e), den: base.den.pow(e) }.normalized_after_pow())
    }

    fn normalized_after_pow(self) -> RatFun {
        Self::fix_units(self.num, self.den)
    }

    /// Exact value at a rational point.
    pub fn evaluate_at(&self, point: &Point) -> Result<BigRational, ExactError> {
        let dense = dense_point(point, self.width())?;
        let d = self.den.evaluate(&dense).ok_or(ExactError::PoleAtPoint)?;
        if d.is_zero() {
            return Err(ExactError::PoleAtPoint);
        }
        let n = self.num.evaluate(&dense).ok_or(ExactError::PoleAtPoint)?;
        Ok(n / d)
    }

    /// Substitutes rational values for some variables, keeping the others symbolic.
    pub fn specialize(&self, values: &Point) -> Result<RatFun, ExactError> {
        let n = specialize_poly(&self.num, values)?;
        let d = specialize_poly(&self.den, values)?;
        // n = (pn / kn), d = (pd / kd) with integer polys pn, pd
        let (pn, kn) = n;
        let (pd, kd) = d;
        if pd.is_zero() {
            return Err(ExactError::PoleAtPoint);
        }
        Self::new(pn.scale(&kd), pd.scale(&kn))
    }

    /// Applies a monomial substitution (e.g. variable permutation or inversion).
    pub fn map_monomials<F: Fn(&Monomial) -> Monomial>(&self, f: F) -> RatFun {
        Self::canonicalize(self.num.map_monomials(&f), self.den.map_monomials(&f))
    }

    /// True when every exponent (numerator and denominator) is even, so the
    /// function is expressible in `v` and `z_k` alone.
    pub fn all_exponents_even(&self) -> bool {
        self.num.terms().iter().chain(self.den.terms()).all(|(m, _)| m.all_even())
    }
}

/// gcd of a Laurent polynomial and a polynomial without monomial factor.
fn gcd_with_laurent(laurent: &ZPoly, poly: &ZPoly) -> ZPoly {
    if poly.is_one() {
        return ZPoly::one();
    }
    let m = laurent.min_monomial();
    let shifted = laurent.mul_monomial(&m.inv());
    let g = gcd(&shifted, poly);
    // poly has no monomial factor, so neither does g
    g
}

fn dense_point(point: &Point, width: usize) -> Result<Vec<BigRational>, ExactError> {
    let mut dense = Vec::with_capacity(width);
    for k in 0..width {
        match point.get(&Var(k)) {
            Some(q) => dense.push(q.clone()),
            None => return Err(ExactError::MissingVariable(Var(k).name())),
        }
    }
    Ok(dense)
}

/// Substitutes values into a ZPoly; returns an integer polynomial and the
/// positive integer it must be divided by.
fn specialize_poly(p: &ZPoly, values: &Point) -> Result<(ZPoly, BigInt), ExactError> {
    let mut terms: Vec<(Monomial, BigRational)> = Vec::with_capacity(p.len());
    for (m, c) in p.terms() {
        let mut coeff = BigRational::from_integer(c.clone());
        let mut rest = *m;
        for (v, e) in m.vars() {
            if let Some(x) = values.get(&v) {
                coeff *= rat_pow(x, e).ok_or(ExactError::PoleAtPoint)?;
                rest.set_exp(v, 0);
            }
        }
        terms.push((rest, coeff));
    }
    let mut l = BigInt::one();
    for (_, q) in &terms {
        l = l.lcm(q.denom());
    }
    let ints = terms.into_iter().map(|(m, q)| (m, (q * BigRational::from_integer(l.clone())).to_integer()));
    Ok((ZPoly::from_terms(ints), l))
}

/// How two rational functions are compared.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[derive(Default)]
pub enum EqualityMode {
    /// Canonical-form comparison; the ground truth.
    #[default]
    Canonical,
    /// Evaluation at `k` random points with coordinates in `[2, 2^16]`.
    Probabilistic { k: usize, seed: u64 },
}


pub const DEFAULT_PROBABILISTIC_POINTS: usize = 3;

/// Compares `a` and `b` under the given mode.
pub fn equal(a: &RatFun, b: &RatFun, mode: EqualityMode) -> bool {
    match mode {
        EqualityMode::Canonical => a == b,
        EqualityMode::Probabilistic { k, seed } => probabilistic_equal(a, b, k, seed),
    }
}

fn probabilistic_equal(a: &RatFun, b: &RatFun, k: usize, seed: u64) -> bool {
    let width = a.width().max(b.width()).max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tested = 0;
    let mut attempts = 0;
    while tested < k {
        attempts += 1;
        if attempts > 64 * k.max(1) {
            // poles everywhere we looked; fall back to the exact answer
            return a == b;
        }
        let mut point = Point::new();
        for v in 0..width.min(MAX_VARS) {
            let x: i64 = rng.gen_range(2..=1 << 16);
            point.insert(Var(v), BigRational::from_integer(BigInt::from(x)));
        }
        match (a.evaluate_at(&point), b.evaluate_at(&point)) {
            (Ok(x), Ok(y)) => {
                if x != y {
                    return false;
                }
                tested += 1;
            }
            _ => continue,
        }
    }
    true
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::serial::to_human(self))
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::serial::to_human(self))
    }
}

impl Default for RatFun {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for RatFun {
    fn from(k: i64) -> Self {
        Self::from_int(k)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&RatFun> for &RatFun {
            type Output = RatFun;
            fn $m(self, rhs: &RatFun) -> RatFun {
                RatFun::$m(self, rhs)
            }
        }
        impl $tr<RatFun> for RatFun {
            type Output = RatFun;
            fn $m(self, rhs: RatFun) -> RatFun {
                RatFun::$m(&self, &rhs)
            }
        }
        impl $tr<&RatFun> for RatFun {
            type Output = RatFun;
            fn $m(self, rhs: &RatFun) -> RatFun {
                RatFun::$m(&self, rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun::neg(self)
    }
}

impl Neg for RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun::neg(&self)
    }
}

impl std::iter::Sum for RatFun {
    fn sum<I: Iterator<Item = RatFun>>(iter: I) -> RatFun {
        iter.fold(RatFun::zero(), |acc, x| acc.add(&x))
    }
}

impl std::iter::Product for RatFun {
    fn product<I: Iterator<Item = RatFun>>(iter: I) -> RatFun {
        iter.fold(RatFun::one(), |acc, x| acc.mul(&x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> RatFun {
        RatFun::from_int(n)
    }

    #[test]
    fn self_ratio_is_one() {
        let f = RatFun::z(2) - RatFun::v() * RatFun::z(1);
        assert!(f.div(&f).unwrap().is_one());
    }

    #[test]
    fn difference_of_squares_reduces() {
        let num = RatFun::z(1).pow(2).unwrap() - RatFun::z(2).pow(2).unwrap();
        let den = RatFun::z(1) - RatFun::z(2);
        assert_eq!(num.div(&den).unwrap(), RatFun::z(1) + RatFun::z(2));
    }

    #[test]
    fn reduced_weight_is_unchanged() {
        // (1-v) z / (z' - v z) with z = z1, z' = z2
        let n = (r(1) - RatFun::v()) * RatFun::z(1);
        let d = RatFun::z(2) - RatFun::v() * RatFun::z(1);
        let f = n.div(&d).unwrap();
        // canonical sign puts the positive leading coefficient in the denominator
        assert_eq!(f.num(), &n.num().neg());
        assert_eq!(f.den(), &d.num().neg());
        assert!(f.den().is_polynomial() && f.den().len() == 2);
    }

    #[test]
    fn u_squared_is_v() {
        assert_eq!(RatFun::u() * RatFun::u(), RatFun::v());
    }

    #[test]
    fn laurent_monomials_live_in_numerator() {
        let f = RatFun::one().div(&RatFun::w(1)).unwrap();
        assert!(f.den().is_one());
        assert_eq!(f * RatFun::w(1), RatFun::one());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(r(1).div(&RatFun::zero()), Err(ExactError::DivisionByZero));
        assert_eq!(RatFun::new(ZPoly::one(), ZPoly::zero()), Err(ExactError::ZeroDenominator));
    }

    #[test]
    fn integer_content_is_canonical() {
        let a = RatFun::new(ZPoly::constant(BigInt::from(6)), ZPoly::constant(BigInt::from(-4))).unwrap();
        assert_eq!(a, RatFun::from_rational(&BigRational::new(BigInt::from(-3), BigInt::from(2))));
    }

    #[test]
    fn evaluation_and_pole() {
        let mut p = Point::new();
        p.insert(Var::U, BigRational::from_integer(1.into()));
        p.insert(Var::w(1), BigRational::from_integer(1.into()));
        p.insert(Var::w(2), BigRational::from_integer(2.into()));
        let f = RatFun::z(2) - RatFun::v() * RatFun::z(1);
        assert_eq!(f.evaluate_at(&p).unwrap(), BigRational::from_integer(3.into()));
        let g = r(1).div(&(RatFun::z(1) - RatFun::v())).unwrap();
        assert_eq!(g.evaluate_at(&p), Err(ExactError::PoleAtPoint));
    }

    #[test]
    fn specialize_keeps_u_symbolic() {
        let f = (RatFun::z(1) - RatFun::z(2)).div(&(RatFun::z(2) - RatFun::v() * RatFun::z(1))).unwrap();
        let mut vals = Point::new();
        vals.insert(Var::w(1), BigRational::from_integer(2.into()));
        vals.insert(Var::w(2), BigRational::from_integer(1.into()));
        let g = f.specialize(&vals).unwrap();
        let expect = r(3).div(&(r(1) - r(4) * RatFun::v())).unwrap();
        assert_eq!(g, expect);
    }

    #[test]
    fn probabilistic_mode_agrees_with_canonical() {
        let a = (RatFun::z(1) + RatFun::u()).pow(2).unwrap();
        let b = RatFun::z(1).pow(2).unwrap() + r(2) * RatFun::z(1) * RatFun::u() + RatFun::v();
        let mode = EqualityMode::Probabilistic { k: 3, seed: 7 };
        assert!(equal(&a, &b, mode));
        assert!(!equal(&a, &(b + r(1)), mode));
    }
}

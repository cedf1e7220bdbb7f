//! Multivariate polynomial gcd over Z.
//!
//! The general path is a recursive primitive pseudo-remainder sequence. Before
//! running it, a modular image test certifies the common case of coprime
//! inputs: if the univariate image gcd in every shared variable has degree 0
//! (with leading coefficients surviving the evaluation), the true gcd is an
//! integer.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::monomial::{Monomial, Var, MAX_VARS};
use super::zpoly::{bigint_mod, mulmod, powmod, ZPoly};

const PRIME: u64 = 2_305_843_009_213_693_951; // 2^61 - 1

/// Greatest common divisor of two polynomials with nonnegative exponents,
/// normalized to a positive leading coefficient. `gcd(0, 0) = 0`.
pub fn gcd(a: &ZPoly, b: &ZPoly) -> ZPoly {
    debug_assert!(a.is_polynomial() && b.is_polynomial());
    if a.is_zero() {
        return normalize_sign(b.clone());
    }
    if b.is_zero() {
        return normalize_sign(a.clone());
    }
    let ma = a.min_monomial();
    let mb = b.min_monomial();
    let mono = ma.meet(&mb);
    let a1 = a.mul_monomial(&ma.inv());
    let b1 = b.mul_monomial(&mb.inv());
    let g = gcd_no_monomial(&a1, &b1);
    g.mul_monomial(&mono)
}

/// Gcd of a list, stopping early once it reaches a unit.
pub fn gcd_many<'a, I: IntoIterator<Item = &'a ZPoly>>(items: I) -> ZPoly {
    let mut g = ZPoly::zero();
    for p in items {
        g = gcd(&g, p);
        if g.is_one() {
            break;
        }
    }
    g
}

fn normalize_sign(p: ZPoly) -> ZPoly {
    if p.leading_coeff_sign_negative() {
        p.neg()
    } else {
        p
    }
}

fn gcd_no_monomial(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let ca = a.content();
    let cb = b.content();
    let c = ca.gcd(&cb);
    if let (Some(_), _) | (_, Some(_)) = (a.as_constant(), b.as_constant()) {
        return ZPoly::constant(c);
    }
    if a == b || a.neg() == *b {
        return normalize_sign(a.div_scalar_exact(&ca)).scale(&c);
    }
    let pa = a.div_scalar_exact(&ca);
    let pb = b.div_scalar_exact(&cb);
    if coprime_certificate(&pa, &pb) {
        return ZPoly::constant(c);
    }
    // cheap divisibility shortcut: the smaller one divides the larger
    let (small, large) = if pa.len() <= pb.len() { (&pa, &pb) } else { (&pb, &pa) };
    if large.div_exact(small).is_some() {
        return normalize_sign(small.clone()).scale(&c);
    }
    normalize_sign(gcd_primitive(&pa, &pb)).scale(&c)
}

/// Gcd of two polynomials with integer content 1. Result has content 1.
fn gcd_primitive(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.as_constant().is_some() || b.as_constant().is_some() {
        return ZPoly::one();
    }
    let mask_a = a.var_mask();
    let mask_b = b.var_mask();
    let top = 31 - (mask_a | mask_b).leading_zeros() as usize;
    let x = Var(top);
    let in_a = mask_a & (1 << top) != 0;
    let in_b = mask_b & (1 << top) != 0;
    if !in_a {
        return gcd_primitive_general(a, &content_in(b, x));
    }
    if !in_b {
        return gcd_primitive_general(&content_in(a, x), b);
    }
    let ca = content_in(a, x);
    let cb = content_in(b, x);
    let c = gcd_primitive_general(&ca, &cb);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let g = prs(&pa, &pb, x);
    g.mul(&c)
}

/// Full entry used on sub-problems: strips integer and monomial content again.
fn gcd_primitive_general(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let g = gcd(a, b);
    let c = g.content();
    if c.is_zero() {
        g
    } else {
        g.div_scalar_exact(&c)
    }
}

/// Content of `p` viewed as a univariate polynomial in `x`, sign-normalized.
pub fn content_in(p: &ZPoly, x: Var) -> ZPoly {
    let (_, coeffs) = p.to_univariate(x);
    let mut nonzero: Vec<&ZPoly> = coeffs.iter().filter(|c| !c.is_zero()).collect();
    // short coefficients first: the gcd tends to collapse quickly
    nonzero.sort_by_key(|c| c.len());
    let mut g = ZPoly::zero();
    for c in nonzero {
        g = gcd(&g, c);
        if g.is_one() {
            break;
        }
    }
    normalize_sign(g)
}

fn primitive_part_in(p: &ZPoly, x: Var) -> ZPoly {
    if p.is_zero() {
        return p.clone();
    }
    let c = content_in(p, x);
    p.div_exact(&c).expect("content divides")
}

/// Primitive PRS gcd of two polynomials primitive in `x`.
fn prs(a: &ZPoly, b: &ZPoly, x: Var) -> ZPoly {
    let (mut f, mut g) = if a.degree_in(x) >= b.degree_in(x) {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    };
    while !g.is_zero() {
        if g.degree_in(x) == 0 {
            return ZPoly::one();
        }
        let r = pseudo_rem(&f, &g, x);
        f = g;
        g = primitive_part_in(&r, x);
    }
    primitive_part_in(&f, x)
}

fn lead_in(p: &ZPoly, x: Var) -> (i32, ZPoly) {
    let d = p.degree_in(x);
    let terms = p
        .terms()
        .iter()
        .filter(|(m, _)| m.exp(x) == d)
        .map(|(m, c)| {
            let mut mm = *m;
            mm.set_exp(x, 0);
            (mm, c.clone())
        });
    (d, ZPoly::from_terms(terms))
}

fn pseudo_rem(f: &ZPoly, g: &ZPoly, x: Var) -> ZPoly {
    let (dg, lg) = lead_in(g, x);
    let mut r = f.clone();
    loop {
        if r.is_zero() {
            return r;
        }
        let (dr, lr) = lead_in(&r, x);
        if dr < dg {
            return r;
        }
        let shift = Monomial::var_pow(x, dr - dg);
        r = r.mul(&lg).sub(&g.mul(&lr).mul_monomial(&shift));
    }
}

/// Sound certificate that `gcd(a, b)` is an integer (returns false when unsure).
fn coprime_certificate(a: &ZPoly, b: &ZPoly) -> bool {
    let shared = a.var_mask() & b.var_mask();
    if shared == 0 {
        // gcd divides a and b, so it can only involve variables of both;
        // with no shared variable it is free of every variable.
        return true;
    }
    let mut point = [0u64; MAX_VARS];
    let mut seed: u64 = 0x9E37_79B9_7F4A_7C15;
    for slot in point.iter_mut() {
        seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        *slot = (seed >> 3) % (PRIME - 3) + 2;
    }
    for k in 0..MAX_VARS {
        if shared & (1 << k) == 0 {
            continue;
        }
        let x = Var(k);
        let ia = univariate_image(a, x, &point);
        let ib = univariate_image(b, x, &point);
        // leading coefficients must survive, otherwise the image degree is unreliable
        if ia.len() as i32 - 1 != a.degree_in(x) || ib.len() as i32 - 1 != b.degree_in(x) {
            return false;
        }
        if uni_gcd_degree(ia, ib) > 0 {
            return false;
        }
    }
    // gcd is free of every shared variable and cannot contain unshared ones
    true
}

fn univariate_image(p: &ZPoly, x: Var, point: &[u64; MAX_VARS]) -> Vec<u64> {
    let d = p.degree_in(x).max(0) as usize;
    let mut out = vec![0u64; d + 1];
    for (m, c) in p.terms() {
        let mut val = bigint_mod(c, PRIME);
        for (v, e) in m.vars() {
            if v != x {
                val = mulmod(val, powmod(point[v.0], e as u64, PRIME), PRIME);
            }
        }
        let k = m.exp(x) as usize;
        out[k] = (out[k] + val) % PRIME;
    }
    while out.len() > 1 && *out.last().unwrap() == 0 {
        out.pop();
    }
    out
}

fn uni_gcd_degree(mut a: Vec<u64>, mut b: Vec<u64>) -> usize {
    trim(&mut a);
    trim(&mut b);
    while !(b.len() == 1 && b[0] == 0) && !b.is_empty() {
        let r = uni_rem(&a, &b);
        a = b;
        b = r;
    }
    a.len().saturating_sub(1)
}

fn trim(a: &mut Vec<u64>) {
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
}

fn uni_rem(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let inv = powmod(b[db], PRIME - 2, PRIME);
    while r.len() > db && !(r.len() == 1 && r[0] == 0) {
        let dr = r.len() - 1;
        let q = mulmod(r[dr], inv, PRIME);
        for i in 0..=db {
            let sub = mulmod(q, b[i], PRIME);
            r[dr - db + i] = (r[dr - db + i] + PRIME - sub) % PRIME;
        }
        r.pop();
        trim(&mut r);
        if r.len() == 1 && r[0] == 0 {
            break;
        }
    }
    if r.is_empty() {
        r.push(0);
    }
    r
}

/// Integer gcd helper exposed for rational normalization.
pub fn int_gcd(a: &BigInt, b: &BigInt) -> BigInt {
    a.abs().gcd(&b.abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(k: usize) -> ZPoly {
        ZPoly::var(Var::w(k))
    }
    fn u() -> ZPoly {
        ZPoly::var(Var::U)
    }
    fn c(k: i64) -> ZPoly {
        ZPoly::constant(BigInt::from(k))
    }

    #[test]
    fn common_factor_is_found() {
        let f = w(2).mul(&w(2)).sub(&u().mul(&u()).mul(&w(1)).mul(&w(1)));
        let g1 = w(1).add(&w(2)).add(&c(3));
        let g2 = w(1).mul(&u()).sub(&c(2));
        let a = f.mul(&g1).scale(&BigInt::from(6));
        let b = f.mul(&g2).scale(&BigInt::from(4));
        assert_eq!(gcd(&a, &b), normalize_sign(f.scale(&BigInt::from(2))));
    }

    #[test]
    fn coprime_gives_integer() {
        let a = w(1).sub(&u().mul(&u()).mul(&w(2)));
        let b = w(2).sub(&u().mul(&u()).mul(&w(1)));
        assert_eq!(gcd(&a, &b), ZPoly::one());
        assert_eq!(gcd(&a.scale(&BigInt::from(4)), &b.scale(&BigInt::from(6))), c(2));
    }

    #[test]
    fn monomial_part_is_kept() {
        let a = w(1).mul(&w(1)).mul(&w(2));
        let b = w(1).mul(&w(2)).mul(&w(2)).add(&w(1));
        assert_eq!(gcd(&a, &b), w(1));
    }

    #[test]
    fn difference_of_squares() {
        let a = w(1).pow(2).sub(&w(2).pow(2));
        // w2 leads in grlex, so the normalized gcd is w2 - w1
        let b = w(1).sub(&w(2));
        let b2 = w(2).sub(&w(1));
        assert_eq!(gcd(&a, &b), b2);
        assert_eq!(gcd(&a, &b2), b2);
    }

    #[test]
    fn content_in_keeps_integer_content() {
        let p = u().pow(4).add(&u().pow(2)).sub(&c(2));
        assert_eq!(content_in(&p, Var::U), c(1));
        assert_eq!(content_in(&p.scale(&BigInt::from(3)), Var::U), c(3));
    }

    #[test]
    fn nested_gcd_with_shared_content() {
        let x = w(1).pow(2).add(&w(2));
        let y = u().add(&w(1));
        let a = x.mul(&y).mul(&w(1).add(&c(1)));
        let b = x.mul(&y).mul(&w(2).sub(&c(1)));
        assert_eq!(gcd(&a, &b), normalize_sign(x.mul(&y)));
    }
}

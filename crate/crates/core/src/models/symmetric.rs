//! Schur polynomials, signed permutations and the closed-form right-hand sides.

use std::fmt;

use super::{ModelError, ModelSpecA, ModelSpecC, PartitionShape};
use crate::exactalg::{Monomial, RatFun, Var};
use crate::tensorops::Permutation;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SchurMethod {
    /// Sum over semistandard Young tableaux.
    Tableaux,
    /// Ratio of alternants.
    Bialternant,
}

/// `s_λ(z_1, …, z_N)` with `N = z.len()`.
pub fn schur(lambda: &PartitionShape, z: &[RatFun], method: SchurMethod) -> Result<RatFun, ModelError> {
    let n = z.len();
    let lam = lambda.padded(n)?;
    match method {
        SchurMethod::Tableaux => Ok(schur_tableaux(&lam, z)),
        SchurMethod::Bialternant => schur_bialternant(&lam, z),
    }
}

fn schur_tableaux(lam: &[usize], z: &[RatFun]) -> RatFun {
    // cells in row-major order; each entry is at least its left neighbor and
    // strictly greater than the entry above
    let cells: Vec<(usize, usize)> = lam.iter().enumerate().flat_map(|(i, &l)| (0..l).map(move |j| (i, j))).collect();
    let mut grid: Vec<Vec<usize>> = lam.iter().map(|&l| vec![0; l]).collect();
    let mut total = RatFun::zero();
    fill(&cells, 0, &mut grid, z, RatFun::one(), &mut total);
    total
}

fn fill(cells: &[(usize, usize)], k: usize, grid: &mut Vec<Vec<usize>>, z: &[RatFun], acc: RatFun, total: &mut RatFun) {
    let Some(&(i, j)) = cells.get(k) else {
        *total = &*total + &acc;
        return;
    };
    let lo_row = if j > 0 { grid[i][j - 1] } else { 1 };
    let lo_col = if i > 0 { grid[i - 1][j] + 1 } else { 1 };
    for e in lo_row.max(lo_col)..=z.len() {
        grid[i][j] = e;
        fill(cells, k + 1, grid, z, &acc * &z[e - 1], total);
    }
}

/// `Σ_σ sgn(σ) ∏_i z_{σ(i)}^{α_i}`.
fn alternant(alpha: &[usize], z: &[RatFun]) -> RatFun {
    let n = z.len();
    Permutation::all(n)
        .iter()
        .map(|sigma| {
            let term: RatFun = (1..=n).map(|i| z[sigma.at(i) - 1].pow(alpha[i - 1] as i32).expect("nonnegative power")).product();
            if sigma.inversions() % 2 == 0 {
                term
            } else {
                -term
            }
        })
        .sum()
}

fn schur_bialternant(lam: &[usize], z: &[RatFun]) -> Result<RatFun, ModelError> {
    let n = z.len();
    let delta: Vec<usize> = (0..n).map(|i| n - 1 - i).collect();
    let shifted: Vec<usize> = lam.iter().zip(&delta).map(|(l, d)| l + d).collect();
    let den = alternant(&delta, z);
    if den.is_zero() {
        return Err(ModelError::Singular("alternant denominator vanishes (coinciding z's)".into()));
    }
    Ok(alternant(&shifted, z).div(&den)?)
}

/// `∏_{i<j} (z_j − v z_i) · s_λ(z)`.
pub fn theorem1_rhs(spec: &ModelSpecA) -> Result<RatFun, ModelError> {
    let v = RatFun::v();
    let mut prod = RatFun::one();
    for j in 0..spec.n {
        for i in 0..j {
            prod = prod * (&spec.z[j] - &(&v * &spec.z[i]));
        }
    }
    Ok(prod * schur(&spec.lambda, &spec.z, SchurMethod::Tableaux)?)
}

/// Element of `B_r`: images of `1..r` in `±{1..r}`; negative means barred.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedPermutation {
    images: Vec<i32>,
}

impl SignedPermutation {
    pub fn new(images: Vec<i32>) -> Option<Self> {
        let r = images.len();
        let abs: Vec<usize> = images.iter().map(|k| k.unsigned_abs() as usize).collect();
        Permutation::new(abs).filter(|_| r > 0 || images.is_empty())?;
        Some(SignedPermutation { images })
    }

    pub fn identity(r: usize) -> Self {
        SignedPermutation { images: (1..=r as i32).collect() }
    }

    pub fn rank(&self) -> usize {
        self.images.len()
    }

    /// `σ(k)` for `k ∈ ±{1..r}`, with `σ(k̄) = σ(k)̄`.
    pub fn at(&self, k: i32) -> i32 {
        let img = self.images[k.unsigned_abs() as usize - 1];
        if k < 0 {
            -img
        } else {
            img
        }
    }

    pub fn images(&self) -> &[i32] {
        &self.images
    }

    /// `(self ∘ other)(k) = self(other(k))`.
    pub fn compose(&self, other: &SignedPermutation) -> SignedPermutation {
        SignedPermutation { images: other.images.iter().map(|&k| self.at(k)).collect() }
    }

    /// All `2^r r!` elements.
    pub fn all(r: usize) -> Vec<SignedPermutation> {
        let mut out = Vec::new();
        for p in Permutation::all(r) {
            for signs in 0..1u32 << r {
                let images = (1..=r)
                    .map(|i| {
                        let k = p.at(i) as i32;
                        if signs >> (i - 1) & 1 == 1 {
                            -k
                        } else {
                            k
                        }
                    })
                    .collect();
                out.push(SignedPermutation { images });
            }
        }
        out
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.images.iter().map(|&k| if k < 0 { format!("{}\u{304}", -k) } else { k.to_string() }).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

/// `(σf)(z) = f(σz)` with `(σz)_i = z_{σ(i)}` and `z_ī = z_i^{-1}`, acting on
/// the square roots `w_i`.
pub fn hyperoctahedral_apply(sigma: &SignedPermutation, f: &RatFun) -> RatFun {
    f.map_monomials(|m| {
        let mut out = Monomial::ONE;
        out.set_exp(Var::U, m.exp(Var::U));
        for i in 1..=sigma.rank() {
            let e = m.exp(Var::w(i));
            if e == 0 {
                continue;
            }
            let img = sigma.at(i as i32);
            let target = Var::w(img.unsigned_abs() as usize);
            out.set_exp(target, out.exp(target) + if img < 0 { -e } else { e });
        }
        out
    })
}

/// `Δ_C` in the symbolic roots `w_1..w_r`.
fn delta_c(r: usize) -> RatFun {
    let w = |i: usize| RatFun::w(i);
    let winv = |i: usize| RatFun::w(i).inv().expect("nonzero");
    let mut acc = RatFun::one();
    for i in 1..=r {
        for j in i + 1..=r {
            acc = acc * (&w(i) * &winv(j) - &winv(i) * &w(j)) * (&w(i) * &w(j) - &winv(i) * &winv(j));
        }
        let z = RatFun::z(i);
        acc = acc * (&z - &z.inv().expect("nonzero"));
    }
    acc
}

/// `Σ_{σ ∈ B_r} σ( z^{λ+ρ_C} ∏(1 + √v z_i^{-1}) Δ_C(z)^{-1} )` in symbolic roots.
pub(crate) fn br_sum(r: usize, lambda: &PartitionShape) -> Result<RatFun, ModelError> {
    let lam = lambda.padded(r)?;
    let u = RatFun::u();
    let mut f = delta_c(r).inv()?;
    for i in 1..=r {
        let z = RatFun::z(i);
        f = f * z.pow((lam[i - 1] + r - i + 1) as i32)? * (RatFun::one() + &u * &z.inv()?);
    }
    Ok(SignedPermutation::all(r).iter().map(|s| hyperoctahedral_apply(s, &f)).sum())
}

fn theorem2_with_prefactor(spec: &ModelSpecC, exponent: impl Fn(usize) -> i32) -> Result<RatFun, ModelError> {
    let r = spec.r;
    let u = RatFun::u();
    let v = RatFun::v();
    let mut pre = RatFun::one();
    for i in 1..=r {
        let z = RatFun::z(i);
        pre = pre * RatFun::w(i).pow(exponent(i))? * (RatFun::one() - &u * &z);
        for j in i + 1..=r {
            let zj = RatFun::z(j);
            pre = pre * (RatFun::one() - &v * &z * &zj) * (RatFun::one() - &v * &zj * &z.inv()?);
        }
    }
    let symbolic = pre * br_sum(r, &spec.lambda)?;
    substitute_roots(&symbolic, &spec.w)
}

/// Closed form for the type-C model, with `z^{-(1/2, 3/2, …, r-1/2)}` as the
/// leading monomial.
pub fn theorem2_rhs(spec: &ModelSpecC) -> Result<RatFun, ModelError> {
    theorem2_with_prefactor(spec, |i| -(2 * i as i32 - 1))
}

/// Same expression with the prefactor `z^{-(r-1/2, …, 1/2)}`; differs from
/// the lattice partition function for `r ≥ 2`.
pub fn theorem2_rhs_descending_prefactor(spec: &ModelSpecC) -> Result<RatFun, ModelError> {
    let r = spec.r as i32;
    theorem2_with_prefactor(spec, |i| -(2 * (r - i as i32) + 1))
}

/// Replaces `w_i` by `roots[i-1]`; identity when the roots are the symbolic variables.
fn substitute_roots(f: &RatFun, roots: &[RatFun]) -> Result<RatFun, ModelError> {
    if roots.iter().enumerate().all(|(k, w)| *w == RatFun::w(k + 1)) {
        return Ok(f.clone());
    }
    let sub = |p: &crate::exactalg::ZPoly| -> Result<RatFun, ModelError> {
        let mut acc = RatFun::zero();
        for (m, c) in p.terms() {
            let mut t = RatFun::from_bigint(c.clone()) * RatFun::u().pow(m.exp(Var::U))?;
            for (k, w) in roots.iter().enumerate() {
                let e = m.exp(Var::w(k + 1));
                if e != 0 {
                    t = t * w.pow(e).map_err(|_| ModelError::Singular(format!("w{} = 0", k + 1)))?;
                }
            }
            acc = acc + t;
        }
        Ok(acc)
    };
    let den = sub(f.den())?;
    if den.is_zero() {
        return Err(ModelError::Singular("closed form has a pole at these parameters".into()));
    }
    Ok(sub(f.num())?.div(&den)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse_human;

    fn shape(s: &str) -> PartitionShape {
        s.parse().unwrap()
    }

    fn zs(n: usize) -> Vec<RatFun> {
        (1..=n).map(RatFun::z).collect()
    }

    #[test]
    fn schur_small_cases() {
        for m in [SchurMethod::Tableaux, SchurMethod::Bialternant] {
            assert_eq!(schur(&shape("1,0"), &zs(2), m).unwrap(), parse_human("z1 + z2").unwrap());
            assert!(schur(&shape(""), &zs(3), m).unwrap().is_one());
            assert_eq!(schur(&shape("2,1"), &zs(2), m).unwrap(), parse_human("z1^2*z2 + z1*z2^2").unwrap());
        }
    }

    #[test]
    fn schur_methods_agree_in_the_box() {
        for n in 1..=3 {
            for a in 0..=3usize {
                for b in 0..=a {
                    for c in 0..=b {
                        let lam = PartitionShape::new(vec![a, b, c]).unwrap();
                        if lam.length() > n {
                            continue;
                        }
                        let t = schur(&lam, &zs(n), SchurMethod::Tableaux).unwrap();
                        let d = schur(&lam, &zs(n), SchurMethod::Bialternant).unwrap();
                        assert_eq!(t, d, "λ = {lam}, N = {n}");
                    }
                }
            }
        }
    }

    #[test]
    fn bialternant_rejects_coinciding_parameters() {
        let z = vec![RatFun::from_int(2), RatFun::from_int(2)];
        assert!(matches!(schur(&shape("1"), &z, SchurMethod::Bialternant), Err(ModelError::Singular(_))));
        assert_eq!(schur(&shape("1"), &z, SchurMethod::Tableaux).unwrap(), RatFun::from_int(4));
    }

    #[test]
    fn closed_form_a_small_cases() {
        let s = ModelSpecA::new(1, shape("2")).unwrap();
        assert_eq!(theorem1_rhs(&s).unwrap(), parse_human("z1^2").unwrap());
        let s = ModelSpecA::new(2, shape("0,0")).unwrap();
        assert_eq!(theorem1_rhs(&s).unwrap(), parse_human("z2 - v*z1").unwrap());
    }

    #[test]
    fn signed_permutations() {
        assert_eq!(SignedPermutation::all(2).len(), 8);
        assert_eq!(SignedPermutation::all(3).len(), 48);
        assert!(SignedPermutation::new(vec![1, -1]).is_none());
        let bar = SignedPermutation::new(vec![-1]).unwrap();
        let f = parse_human("z1 + u").unwrap();
        assert_eq!(hyperoctahedral_apply(&bar, &f), parse_human("z1^-1 + u").unwrap());
        let id = SignedPermutation::identity(2);
        let g = parse_human("(w1^3 - u*w2)/(z1 + w2*w1^-1)").unwrap();
        assert_eq!(hyperoctahedral_apply(&id, &g), g);
    }

    #[test]
    fn action_is_compatible_with_composition() {
        let f = parse_human("(w1^3 - u*w2)/(z1 + 2*w2*w1^-1)").unwrap();
        let all = SignedPermutation::all(2);
        for s in &all {
            for t in &all {
                let lhs = hyperoctahedral_apply(&s.compose(t), &f);
                let rhs = hyperoctahedral_apply(s, &hyperoctahedral_apply(t, &f));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn closed_form_c_rank_one() {
        let s = ModelSpecC::new(1, shape("0")).unwrap();
        assert_eq!(theorem2_rhs(&s).unwrap(), parse_human("w1^-1 - u*w1").unwrap());
        assert_eq!(theorem2_rhs_descending_prefactor(&s).unwrap(), theorem2_rhs(&s).unwrap());
        let one = br_sum(1, &shape("0")).unwrap();
        assert!(one.is_one());
    }

    #[test]
    fn br_sum_is_invariant() {
        for (r, l) in [(1, "1"), (2, "0"), (2, "1,0"), (2, "2,1")] {
            let s = br_sum(r, &shape(l)).unwrap();
            assert!(s.is_polynomial() || s.den().is_monomial(), "collapses to a Laurent polynomial");
            for sigma in SignedPermutation::all(r) {
                assert_eq!(hyperoctahedral_apply(&sigma, &s), s);
            }
        }
    }

    #[test]
    fn descending_prefactor_differs_by_z1_over_z2() {
        let s = ModelSpecC::new(2, shape("1,0")).unwrap();
        let ratio = theorem2_rhs(&s).unwrap().div(&theorem2_rhs_descending_prefactor(&s).unwrap()).unwrap();
        assert_eq!(ratio, parse_human("z1/z2").unwrap());
    }

    #[test]
    fn numeric_roots_substitute() {
        let lam = shape("1");
        let sym = theorem2_rhs(&ModelSpecC::new(1, lam.clone()).unwrap()).unwrap();
        let num = theorem2_rhs(&ModelSpecC::with_roots(lam, vec![RatFun::from_int(2)]).unwrap()).unwrap();
        let point = [(Var::w(1), num_rational::BigRational::from_integer(2.into()))].into_iter().collect();
        assert_eq!(sym.specialize(&point).unwrap(), num);
    }
}

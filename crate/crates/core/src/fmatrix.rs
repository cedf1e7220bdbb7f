//! Permutation graphs, the F-matrix and its mirror F*, the diagonal
//! Δ = F F*, column operators and their F-conjugated closed forms, and the
//! cap vector with its closed-form image under F.
//!
//! Everything is typed by a [`SiteContext`]: site `k` carries a spectral
//! parameter `x_k` and an ice flavor `eps_k`. Type A is all-Γ; the type-C
//! context has `x = (z1^-1, z1, ..., zr^-1, zr)` with alternating Γ, Δ.

use rayon::prelude::*;
use serde::Serialize;

use crate::exactalg::RatFun;
use crate::tensorops::{
    get_spin, r_matrix, set_spin, site_diag, site_unit, LinOp, Permutation, SVec, SiteMatrix, TensorError,
};
use crate::weights::{cap_weight, ordinary_weight, r_pattern_weight, Ice, Pattern, Spin};

/// Default bound on `N` for constructions that sum over `S_N`.
pub const DEFAULT_MAX_N: usize = 8;

/// Environment variable overriding the site-count guards (F-matrices and
/// column products).
pub const MAX_N_ENV: &str = "FFICE_MAX_N";

/// Size limit from `FFICE_MAX_N`, or `default` when unset or unparsable.
pub fn size_limit(default: usize) -> usize {
    std::env::var(MAX_N_ENV).ok().and_then(|s| s.trim().parse().ok()).unwrap_or(default)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FMatrixError {
    #[error("N = {n} exceeds the limit {max} (set {MAX_N_ENV} to override)")]
    LimitExceeded { n: usize, max: usize },
    #[error("Δ has a zero diagonal entry at word {0:#b}; spectral parameters collide")]
    SingularDelta(u32),
    #[error("{0} vanishes; spectral parameters are not generic")]
    Singular(String),
    #[error("a type-C context (N = 2r, alternating Γ/Δ) is required")]
    NotTypeC,
    #[error(transparent)]
    Tensor(#[from] TensorError),
}

/// Spectral parameters and ice flavors per site.
#[derive(Clone, Debug, PartialEq)]
pub struct SiteContext {
    pub eps: Vec<Ice>,
    pub x: Vec<RatFun>,
    /// `z_l^{1/2}` for each cap pair in a type-C context.
    pub cap_roots: Option<Vec<RatFun>>,
}

impl SiteContext {
    /// All-Γ context with `x_k = z_k`.
    pub fn type_a(n: usize) -> Self {
        Self::type_a_with((1..=n).map(RatFun::z).collect())
    }

    pub fn type_a_with(x: Vec<RatFun>) -> Self {
        SiteContext { eps: vec![Ice::Gamma; x.len()], x, cap_roots: None }
    }

    /// Type-C context of rank `r` with symbolic `z_l = w_l^2`.
    pub fn type_c(r: usize) -> Self {
        Self::type_c_with((1..=r).map(RatFun::w).collect())
    }

    /// Type-C context from the square roots `w_l` of the spectral parameters.
    pub fn type_c_with(roots: Vec<RatFun>) -> Self {
        let mut eps = Vec::new();
        let mut x = Vec::new();
        for w in &roots {
            let z = w * w;
            x.push(z.inv().expect("nonzero spectral parameter"));
            x.push(z);
            eps.push(Ice::Gamma);
            eps.push(Ice::Delta);
        }
        SiteContext { eps, x, cap_roots: Some(roots) }
    }

    /// Alternating-ε context without caps (used for well-definedness checks).
    pub fn alternating(n: usize) -> Self {
        SiteContext {
            eps: (0..n).map(|k| if k % 2 == 0 { Ice::Gamma } else { Ice::Delta }).collect(),
            x: (1..=n).map(RatFun::z).collect(),
            cap_roots: None,
        }
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    /// Spectral parameter of 1-based site `k`.
    pub fn xk(&self, k: usize) -> &RatFun {
        &self.x[k - 1]
    }

    pub fn ek(&self, k: usize) -> Ice {
        self.eps[k - 1]
    }

    pub fn is_type_c(&self) -> bool {
        let n = self.n();
        n.is_multiple_of(2)
            && self.cap_roots.as_ref().is_some_and(|r| r.len() * 2 == n)
            && (0..n).all(|k| self.eps[k] == if k % 2 == 0 { Ice::Gamma } else { Ice::Delta })
    }

    /// `R_{i,j}(x_i, x_j; eps_i, eps_j)` embedded in `N` sites.
    pub fn r(&self, i: usize, j: usize) -> Result<LinOp, TensorError> {
        r_matrix(i, j, self.xk(i), self.xk(j), self.ek(i), self.ek(j), self.n())
    }

    /// R-table entry `p` with flavors and parameters of sites `(a, b)`.
    pub fn r_entry(&self, p: Pattern, a: usize, b: usize) -> RatFun {
        r_pattern_weight(self.ek(a), self.ek(b), self.xk(a), self.xk(b), p)
    }

    /// `b2(x_a, x_b; eps_a, eps_b)`.
    pub fn b2(&self, a: usize, b: usize) -> RatFun {
        self.r_entry(Pattern::B2, a, b)
    }

    /// `a2(x_a, x_b; eps_a, eps_b)`.
    pub fn a2(&self, a: usize, b: usize) -> RatFun {
        self.r_entry(Pattern::A2, a, b)
    }

    /// Single-vertex `b2(x_t; eps_t)`.
    pub fn b2_vertex(&self, t: usize) -> RatFun {
        ordinary_weight(self.ek(t), self.xk(t), 1, 0, 1, 0)
    }

    fn check_limit(&self) -> Result<(), FMatrixError> {
        let max = size_limit(DEFAULT_MAX_N);
        if self.n() > max {
            Err(FMatrixError::LimitExceeded { n: self.n(), max })
        } else {
            Ok(())
        }
    }
}

// ---------------------------------------------------------------------------
// index sets

fn monotone_words(n: usize, decreasing: bool) -> Vec<Vec<Spin>> {
    // weakly monotone 0/1 words are determined by the number of ones
    (0..=n)
        .map(|ones| {
            (0..n)
                .map(|t| {
                    let one = if decreasing { t < ones } else { t >= n - ones };
                    one as Spin
                })
                .collect()
        })
        .collect()
}

/// `I(ρ)`: weakly decreasing words `k_1 ≥ ... ≥ k_N`, strict at descents of ρ.
pub fn index_set_i(rho: &Permutation) -> Vec<Vec<Spin>> {
    let n = rho.n();
    monotone_words(n, true)
        .into_iter()
        .filter(|k| (1..n).all(|t| rho.at(t) < rho.at(t + 1) || k[t - 1] > k[t]))
        .collect()
}

/// `I'(ρ)`: weakly increasing words `k_1 ≤ ... ≤ k_N`, strict at ascents of ρ.
pub fn index_set_iprime(rho: &Permutation) -> Vec<Vec<Spin>> {
    let n = rho.n();
    monotone_words(n, false)
        .into_iter()
        .filter(|k| (1..n).all(|t| rho.at(t) > rho.at(t + 1) || k[t - 1] < k[t]))
        .collect()
}

/// Basis word with spin `k_i` at site `ρ(i)`: the support of `∏ E_{ρ(i)}^{(k_i,k_i)}`.
fn projected_word(rho: &Permutation, k: &[Spin]) -> u32 {
    let n = rho.n();
    let mut w = 0u32;
    for (i, &s) in k.iter().enumerate() {
        w = set_spin(w, rho.at(i + 1), n, s);
    }
    w
}

// ---------------------------------------------------------------------------
// permutation graphs

/// Which adjacent-transposition chain builds a permutation graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Chain {
    /// Reduced word taking the lowest descent first.
    Lowest,
    /// Reduced word taking the highest descent first, with a cancelling
    /// `s_1 s_1` detour prepended (a non-reduced chain).
    HighestWithDetour,
}

/// Sites of the base factors along a chain from `source` to `target`.
fn chain_factors(target: &Permutation, source: &Permutation, chain: Chain) -> Vec<(usize, usize)> {
    let n = source.n();
    let step = source.inverse().compose(target);
    let mut word = match chain {
        Chain::Lowest => step.reduced_word(false),
        Chain::HighestWithDetour => step.reduced_word(true),
    };
    if chain == Chain::HighestWithDetour && n >= 2 {
        word.splice(0..0, [1, 1]);
    }
    let mut pi = source.clone();
    let mut sites = Vec::with_capacity(word.len());
    for i in word {
        sites.push((pi.at(i), pi.at(i + 1)));
        pi = pi.compose(&Permutation::s(i, n));
    }
    debug_assert_eq!(&pi, target);
    sites
}

/// `R_{target}^{source}`: product of `R_{π(i),π(i+1)}(x_{π(i)}, x_{π(i+1)})`
/// along a transposition chain from `source` to `target`.
pub fn permutation_graph(target: &Permutation, source: &Permutation, ctx: &SiteContext, chain: Chain) -> Result<LinOp, FMatrixError> {
    let mut acc = LinOp::identity(ctx.n());
    for (a, b) in chain_factors(target, source, chain) {
        acc = acc.compose(&ctx.r(a, b)?)?;
    }
    Ok(acc)
}

/// Row `⟨w| R_{target}^{source}` without forming the full product.
fn graph_row(w: u32, target: &Permutation, source: &Permutation, ctx: &SiteContext) -> Result<SVec, FMatrixError> {
    let mut row = SVec::basis(ctx.n(), w);
    for (a, b) in chain_factors(target, source, Chain::Lowest) {
        row = ctx.r(a, b)?.co_apply(&row)?;
    }
    Ok(row)
}

/// Column `R_{target}^{source} |w⟩` without forming the full product.
fn graph_column(w: u32, target: &Permutation, source: &Permutation, ctx: &SiteContext) -> Result<SVec, FMatrixError> {
    let mut col = SVec::basis(ctx.n(), w);
    let factors = chain_factors(target, source, Chain::Lowest);
    for (a, b) in factors.into_iter().rev() {
        col = ctx.r(a, b)?.apply(&col)?;
    }
    Ok(col)
}

// ---------------------------------------------------------------------------
// F, F*, Δ

/// `F = Σ_ρ Σ_{k ∈ I(ρ)} ∏_i E_{ρ(i)}^{(k_i,k_i)} R_{id}^{ρ}`.
pub fn build_f(ctx: &SiteContext) -> Result<LinOp, FMatrixError> {
    ctx.check_limit()?;
    let n = ctx.n();
    let id = Permutation::identity(n);
    let rows: Vec<Result<(u32, SVec), FMatrixError>> = Permutation::all(n)
        .par_iter()
        .flat_map_iter(|rho| {
            let id = id.clone();
            index_set_i(rho).into_iter().map(move |k| {
                let w = projected_word(rho, &k);
                graph_row(w, &id, rho, ctx).map(|r| (w, r))
            })
        })
        .collect();
    let mut f = LinOp::zero(n);
    for item in rows {
        let (w, row) = item?;
        for (&j, val) in row.comps() {
            f.add_to(w, j, val);
        }
    }
    Ok(f)
}

/// `F* = Σ_ρ Σ_{k ∈ I'(ρ)} R_{ρ}^{id} ∏_i E_{ρ(i)}^{(k_i,k_i)}`.
pub fn build_fstar(ctx: &SiteContext) -> Result<LinOp, FMatrixError> {
    ctx.check_limit()?;
    let n = ctx.n();
    let id = Permutation::identity(n);
    let cols: Vec<Result<(u32, SVec), FMatrixError>> = Permutation::all(n)
        .par_iter()
        .flat_map_iter(|rho| {
            let id = id.clone();
            index_set_iprime(rho).into_iter().map(move |k| {
                let w = projected_word(rho, &k);
                graph_column(w, rho, &id, ctx).map(|c| (w, c))
            })
        })
        .collect();
    let mut f = LinOp::zero(n);
    for item in cols {
        let (w, col) = item?;
        for (&i, val) in col.comps() {
            f.add_to(i, w, val);
        }
    }
    Ok(f)
}

/// Closed-form diagonal entry of `Δ = F F*` at word `w`.
pub fn delta_entry(ctx: &SiteContext, w: u32) -> RatFun {
    let n = ctx.n();
    let s = |k: usize| get_spin(w, k, n);
    let mut acc = RatFun::one();
    for a in 1..=n {
        for b in 1..=n {
            if a == b {
                continue;
            }
            if s(a) == 1 && s(b) == 0 {
                acc = acc * ctx.b2(a, b);
            } else if a < b && s(a) == 1 && s(b) == 1 {
                acc = acc * ctx.a2(a, b);
            }
        }
    }
    acc
}

/// `Δ` as a diagonal operator; errors if an entry vanishes.
pub fn delta_diagonal(ctx: &SiteContext) -> Result<LinOp, FMatrixError> {
    ctx.check_limit()?;
    let n = ctx.n();
    let mut d = LinOp::zero(n);
    for w in 0..1u32 << n {
        let e = delta_entry(ctx, w);
        if e.is_zero() {
            return Err(FMatrixError::SingularDelta(w));
        }
        d.set(w, w, e);
    }
    Ok(d)
}

/// `F^{-1} = F* Δ^{-1}`.
pub fn f_inverse(ctx: &SiteContext) -> Result<LinOp, FMatrixError> {
    let fstar = build_fstar(ctx)?;
    let delta = delta_diagonal(ctx)?;
    let inv = delta.map_entries(|e| e.inv().expect("nonzero by construction"));
    Ok(fstar.compose(&inv)?)
}

/// Sort permutation `ρ(i)`: positions holding 1 (ascending), then positions holding 0.
pub fn sort_permutation(i: &[Spin]) -> Permutation {
    let mut images: Vec<usize> = (1..=i.len()).filter(|&k| i[k - 1] == 1).collect();
    images.extend((1..=i.len()).filter(|&k| i[k - 1] == 0));
    Permutation::new(images).expect("a permutation")
}

/// Sort permutation `ρ*(j)`: positions holding 0 (descending), then positions holding 1 (descending).
pub fn sort_permutation_star(j: &[Spin]) -> Permutation {
    let mut images: Vec<usize> = (1..=j.len()).rev().filter(|&k| j[k - 1] == 0).collect();
    images.extend((1..=j.len()).rev().filter(|&k| j[k - 1] == 1));
    Permutation::new(images).expect("a permutation")
}

// ---------------------------------------------------------------------------
// column operators

/// Column operator `S^{[α]}_σ`: one column of N vertices read bottom to top,
/// bottom spin 0, top spin `α`; vertex `k` has flavor `eps_{σ(k)}`,
/// parameter `x_{σ(k)}` and left/right edges on site `σ(k)`.
pub fn column_operator(alpha: Spin, ctx: &SiteContext, sigma: Option<&Permutation>) -> LinOp {
    let n = ctx.n();
    let id = Permutation::identity(n);
    let sigma = sigma.unwrap_or(&id);
    // partial states: (out word, in word, vertical spin, weight)
    let mut states: Vec<(u32, u32, Spin, RatFun)> = vec![(0, 0, 0, RatFun::one())];
    for k in 1..=n {
        let site = sigma.at(k);
        let (e, x) = (ctx.ek(site), ctx.xk(site));
        let mut next = Vec::with_capacity(states.len() * 2);
        for (o, i, below, wt) in &states {
            for left in 0..2u8 {
                for right in 0..2u8 {
                    let top = right as i8 + *below as i8 - left as i8;
                    if !(0..=1).contains(&top) {
                        continue;
                    }
                    let vw = ordinary_weight(e, x, left, top as Spin, right, *below);
                    if vw.is_zero() {
                        continue;
                    }
                    next.push((set_spin(*o, site, n, left), set_spin(*i, site, n, right), top as Spin, wt * &vw));
                }
            }
        }
        states = next;
    }
    LinOp::from_entries(n, states.into_iter().filter(|s| s.2 == alpha).map(|(o, i, _, w)| ((o, i), w)))
}

/// Closed form of `F S^{[α]} F^{-1}`.
pub fn conjugated_column(alpha: Spin, ctx: &SiteContext) -> Result<LinOp, FMatrixError> {
    let n = ctx.n();
    if alpha == 0 {
        return Ok(LinOp::tensor_sites(n, |t| site_diag(RatFun::one(), ctx.b2_vertex(t))));
    }
    let mut total = LinOp::zero(n);
    for m in 1..=n {
        let mut factors = Vec::with_capacity(n);
        for t in 1..=n {
            if t == m {
                factors.push(site_unit(0, 1));
                continue;
            }
            let b2inv = ctx.b2(m, t).inv().map_err(|_| FMatrixError::Singular(format!("b2(x{m}, x{t})")))?;
            let upper = if t < m {
                ctx.b2_vertex(t)
            } else {
                ctx.b2_vertex(t).div(&ctx.a2(m, t)).map_err(|_| FMatrixError::Singular(format!("a2(x{m}, x{t})")))?
            };
            factors.push(site_diag(b2inv, upper));
        }
        let term = LinOp::tensor_sites(n, |t| -> SiteMatrix { factors[t - 1].clone() });
        total = total.add(&term)?;
    }
    Ok(total)
}

/// Direct product `F S^{[α]} F^{-1}`.
pub fn conjugated_column_direct(alpha: Spin, ctx: &SiteContext) -> Result<LinOp, FMatrixError> {
    let f = build_f(ctx)?;
    let finv = f_inverse(ctx)?;
    Ok(f.compose(&column_operator(alpha, ctx, None))?.compose(&finv)?)
}

// ---------------------------------------------------------------------------
// caps

/// `K_{i_1...i_N} = ∏_l C(i_{2l-1}, i_{2l}; z_l)`.
pub fn cap_vector(ctx: &SiteContext) -> Result<SVec, FMatrixError> {
    if !ctx.is_type_c() {
        return Err(FMatrixError::NotTypeC);
    }
    let roots = ctx.cap_roots.as_ref().expect("type C");
    let n = ctx.n();
    let mut k = SVec::zero(n);
    // each pair contributes (1,0) or (0,1); enumerate the 2^r choices
    for choice in 0..1u32 << roots.len() {
        let mut w = 0u32;
        let mut val = RatFun::one();
        for (l, root) in roots.iter().enumerate() {
            let up = (choice >> l) & 1 == 1;
            let (bottom, top) = if up { (0, 1) } else { (1, 0) };
            w = set_spin(w, 2 * l + 1, n, bottom);
            w = set_spin(w, 2 * l + 2, n, top);
            val = val * cap_weight(bottom, top, root);
        }
        k.set(w, val);
    }
    Ok(k)
}

/// Closed form of `F K` for a type-C context.
pub fn fk_closed_form(ctx: &SiteContext) -> Result<SVec, FMatrixError> {
    if !ctx.is_type_c() {
        return Err(FMatrixError::NotTypeC);
    }
    let roots = ctx.cap_roots.as_ref().expect("type C");
    let r = roots.len();
    let n = ctx.n();
    let u = RatFun::u();
    let z: Vec<RatFun> = roots.iter().map(|w| w * w).collect();
    let zinv: Vec<RatFun> = z.iter().map(|x| x.inv().expect("nonzero")).collect();
    let prefactor: RatFun = roots.iter().map(|w| w.inv().expect("nonzero")).product();
    let b2 = |ei: Ice, ej: Ice, a: &RatFun, b: &RatFun| r_pattern_weight(ei, ej, a, b, Pattern::B2);
    let mut out = SVec::zero(n);
    for choice in 0..1u32 << r {
        // bit set: i_{2a-1} = 1, i_{2a} = 0; clear: i_{2a-1} = 0, i_{2a} = 1
        let odd_one = |a: usize| (choice >> a) & 1 == 1;
        let mut w = 0u32;
        let mut val = prefactor.clone();
        for a in 0..r {
            let (lo, hi) = if odd_one(a) { (1, 0) } else { (0, 1) };
            w = set_spin(w, 2 * a + 1, n, lo);
            w = set_spin(w, 2 * a + 2, n, hi);
            if !odd_one(a) {
                let den = &zinv[a] + &u;
                val = val * (&z[a] + &u).div(&den).map_err(|_| FMatrixError::Singular(format!("z{}^-1 + u", a + 1)))?;
            }
        }
        for a in 0..r {
            for b in a + 1..r {
                let f = match (odd_one(a), odd_one(b)) {
                    (true, true) => b2(Ice::Gamma, Ice::Delta, &zinv[b], &z[a]),
                    (true, false) => b2(Ice::Delta, Ice::Delta, &z[b], &z[a]),
                    (false, true) => b2(Ice::Gamma, Ice::Gamma, &zinv[b], &zinv[a]),
                    (false, false) => b2(Ice::Delta, Ice::Gamma, &z[b], &zinv[a]),
                };
                val = val * f;
            }
        }
        out.set(w, val);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// dumps

/// Serializable snapshot of F, F* and Δ.
#[derive(Clone, Debug, Serialize)]
pub struct FMatrixDump {
    pub n: usize,
    pub eps: Vec<i8>,
    pub x: Vec<RatFun>,
    pub f: Vec<DumpEntry>,
    pub fstar: Vec<DumpEntry>,
    pub delta: Vec<DumpEntry>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DumpEntry {
    /// Lower index (output word), as a 0/1 string with site 1 first.
    pub out: String,
    /// Upper index (input word).
    #[serde(rename = "in")]
    pub inp: String,
    pub value: RatFun,
}

fn word_string(w: u32, n: usize) -> String {
    (1..=n).map(|k| if get_spin(w, k, n) == 0 { '0' } else { '1' }).collect()
}

fn dump_entries(op: &LinOp) -> Vec<DumpEntry> {
    let n = op.n();
    op.entries()
        .iter()
        .map(|(&(o, i), v)| DumpEntry { out: word_string(o, n), inp: word_string(i, n), value: v.clone() })
        .collect()
}

pub fn dump(ctx: &SiteContext) -> Result<FMatrixDump, FMatrixError> {
    let f = build_f(ctx)?;
    let fstar = build_fstar(ctx)?;
    let delta = delta_diagonal(ctx)?;
    Ok(FMatrixDump {
        n: ctx.n(),
        eps: ctx.eps.iter().map(|e| e.eps()).collect(),
        x: ctx.x.clone(),
        f: dump_entries(&f),
        fstar: dump_entries(&fstar),
        delta: dump_entries(&delta),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensorops::permutation_op;

    fn perm(v: &[usize]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    #[test]
    fn index_sets_two_sites() {
        let id = Permutation::identity(2);
        let sw = perm(&[2, 1]);
        assert_eq!(index_set_i(&id), vec![vec![0, 0], vec![1, 0], vec![1, 1]]);
        assert_eq!(index_set_iprime(&id), vec![vec![0, 1]]);
        assert_eq!(index_set_i(&sw), vec![vec![1, 0]]);
        assert_eq!(index_set_iprime(&sw), vec![vec![0, 0], vec![0, 1], vec![1, 1]]);
        // the projectors of F (and of F*) partition the basis
        for n in 1..=4 {
            for set in [index_set_i as fn(&Permutation) -> Vec<Vec<Spin>>, index_set_iprime] {
                let mut seen: Vec<u32> = Permutation::all(n)
                    .iter()
                    .flat_map(|rho| set(rho).into_iter().map(move |k| projected_word(rho, &k)))
                    .collect();
                seen.sort_unstable();
                assert_eq!(seen, (0..1u32 << n).collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn graph_of_equal_permutations_is_identity() {
        let ctx = SiteContext::type_a(3);
        for rho in Permutation::all(3) {
            assert!(permutation_graph(&rho, &rho, &ctx, Chain::Lowest).unwrap().is_identity());
        }
    }

    #[test]
    fn three_site_graph_is_two_crossings() {
        let ctx = SiteContext::type_a(3);
        let id = Permutation::identity(3);
        let src = perm(&[3, 1, 2]);
        let g = permutation_graph(&id, &src, &ctx, Chain::Lowest).unwrap();
        let expect = ctx.r(3, 1).unwrap().compose(&ctx.r(3, 2).unwrap()).unwrap();
        assert_eq!(g, expect);
    }

    #[test]
    fn f_two_sites_matches_closed_entries() {
        let ctx = SiteContext::type_a(2);
        let f = build_f(&ctx).unwrap();
        let w = |p| ctx.r_entry(p, 2, 1);
        assert!(f.get(0, 0).is_one() && f.get(2, 2).is_one() && f.get(3, 3).is_one());
        assert_eq!(f.get(1, 1), w(Pattern::B2));
        assert_eq!(f.get(1, 2), w(Pattern::C1));
        assert_eq!(f.nnz(), 5);
        let fs = build_fstar(&ctx).unwrap();
        let w12 = |p| ctx.r_entry(p, 1, 2);
        assert!(fs.get(0, 0).is_one() && fs.get(1, 1).is_one());
        assert_eq!(fs.get(1, 2), w12(Pattern::C2));
        assert_eq!(fs.get(2, 2), w12(Pattern::B2));
        assert_eq!(fs.get(3, 3), w12(Pattern::A2));
        assert_eq!(fs.nnz(), 5);
    }

    #[test]
    fn column_operator_single_site() {
        let ctx = SiteContext::type_a(1);
        let s1 = column_operator(1, &ctx, None);
        assert_eq!(s1.nnz(), 1);
        assert!(s1.get(0, 1).is_one());
        let s0 = column_operator(0, &ctx, None);
        assert!(s0.get(0, 0).is_one());
        assert_eq!(s0.get(1, 1), RatFun::z(1));
    }

    #[test]
    fn conjugated_type_a_example() {
        let ctx = SiteContext::type_a(2);
        let c = conjugated_column(1, &ctx).unwrap();
        let expect = crate::exactalg::parse_human("z2*(z2 - v*z1)/(z1 - v*z2)").unwrap();
        assert_eq!(c.component(&[0, 1], &[1, 1]), expect);
    }

    #[test]
    fn permuted_column_is_a_relabeling() {
        let ctx = SiteContext::type_a(3);
        for sigma in Permutation::all(3) {
            let moved = SiteContext::type_a_with((1..=3).map(|k| ctx.xk(sigma.at(k)).clone()).collect());
            for alpha in 0..2 {
                let lhs = column_operator(alpha, &ctx, Some(&sigma));
                let p = permutation_op(&sigma, 3).unwrap();
                let pinv = permutation_op(&sigma.inverse(), 3).unwrap();
                let rhs = p.compose(&column_operator(alpha, &moved, None)).unwrap().compose(&pinv).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn fk_small_rank_one() {
        let ctx = SiteContext::type_c(1);
        let k = cap_vector(&ctx).unwrap();
        assert_eq!(k.get(0b01), crate::exactalg::parse_human("-u*w1").unwrap());
        assert_eq!(k.get(0b10), crate::exactalg::parse_human("w1^-1").unwrap());
        let fk = fk_closed_form(&ctx).unwrap();
        assert_eq!(fk.get(0b10), crate::exactalg::parse_human("w1^-1").unwrap());
        assert_eq!(fk.get(0b01), crate::exactalg::parse_human("w1^-1*(z1 + u)/(z1^-1 + u)").unwrap());
    }

    #[test]
    fn limit_is_enforced() {
        let ctx = SiteContext::type_a(9);
        assert!(matches!(build_f(&ctx), Err(FMatrixError::LimitExceeded { n: 9, .. })));
    }

    #[test]
    fn f_times_fstar_is_delta() {
        for ctx in [SiteContext::type_a(3), SiteContext::alternating(3), SiteContext::type_c(2)] {
            let f = build_f(&ctx).unwrap();
            let fs = build_fstar(&ctx).unwrap();
            assert_eq!(f.compose(&fs).unwrap(), delta_diagonal(&ctx).unwrap());
        }
    }

    #[test]
    fn components_follow_sort_permutations() {
        let ctx = SiteContext::type_a(3);
        let f = build_f(&ctx).unwrap();
        let fs = build_fstar(&ctx).unwrap();
        let id = Permutation::identity(3);
        for w in 0..8u32 {
            let spins: Vec<Spin> = (1..=3).map(|k| get_spin(w, k, 3)).collect();
            let g = permutation_graph(&id, &sort_permutation(&spins), &ctx, Chain::Lowest).unwrap();
            let gs = permutation_graph(&sort_permutation_star(&spins), &id, &ctx, Chain::Lowest).unwrap();
            for v in 0..8u32 {
                assert_eq!(f.get(w, v), g.get(w, v));
                assert_eq!(fs.get(v, w), gs.get(v, w));
            }
        }
    }

    #[test]
    fn chains_agree() {
        for ctx in [SiteContext::type_a(3), SiteContext::alternating(3)] {
            for a in Permutation::all(3) {
                for b in Permutation::all(3) {
                    let g1 = permutation_graph(&a, &b, &ctx, Chain::Lowest).unwrap();
                    let g2 = permutation_graph(&a, &b, &ctx, Chain::HighestWithDetour).unwrap();
                    assert_eq!(g1, g2);
                }
            }
        }
    }

    #[test]
    fn conjugated_closed_form_matches_direct() {
        for ctx in [SiteContext::type_a(2), SiteContext::type_a(3), SiteContext::type_c(1)] {
            for alpha in 0..2 {
                assert_eq!(conjugated_column(alpha, &ctx).unwrap(), conjugated_column_direct(alpha, &ctx).unwrap());
            }
        }
    }

    #[test]
    fn fk_closed_form_rank_two() {
        let ctx = SiteContext::type_c(2);
        let fk = build_f(&ctx).unwrap().apply(&cap_vector(&ctx).unwrap()).unwrap();
        assert_eq!(fk, fk_closed_form(&ctx).unwrap());
    }
}

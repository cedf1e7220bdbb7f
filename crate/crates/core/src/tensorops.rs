//! Sparse exact linear algebra on `(C^2)^{⊗N}`.
//!
//! A basis word `(i_1, ..., i_N)` is stored as the integer
//! `sum_k i_k 2^{N-k}`, so site 1 is the most significant bit. Operator
//! entries are keyed by `(output, input)`: the lower (left-edge) index of a
//! component is the output and the upper (right-edge) index is the input.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::exactalg::RatFun;
use crate::weights::{r_weight, Ice, Spin};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TensorError {
    #[error("site {site} out of range 1..={n}")]
    SiteOutOfRange { site: usize, n: usize },
    #[error("R-matrix needs two distinct sites, got {0} twice")]
    EqualSites(usize),
    #[error("dimension mismatch: {0} sites vs {1} sites")]
    DimensionMismatch(usize, usize),
}

/// Largest supported site count.
pub const MAX_SITES: usize = 20;

/// A basis word of `(C^2)^{⊗N}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SpinWord {
    pub index: u32,
    pub n: u8,
}

impl SpinWord {
    pub fn new(index: u32, n: usize) -> Self {
        debug_assert!(n <= MAX_SITES && (n == 32 || index < (1u32 << n)));
        SpinWord { index, n: n as u8 }
    }

    pub fn from_spins(spins: &[Spin]) -> Self {
        let n = spins.len();
        let mut index = 0u32;
        for &s in spins {
            debug_assert!(s <= 1);
            index = (index << 1) | s as u32;
        }
        SpinWord::new(index, n)
    }

    /// Spin at 1-based `site`.
    #[inline]
    pub fn spin(&self, site: usize) -> Spin {
        get_spin(self.index, site, self.n as usize)
    }

    pub fn spins(&self) -> Vec<Spin> {
        (1..=self.n as usize).map(|k| self.spin(k)).collect()
    }

    pub fn ones(&self) -> u32 {
        self.index.count_ones()
    }

    pub fn all(n: usize) -> impl Iterator<Item = SpinWord> {
        (0..1u32 << n).map(move |i| SpinWord::new(i, n))
    }
}

impl fmt::Debug for SpinWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.spins().iter().map(|&b| if b == 0 { '0' } else { '1' }).collect();
        write!(f, "|{s}⟩")
    }
}

#[inline]
pub fn get_spin(index: u32, site: usize, n: usize) -> Spin {
    ((index >> (n - site)) & 1) as Spin
}

#[inline]
pub fn set_spin(index: u32, site: usize, n: usize, s: Spin) -> u32 {
    let bit = 1u32 << (n - site);
    if s == 0 {
        index & !bit
    } else {
        index | bit
    }
}

/// Word with every site equal to `s`.
pub fn constant_word(n: usize, s: Spin) -> u32 {
    if s == 0 {
        0
    } else {
        (1u32 << n) - 1
    }
}

fn check_site(site: usize, n: usize) -> Result<(), TensorError> {
    if site == 0 || site > n {
        Err(TensorError::SiteOutOfRange { site, n })
    } else {
        Ok(())
    }
}

/// Single-site 2x2 block indexed `[output][input]`.
pub type SiteMatrix = [[RatFun; 2]; 2];

pub fn site_diag(a: RatFun, b: RatFun) -> SiteMatrix {
    [[a, RatFun::zero()], [RatFun::zero(), b]]
}

pub fn site_unit(out: Spin, inp: Spin) -> SiteMatrix {
    let mut m = [[RatFun::zero(), RatFun::zero()], [RatFun::zero(), RatFun::zero()]];
    m[out as usize][inp as usize] = RatFun::one();
    m
}

/// Sparse linear operator with exact entries.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinOp {
    n: usize,
    entries: BTreeMap<(u32, u32), RatFun>,
}

impl LinOp {
    pub fn zero(n: usize) -> Self {
        assert!(n <= MAX_SITES, "too many sites");
        LinOp { n, entries: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        let mut op = Self::zero(n);
        for i in 0..1u32 << n {
            op.entries.insert((i, i), RatFun::one());
        }
        op
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> u32 {
        1u32 << self.n
    }

    pub fn entries(&self) -> &BTreeMap<(u32, u32), RatFun> {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// Component with lower index `out` and upper index `inp`.
    pub fn get(&self, out: u32, inp: u32) -> RatFun {
        self.entries.get(&(out, inp)).cloned().unwrap_or_default()
    }

    pub fn component(&self, out: &[Spin], inp: &[Spin]) -> RatFun {
        self.get(SpinWord::from_spins(out).index, SpinWord::from_spins(inp).index)
    }

    /// Sets an entry, dropping zeros.
    pub fn set(&mut self, out: u32, inp: u32, val: RatFun) {
        if val.is_zero() {
            self.entries.remove(&(out, inp));
        } else {
            self.entries.insert((out, inp), val);
        }
    }

    pub fn add_to(&mut self, out: u32, inp: u32, val: &RatFun) {
        if val.is_zero() {
            return;
        }
        let cur = self.entries.remove(&(out, inp)).unwrap_or_default();
        self.set(out, inp, cur.add(val));
    }

    pub fn from_entries<I: IntoIterator<Item = ((u32, u32), RatFun)>>(n: usize, it: I) -> Self {
        let mut op = Self::zero(n);
        for ((o, i), v) in it {
            op.add_to(o, i, &v);
        }
        op
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_diagonal(&self) -> bool {
        self.entries.keys().all(|(o, i)| o == i)
    }

    pub fn is_identity(&self) -> bool {
        self.entries.len() == 1 << self.n && self.entries.iter().all(|((o, i), v)| o == i && v.is_one())
    }

    fn check_same(&self, other: &LinOp) -> Result<(), TensorError> {
        if self.n != other.n {
            Err(TensorError::DimensionMismatch(self.n, other.n))
        } else {
            Ok(())
        }
    }

    pub fn add(&self, other: &LinOp) -> Result<LinOp, TensorError> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (&(o, i), v) in &other.entries {
            out.add_to(o, i, v);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &LinOp) -> Result<LinOp, TensorError> {
        self.add(&other.scale(&RatFun::from_int(-1)))
    }

    pub fn scale(&self, k: &RatFun) -> LinOp {
        if k.is_zero() {
            return LinOp::zero(self.n);
        }
        LinOp { n: self.n, entries: self.entries.iter().map(|(key, v)| (*key, v * k)).collect() }
    }

    /// Operator product `self · other`.
    pub fn compose(&self, other: &LinOp) -> Result<LinOp, TensorError> {
        self.check_same(other)?;
        let mut rows_b: BTreeMap<u32, Vec<(u32, &RatFun)>> = BTreeMap::new();
        for (&(k, i), v) in &other.entries {
            rows_b.entry(k).or_default().push((i, v));
        }
        let mut rows_a: BTreeMap<u32, Vec<(u32, &RatFun)>> = BTreeMap::new();
        for (&(o, k), v) in &self.entries {
            rows_a.entry(o).or_default().push((k, v));
        }
        let rows: Vec<(u32, Vec<(u32, &RatFun)>)> = rows_a.into_iter().collect();
        let computed: Vec<Vec<((u32, u32), RatFun)>> = rows
            .par_iter()
            .map(|(o, row)| {
                let mut acc: BTreeMap<u32, RatFun> = BTreeMap::new();
                for (k, a) in row {
                    if let Some(brow) = rows_b.get(k) {
                        for (i, b) in brow {
                            let term = *a * *b;
                            let e = acc.entry(*i).or_default();
                            *e = e.add(&term);
                        }
                    }
                }
                acc.into_iter().filter(|(_, v)| !v.is_zero()).map(|(i, v)| ((*o, i), v)).collect()
            })
            .collect();
        Ok(LinOp { n: self.n, entries: computed.into_iter().flatten().collect() })
    }

    /// Product of a sequence of operators, left to right.
    pub fn product<'a, I: IntoIterator<Item = &'a LinOp>>(n: usize, ops: I) -> Result<LinOp, TensorError> {
        let mut acc = LinOp::identity(n);
        for op in ops {
            acc = acc.compose(op)?;
        }
        Ok(acc)
    }

    /// `A x`.
    pub fn apply(&self, x: &SVec) -> Result<SVec, TensorError> {
        if self.n != x.n {
            return Err(TensorError::DimensionMismatch(self.n, x.n));
        }
        let mut out = SVec::zero(self.n);
        for (&(o, i), a) in &self.entries {
            if let Some(xi) = x.comps.get(&i) {
                out.add_to(o, &(a * xi));
            }
        }
        Ok(out)
    }

    /// `y A`.
    pub fn co_apply(&self, y: &SVec) -> Result<SVec, TensorError> {
        if self.n != y.n {
            return Err(TensorError::DimensionMismatch(self.n, y.n));
        }
        let mut out = SVec::zero(self.n);
        for (&(o, i), a) in &self.entries {
            if let Some(yo) = y.comps.get(&o) {
                out.add_to(i, &(yo * a));
            }
        }
        Ok(out)
    }

    /// Tensor product of single-site blocks: `⊗_k m(k)` for sites `k = 1..=n`.
    pub fn tensor_sites<F: Fn(usize) -> SiteMatrix>(n: usize, m: F) -> LinOp {
        let mut partial: Vec<((u32, u32), RatFun)> = vec![((0, 0), RatFun::one())];
        for k in 1..=n {
            let blk = m(k);
            let mut next = Vec::with_capacity(partial.len() * 2);
            for ((o, i), v) in &partial {
                for (a, row) in blk.iter().enumerate() {
                    for (b, x) in row.iter().enumerate() {
                        if !x.is_zero() {
                            next.push((((o << 1) | a as u32, (i << 1) | b as u32), v * x));
                        }
                    }
                }
            }
            partial = next;
        }
        LinOp::from_entries(n, partial)
    }

    pub fn map_entries<F: Fn(&RatFun) -> RatFun>(&self, f: F) -> LinOp {
        LinOp::from_entries(self.n, self.entries.iter().map(|(k, v)| (*k, f(v))))
    }
}

impl fmt::Debug for LinOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "LinOp(n={}) {{", self.n)?;
        for (&(o, i), v) in &self.entries {
            writeln!(f, "  {:?} <- {:?}: {}", SpinWord::new(o, self.n), SpinWord::new(i, self.n), v)?;
        }
        write!(f, "}}")
    }
}

/// Sparse vector (or covector) over `(C^2)^{⊗N}`.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SVec {
    n: usize,
    comps: BTreeMap<u32, RatFun>,
}

/// Covectors share the representation; the distinction is in how they are applied.
pub type CoVec = SVec;

impl SVec {
    pub fn zero(n: usize) -> Self {
        SVec { n, comps: BTreeMap::new() }
    }

    pub fn basis(n: usize, index: u32) -> Self {
        let mut v = Self::zero(n);
        v.comps.insert(index, RatFun::one());
        v
    }

    pub fn from_spins(spins: &[Spin]) -> Self {
        let w = SpinWord::from_spins(spins);
        Self::basis(spins.len(), w.index)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, index: u32) -> RatFun {
        self.comps.get(&index).cloned().unwrap_or_default()
    }

    pub fn comps(&self) -> &BTreeMap<u32, RatFun> {
        &self.comps
    }

    pub fn set(&mut self, index: u32, v: RatFun) {
        if v.is_zero() {
            self.comps.remove(&index);
        } else {
            self.comps.insert(index, v);
        }
    }

    pub fn add_to(&mut self, index: u32, v: &RatFun) {
        if v.is_zero() {
            return;
        }
        let cur = self.comps.remove(&index).unwrap_or_default();
        self.set(index, cur.add(v));
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    /// Pairing `Σ_k self_k other_k`.
    pub fn dot(&self, other: &SVec) -> RatFun {
        self.comps.iter().filter_map(|(k, a)| other.comps.get(k).map(|b| a * b)).sum()
    }
}

impl fmt::Debug for SVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SVec(n={}) {{", self.n)?;
        for (&k, v) in &self.comps {
            write!(f, " {:?}: {};", SpinWord::new(k, self.n), v)?;
        }
        write!(f, " }}")
    }
}

/// `E_site^{(a,b)}`: `|a⟩⟨b|` at `site`, identity elsewhere.
pub fn elementary(site: usize, a: Spin, b: Spin, n: usize) -> Result<LinOp, TensorError> {
    check_site(site, n)?;
    let mut op = LinOp::zero(n);
    for w in 0..1u32 << n {
        if get_spin(w, site, n) == b {
            op.entries.insert((set_spin(w, site, n, a), w), RatFun::one());
        }
    }
    Ok(op)
}

/// `R_{i,j}(x_i, x_j; eps_i, eps_j) = Σ R(a,b,c,d) E_i^{(a,c)} E_j^{(b,d)}`.
#[allow(clippy::too_many_arguments)]
pub fn r_matrix(i: usize, j: usize, xi: &RatFun, xj: &RatFun, ei: Ice, ej: Ice, n: usize) -> Result<LinOp, TensorError> {
    check_site(i, n)?;
    check_site(j, n)?;
    if i == j {
        return Err(TensorError::EqualSites(i));
    }
    let mut block = [[[[RatFun::zero(), RatFun::zero()], [RatFun::zero(), RatFun::zero()]], [
        [RatFun::zero(), RatFun::zero()],
        [RatFun::zero(), RatFun::zero()],
    ]], [[[RatFun::zero(), RatFun::zero()], [RatFun::zero(), RatFun::zero()]], [
        [RatFun::zero(), RatFun::zero()],
        [RatFun::zero(), RatFun::zero()],
    ]]];
    for a in 0..2u8 {
        for b in 0..2u8 {
            for c in 0..2u8 {
                for d in 0..2u8 {
                    block[a as usize][b as usize][c as usize][d as usize] = r_weight(ei, ej, xi, xj, a, b, c, d);
                }
            }
        }
    }
    let mut op = LinOp::zero(n);
    for w in 0..1u32 << n {
        let c = get_spin(w, i, n);
        let d = get_spin(w, j, n);
        for a in 0..2u8 {
            for b in 0..2u8 {
                let val = &block[a as usize][b as usize][c as usize][d as usize];
                if !val.is_zero() {
                    let out = set_spin(set_spin(w, i, n, a), j, n, b);
                    op.entries.insert((out, w), val.clone());
                }
            }
        }
    }
    Ok(op)
}

/// Element of the symmetric group, stored as 1-based images `(σ(1), ..., σ(N))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &x in &images {
            if x == 0 || x > n || seen[x] {
                return None;
            }
            seen[x] = true;
        }
        Some(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation { images: (1..=n).collect() }
    }

    /// Adjacent transposition `s_i = (i, i+1)`.
    pub fn s(i: usize, n: usize) -> Self {
        assert!(i >= 1 && i < n);
        let mut p = Self::identity(n);
        p.images.swap(i - 1, i);
        p
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    /// `σ(k)` for 1-based `k`.
    #[inline]
    pub fn at(&self, k: usize) -> usize {
        self.images[k - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `(self ∘ other)(k) = self(other(k))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.n(), other.n());
        Permutation { images: other.images.iter().map(|&k| self.at(k)).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.n()];
        for (k, &x) in self.images.iter().enumerate() {
            inv[x - 1] = k + 1;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &x)| x == k + 1)
    }

    pub fn inversions(&self) -> usize {
        let n = self.n();
        (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).filter(|&(a, b)| self.images[a] > self.images[b]).count()
    }

    /// Positions `t` with `σ(t) > σ(t+1)`.
    pub fn descents(&self) -> Vec<usize> {
        (1..self.n()).filter(|&t| self.at(t) > self.at(t + 1)).collect()
    }

    /// Reduced word `[i_1, ..., i_k]` with `self = s_{i_1} ⋯ s_{i_k}`,
    /// picking the lowest (or highest) right descent at each step.
    pub fn reduced_word(&self, highest: bool) -> Vec<usize> {
        let mut p = self.clone();
        let mut word = Vec::new();
        loop {
            let d = p.descents();
            let pick = if highest { d.last() } else { d.first() };
            match pick {
                None => break,
                Some(&i) => {
                    // p = p' s_i with fewer inversions
                    p = p.compose(&Permutation::s(i, p.n()));
                    word.push(i);
                }
            }
        }
        word.reverse();
        word
    }

    /// All permutations of `1..=n` in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (1..=n).collect();
        loop {
            out.push(Permutation { images: cur.clone() });
            // next lexicographic permutation
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else { break };
            let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).expect("successor exists");
            cur.swap(i, j);
            cur[i + 1..].reverse();
        }
        out
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.images)
    }
}

/// `P^σ |i_1, ..., i_N⟩ = |i_{σ^{-1}(1)}, ..., i_{σ^{-1}(N)}⟩`.
pub fn permutation_op(sigma: &Permutation, n: usize) -> Result<LinOp, TensorError> {
    if sigma.n() != n {
        return Err(TensorError::DimensionMismatch(sigma.n(), n));
    }
    let mut op = LinOp::zero(n);
    for w in 0..1u32 << n {
        let mut out = 0u32;
        for m in 1..=n {
            // input site m lands on output site σ(m)
            out = set_spin(out, sigma.at(m), n, get_spin(w, m, n));
        }
        op.entries.insert((out, w), RatFun::one());
    }
    Ok(op)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::{r_pattern_weight, Pattern};

    #[test]
    fn word_order_puts_site_one_first() {
        let w = SpinWord::from_spins(&[0, 1]);
        assert_eq!(w.index, 1);
        assert_eq!(w.spin(1), 0);
        assert_eq!(w.spin(2), 1);
    }

    #[test]
    fn elementary_examples() {
        let e = elementary(1, 0, 1, 2).unwrap();
        let x = SVec::from_spins(&[1, 0]);
        assert_eq!(e.apply(&x).unwrap(), SVec::from_spins(&[0, 0]));
        let p = e.compose(&elementary(2, 1, 1, 2).unwrap()).unwrap();
        assert!(p.component(&[0, 1], &[1, 1]).is_one());
        let z = elementary(1, 0, 0, 2).unwrap().compose(&elementary(1, 1, 1, 2).unwrap()).unwrap();
        assert!(z.is_zero());
        assert_eq!(e.apply(&SVec::from_spins(&[1, 1])).unwrap(), SVec::from_spins(&[0, 1]));
        assert!(matches!(elementary(3, 0, 0, 2), Err(TensorError::SiteOutOfRange { .. })));
    }

    #[test]
    fn r21_two_site_matrix() {
        // rows/columns ordered |00>,|01>,|10>,|11>
        let x1 = RatFun::z(1);
        let x2 = RatFun::z(2);
        let r = r_matrix(2, 1, &x2, &x1, Ice::Gamma, Ice::Gamma, 2).unwrap();
        let w = |p| r_pattern_weight(Ice::Gamma, Ice::Gamma, &x2, &x1, p);
        assert_eq!(r.get(0, 0), w(Pattern::A1));
        assert_eq!(r.get(1, 1), w(Pattern::B2));
        assert_eq!(r.get(1, 2), w(Pattern::C1));
        assert_eq!(r.get(2, 1), w(Pattern::C2));
        assert_eq!(r.get(2, 2), w(Pattern::B1));
        assert_eq!(r.get(3, 3), w(Pattern::A2));
        assert_eq!(r.nnz(), 6);
        let row = r.co_apply(&SVec::basis(2, 0)).unwrap();
        assert_eq!(row, SVec::basis(2, 0));
    }

    #[test]
    fn gg_r_matrix_at_equal_parameters_is_the_swap() {
        // b1 and b2 vanish and a2 = c1 = c2 = 1 for every v
        let z = RatFun::z(1);
        let r = r_matrix(1, 2, &z, &z, Ice::Gamma, Ice::Gamma, 2).unwrap();
        let swap = permutation_op(&Permutation::s(1, 2), 2).unwrap();
        assert_eq!(r, swap);
        assert!(r.compose(&r).unwrap().is_identity());
    }

    #[test]
    fn permutation_operators_form_a_representation() {
        let p = Permutation::new(vec![2, 1]).unwrap();
        let op = permutation_op(&p, 2).unwrap();
        assert_eq!(op.apply(&SVec::from_spins(&[0, 1])).unwrap(), SVec::from_spins(&[1, 0]));
        for s in Permutation::all(3) {
            for t in Permutation::all(3) {
                let lhs = permutation_op(&s, 3).unwrap().compose(&permutation_op(&t, 3).unwrap()).unwrap();
                assert_eq!(lhs, permutation_op(&s.compose(&t), 3).unwrap());
            }
        }
    }

    #[test]
    fn conjugation_relabels_sites() {
        for s in Permutation::all(3) {
            let ps = permutation_op(&s, 3).unwrap();
            let psi = permutation_op(&s.inverse(), 3).unwrap();
            for k in 1..=3 {
                for (a, b) in [(0, 1), (1, 0), (1, 1)] {
                    let e = elementary(k, a, b, 3).unwrap();
                    let conj = ps.compose(&e).unwrap().compose(&psi).unwrap();
                    assert_eq!(conj, elementary(s.at(k), a, b, 3).unwrap());
                }
            }
        }
    }

    #[test]
    fn reduced_words_multiply_back() {
        for p in Permutation::all(4) {
            for highest in [false, true] {
                let w = p.reduced_word(highest);
                assert_eq!(w.len(), p.inversions());
                let prod = w.iter().fold(Permutation::identity(4), |acc, &i| acc.compose(&Permutation::s(i, 4)));
                assert_eq!(prod, p);
            }
        }
    }

    #[test]
    fn tensor_sites_builds_diagonals() {
        let op = LinOp::tensor_sites(2, |k| site_diag(RatFun::one(), RatFun::z(k)));
        assert_eq!(op.get(3, 3), RatFun::z(1) * RatFun::z(2));
        assert_eq!(op.get(1, 1), RatFun::z(2));
        assert!(op.is_diagonal());
    }
}

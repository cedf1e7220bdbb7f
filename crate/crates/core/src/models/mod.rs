//! Lattice-model instances and their partition functions.
//!
//! Type A: `N` rows of Γ ice, row `i` at `z_i`, `λ₁ + N` columns labeled from
//! the right starting at 0; left/bottom boundary `+`, right boundary `−`,
//! top boundary `−` at the columns `λ_i + N − i`.
//!
//! Type C: `2r` rows alternating Γ (at `z_i^{-1}`) and Δ (at `z_i`), capped in
//! pairs on the right; `λ₁ + r` columns with half-integer labels stored as the
//! integer `label − 1/2`.

mod engines;
mod symmetric;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::exactalg::{ExactError, RatFun};
use crate::fmatrix::{FMatrixError, SiteContext};
use crate::weights::{Ice, Spin};

pub use engines::{
    enumerate_with_count, partition_column_product, partition_enumerate, partition_fmatrix, partition_transfer,
    transfer_with_count, EngineResult,
    ENUMERATE_MAX_FREE_EDGES, COLUMN_MAX_SITES, TRANSFER_MAX_COLUMNS,
};
pub use symmetric::{
    hyperoctahedral_apply, schur, theorem1_rhs, theorem2_rhs, theorem2_rhs_descending_prefactor, SchurMethod,
    SignedPermutation,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("{what} = {size} exceeds the limit {max}")]
    TooLarge { what: &'static str, size: usize, max: usize },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("singular specialization: {0}")]
    Singular(String),
    #[error(transparent)]
    FMatrix(#[from] FMatrixError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// A partition `λ₁ ≥ λ₂ ≥ … ≥ 0`; trailing zeros are dropped.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize)]
pub struct PartitionShape {
    parts: Vec<usize>,
}

impl PartitionShape {
    pub fn new(parts: Vec<usize>) -> Result<Self, ModelError> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(ModelError::InvalidPartition(format!("{parts:?} is not weakly decreasing")));
        }
        let mut parts = parts;
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(PartitionShape { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of nonzero parts.
    pub fn length(&self) -> usize {
        self.parts.len()
    }

    pub fn first(&self) -> usize {
        self.parts.first().copied().unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Parts padded with zeros to `len`.
    pub fn padded(&self, len: usize) -> Result<Vec<usize>, ModelError> {
        if self.parts.len() > len {
            return Err(ModelError::InvalidPartition(format!("{self} has more than {len} nonzero parts")));
        }
        let mut p = self.parts.clone();
        p.resize(len, 0);
        Ok(p)
    }
}

impl FromStr for PartitionShape {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.is_empty() {
            return Ok(PartitionShape::default());
        }
        let parts = s
            .split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|_| ModelError::InvalidPartition(format!("bad part {p:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(parts)
    }
}

impl fmt::Display for PartitionShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", body.join(","))
    }
}

/// Type-A model on `N` rows.
#[derive(Clone, Debug, PartialEq)]
pub struct ModelSpecA {
    pub n: usize,
    pub lambda: PartitionShape,
    /// Row parameters `z_1, …, z_N` (bottom to top).
    pub z: Vec<RatFun>,
}

impl ModelSpecA {
    /// Symbolic spec with `z_i` as variables.
    pub fn new(n: usize, lambda: PartitionShape) -> Result<Self, ModelError> {
        Self::with_params(lambda, (1..=n).map(RatFun::z).collect())
    }

    pub fn with_params(lambda: PartitionShape, z: Vec<RatFun>) -> Result<Self, ModelError> {
        lambda.padded(z.len())?;
        Ok(ModelSpecA { n: z.len(), lambda, z })
    }

    pub fn columns(&self) -> usize {
        self.lambda.first() + self.n
    }

    pub fn context(&self) -> SiteContext {
        SiteContext::type_a_with(self.z.clone())
    }
}

/// Type-C model of rank `r` (`2r` rows).
#[derive(Clone, Debug, PartialEq)]
pub struct ModelSpecC {
    pub r: usize,
    pub lambda: PartitionShape,
    /// Square roots `w_i` of the parameters `z_i = w_i²`.
    pub w: Vec<RatFun>,
}

impl ModelSpecC {
    pub fn new(r: usize, lambda: PartitionShape) -> Result<Self, ModelError> {
        Self::with_roots(lambda, (1..=r).map(RatFun::w).collect())
    }

    pub fn with_roots(lambda: PartitionShape, w: Vec<RatFun>) -> Result<Self, ModelError> {
        lambda.padded(w.len())?;
        Ok(ModelSpecC { r: w.len(), lambda, w })
    }

    pub fn z(&self) -> Vec<RatFun> {
        self.w.iter().map(|w| w * w).collect()
    }

    pub fn columns(&self) -> usize {
        self.lambda.first() + self.r
    }

    pub fn context(&self) -> SiteContext {
        SiteContext::type_c_with(self.w.clone())
    }
}

/// Either model family.
#[derive(Clone, Debug, PartialEq)]
pub enum Model {
    A(ModelSpecA),
    C(ModelSpecC),
}

impl Model {
    pub fn columns(&self) -> usize {
        match self {
            Model::A(s) => s.columns(),
            Model::C(s) => s.columns(),
        }
    }

    pub fn rows(&self) -> usize {
        match self {
            Model::A(s) => s.n,
            Model::C(s) => 2 * s.r,
        }
    }

    pub fn lambda(&self) -> &PartitionShape {
        match self {
            Model::A(s) => &s.lambda,
            Model::C(s) => &s.lambda,
        }
    }

    pub fn context(&self) -> SiteContext {
        match self {
            Model::A(s) => s.context(),
            Model::C(s) => s.context(),
        }
    }

    /// Top spins indexed by column label (0 = rightmost).
    pub fn top_boundary(&self) -> Vec<Spin> {
        match self {
            Model::A(s) => top_boundary_a(s),
            Model::C(s) => top_boundary_c(s),
        }
    }

    /// Closed-form value for the model family.
    pub fn closed_form(&self) -> Result<RatFun, ModelError> {
        match self {
            Model::A(s) => theorem1_rhs(s),
            Model::C(s) => theorem2_rhs(s),
        }
    }

    /// Lattice description consumed by the engines.
    pub(crate) fn lattice(&self) -> Lattice {
        let ctx = self.context();
        Lattice {
            rows: ctx.eps.iter().zip(&ctx.x).map(|(&e, x)| (e, x.clone())).collect(),
            top: self.top_boundary().into_iter().rev().collect(),
            caps: ctx.cap_roots.clone(),
        }
    }
}

impl From<ModelSpecA> for Model {
    fn from(s: ModelSpecA) -> Self {
        Model::A(s)
    }
}

impl From<ModelSpecC> for Model {
    fn from(s: ModelSpecC) -> Self {
        Model::C(s)
    }
}

fn top_boundary_a(s: &ModelSpecA) -> Vec<Spin> {
    let lam = s.lambda.padded(s.n).expect("validated at construction");
    let mut top = vec![0; s.columns()];
    for (i, l) in lam.iter().enumerate() {
        top[l + s.n - (i + 1)] = 1;
    }
    top
}

fn top_boundary_c(s: &ModelSpecC) -> Vec<Spin> {
    let lam = s.lambda.padded(s.r).expect("validated at construction");
    let mut top = vec![0; s.columns()];
    for (i, l) in lam.iter().enumerate() {
        top[l + s.r - (i + 1)] = 1;
    }
    top
}

/// Top boundary indexed by column label (0 = rightmost).
pub fn top_boundary(model: &Model) -> Vec<Spin> {
    model.top_boundary()
}

/// Rows (bottom to top) with flavor and parameter, the top boundary read
/// left to right, and cap roots when rows are capped in pairs.
#[derive(Clone, Debug)]
pub(crate) struct Lattice {
    pub rows: Vec<(Ice, RatFun)>,
    pub top: Vec<Spin>,
    pub caps: Option<Vec<RatFun>>,
}

impl Lattice {
    pub fn width(&self) -> usize {
        self.top.len()
    }

    /// Edges not fixed by the boundary.
    pub fn free_edges(&self) -> usize {
        let (n, c) = (self.rows.len(), self.width());
        let horizontal = n * c.saturating_sub(1) + if self.caps.is_some() { n } else { 0 };
        horizontal + n.saturating_sub(1) * c
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(s: &str) -> PartitionShape {
        s.parse().unwrap()
    }

    #[test]
    fn shapes_normalize_trailing_zeros() {
        assert_eq!(shape("3,1,0"), shape("3,1"));
        assert!("1,2".parse::<PartitionShape>().is_err());
        assert_eq!(shape("").length(), 0);
        assert_eq!(shape("2,1").padded(4).unwrap(), vec![2, 1, 0, 0]);
        assert!(shape("1,1,1").padded(2).is_err());
    }

    #[test]
    fn top_boundaries() {
        let a = Model::A(ModelSpecA::new(3, shape("3,1,0")).unwrap());
        let ones: Vec<usize> = (0..6).filter(|&j| a.top_boundary()[j] == 1).collect();
        assert_eq!(ones, vec![0, 2, 5]);
        let left_to_right: Vec<Spin> = a.top_boundary().into_iter().rev().collect();
        assert_eq!(left_to_right, vec![1, 0, 0, 1, 0, 1]);

        // labels 7/2 and 3/2 are stored as 3 and 1
        let c = Model::C(ModelSpecC::new(2, shape("2,1")).unwrap());
        assert_eq!(c.top_boundary(), vec![0, 1, 0, 1]);

        let z = Model::A(ModelSpecA::new(2, shape("0,0")).unwrap());
        assert_eq!(z.top_boundary(), vec![1, 1]);
    }

    #[test]
    fn free_edge_counts() {
        let a = Model::A(ModelSpecA::new(3, shape("3,1,0")).unwrap());
        assert_eq!(a.lattice().free_edges(), 27);
        let c = Model::C(ModelSpecC::new(2, shape("2,1")).unwrap());
        assert_eq!(c.lattice().free_edges(), 28);
    }
}

//! Four partition-function engines.
//!
//! `partition_enumerate` and `partition_transfer` are independent oracles:
//! the first walks every edge labeling vertex by vertex, the second carries
//! vertical spin profiles row by row. Neither uses the operator machinery.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{Lattice, Model, ModelError};
use crate::exactalg::RatFun;
use crate::fmatrix::{
    cap_vector, column_operator, conjugated_column, fk_closed_form, size_limit, DEFAULT_MAX_N,
};
use crate::tensorops::SVec;
use crate::weights::{cap_weight, ordinary_weight, Ice, Spin};

/// Free-edge bound for the edge scan.
pub const ENUMERATE_MAX_FREE_EDGES: usize = 32;
/// Column bound for the row-transfer DP (profiles are `u32` bitmasks).
pub const TRANSFER_MAX_COLUMNS: usize = 16;
/// Default site bound for the column-operator product (`FFICE_MAX_N` overrides).
pub const COLUMN_MAX_SITES: usize = 12;

/// Value plus the number of admissible states visited.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EngineResult {
    pub value: RatFun,
    pub states: u64,
}

/// `table[l][t][r][b]` for one row.
type VertexTable = [[[[RatFun; 2]; 2]; 2]; 2];

fn vertex_table(ice: Ice, x: &RatFun) -> VertexTable {
    std::array::from_fn(|l| {
        std::array::from_fn(|t| {
            std::array::from_fn(|r| std::array::from_fn(|b| ordinary_weight(ice, x, l as Spin, t as Spin, r as Spin, b as Spin)))
        })
    })
}

// ---------------------------------------------------------------------------
// edge scan

struct Scan<'a> {
    lat: &'a Lattice,
    tables: Vec<VertexTable>,
    vertical: Vec<Spin>,
    value: RatFun,
    states: u64,
}

impl Scan<'_> {
    fn visit(&mut self, row: usize, col: usize, h: Spin, pending: Spin, acc: RatFun) {
        let width = self.lat.width();
        if row == self.lat.rows.len() {
            self.value = &self.value + &acc;
            self.states += 1;
            return;
        }
        if col == width {
            // h is the right edge of this row
            match &self.lat.caps {
                None => {
                    if h == 1 {
                        self.visit(row + 1, 0, 0, 0, acc);
                    }
                }
                Some(roots) if row.is_multiple_of(2) => self.visit(row + 1, 0, 0, h, acc),
                Some(roots) => {
                    let c = cap_weight(pending, h, &roots[row / 2]);
                    if !c.is_zero() {
                        self.visit(row + 1, 0, 0, 0, acc * c);
                    }
                }
            }
            return;
        }
        let below = self.vertical[col];
        let last_row = row + 1 == self.lat.rows.len();
        for top in 0..2u8 {
            if last_row && top != self.lat.top[col] {
                continue;
            }
            for right in 0..2u8 {
                let w = &self.tables[row][h as usize][top as usize][right as usize][below as usize];
                if w.is_zero() {
                    continue;
                }
                self.vertical[col] = top;
                let next = &acc * w;
                self.visit(row, col + 1, right, pending, next);
                self.vertical[col] = below;
            }
        }
    }
}

/// Edge-scan sum with the number of admissible states.
pub fn enumerate_with_count(model: &Model) -> Result<EngineResult, ModelError> {
    let lat = model.lattice();
    let free = lat.free_edges();
    if free > ENUMERATE_MAX_FREE_EDGES {
        return Err(ModelError::TooLarge { what: "free edges", size: free, max: ENUMERATE_MAX_FREE_EDGES });
    }
    if lat.rows.is_empty() {
        return Ok(EngineResult { value: RatFun::one(), states: 1 });
    }
    let mut scan = Scan {
        tables: lat.rows.iter().map(|(e, x)| vertex_table(*e, x)).collect(),
        vertical: vec![0; lat.width()],
        lat: &lat,
        value: RatFun::zero(),
        states: 0,
    };
    scan.visit(0, 0, 0, 0, RatFun::one());
    Ok(EngineResult { value: scan.value, states: scan.states })
}

/// Sum of Boltzmann weights over all admissible edge labelings.
pub fn partition_enumerate(model: &Model) -> Result<RatFun, ModelError> {
    enumerate_with_count(model).map(|r| r.value)
}

// ---------------------------------------------------------------------------
// row transfer

/// Key: vertical profile above the current row (bit `p` = column `p` from the
/// left) and the open right spin of an uncapped Γ row (2 when none).
type Profile = (u32, u8);

/// Row-transfer DP with the number of admissible states.
pub fn transfer_with_count(model: &Model) -> Result<EngineResult, ModelError> {
    let lat = model.lattice();
    let width = lat.width();
    if width > TRANSFER_MAX_COLUMNS {
        return Err(ModelError::TooLarge { what: "columns", size: width, max: TRANSFER_MAX_COLUMNS });
    }
    let nrows = lat.rows.len();
    let mut layer: BTreeMap<Profile, (RatFun, u64)> = BTreeMap::new();
    layer.insert((0, 2), (RatFun::one(), 1));
    for (row, (ice, x)) in lat.rows.iter().enumerate() {
        let last = row + 1 == nrows;
        let mut next: BTreeMap<Profile, (RatFun, u64)> = BTreeMap::new();
        for (&(below, open), (weight, count)) in &layer {
            for (above, right, w) in row_configurations(*ice, x, below, width, last.then_some(&lat.top[..])) {
                let (key, w) = match &lat.caps {
                    None if right == 1 => ((above, 2), w),
                    None => continue,
                    Some(_) if open == 2 => ((above, right), w),
                    Some(roots) => {
                        let c = cap_weight(open, right, &roots[row / 2]);
                        if c.is_zero() {
                            continue;
                        }
                        ((above, 2), w * c)
                    }
                };
                let entry = next.entry(key).or_insert_with(|| (RatFun::zero(), 0));
                entry.0 = &entry.0 + &(weight * &w);
                entry.1 += count;
            }
        }
        layer = next;
    }
    let (value, states) = layer.into_values().fold((RatFun::zero(), 0), |(v, s), (w, c)| (v + w, s + c));
    Ok(EngineResult { value, states })
}

/// All fillings of one row over a fixed bottom profile: `(top profile, right spin, weight)`.
fn row_configurations(ice: Ice, x: &RatFun, below: u32, width: usize, top: Option<&[Spin]>) -> Vec<(u32, Spin, RatFun)> {
    // the row's own weights, looked up per pattern
    let weights: Vec<RatFun> = (0..16u8)
        .map(|k| ordinary_weight(ice, x, k >> 3 & 1, k >> 2 & 1, k >> 1 & 1, k & 1))
        .collect();
    let mut partial: Vec<(u32, Spin, RatFun)> = vec![(0, 0, RatFun::one())];
    for p in 0..width {
        let b = (below >> p & 1) as Spin;
        let mut grown = Vec::with_capacity(partial.len() * 2);
        for (above, h, w) in &partial {
            for t in 0..2u8 {
                if top.is_some_and(|tp| tp[p] != t) {
                    continue;
                }
                for r in 0..2u8 {
                    let vw = &weights[(*h << 3 | t << 2 | r << 1 | b) as usize];
                    if vw.is_zero() {
                        continue;
                    }
                    grown.push((above | (t as u32) << p, r, w * vw));
                }
            }
        }
        partial = grown;
    }
    partial
}

/// Row-transfer DP value.
pub fn partition_transfer(model: &Model) -> Result<RatFun, ModelError> {
    transfer_with_count(model).map(|r| r.value)
}

// ---------------------------------------------------------------------------
// operator engines

fn boundary_vector(model: &Model) -> Result<SVec, ModelError> {
    let n = model.rows();
    Ok(match model {
        Model::A(_) => SVec::basis(n, ((1u64 << n) - 1) as u32),
        Model::C(s) => cap_vector(&s.context())?,
    })
}

/// `⟨0…0| S^{[m_{C-1}]} ⋯ S^{[m_0]} |right boundary⟩`.
pub fn partition_column_product(model: &Model) -> Result<RatFun, ModelError> {
    let n = model.rows();
    let max = size_limit(COLUMN_MAX_SITES);
    if n > max {
        return Err(ModelError::TooLarge { what: "rows", size: n, max });
    }
    if n == 0 {
        return Ok(RatFun::one());
    }
    let ctx = model.context();
    let ops = [column_operator(0, &ctx, None), column_operator(1, &ctx, None)];
    let mut vec = boundary_vector(model)?;
    for m in model.top_boundary() {
        vec = ops[m as usize].apply(&vec).expect("same site count");
    }
    Ok(vec.get(0))
}

/// Same contraction with every column replaced by its closed-form
/// F-conjugate, and the right boundary by `F|1…1⟩ = |1…1⟩` or the closed form of `FK`.
pub fn partition_fmatrix(model: &Model) -> Result<RatFun, ModelError> {
    let n = model.rows();
    let max = size_limit(DEFAULT_MAX_N);
    if n > max {
        return Err(ModelError::TooLarge { what: "rows", size: n, max });
    }
    if n == 0 {
        return Ok(RatFun::one());
    }
    let ctx = model.context();
    let ops = [conjugated_column(0, &ctx)?, conjugated_column(1, &ctx)?];
    let mut vec = match model {
        Model::A(_) => boundary_vector(model)?,
        Model::C(_) => fk_closed_form(&ctx)?,
    };
    for m in model.top_boundary() {
        vec = ops[m as usize].apply(&vec).expect("same site count");
    }
    Ok(vec.get(0))
}

//! Exhaustive certification of the local relations: RTT and RRR Yang-Baxter
//! equations, unitarity, the caduceus relation and the free-fermion
//! condition.
//!
//! Every check contracts interior edges by brute-force summation over spin
//! assignments, independently of the operator algebra in `tensorops`.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::exactalg::RatFun;
use crate::weights::{self, cap_weight, ordinary_weight, r_weight, Ice, Spin, Table};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Relation {
    FreeFermion,
    Rtt,
    Rrr,
    Unitarity,
    Caduceus,
}

impl Relation {
    pub const ALL: [Relation; 5] = [Relation::FreeFermion, Relation::Rtt, Relation::Rrr, Relation::Unitarity, Relation::Caduceus];

    pub fn name(self) -> &'static str {
        match self {
            Relation::FreeFermion => "free-fermion",
            Relation::Rtt => "rtt",
            Relation::Rrr => "rrr",
            Relation::Unitarity => "unitarity",
            Relation::Caduceus => "caduceus",
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Outcome of one (combination, boundary) cell.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RelationReport {
    pub relation: Relation,
    /// Ice types involved, e.g. `"ΓΔ"`.
    pub combo: String,
    /// Boundary spins in the order the relation names them.
    pub boundary: Vec<Spin>,
    pub lhs: RatFun,
    pub rhs: RatFun,
    pub pass: bool,
}

impl RelationReport {
    fn new(relation: Relation, combo: String, boundary: Vec<Spin>, lhs: RatFun, rhs: RatFun) -> Self {
        let pass = lhs == rhs;
        RelationReport { relation, combo, boundary, lhs, rhs, pass }
    }
}

fn combo_name(ices: &[Ice]) -> String {
    ices.iter().map(|i| i.symbol()).collect()
}

/// Weight lookup table indexed by four spins.
struct Table4([RatFun; 16]);

impl Table4 {
    fn build<F: Fn(Spin, Spin, Spin, Spin) -> RatFun>(f: F) -> Self {
        Table4(std::array::from_fn(|k| {
            let s = |sh: usize| ((k >> sh) & 1) as Spin;
            f(s(3), s(2), s(1), s(0))
        }))
    }

    #[inline]
    fn at(&self, a: Spin, b: Spin, c: Spin, d: Spin) -> &RatFun {
        &self.0[((a as usize) << 3) | ((b as usize) << 2) | ((c as usize) << 1) | d as usize]
    }

    fn ordinary(ice: Ice, z: &RatFun) -> Self {
        Self::build(|l, t, r, b| ordinary_weight(ice, z, l, t, r, b))
    }

    fn r(ei: Ice, ej: Ice, z: &RatFun, zp: &RatFun) -> Self {
        Self::build(|a, b, c, d| r_weight(ei, ej, z, zp, a, b, c, d))
    }
}

fn boundaries(k: usize) -> Vec<Vec<Spin>> {
    (0..1u32 << k).map(|m| (0..k).map(|t| ((m >> (k - 1 - t)) & 1) as Spin).collect()).collect()
}

const SPINS: [Spin; 2] = [0, 1];

/// RTT relation for `S` = X ice at `zi`, `T` = Y ice at `zj`, `R` = XY ice at `(zi, zj)`.
pub fn check_rtt_at(x: Ice, y: Ice, zi: &RatFun, zj: &RatFun) -> Vec<RelationReport> {
    let s = Table4::ordinary(x, zi);
    let t = Table4::ordinary(y, zj);
    let r = Table4::r(x, y, zi, zj);
    boundaries(6)
        .into_par_iter()
        .map(|bd| {
            let [a, b, c, d, e, f] = [bd[0], bd[1], bd[2], bd[3], bd[4], bd[5]];
            let mut lhs = RatFun::zero();
            let mut rhs = RatFun::zero();
            for g in SPINS {
                for h in SPINS {
                    for i in SPINS {
                        let l = r.at(a, b, g, i) * s.at(g, c, d, h);
                        if !l.is_zero() {
                            lhs = lhs + l * t.at(i, h, e, f);
                        }
                        // reuse the loop variables as (j, k, l) on the right picture
                        let (jj, kk, ll) = (g, h, i);
                        let rr = t.at(b, c, jj, kk) * s.at(a, kk, ll, f);
                        if !rr.is_zero() {
                            rhs = rhs + rr * r.at(ll, jj, d, e);
                        }
                    }
                }
            }
            RelationReport::new(Relation::Rtt, combo_name(&[x, y]), bd, lhs, rhs)
        })
        .collect()
}

/// RTT relation with symbolic `z_i = z1`, `z_j = z2`.
pub fn check_rtt(x: Ice, y: Ice) -> Vec<RelationReport> {
    check_rtt_at(x, y, &RatFun::z(1), &RatFun::z(2))
}

/// RRR relation: `R` = XY at `(z_i, z_j)`, `S` = XZ at `(z_i, z_k)`, `T` = YZ at `(z_j, z_k)`.
pub fn check_rrr(x: Ice, y: Ice, z: Ice) -> Vec<RelationReport> {
    let (zi, zj, zk) = (RatFun::z(1), RatFun::z(2), RatFun::z(3));
    let r = Table4::r(x, y, &zi, &zj);
    let s = Table4::r(x, z, &zi, &zk);
    let t = Table4::r(y, z, &zj, &zk);
    boundaries(6)
        .into_par_iter()
        .map(|bd| {
            let [a, b, c, d, e, f] = [bd[0], bd[1], bd[2], bd[3], bd[4], bd[5]];
            let mut lhs = RatFun::zero();
            let mut rhs = RatFun::zero();
            for p in SPINS {
                for q in SPINS {
                    for w in SPINS {
                        // left picture: interior (g, h, i) = (p, q, w)
                        let l = r.at(a, b, p, q) * s.at(p, c, d, w);
                        if !l.is_zero() {
                            lhs = lhs + l * t.at(q, w, e, f);
                        }
                        // right picture: interior (j, k, l) = (p, q, w)
                        let rr = t.at(b, c, p, q) * s.at(a, q, w, f);
                        if !rr.is_zero() {
                            rhs = rhs + rr * r.at(w, p, d, e);
                        }
                    }
                }
            }
            RelationReport::new(Relation::Rrr, combo_name(&[x, y, z]), bd, lhs, rhs)
        })
        .collect()
}

/// Unitarity: `Σ_{e,f} S(a,b,f,e) T(e,f,c,d) = [a=d][b=c]` with `S` = XY at
/// `(z_i, z_j)` and `T` = YX at `(z_j, z_i)`.
pub fn check_unitarity(x: Ice, y: Ice) -> Vec<RelationReport> {
    let (zi, zj) = (RatFun::z(1), RatFun::z(2));
    let s = Table4::r(x, y, &zi, &zj);
    let t = Table4::r(y, x, &zj, &zi);
    boundaries(4)
        .into_iter()
        .map(|bd| {
            let [a, b, c, d] = [bd[0], bd[1], bd[2], bd[3]];
            let mut lhs = RatFun::zero();
            for e in SPINS {
                for f in SPINS {
                    lhs = lhs + s.at(a, b, f, e) * t.at(e, f, c, d);
                }
            }
            let rhs = if a == d && b == c { RatFun::one() } else { RatFun::zero() };
            RelationReport::new(Relation::Unitarity, combo_name(&[x, y]), bd, lhs, rhs)
        })
        .collect()
}

/// Caduceus relation on boundary `(ε1, ε2, ε3, ε4)`.
///
/// The left side contracts ΔΓ at `(z_i, z_j^{-1})`, ΔΔ at `(z_i, z_j)`,
/// ΓΓ at `(z_i^{-1}, z_j^{-1})`, ΓΔ at `(z_i^{-1}, z_j)` and two caps at
/// `z_i`, `z_j` over 8 internal edges; the right side is
/// `(z_j - v z_i)/(z_i - v z_j) · C(ε2, ε1; z_j) · C(ε4, ε3; z_i)`.
pub fn check_caduceus() -> Vec<RelationReport> {
    use Ice::{Delta as D, Gamma as G};
    let (wi, wj) = (RatFun::w(1), RatFun::w(2));
    let (zi, zj) = (RatFun::z(1), RatFun::z(2));
    let zii = zi.inv().expect("nonzero");
    let zji = zj.inv().expect("nonzero");
    let dg = Table4::r(D, G, &zi, &zji);
    let dd = Table4::r(D, D, &zi, &zj);
    let gg = Table4::r(G, G, &zii, &zji);
    let gd = Table4::r(G, D, &zii, &zj);
    let cap_i: [[RatFun; 2]; 2] = std::array::from_fn(|b| std::array::from_fn(|t| cap_weight(b as Spin, t as Spin, &wi)));
    let cap_j: [[RatFun; 2]; 2] = std::array::from_fn(|b| std::array::from_fn(|t| cap_weight(b as Spin, t as Spin, &wj)));
    let v = RatFun::v();
    let factor = (&zj - &(&v * &zi)).div(&(&zi - &(&v * &zj))).expect("generic parameters");
    boundaries(4)
        .into_par_iter()
        .map(|bd| {
            let [e1, e2, e3, e4] = [bd[0], bd[1], bd[2], bd[3]];
            let mut lhs = RatFun::zero();
            for s3a in SPINS {
                for s4a in SPINS {
                    let w1 = dg.at(e3, e2, s3a, s4a);
                    if w1.is_zero() {
                        continue;
                    }
                    for s3b in SPINS {
                        for s2a in SPINS {
                            let w2 = dd.at(s3a, e1, s3b, s2a);
                            if w2.is_zero() {
                                continue;
                            }
                            for s1a in SPINS {
                                for s4b in SPINS {
                                    let w3 = gg.at(e4, s4a, s1a, s4b);
                                    if w3.is_zero() {
                                        continue;
                                    }
                                    for s1b in SPINS {
                                        for s2b in SPINS {
                                            let w4 = gd.at(s1a, s2a, s1b, s2b);
                                            let c1 = &cap_i[s1b as usize][s3b as usize];
                                            let c2 = &cap_j[s4b as usize][s2b as usize];
                                            if w4.is_zero() || c1.is_zero() || c2.is_zero() {
                                                continue;
                                            }
                                            lhs = lhs + w1 * w2 * w3 * w4 * c1 * c2;
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
            let rhs = &factor * &(&cap_j[e2 as usize][e1 as usize] * &cap_i[e4 as usize][e3 as usize]);
            RelationReport::new(Relation::Caduceus, "ΔΓ·ΔΔ·ΓΓ·ΓΔ".into(), bd, lhs, rhs)
        })
        .collect()
}

/// Free-fermion condition for the six vertex tables: `a1 a2 + b1 b2 = c1 c2`.
pub fn check_free_fermion() -> Vec<RelationReport> {
    use crate::weights::Pattern::*;
    Table::SIX_VERTEX
        .iter()
        .map(|&t| {
            let e = weights::table_entries(t);
            let w = |p: weights::Pattern| e.iter().find(|x| x.name == p.name()).expect("pattern").weight.clone();
            let lhs = w(A1) * w(A2) + w(B1) * w(B2);
            let rhs = w(C1) * w(C2);
            RelationReport::new(Relation::FreeFermion, t.title().trim_end_matches(" ice").to_string(), vec![], lhs, rhs)
        })
        .collect()
}

fn pairs() -> Vec<(Ice, Ice)> {
    Ice::ALL.iter().flat_map(|&x| Ice::ALL.iter().map(move |&y| (x, y))).collect()
}

/// Runs every combination of one relation.
pub fn run(rel: Relation) -> Vec<RelationReport> {
    match rel {
        Relation::FreeFermion => check_free_fermion(),
        Relation::Rtt => pairs().into_iter().flat_map(|(x, y)| check_rtt(x, y)).collect(),
        Relation::Rrr => pairs()
            .into_iter()
            .flat_map(|(x, y)| Ice::ALL.iter().map(move |&z| (x, y, z)))
            .flat_map(|(x, y, z)| check_rrr(x, y, z))
            .collect(),
        Relation::Unitarity => pairs().into_iter().flat_map(|(x, y)| check_unitarity(x, y)).collect(),
        Relation::Caduceus => check_caduceus(),
    }
}

/// Every relation, in the fixed order free-fermion, rtt, rrr, unitarity, caduceus.
pub fn run_all() -> Vec<RelationReport> {
    Relation::ALL.iter().flat_map(|&r| run(r)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn all_pass(r: &[RelationReport]) -> bool {
        r.iter().all(|x| x.pass)
    }

    #[test]
    fn rtt_gamma_gamma() {
        let r = check_rtt(Ice::Gamma, Ice::Gamma);
        assert_eq!(r.len(), 64);
        assert!(all_pass(&r));
        // all '+' boundary: both sides are products of a1 weights
        assert!(r[0].lhs.is_one());
    }

    #[test]
    fn rtt_numeric_specialization() {
        let q = |n: i64, d: i64| RatFun::from_rational(&BigRational::new(BigInt::from(n), BigInt::from(d)));
        let r = check_rtt_at(Ice::Gamma, Ice::Gamma, &q(3, 7), &q(-11, 5));
        assert!(all_pass(&r));
    }

    #[test]
    fn unitarity_examples() {
        let r = check_unitarity(Ice::Gamma, Ice::Gamma);
        assert!(all_pass(&r));
        let at = |s: [Spin; 4]| r.iter().find(|x| x.boundary == s).unwrap().lhs.clone();
        assert!(at([0, 0, 0, 0]).is_one());
        assert!(at([1, 0, 0, 1]).is_one());
        assert!(at([1, 0, 1, 0]).is_zero());
    }

    #[test]
    fn caduceus_all_boundaries() {
        let r = check_caduceus();
        assert_eq!(r.len(), 16);
        assert!(all_pass(&r));
        for x in &r {
            let b = &x.boundary;
            if b[0] == b[1] || b[2] == b[3] {
                assert!(x.lhs.is_zero() && x.rhs.is_zero());
            }
        }
    }

    #[test]
    fn free_fermion_reports() {
        let r = check_free_fermion();
        assert_eq!(r.len(), 6);
        assert!(all_pass(&r));
    }

    #[test]
    fn rrr_one_combo() {
        assert!(all_pass(&check_rrr(Ice::Gamma, Ice::Delta, Ice::Gamma)));
    }
}

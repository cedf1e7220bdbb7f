//! Boltzmann weight tables.
//!
//! Spins are `0` (`+`) and `1` (`-`). Ordinary vertices take their edges in
//! the order (left, top, right, bottom); R-vertices in the order
//! (a, b, c, d) = (bottom-left, top-left, top-right, bottom-right); caps in
//! the order (bottom, top). Patterns outside the admissible six get weight 0.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::exactalg::RatFun;

pub type Spin = u8;

/// Ordinary ice flavor, identified with the sign `eps`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Ice {
    /// `eps = +1`
    Gamma,
    /// `eps = -1`
    Delta,
}

impl Ice {
    pub fn eps(self) -> i8 {
        match self {
            Ice::Gamma => 1,
            Ice::Delta => -1,
        }
    }

    pub fn from_eps(e: i8) -> Ice {
        match e {
            1 => Ice::Gamma,
            -1 => Ice::Delta,
            _ => panic!("eps must be +1 or -1, got {e}"),
        }
    }

    pub fn flip(self) -> Ice {
        match self {
            Ice::Gamma => Ice::Delta,
            Ice::Delta => Ice::Gamma,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Ice::Gamma => "Γ",
            Ice::Delta => "Δ",
        }
    }

    pub const ALL: [Ice; 2] = [Ice::Gamma, Ice::Delta];
}

/// The six admissible spin patterns.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Pattern {
    A1,
    A2,
    B1,
    B2,
    C1,
    C2,
}

impl Pattern {
    pub const ALL: [Pattern; 6] = [Pattern::A1, Pattern::A2, Pattern::B1, Pattern::B2, Pattern::C1, Pattern::C2];

    /// Spins in edge order (ordinary: left, top, right, bottom; R: a, b, c, d).
    pub fn spins(self) -> [Spin; 4] {
        match self {
            Pattern::A1 => [0, 0, 0, 0],
            Pattern::A2 => [1, 1, 1, 1],
            Pattern::B1 => [0, 1, 0, 1],
            Pattern::B2 => [1, 0, 1, 0],
            Pattern::C1 => [1, 0, 0, 1],
            Pattern::C2 => [0, 1, 1, 0],
        }
    }

    pub fn classify(s: [Spin; 4]) -> Option<Pattern> {
        Pattern::ALL.into_iter().find(|p| p.spins() == s)
    }

    pub fn name(self) -> &'static str {
        match self {
            Pattern::A1 => "a1",
            Pattern::A2 => "a2",
            Pattern::B1 => "b1",
            Pattern::B2 => "b2",
            Pattern::C1 => "c1",
            Pattern::C2 => "c2",
        }
    }
}

/// Table entry of an ordinary vertex for a given pattern.
pub fn ordinary_pattern_weight(ice: Ice, z: &RatFun, p: Pattern) -> RatFun {
    let one = RatFun::one();
    let v = RatFun::v();
    match (ice, p) {
        (_, Pattern::A1) | (_, Pattern::C2) => one,
        (Ice::Gamma, Pattern::A2) => z.clone(),
        (Ice::Delta, Pattern::A2) => -(&v * z),
        (Ice::Gamma, Pattern::B1) => -v,
        (Ice::Delta, Pattern::B1) => one,
        (_, Pattern::B2) => z.clone(),
        (_, Pattern::C1) => z * &(one - v),
    }
}

/// Weight of an ordinary vertex with spins (left, top, right, bottom).
pub fn ordinary_weight(ice: Ice, z: &RatFun, left: Spin, top: Spin, right: Spin, bottom: Spin) -> RatFun {
    match Pattern::classify([left, top, right, bottom]) {
        Some(p) => ordinary_pattern_weight(ice, z, p),
        None => RatFun::zero(),
    }
}

/// Table entry of an R-vertex of flavor (`ice_i`, `ice_j`) at `(z, z')`.
pub fn r_pattern_weight(ice_i: Ice, ice_j: Ice, z: &RatFun, zp: &RatFun, p: Pattern) -> RatFun {
    use Ice::{Delta, Gamma};
    if p == Pattern::A1 {
        return RatFun::one();
    }
    let one = RatFun::one();
    let v = RatFun::v();
    let omv = &one - &v;
    let z_minus_zp = z - zp;
    // denominators: z' - v z for ΓΓ and ΔΓ, z - v z' for ΔΔ and ΓΔ
    let den = match (ice_i, ice_j) {
        (Gamma, Gamma) | (Delta, Gamma) => zp - &(&v * z),
        (Delta, Delta) | (Gamma, Delta) => z - &(&v * zp),
    };
    let num = match (ice_i, ice_j, p) {
        (Gamma, Gamma, Pattern::A2) => z - &(&v * zp),
        (Delta, Delta, Pattern::A2) => zp - &(&v * z),
        (Delta, Gamma, Pattern::A2) | (Gamma, Delta, Pattern::A2) => return one,
        (Gamma, Gamma, Pattern::B1) | (Delta, Delta, Pattern::B1) => &v * &z_minus_zp,
        (Delta, Gamma, Pattern::B1) => zp - &(&(&v * &v) * z),
        (Gamma, Delta, Pattern::B1) => &(&v * &v) * zp - z.clone(),
        (_, _, Pattern::B2) => z_minus_zp,
        (_, _, Pattern::C1) => &omv * z,
        (_, _, Pattern::C2) => &omv * zp,
        (_, _, Pattern::A1) => unreachable!(),
    };
    num.div(&den).expect("R-vertex denominator vanished: z and z' must be generic")
}

/// Weight of an R-vertex with spins (a, b, c, d) = (BL, TL, TR, BR).
#[allow(clippy::too_many_arguments)]
pub fn r_weight(ice_i: Ice, ice_j: Ice, z: &RatFun, zp: &RatFun, a: Spin, b: Spin, c: Spin, d: Spin) -> RatFun {
    match Pattern::classify([a, b, c, d]) {
        Some(p) => r_pattern_weight(ice_i, ice_j, z, zp, p),
        None => RatFun::zero(),
    }
}

/// Cap weight with spins (bottom, top); `root` is `z^{1/2}`.
///
/// `C(0,1) = -sqrt(v) z^{1/2}`, `C(1,0) = z^{-1/2}`, zero otherwise.
pub fn cap_weight(bottom: Spin, top: Spin, root: &RatFun) -> RatFun {
    match (bottom, top) {
        (0, 1) => -(&RatFun::u() * root),
        (1, 0) => root.inv().expect("cap parameter must be nonzero"),
        _ => RatFun::zero(),
    }
}

/// Every table in the model family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Table {
    Gamma,
    Delta,
    GammaGamma,
    GammaDelta,
    DeltaGamma,
    DeltaDelta,
    Cap,
}

impl Table {
    pub const ALL: [Table; 7] =
        [Table::Gamma, Table::Delta, Table::GammaGamma, Table::GammaDelta, Table::DeltaGamma, Table::DeltaDelta, Table::Cap];

    /// The six six-vertex tables (caps excluded).
    pub const SIX_VERTEX: [Table; 6] =
        [Table::Gamma, Table::Delta, Table::GammaGamma, Table::GammaDelta, Table::DeltaGamma, Table::DeltaDelta];

    pub fn r_pair(self) -> Option<(Ice, Ice)> {
        match self {
            Table::GammaGamma => Some((Ice::Gamma, Ice::Gamma)),
            Table::GammaDelta => Some((Ice::Gamma, Ice::Delta)),
            Table::DeltaGamma => Some((Ice::Delta, Ice::Gamma)),
            Table::DeltaDelta => Some((Ice::Delta, Ice::Delta)),
            _ => None,
        }
    }

    pub fn from_pair(i: Ice, j: Ice) -> Table {
        match (i, j) {
            (Ice::Gamma, Ice::Gamma) => Table::GammaGamma,
            (Ice::Gamma, Ice::Delta) => Table::GammaDelta,
            (Ice::Delta, Ice::Gamma) => Table::DeltaGamma,
            (Ice::Delta, Ice::Delta) => Table::DeltaDelta,
        }
    }

    pub fn cli_name(self) -> &'static str {
        match self {
            Table::Gamma => "gamma",
            Table::Delta => "delta",
            Table::GammaGamma => "gg",
            Table::GammaDelta => "gd",
            Table::DeltaGamma => "dg",
            Table::DeltaDelta => "dd",
            Table::Cap => "cap",
        }
    }

    pub fn title(self) -> &'static str {
        match self {
            Table::Gamma => "Γ ice",
            Table::Delta => "Δ ice",
            Table::GammaGamma => "ΓΓ ice",
            Table::GammaDelta => "ΓΔ ice",
            Table::DeltaGamma => "ΔΓ ice",
            Table::DeltaDelta => "ΔΔ ice",
            Table::Cap => "cap",
        }
    }
}

impl fmt::Display for Table {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.cli_name())
    }
}

impl FromStr for Table {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Table::ALL
            .into_iter()
            .find(|t| t.cli_name() == s)
            .ok_or_else(|| format!("unknown table {s:?}; expected one of gamma, delta, gg, gd, dg, dd, cap"))
    }
}

/// One row of a displayed table.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TableEntry {
    pub name: String,
    pub spins: Vec<Spin>,
    pub weight: RatFun,
}

/// The nonzero entries of a table at symbolic parameters: `z = z1`, `z' = z2`,
/// and `z1^{1/2} = w1` for caps.
pub fn table_entries(t: Table) -> Vec<TableEntry> {
    let z = RatFun::z(1);
    let zp = RatFun::z(2);
    match t {
        Table::Gamma | Table::Delta => {
            let ice = if t == Table::Gamma { Ice::Gamma } else { Ice::Delta };
            Pattern::ALL
                .iter()
                .map(|&p| TableEntry { name: p.name().into(), spins: p.spins().to_vec(), weight: ordinary_pattern_weight(ice, &z, p) })
                .collect()
        }
        Table::Cap => {
            let w = RatFun::w(1);
            vec![
                TableEntry { name: "cap(-,+)".into(), spins: vec![0, 1], weight: cap_weight(0, 1, &w) },
                TableEntry { name: "cap(+,-)".into(), spins: vec![1, 0], weight: cap_weight(1, 0, &w) },
            ]
        }
        _ => {
            let (i, j) = t.r_pair().expect("R table");
            Pattern::ALL
                .iter()
                .map(|&p| TableEntry { name: p.name().into(), spins: p.spins().to_vec(), weight: r_pattern_weight(i, j, &z, &zp, p) })
                .collect()
        }
    }
}

/// `a1 a2 + b1 b2 - c1 c2` for a six-vertex table at symbolic parameters.
pub fn free_fermion_defect(t: Table) -> RatFun {
    let e = table_entries(t);
    let w = |p: Pattern| e.iter().find(|x| x.name == p.name()).expect("pattern present").weight.clone();
    &(&w(Pattern::A1) * &w(Pattern::A2)) + &(&w(Pattern::B1) * &w(Pattern::B2)) - &w(Pattern::C1) * &w(Pattern::C2)
}

/// True iff the table satisfies `a1 a2 + b1 b2 - c1 c2 = 0` identically.
/// The cap table is not a six-vertex table and is reported as `false`.
pub fn free_fermion_check(t: Table) -> bool {
    t != Table::Cap && free_fermion_defect(t).is_zero()
}

/// Text rendering used by `weights show`: a small picture of each pattern
/// followed by the canonical weight.
pub fn render_table(t: Table) -> String {
    let sym = |s: Spin| if s == 0 { '+' } else { '-' };
    let mut out = String::new();
    let params = match t {
        Table::Gamma | Table::Delta => "spectral parameter z = z1",
        Table::Cap => "spectral parameter z = z1 (z^{1/2} = w1)",
        _ => "spectral parameters z = z1, z' = z2",
    };
    out.push_str(&format!("{} ({params})\n", t.title()));
    for e in table_entries(t) {
        let pic = match (t, e.spins.as_slice()) {
            (Table::Gamma | Table::Delta, [l, tp, r, b]) => {
                format!("    {}\n  {} ● {}\n    {}", sym(*tp), sym(*l), sym(*r), sym(*b))
            }
            (Table::Cap, [b, tp]) => format!("  {} ╮\n    ●\n  {} ╯", sym(*tp), sym(*b)),
            (_, [a, b, c, d]) => format!("  {}   {}\n    ╳\n  {}   {}", sym(*b), sym(*c), sym(*a), sym(*d)),
            _ => String::new(),
        };
        out.push_str(&format!("{}:\n{}\n  weight = {}\n", e.name, pic, e.weight));
    }
    out
}

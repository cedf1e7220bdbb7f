use std::cmp::Ordering;
use std::fmt;

/// Maximum number of variables: `u` plus `w1 .. w15`.
pub const MAX_VARS: usize = 16;

/// Index of a variable in the fixed global order `u < w1 < w2 < ...`.
///
/// `Var(0)` is `u` (the square root of the deformation parameter `v`),
/// `Var(k)` for `k >= 1` is `w_k` (the square root of the spectral parameter `z_k`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(pub usize);

impl Var {
    pub const U: Var = Var(0);

    pub fn w(k: usize) -> Var {
        assert!((1..MAX_VARS).contains(&k), "w-index {k} out of range");
        Var(k)
    }

    pub fn name(self) -> String {
        if self.0 == 0 {
            "u".to_string()
        } else {
            format!("w{}", self.0)
        }
    }

    /// Name of the squared variable (`v` or `z_k`).
    pub fn square_name(self) -> String {
        if self.0 == 0 {
            "v".to_string()
        } else {
            format!("z{}", self.0)
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Laurent monomial: an exponent vector over `(u, w1, ..., w15)`.
///
/// Ordering is graded-lexicographic with `u < w1 < ... < w15`: total degree
/// first, ties broken by comparing the exponent of the largest variable first.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: [i16; MAX_VARS],
}

impl Monomial {
    pub const ONE: Monomial = Monomial { exps: [0; MAX_VARS] };

    pub fn var(v: Var) -> Self {
        Self::var_pow(v, 1)
    }

    pub fn var_pow(v: Var, e: i32) -> Self {
        let mut m = Self::ONE;
        m.exps[v.0] = to_exp(e);
        m
    }

    pub fn from_exponents(exps: &[i32]) -> Self {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut m = Self::ONE;
        for (slot, &e) in m.exps.iter_mut().zip(exps) {
            *slot = to_exp(e);
        }
        m
    }

    #[inline]
    pub fn exp(&self, v: Var) -> i32 {
        self.exps[v.0] as i32
    }

    #[inline]
    pub fn set_exp(&mut self, v: Var, e: i32) {
        self.exps[v.0] = to_exp(e);
    }

    pub fn exponents(&self) -> &[i16; MAX_VARS] {
        &self.exps
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn degree(&self) -> i32 {
        self.exps.iter().map(|&e| e as i32).sum()
    }

    /// Number of leading variables needed to represent this monomial.
    pub fn width(&self) -> usize {
        self.exps.iter().rposition(|&e| e != 0).map_or(0, |i| i + 1)
    }

    pub fn is_polynomial(&self) -> bool {
        self.exps.iter().all(|&e| e >= 0)
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for (a, b) in out.exps.iter_mut().zip(other.exps.iter()) {
            *a = to_exp(*a as i32 + *b as i32);
        }
        out
    }

    #[inline]
    pub fn div(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for (a, b) in out.exps.iter_mut().zip(other.exps.iter()) {
            *a = to_exp(*a as i32 - *b as i32);
        }
        out
    }

    pub fn inv(&self) -> Monomial {
        Self::ONE.div(self)
    }

    /// True when `self / other` has no negative exponent.
    pub fn divisible_by(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a >= b)
    }

    pub fn meet(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for (a, b) in out.exps.iter_mut().zip(other.exps.iter()) {
            *a = (*a).min(*b);
        }
        out
    }

    pub fn join(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for (a, b) in out.exps.iter_mut().zip(other.exps.iter()) {
            *a = (*a).max(*b);
        }
        out
    }

    pub fn pow(&self, k: i32) -> Monomial {
        let mut out = *self;
        for a in out.exps.iter_mut() {
            *a = to_exp(*a as i32 * k);
        }
        out
    }

    pub fn all_even(&self) -> bool {
        self.exps.iter().all(|&e| e % 2 == 0)
    }

    pub fn vars(&self) -> impl Iterator<Item = (Var, i32)> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(i, &e)| (Var(i), e as i32))
    }
}

#[inline]
fn to_exp(e: i32) -> i16 {
    i16::try_from(e).expect("exponent overflow")
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for i in (0..MAX_VARS).rev() {
                match self.exps[i].cmp(&other.exps[i]) {
                    Ordering::Equal => continue,
                    ord => return ord,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .vars()
            .map(|(v, e)| if e == 1 { v.name() } else { format!("{}^{}", v.name(), e) })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

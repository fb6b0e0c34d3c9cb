//! Ring descriptors, monomials and monomial orders.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::field::{is_prime, Coeff};

/// Monomial orders. Variable precedence follows the ring's variable list
/// (the first variable is the largest).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    Lex,
    #[serde(rename = "grevlex")]
    GrevLex,
    /// Product order: the first `k` variables form a grevlex block that
    /// dominates a grevlex block on the remaining variables. Used internally
    /// for elimination.
    #[serde(skip)]
    Elimination(usize),
}

impl MonomialOrder {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "lex" => Some(MonomialOrder::Lex),
            "grevlex" => Some(MonomialOrder::GrevLex),
            _ => None,
        }
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::Lex => lex(&a.exps, &b.exps),
            MonomialOrder::GrevLex => a.deg.cmp(&b.deg).then_with(|| revlex(&a.exps, &b.exps)),
            MonomialOrder::Elimination(k) => {
                let k = k.min(a.exps.len());
                let (ah, at) = a.exps.split_at(k);
                let (bh, bt) = b.exps.split_at(k);
                let da: u64 = ah.iter().map(|&e| e as u64).sum();
                let db: u64 = bh.iter().map(|&e| e as u64).sum();
                da.cmp(&db)
                    .then_with(|| revlex(ah, bh))
                    .then_with(|| {
                        let ta: u64 = at.iter().map(|&e| e as u64).sum();
                        let tb: u64 = bt.iter().map(|&e| e as u64).sum();
                        ta.cmp(&tb)
                    })
                    .then_with(|| revlex(at, bt))
            }
        }
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrder::Lex => write!(f, "lex"),
            MonomialOrder::GrevLex => write!(f, "grevlex"),
            MonomialOrder::Elimination(k) => write!(f, "elim({k})"),
        }
    }
}

fn lex(a: &[u32], b: &[u32]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

// Tie-break of grevlex: the last differing variable decides, and a smaller
// exponent there makes the monomial larger.
fn revlex(a: &[u32], b: &[u32]) -> Ordering {
    for (x, y) in a.iter().zip(b).rev() {
        match x.cmp(y) {
            Ordering::Equal => continue,
            o => return o.reverse(),
        }
    }
    Ordering::Equal
}

pub type Exponents = SmallVec<[u32; 12]>;

/// A monomial `x^a` stored as its exponent vector together with its total
/// degree.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    deg: u32,
    exps: Exponents,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            deg: 0,
            exps: SmallVec::from_elem(0, nvars),
        }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Monomial::one(nvars);
        m.exps[i] = 1;
        m.deg = 1;
        m
    }

    pub fn from_exps(exps: impl IntoIterator<Item = u32>) -> Self {
        let exps: Exponents = exps.into_iter().collect();
        let deg = exps.iter().sum();
        Monomial { deg, exps }
    }

    #[inline]
    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            deg: self.deg + other.deg,
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Monomial {
        Monomial {
            deg: self.deg * k,
            exps: self.exps.iter().map(|a| a * k).collect(),
        }
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`; caller guarantees divisibility.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        Monomial {
            deg: other.deg - self.deg,
            exps: other
                .exps
                .iter()
                .zip(&self.exps)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial::from_exps(self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)))
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial::from_exps(self.exps.iter().zip(&other.exps).map(|(a, b)| *a.min(b)))
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Bit `i` set iff variable `i` occurs (variables past 63 share bit 63).
    pub fn support_mask(&self) -> u64 {
        let mut m = 0u64;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                m |= 1 << i.min(63);
            }
        }
        m
    }

    /// Rebuild with exponents rearranged by `map`, where `map[i]` is the
    /// target index of source variable `i`.
    pub fn remap(&self, map: &[usize], target_nvars: usize) -> Monomial {
        let mut exps: Exponents = SmallVec::from_elem(0, target_nvars);
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                exps[map[i]] += e;
            }
        }
        Monomial {
            deg: self.deg,
            exps,
        }
    }
}

/// The polynomial ring `F_p[vars]` with a fixed monomial order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingDescriptor {
    p: Coeff,
    vars: Vec<String>,
    order: MonomialOrder,
}

pub type Ring = Arc<RingDescriptor>;

impl RingDescriptor {
    pub fn new(p: u64, vars: Vec<String>, order: MonomialOrder) -> Result<Ring> {
        if !is_prime(p) || p > (1u64 << 31) {
            return Err(Error::InvalidRing(format!("{p} is not a supported prime")));
        }
        for (i, v) in vars.iter().enumerate() {
            if !is_identifier(v) {
                return Err(Error::InvalidRing(format!("bad variable name `{v}`")));
            }
            if vars[..i].contains(v) {
                return Err(Error::InvalidRing(format!("duplicate variable `{v}`")));
            }
        }
        if vars.len() > 63 {
            return Err(Error::InvalidRing(
                "at most 63 variables are supported".into(),
            ));
        }
        Ok(Arc::new(RingDescriptor {
            p: p as Coeff,
            vars,
            order,
        }))
    }

    /// Convenience constructor from string slices.
    pub fn with_vars(p: u64, vars: &[&str], order: MonomialOrder) -> Result<Ring> {
        Self::new(p, vars.iter().map(|s| s.to_string()).collect(), order)
    }

    #[inline]
    pub fn p(&self) -> Coeff {
        self.p
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    #[inline]
    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.compare(a, b)
    }

    /// Checked comparison used by the public API.
    pub fn monomial_compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        for m in [a, b] {
            if m.nvars() != self.nvars() {
                return Err(Error::Arity {
                    expected: self.nvars(),
                    found: m.nvars(),
                });
            }
        }
        Ok(self.cmp(a, b))
    }

    pub fn with_order(&self, order: MonomialOrder) -> Ring {
        Arc::new(RingDescriptor {
            p: self.p,
            vars: self.vars.clone(),
            order,
        })
    }

    /// Same field, new variable list and order (no validation of names
    /// beyond uniqueness, which callers guarantee).
    pub fn derived(&self, vars: Vec<String>, order: MonomialOrder) -> Ring {
        Arc::new(RingDescriptor {
            p: self.p,
            vars,
            order,
        })
    }

    /// A variable name not already present in the ring.
    pub fn fresh_name(&self, stem: &str) -> String {
        let mut k = 0usize;
        loop {
            let cand = if k == 0 {
                stem.to_string()
            } else {
                format!("{stem}{k}")
            };
            if !self.vars.contains(&cand) {
                return cand;
            }
            k += 1;
        }
    }
}

pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_alphanumeric() || c == '_')
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exps(e.iter().copied())
    }

    #[test]
    fn lex_x2_beats_xy() {
        let r = RingDescriptor::with_vars(3, &["x", "y"], MonomialOrder::Lex).unwrap();
        assert_eq!(r.cmp(&m(&[2, 0]), &m(&[1, 1])), Ordering::Greater);
    }

    #[test]
    fn grevlex_x_beats_y() {
        let r = RingDescriptor::with_vars(3, &["x", "y"], MonomialOrder::GrevLex).unwrap();
        assert_eq!(r.cmp(&m(&[1, 0]), &m(&[0, 1])), Ordering::Greater);
        // classic distinguishing case: x*z^2 vs y^3 ... in grevlex y^2 > x z
        let r3 = RingDescriptor::with_vars(3, &["x", "y", "z"], MonomialOrder::GrevLex).unwrap();
        assert_eq!(r3.cmp(&m(&[0, 2, 0]), &m(&[1, 0, 1])), Ordering::Greater);
    }

    #[test]
    fn reflexive_and_one_minimal() {
        for order in [
            MonomialOrder::Lex,
            MonomialOrder::GrevLex,
            MonomialOrder::Elimination(1),
        ] {
            let a = m(&[1, 2, 0]);
            assert_eq!(order.compare(&a, &a), Ordering::Equal);
            assert_eq!(order.compare(&Monomial::one(3), &a), Ordering::Less);
        }
    }

    #[test]
    fn arity_mismatch_is_reported() {
        let r = RingDescriptor::with_vars(2, &["x", "y"], MonomialOrder::Lex).unwrap();
        assert!(matches!(
            r.monomial_compare(&m(&[1]), &m(&[1, 0])),
            Err(Error::Arity { .. })
        ));
    }

    #[test]
    fn elimination_block_dominates() {
        let o = MonomialOrder::Elimination(1);
        // t beats any power of the remaining variables
        assert_eq!(o.compare(&m(&[1, 0, 0]), &m(&[0, 7, 3])), Ordering::Greater);
    }

    #[test]
    fn ring_validation() {
        assert!(RingDescriptor::with_vars(4, &["x"], MonomialOrder::Lex).is_err());
        assert!(RingDescriptor::with_vars(2, &["x", "x"], MonomialOrder::Lex).is_err());
        assert!(RingDescriptor::with_vars(2, &["1x"], MonomialOrder::Lex).is_err());
    }

    #[test]
    fn multiplicative_orders() {
        use proptest::prelude::*;
        let orders = [
            MonomialOrder::Lex,
            MonomialOrder::GrevLex,
            MonomialOrder::Elimination(2),
        ];
        proptest!(|(a in prop::collection::vec(0u32..5, 4),
                    b in prop::collection::vec(0u32..5, 4),
                    t in prop::collection::vec(0u32..5, 4))| {
            let (a, b, t) = (m(&a), m(&b), m(&t));
            for o in orders {
                prop_assert_eq!(o.compare(&a, &b), o.compare(&a.mul(&t), &b.mul(&t)));
            }
        });
    }
}

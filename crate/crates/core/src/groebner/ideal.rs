//! Ideals with a cached reduced Gröbner basis, and the ideal arithmetic built
//! on top of it.

use std::fmt;
use std::sync::{Arc, OnceLock};

use super::buchberger::{groebner_basis, normal_form};
use crate::poly::Polynomial;
use crate::ring::{MonomialOrder, Ring};

#[derive(Clone)]
pub struct Ideal {
    ring: Ring,
    gens: Vec<Polynomial>,
    gb: OnceLock<Arc<[Polynomial]>>,
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{self}")
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ">")
    }
}

impl Ideal {
    /// Zero generators are dropped, so `Ideal::new(r, vec![])` is `⟨0⟩`.
    pub fn new(ring: &Ring, gens: Vec<Polynomial>) -> Self {
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ideal {
            ring: ring.clone(),
            gens,
            gb: OnceLock::new(),
        }
    }

    pub fn zero(ring: &Ring) -> Self {
        Ideal::new(ring, Vec::new())
    }

    pub fn unit(ring: &Ring) -> Self {
        Ideal::from_reduced_gb(ring, vec![Polynomial::one(ring)])
    }

    pub fn principal(f: Polynomial) -> Self {
        let ring = f.ring().clone();
        Ideal::new(&ring, vec![f])
    }

    /// The ideal generated by the given variables.
    pub fn of_vars(ring: &Ring, vars: &[usize]) -> Self {
        Ideal::new(
            ring,
            vars.iter().map(|&i| Polynomial::var(ring, i)).collect(),
        )
    }

    /// Wrap a list already known to be the reduced GB in the ring's order.
    pub(crate) fn from_reduced_gb(ring: &Ring, gb: Vec<Polynomial>) -> Self {
        let cell = OnceLock::new();
        let _ = cell.set(Arc::from(gb.clone()));
        Ideal {
            ring: ring.clone(),
            gens: gb,
            gb: cell,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    /// Reduced Gröbner basis in the ring's order (computed once).
    pub fn groebner_basis(&self) -> &[Polynomial] {
        self.gb
            .get_or_init(|| Arc::from(groebner_basis(&self.ring, &self.gens)))
    }

    /// Reduced Gröbner basis for another order, returned in a ring that
    /// carries that order.
    pub fn groebner_basis_in(&self, order: MonomialOrder) -> (Ring, Vec<Polynomial>) {
        if order == self.ring.order() {
            return (self.ring.clone(), self.groebner_basis().to_vec());
        }
        let r = self.ring.with_order(order);
        let gens: Vec<Polynomial> = self.gens.iter().map(|g| g.reorder(&r)).collect();
        let gb = groebner_basis(&r, &gens);
        (r, gb)
    }

    /// The same ideal with its reduced GB as generating set.
    pub fn reduced(&self) -> Ideal {
        Ideal::from_reduced_gb(&self.ring, self.groebner_basis().to_vec())
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        if self.gens.iter().any(|g| g.is_unit()) {
            return true;
        }
        matches!(self.groebner_basis(), [g] if g.is_unit())
    }

    // Unit test that never triggers a Gröbner computation.
    fn is_known_unit(&self) -> bool {
        self.gens.iter().any(|g| g.is_unit())
            || matches!(self.gb.get().map(|g| &g[..]), Some([g]) if g.is_unit())
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        normal_form(f, self.groebner_basis())
    }

    pub fn contains_element(&self, f: &Polynomial) -> bool {
        f.is_zero() || self.normal_form(f).is_zero()
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Ideal) -> bool {
        if self.is_unit() {
            return true;
        }
        other.gens.iter().all(|g| self.contains_element(g))
    }

    pub fn equals(&self, other: &Ideal) -> bool {
        self.groebner_basis() == other.groebner_basis()
    }

    /// Canonical text of the reduced GB in the ring's order.
    pub fn canonical_key(&self) -> String {
        self.groebner_basis()
            .iter()
            .map(|g| g.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    pub fn add_generators(&self, extra: impl IntoIterator<Item = Polynomial>) -> Ideal {
        let mut gens = self.gens.clone();
        gens.extend(extra);
        Ideal::new(&self.ring, gens)
    }

    pub fn product(&self, other: &Ideal) -> Ideal {
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for f in &self.gens {
            for g in &other.gens {
                gens.push(f * g);
            }
        }
        Ideal::new(&self.ring, gens)
    }

    /// `f·I`.
    pub fn scale(&self, f: &Polynomial) -> Ideal {
        Ideal::new(&self.ring, self.gens.iter().map(|g| g * f).collect())
    }

    /// `I ∩ k[remaining vars]`, returned as an ideal of the original ring.
    pub fn eliminate(&self, vars: &[usize]) -> Ideal {
        let n = self.ring.nvars();
        if vars.is_empty() {
            return self.clone();
        }
        // eliminated variables first, then the rest in their original order
        let mut perm: Vec<usize> = vars.to_vec();
        perm.sort_unstable();
        perm.dedup();
        let k = perm.len();
        perm.extend((0..n).filter(|i| !vars.contains(i)));
        let mut to_new = vec![0; n];
        for (new, &old) in perm.iter().enumerate() {
            to_new[old] = new;
        }
        let names = perm.iter().map(|&i| self.ring.vars()[i].clone()).collect();
        let er = self.ring.derived(names, MonomialOrder::Elimination(k));
        let gens: Vec<Polynomial> = self.gens.iter().map(|g| g.map_to(&er, &to_new)).collect();
        let gb = groebner_basis(&er, &gens);
        let kept: Vec<Polynomial> = gb
            .into_iter()
            .filter(|g| (0..k).all(|v| !g.involves(v)))
            .map(|g| g.map_to(&self.ring, &perm))
            .collect();
        Ideal::new(&self.ring, kept)
    }

    /// `I ∩ J` via `⟨t·I + (1−t)·J⟩ ∩ S`.
    pub fn intersect(&self, other: &Ideal) -> Ideal {
        if self.is_zero() || other.is_zero() {
            return Ideal::zero(&self.ring);
        }
        if self.is_known_unit() {
            return other.clone();
        }
        if other.is_known_unit() {
            return self.clone();
        }
        let n = self.ring.nvars();
        let t = self.ring.fresh_name("t");
        let mut names = vec![t];
        names.extend(self.ring.vars().iter().cloned());
        let tr = self.ring.derived(names, MonomialOrder::Elimination(1));
        let shift: Vec<usize> = (1..=n).collect();
        let tv = Polynomial::var(&tr, 0);
        let one_minus_t = &Polynomial::one(&tr) - &tv;
        let mut gens = Vec::new();
        for g in &self.gens {
            gens.push(&g.map_to(&tr, &shift) * &tv);
        }
        for g in &other.gens {
            gens.push(&g.map_to(&tr, &shift) * &one_minus_t);
        }
        let gb = groebner_basis(&tr, &gens);
        let back: Vec<usize> = std::iter::once(0).chain(0..n).collect();
        let kept: Vec<Polynomial> = gb
            .into_iter()
            .filter(|g| !g.involves(0))
            .map(|g| g.map_to(&self.ring, &back))
            .collect();
        Ideal::new(&self.ring, kept)
    }

    /// `(I : g)`; `(I : 0) = ⟨1⟩`.
    pub fn colon_element(&self, g: &Polynomial) -> Ideal {
        if g.is_zero() || self.contains_element(g) {
            return Ideal::unit(&self.ring);
        }
        if g.is_unit() {
            return self.clone();
        }
        if self.is_zero() {
            return self.clone();
        }
        let inter = self.intersect(&Ideal::principal(g.clone()));
        let gens = inter
            .groebner_basis()
            .iter()
            .map(|f| {
                let (q, r) = super::buchberger::divide(f, std::slice::from_ref(g));
                debug_assert!(r.is_zero());
                q.into_iter().next().unwrap()
            })
            .collect();
        Ideal::new(&self.ring, gens)
    }

    /// `(I : J) = ∩_g (I : g)` over the generators of `J`; `(I : 0) = ⟨1⟩`.
    pub fn colon(&self, other: &Ideal) -> Ideal {
        let mut acc = Ideal::unit(&self.ring);
        for g in &other.gens {
            let c = self.colon_element(g);
            acc = acc.intersect(&c);
        }
        acc
    }

    /// `(I : J^∞)` by iterating colon until it stabilises.
    pub fn saturate(&self, other: &Ideal) -> Ideal {
        let mut cur = self.clone();
        loop {
            let next = cur.colon(other);
            if next.equals(&cur) {
                return cur;
            }
            cur = next;
        }
    }

    /// `(I : f^∞)` through `(I + ⟨1 − y f⟩) ∩ S`.
    pub fn saturate_element(&self, f: &Polynomial) -> Ideal {
        if f.is_zero() {
            return Ideal::unit(&self.ring);
        }
        if f.is_unit() {
            return self.clone();
        }
        let n = self.ring.nvars();
        let y = self.ring.fresh_name("y");
        let mut names = vec![y];
        names.extend(self.ring.vars().iter().cloned());
        let yr = self.ring.derived(names, MonomialOrder::Elimination(1));
        let shift: Vec<usize> = (1..=n).collect();
        let mut gens: Vec<Polynomial> = self.gens.iter().map(|g| g.map_to(&yr, &shift)).collect();
        let yf = &Polynomial::var(&yr, 0) * &f.map_to(&yr, &shift);
        gens.push(&Polynomial::one(&yr) - &yf);
        let gb = groebner_basis(&yr, &gens);
        let back: Vec<usize> = std::iter::once(0).chain(0..n).collect();
        let kept = gb
            .into_iter()
            .filter(|g| !g.involves(0))
            .map(|g| g.map_to(&self.ring, &back))
            .collect();
        Ideal::new(&self.ring, kept)
    }

    /// A maximal set of variables independent modulo the leading-term ideal,
    /// as a bit mask; `None` for the unit ideal.
    pub fn independent_set(&self) -> Option<u64> {
        if self.is_unit() {
            return None;
        }
        let n = self.ring.nvars();
        let lts: Vec<u64> = self
            .groebner_basis()
            .iter()
            .map(|g| g.leading_monomial().unwrap().support_mask())
            .collect();
        let mut best = 0u64;
        let mut best_len = 0u32;
        fn search(v: usize, n: usize, cur: u64, lts: &[u64], best: &mut u64, best_len: &mut u32) {
            if cur.count_ones() + (n - v) as u32 <= *best_len {
                return;
            }
            if v == n {
                *best = cur;
                *best_len = cur.count_ones();
                return;
            }
            let with = cur | (1 << v);
            if lts.iter().all(|&m| m & !with != 0) {
                search(v + 1, n, with, lts, best, best_len);
            }
            search(v + 1, n, cur, lts, best, best_len);
        }
        if lts.iter().all(|&m| m != 0) {
            search(0, n, 0, &lts, &mut best, &mut best_len);
        }
        Some(best)
    }

    /// Krull dimension of `S/I`; `-1` for the unit ideal.
    pub fn dimension(&self) -> i64 {
        match self.independent_set() {
            None => -1,
            Some(m) => m.count_ones() as i64,
        }
    }
}

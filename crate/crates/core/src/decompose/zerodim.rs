//! Linear algebra in a finite-dimensional quotient `S/I`.

use std::collections::HashMap;

use crate::field::{self, Coeff};
use crate::groebner::normal_form;
use crate::poly::Polynomial;
use crate::ring::{Monomial, Ring};

/// Quotients larger than this are not handled by linear algebra.
pub const MAX_QUOTIENT_DIM: usize = 4000;

/// `S/I` for a zero-dimensional `I`, with the standard monomials as basis.
pub struct Quotient<'a> {
    ring: Ring,
    gb: &'a [Polynomial],
    pub basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl<'a> Quotient<'a> {
    /// `None` when the quotient is infinite or too large.
    pub fn new(ring: &Ring, gb: &'a [Polynomial]) -> Option<Self> {
        let lms: Vec<&Monomial> = gb.iter().filter_map(|g| g.leading_monomial()).collect();
        let n = ring.nvars();
        // every variable needs a pure power among the leading monomials
        for i in 0..n {
            let pure = lms
                .iter()
                .any(|m| m.exp(i) > 0 && m.support_mask() == 1 << i);
            if !pure {
                return None;
            }
        }
        let standard = |m: &Monomial| !lms.iter().any(|l| l.divides(m));
        let one = Monomial::one(n);
        if !standard(&one) {
            return None;
        }
        let mut basis = vec![one.clone()];
        let mut index = HashMap::new();
        index.insert(one, 0);
        let mut k = 0;
        while k < basis.len() {
            let m = basis[k].clone();
            for i in 0..n {
                let next = m.mul(&Monomial::var(n, i));
                if !index.contains_key(&next) && standard(&next) {
                    if basis.len() >= MAX_QUOTIENT_DIM {
                        return None;
                    }
                    index.insert(next.clone(), basis.len());
                    basis.push(next);
                }
            }
            k += 1;
        }
        Some(Quotient {
            ring: ring.clone(),
            gb,
            basis,
            index,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn reduce(&self, f: &Polynomial) -> Polynomial {
        normal_form(f, self.gb)
    }

    pub fn coords(&self, f: &Polynomial) -> Vec<Coeff> {
        let mut v = vec![0; self.dim()];
        for (m, c) in self.reduce(f).terms() {
            v[self.index[m]] = *c;
        }
        v
    }

    pub fn element(&self, v: &[Coeff]) -> Polynomial {
        Polynomial::from_terms(
            &self.ring,
            v.iter()
                .enumerate()
                .filter(|(_, c)| **c != 0)
                .map(|(k, c)| (self.basis[k].clone(), *c)),
        )
    }

    /// Basis of `{a : a^p = a}`. Each local factor of `S/I` contributes
    /// exactly one dimension, so this counts the primes over `I`.
    pub fn frobenius_fixed_space(&self) -> Vec<Vec<Coeff>> {
        let p = self.ring.p();
        let n = self.dim();
        // column k: coords(b_k^p) - e_k
        let cols: Vec<Vec<Coeff>> = self
            .basis
            .iter()
            .enumerate()
            .map(|(k, b)| {
                let mut c = self.coords(&Polynomial::monomial(&self.ring, b.pow(p), 1));
                c[k] = field::sub(c[k], 1, p);
                c
            })
            .collect();
        let rows: Vec<Vec<Coeff>> = (0..n)
            .map(|i| cols.iter().map(|c| c[i]).collect())
            .collect();
        nullspace(rows, n, p)
    }

    /// Monic minimal polynomial of `a` over `F_p`, low degree first.
    pub fn minimal_polynomial(&self, a: &Polynomial) -> Vec<Coeff> {
        let p = self.ring.p();
        let mut rows: Vec<(Vec<Coeff>, Vec<Coeff>, usize)> = Vec::new();
        let mut power = Polynomial::one(&self.ring);
        for k in 0..=self.dim() {
            let mut v = self.coords(&power);
            let mut combo = vec![0; k + 1];
            combo[k] = 1;
            for (rv, rc, piv) in &rows {
                let c = v[*piv];
                if c != 0 {
                    for (x, y) in v.iter_mut().zip(rv) {
                        *x = field::sub(*x, field::mul(c, *y, p), p);
                    }
                    for (x, y) in combo.iter_mut().zip(rc) {
                        *x = field::sub(*x, field::mul(c, *y, p), p);
                    }
                }
            }
            match v.iter().position(|&c| c != 0) {
                None => return combo,
                Some(piv) => {
                    let inv = field::inv(v[piv], p);
                    v.iter_mut().for_each(|x| *x = field::mul(*x, inv, p));
                    combo.iter_mut().for_each(|x| *x = field::mul(*x, inv, p));
                    rows.push((v, combo, piv));
                }
            }
            power = self.reduce(&(&power * a));
        }
        unreachable!("powers of an element of a finite algebra are dependent")
    }
}

/// Basis of the right kernel of an `m × n` matrix over `F_p`.
pub fn nullspace(mut rows: Vec<Vec<Coeff>>, n: usize, p: Coeff) -> Vec<Vec<Coeff>> {
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(sel) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r, sel);
        let inv = field::inv(rows[r][col], p);
        rows[r].iter_mut().for_each(|x| *x = field::mul(*x, inv, p));
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[col] != 0 {
                let c = row[col];
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = field::sub(*x, field::mul(c, *y, p), p);
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0; n];
            v[f] = 1;
            for (ri, &pc) in pivots.iter().enumerate() {
                v[pc] = field::neg(rows[ri][f], p);
            }
            v
        })
        .collect()
}

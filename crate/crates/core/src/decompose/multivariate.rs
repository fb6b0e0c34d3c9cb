//! Multivariate factorization by Kronecker substitution.
//!
//! `g(x_1, …, x_n)` is sent to `G(t) = g(t^{w_1}, …, t^{w_n})` with mixed-radix
//! weights, so that every divisor of `g` has a unique preimage. `G` is
//! factored over `F_p` and products of its factors are tried as divisors of
//! `g`, smallest first. Contents and repeated factors are split off first
//! with gcds, which keeps the Kronecker images small.

use super::primes::factor_in;
use super::univariate;
use crate::groebner::{divide, Ideal};
use crate::poly::Polynomial;
use crate::ring::Monomial;

/// Kronecker images above this degree are not attempted.
pub const KRONECKER_DEGREE_LIMIT: u64 = 1500;
/// Maximum number of factor subsets tried per polynomial.
pub const SUBSET_LIMIT: u64 = 1 << 16;

/// Irreducible factors with multiplicities, monic; `None` when the search
/// was abandoned. Constants have no factors.
pub fn factor_multivariate(g: &Polynomial) -> Option<Vec<(Polynomial, u32)>> {
    let ring = g.ring();
    let n = ring.nvars();
    let mut out: Vec<(Polynomial, u32)> = Vec::new();
    if g.is_constant() {
        return Some(out);
    }
    let content = g
        .terms()
        .iter()
        .map(|(m, _)| m.clone())
        .reduce(|a, b| a.gcd(&b))
        .unwrap();
    for v in 0..n {
        if content.exp(v) > 0 {
            out.push((Polynomial::var(ring, v), content.exp(v)));
        }
    }
    let rest = Polynomial::from_terms(
        ring,
        g.terms().iter().map(|(m, c)| (content.quotient_of(m), *c)),
    );
    let mut stack = vec![rest];
    while let Some(h) = stack.pop() {
        if h.is_constant() {
            continue;
        }
        match find_divisor(&h)? {
            None => {
                let h = h.monic();
                match out.iter_mut().find(|(f, _)| *f == h) {
                    Some(entry) => entry.1 += 1,
                    None => out.push((h, 1)),
                }
            }
            Some(f) => {
                let (qs, _) = divide(&h, std::slice::from_ref(&f));
                stack.push(f);
                stack.push(qs.into_iter().next().unwrap());
            }
        }
    }
    out.sort_by_cached_key(|(f, _)| (f.total_degree(), f.to_string()));
    Some(out)
}

/// Monic greatest common divisor, through `⟨a⟩ ∩ ⟨b⟩ = ⟨lcm(a, b)⟩`.
pub fn gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Polynomial::one(a.ring());
    }
    let lcm = Ideal::principal(a.clone()).intersect(&Ideal::principal(b.clone()));
    let l = lcm.groebner_basis()[0].clone();
    let (q, _) = divide(&(a * b), std::slice::from_ref(&l));
    q.into_iter().next().unwrap().monic()
}

/// `Some(None)` when `g` is irreducible, `Some(Some(f))` for a proper
/// divisor, `None` when the search is too large.
fn find_divisor(g: &Polynomial) -> Option<Option<Polynomial>> {
    let ring = g.ring();
    let n = ring.nvars();
    let p = ring.p();
    let mask = g.support_mask();
    if mask.count_ones() == 1 {
        let v = mask.trailing_zeros() as usize;
        let fs = factor_in(g, v);
        let total: u32 = fs.iter().map(|(_, m)| *m).sum();
        return Some(if total >= 2 {
            Some(fs[0].0.clone())
        } else {
            None
        });
    }
    for v in (0..n).filter(|v| g.involves(*v)) {
        let content = g
            .coefficients_in(v)
            .iter()
            .filter(|c| !c.is_zero())
            .fold(Polynomial::zero(ring), |acc, c| gcd(&acc, c));
        if !content.is_constant() {
            return Some(Some(content));
        }
    }
    let mut all_zero = true;
    for v in (0..n).filter(|v| g.involves(*v)) {
        let d = g.differentiate(v);
        if d.is_zero() {
            continue;
        }
        all_zero = false;
        let h = gcd(g, &d);
        if !h.is_constant() && h.total_degree() < g.total_degree() {
            return Some(Some(h));
        }
    }
    if all_zero {
        // every exponent is divisible by p, so g is a p-th power
        let h = Polynomial::from_terms(
            ring,
            g.terms()
                .iter()
                .map(|(m, c)| (Monomial::from_exps(m.exps().iter().map(|e| e / p)), *c)),
        );
        return Some(Some(h));
    }
    let degs: Vec<u32> = (0..n).map(|v| g.degree_in(v)).collect();
    let mut weights = vec![0u64; n];
    let mut w = 1u64;
    for v in 0..n {
        weights[v] = w;
        w = w.checked_mul(degs[v] as u64 + 1)?;
    }
    if w > KRONECKER_DEGREE_LIMIT {
        return None;
    }
    let image = |f: &Polynomial| -> Vec<u32> {
        let mut dense = vec![0u32; w as usize];
        for (m, c) in f.terms() {
            let e: u64 = (0..n).map(|v| m.exp(v) as u64 * weights[v]).sum();
            dense[e as usize] = *c;
        }
        while dense.last() == Some(&0) {
            dense.pop();
        }
        dense
    };
    let preimage = |dense: &[u32]| -> Option<Polynomial> {
        let mut terms = Vec::new();
        for (e, &c) in dense.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mut exps = vec![0u32; n];
            let mut rest = e as u64;
            for v in (0..n).rev() {
                if weights[v] == 0 {
                    continue;
                }
                let d = rest / weights[v];
                if d > degs[v] as u64 {
                    return None;
                }
                exps[v] = d as u32;
                rest -= d * weights[v];
            }
            terms.push((Monomial::from_exps(exps), c));
        }
        Some(Polynomial::from_terms(ring, terms))
    };
    let mut pieces: Vec<Vec<u32>> = Vec::new();
    for (f, m) in univariate::factor(&image(g), p) {
        for _ in 0..m {
            pieces.push(f.clone());
        }
    }
    let r = pieces.len();
    if r <= 1 {
        return Some(None);
    }
    let mut tried = 0u64;
    for k in 1..=r / 2 {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            tried += 1;
            if tried > SUBSET_LIMIT {
                return None;
            }
            let prod = idx
                .iter()
                .fold(vec![1u32], |acc, &i| univariate::mul(&acc, &pieces[i], p));
            if let Some(f) = preimage(&prod) {
                if !f.is_constant() {
                    let (_, rem) = divide(g, std::slice::from_ref(&f));
                    if rem.is_zero() {
                        return Some(Some(f.monic()));
                    }
                }
            }
            // next combination in lexicographic order
            let mut pos = k;
            while pos > 0 && idx[pos - 1] == r - k + pos - 1 {
                pos -= 1;
            }
            if pos == 0 {
                break;
            }
            idx[pos - 1] += 1;
            for j in pos..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    Some(None)
}

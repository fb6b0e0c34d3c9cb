//! Minimal primes by recursive splitting.
//!
//! An ideal is split along the first applicable rule:
//!
//! 1. a basis element `c·x_j + h` with `c` constant and `h` free of `x_j`
//!    lets `x_j` be eliminated by substitution;
//! 2. a univariate basis element with several irreducible factors, or a
//!    basis element with a monomial factor, splits into one branch per factor;
//! 3. a zero-dimensional ideal is split with Frobenius-fixed elements of the
//!    quotient algebra;
//! 4. a basis element `f·x_j + h` with `f` non-constant splits into the
//!    primes containing `f` and those where `x_j = -h/f`;
//! 5. a reducible basis element, or a reducible generator of an elimination
//!    ideal onto an independent set plus one variable, splits by its factors.
//!
//! A principal ideal with an irreducible generator is prime. Anything left
//! is returned as a single uncertified component.

use super::multivariate::factor_multivariate;
use super::univariate;
use super::zerodim::Quotient;
use super::PrimeComponent;
use crate::field;
use crate::groebner::Ideal;
use crate::poly::Polynomial;
use crate::ring::{Monomial, MonomialOrder, Ring};

/// Minimal primes of `i`, unsorted. The ring order should be grevlex.
pub(crate) fn split(i: &Ideal) -> Vec<PrimeComponent> {
    let ring = i.ring().clone();
    let gb: Vec<Polynomial> = i.groebner_basis().to_vec();
    if i.is_unit() {
        return Vec::new();
    }
    if gb.is_empty() {
        return vec![PrimeComponent::certified(Ideal::zero(&ring))];
    }
    if let Some(out) = substitute_linear(&ring, &gb) {
        return out;
    }
    if let Some(branches) = factor_split(i, &gb, false) {
        return minimalize(branches.iter().flat_map(split).collect());
    }
    if i.dimension() == 0 {
        if let Some(out) = zero_dimensional(i) {
            return out;
        }
    }
    if let Some(out) = linear_split(i, &gb) {
        return out;
    }
    if let Some(branches) = factor_split(i, &gb, true).or_else(|| eliminant_split(i)) {
        return minimalize(branches.iter().flat_map(split).collect());
    }
    if gb.len() == 1 && factor_multivariate(&gb[0]).is_some() {
        // irreducible, or factor_split would have fired
        return vec![PrimeComponent::certified(i.reduced())];
    }
    eprintln!(
        "FALLBACK {} in {:?}; fm {:?}",
        i,
        i.ring().vars(),
        i.groebner_basis()
            .iter()
            .map(|g| factor_multivariate(g).map(|f| f.len()))
            .collect::<Vec<_>>()
    );
    vec![PrimeComponent {
        ideal: i.reduced(),
        certified: false,
    }]
}

/// Drop redundant candidates: duplicates and any ideal that contains another.
pub(crate) fn minimalize(mut cands: Vec<PrimeComponent>) -> Vec<PrimeComponent> {
    cands.sort_by_key(|c| c.ideal.groebner_basis().len());
    let mut kept: Vec<PrimeComponent> = Vec::new();
    'next: for c in cands {
        for k in &mut kept {
            if c.ideal.contains(&k.ideal) {
                if k.ideal.contains(&c.ideal) {
                    k.certified &= c.certified;
                }
                continue 'next;
            }
        }
        kept.retain(|k| !k.ideal.contains(&c.ideal));
        kept.push(c);
    }
    kept
}

/// The ring without variable `j`, and the index map back into the original.
fn drop_var(ring: &Ring, j: usize) -> (Ring, Vec<usize>) {
    let vars: Vec<String> = ring
        .vars()
        .iter()
        .enumerate()
        .filter(|(k, _)| *k != j)
        .map(|(_, v)| v.clone())
        .collect();
    let order = match ring.order() {
        MonomialOrder::Elimination(k) if j < k => MonomialOrder::Elimination(k - 1),
        o => o,
    };
    let back: Vec<usize> = (0..ring.nvars()).filter(|&k| k != j).collect();
    (ring.derived(vars, order), back)
}

/// Map polynomials free of `x_j` into the smaller ring.
fn down(fs: &[Polynomial], small: &Ring, j: usize) -> Vec<Polynomial> {
    let map: Vec<usize> = (0..small.nvars() + 1)
        .map(|k| {
            if k < j {
                k
            } else if k > j {
                k - 1
            } else {
                0
            }
        })
        .collect();
    fs.iter().map(|f| f.map_to(small, &map)).collect()
}

fn up(fs: &[Polynomial], big: &Ring, back: &[usize]) -> Vec<Polynomial> {
    fs.iter().map(|f| f.map_to(big, back)).collect()
}

/// Minimal primes in a ring that may have no variables left.
fn split_in(small: &Ring, gens: Vec<Polynomial>) -> Vec<PrimeComponent> {
    if small.nvars() == 0 {
        let ideal = Ideal::new(small, gens);
        return if ideal.generators().is_empty() {
            vec![PrimeComponent::certified(ideal)]
        } else {
            Vec::new()
        };
    }
    split(&Ideal::new(small, gens))
}

/// `(coefficient of x_j, rest)` when `g` has degree one in `x_j`.
fn linear_parts(g: &Polynomial, j: usize) -> Option<(Polynomial, Polynomial)> {
    if g.degree_in(j) != 1 {
        return None;
    }
    let mut cs = g.coefficients_in(j);
    let f = cs.pop().unwrap();
    let h = cs.pop().unwrap();
    Some((f, h))
}

fn substitute_linear(ring: &Ring, gb: &[Polynomial]) -> Option<Vec<PrimeComponent>> {
    let p = ring.p();
    let (gi, j, c, h) = gb
        .iter()
        .enumerate()
        .flat_map(|(gi, g)| {
            (0..ring.nvars()).filter_map(move |j| {
                let (f, h) = linear_parts(g, j)?;
                f.is_constant().then(|| (gi, j, f.constant_term(), h))
            })
        })
        .min_by_key(|(gi, _, _, h)| (gb[*gi].len(), h.total_degree()))?;
    // x_j = -h / c
    let value = h.scale(field::neg(field::inv(c, p), p));
    let rest: Vec<Polynomial> = gb
        .iter()
        .enumerate()
        .filter(|(k, _)| *k != gi)
        .map(|(_, k)| k.substitute(j, &value))
        .collect();
    let (small, back) = drop_var(ring, j);
    let g = gb[gi].clone();
    let out = split_in(&small, down(&rest, &small, j))
        .into_iter()
        .map(|pc| {
            let mut gens = up(pc.ideal.generators(), ring, &back);
            gens.push(g.clone());
            PrimeComponent {
                ideal: Ideal::new(ring, gens),
                certified: pc.certified,
            }
        })
        .collect();
    Some(out)
}

/// Branch ideals from one factorizable basis element, when they all make
/// progress. Without `deep` only monomial content and univariate elements
/// are factored.
fn factor_split(i: &Ideal, gb: &[Polynomial], deep: bool) -> Option<Vec<Ideal>> {
    let ring = i.ring();
    let n = ring.nvars();
    for g in gb {
        let mut factors: Vec<Polynomial> = Vec::new();
        if deep {
            match factor_multivariate(g) {
                Some(fs) if fs.iter().map(|(_, m)| *m).sum::<u32>() >= 2 => {
                    factors.extend(fs.into_iter().map(|(f, _)| f));
                }
                _ => continue,
            }
        } else {
            // monomial content
            let content = g
                .terms()
                .iter()
                .map(|(m, _)| m.clone())
                .reduce(|a, b| a.gcd(&b))
                .unwrap_or_else(|| Monomial::one(n));
            if !content.is_one() {
                for v in 0..n {
                    if content.exp(v) > 0 {
                        factors.push(Polynomial::var(ring, v));
                    }
                }
                let cofactor = Polynomial::from_terms(
                    ring,
                    g.terms().iter().map(|(m, c)| (content.quotient_of(m), *c)),
                );
                if !cofactor.is_constant() {
                    factors.push(cofactor);
                }
            } else if g.support_mask().count_ones() == 1 && g.total_degree() >= 2 {
                let v = g.support_mask().trailing_zeros() as usize;
                let fs = factor_in(g, v);
                let total: u32 = fs.iter().map(|(_, m)| *m).sum();
                if total >= 2 {
                    factors.extend(fs.into_iter().map(|(f, _)| f));
                }
            }
        }
        if factors.is_empty() {
            continue;
        }
        let branches: Vec<Ideal> = factors
            .into_iter()
            .map(|f| i.add_generators([f]))
            .filter(|b| !b.is_unit())
            .collect();
        if branches.iter().all(|b| !i.contains(b)) {
            return Some(branches);
        }
    }
    None
}

/// Every minimal prime contains a factor of each member of
/// `I ∩ k[U, x]`, for an independent set `U` and a variable `x` outside it.
fn eliminant_split(i: &Ideal) -> Option<Vec<Ideal>> {
    let ring = i.ring();
    let n = ring.nvars();
    let indep = i.independent_set()?;
    for x in (0..n).filter(|x| indep & (1 << x) == 0) {
        let drop: Vec<usize> = (0..n)
            .filter(|v| *v != x && indep & (1 << v) == 0)
            .collect();
        if drop.is_empty() {
            continue;
        }
        let elim = i.eliminate(&drop);
        if let Some(branches) = factor_split(i, elim.groebner_basis(), true) {
            return Some(branches);
        }
    }
    None
}

/// Factor a polynomial in the single variable `v`.
pub(crate) fn factor_in(g: &Polynomial, v: usize) -> Vec<(Polynomial, u32)> {
    let ring = g.ring();
    let p = ring.p();
    let dense = to_dense(g, v);
    univariate::factor(&dense, p)
        .into_iter()
        .map(|(f, m)| (from_dense(ring, &f, v), m))
        .collect()
}

pub(crate) fn to_dense(g: &Polynomial, v: usize) -> Vec<u32> {
    let mut dense = vec![0; g.degree_in(v) as usize + 1];
    for (m, c) in g.terms() {
        dense[m.exp(v) as usize] = *c;
    }
    dense
}

pub(crate) fn from_dense(ring: &Ring, f: &[u32], v: usize) -> Polynomial {
    let n = ring.nvars();
    Polynomial::from_terms(
        ring,
        f.iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(|(k, c)| (Monomial::var(n, v).pow(k as u32), *c)),
    )
}

fn zero_dimensional(i: &Ideal) -> Option<Vec<PrimeComponent>> {
    let ring = i.ring();
    let p = ring.p();
    let gb = i.groebner_basis();
    let quo = Quotient::new(ring, gb)?;
    let fixed = quo.frobenius_fixed_space();
    if fixed.len() <= 1 {
        // local: the radical is the unique prime
        let mut gens: Vec<Polynomial> = gb.to_vec();
        for v in 0..ring.nvars() {
            let m = quo.minimal_polynomial(&Polynomial::var(ring, v));
            let sq: Vec<u32> = univariate::squarefree(&m, p)
                .into_iter()
                .map(|(g, _)| g)
                .fold(vec![1], |acc, g| univariate::mul(&acc, &g, p));
            gens.push(from_dense(ring, &sq, v));
        }
        return Some(vec![PrimeComponent::certified(
            Ideal::new(ring, gens).reduced(),
        )]);
    }
    // a fixed element outside F_p separates the local factors
    let a = fixed
        .iter()
        .map(|v| quo.element(v))
        .find(|a| !a.is_constant())
        .expect("fixed space larger than the scalars");
    let mp = quo.minimal_polynomial(&a);
    let mut out = Vec::new();
    for c in univariate::roots(&mp, p) {
        let branch = i.add_generators([&a - &Polynomial::constant(ring, c as i64)]);
        out.extend(split(&branch));
    }
    Some(minimalize(out))
}

fn linear_split(i: &Ideal, gb: &[Polynomial]) -> Option<Vec<PrimeComponent>> {
    let ring = i.ring();
    let (gi, j, f, h) = gb
        .iter()
        .enumerate()
        .flat_map(|(gi, g)| {
            (0..ring.nvars()).filter_map(move |j| linear_parts(g, j).map(|(f, h)| (gi, j, f, h)))
        })
        .min_by_key(|(gi, _, f, _)| (f.total_degree(), f.len(), gb[*gi].len()))?;
    let g = &gb[gi];
    let mut out = split(&i.add_generators([f.clone()]));

    // away from f: x_j = -h/f, cleared of denominators
    let minus_h = -&h;
    let rest: Vec<Polynomial> = gb
        .iter()
        .enumerate()
        .filter(|(k, _)| *k != gi)
        .map(|(_, k)| {
            let cs = k.coefficients_in(j);
            let d = cs.len() - 1;
            let mut acc = Polynomial::zero(ring);
            for (e, c) in cs.iter().enumerate() {
                if !c.is_zero() {
                    acc = &acc + &(&(c * &minus_h.pow(e as u64)) * &f.pow((d - e) as u64));
                }
            }
            acc
        })
        .collect();
    let (small, back) = drop_var(ring, j);
    let f_small = down(std::slice::from_ref(&f), &small, j).pop().unwrap();
    let reduced = Ideal::new(&small, down(&rest, &small, j));
    let saturated = reduced.saturate_element(&f_small);
    for pc in split(&saturated) {
        let mut gens = up(pc.ideal.generators(), ring, &back);
        gens.push(g.clone());
        let lifted = Ideal::new(ring, gens).saturate_element(&f);
        if !lifted.is_unit() {
            out.push(PrimeComponent {
                ideal: lifted,
                certified: pc.certified,
            });
        }
    }
    Some(minimalize(out))
}

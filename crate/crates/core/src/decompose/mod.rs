//! Minimal primes, radicals, univariate factorization and a brute-force
//! point oracle.

mod multivariate;
mod primes;
pub mod univariate;
mod zerodim;

use crate::error::{Error, Result};
use crate::field::{ExtElem, ExtField};
use crate::groebner::Ideal;
use crate::poly::Polynomial;
use crate::ring::MonomialOrder;

#[derive(Clone, Debug)]
pub struct PrimeComponent {
    pub ideal: Ideal,
    /// Whether the splitting procedure proved primality.
    pub certified: bool,
}

impl PrimeComponent {
    pub(crate) fn certified(ideal: Ideal) -> Self {
        PrimeComponent {
            ideal,
            certified: true,
        }
    }
}

/// Irreducible factors of a nonzero polynomial in at most one variable,
/// monic, with multiplicities.
pub fn factor_univariate(f: &Polynomial) -> Result<Vec<(Polynomial, u32)>> {
    if f.is_zero() {
        return Err(Error::Precondition(
            "cannot factor the zero polynomial".into(),
        ));
    }
    let mask = f.support_mask();
    match mask.count_ones() {
        0 => Ok(Vec::new()),
        1 => Ok(primes::factor_in(f, mask.trailing_zeros() as usize)),
        _ => Err(Error::Precondition(format!("{f} is not univariate"))),
    }
}

/// Irreducible factors of a multivariate polynomial, monic, with
/// multiplicities. `None` when the factor search exceeds its budget.
pub fn factor_polynomial(f: &Polynomial) -> Result<Option<Vec<(Polynomial, u32)>>> {
    if f.is_zero() {
        return Err(Error::Precondition(
            "cannot factor the zero polynomial".into(),
        ));
    }
    Ok(multivariate::factor_multivariate(f))
}

/// The minimal primes of `i`, as reduced bases in `i`'s ring, sorted by
/// their printed form. The unit ideal has none.
pub fn minimal_primes(i: &Ideal) -> Vec<PrimeComponent> {
    let ring = i.ring();
    let work = ring.with_order(MonomialOrder::GrevLex);
    let moved = if ring.order() == MonomialOrder::GrevLex {
        i.clone()
    } else {
        Ideal::new(
            &work,
            i.generators().iter().map(|g| g.reorder(&work)).collect(),
        )
    };
    let mut out: Vec<PrimeComponent> = primes::split(&moved)
        .into_iter()
        .map(|pc| {
            let gens = pc
                .ideal
                .generators()
                .iter()
                .map(|g| g.reorder(ring))
                .collect();
            PrimeComponent {
                ideal: Ideal::new(ring, gens).reduced(),
                certified: pc.certified,
            }
        })
        .collect();
    out.sort_by_cached_key(|pc| pc.ideal.canonical_key());
    out
}

/// Intersection of the minimal primes.
pub fn radical(i: &Ideal) -> Ideal {
    intersect_all(i, minimal_primes(i).iter().map(|pc| &pc.ideal))
}

pub(crate) fn intersect_all<'a>(i: &Ideal, parts: impl IntoIterator<Item = &'a Ideal>) -> Ideal {
    parts
        .into_iter()
        .fold(Ideal::unit(i.ring()), |acc, q| acc.intersect(q))
        .reduced()
}

/// Points enumerated before refusing.
pub const POINT_BUDGET: u128 = 10_000_000;

/// Every point of `F_{p^k}^n` on which all generators of `i` vanish, in
/// lexicographic order of the field enumeration.
pub fn variety_points(i: &Ideal, k: u32) -> Result<Vec<Vec<ExtElem>>> {
    let ring = i.ring();
    let field = ExtField::new(ring.p(), k)?;
    let n = ring.nvars();
    let size = (field.size() as u128)
        .checked_pow(n as u32)
        .unwrap_or(u128::MAX);
    if size > POINT_BUDGET {
        return Err(Error::BudgetExceeded {
            size,
            budget: POINT_BUDGET,
        });
    }
    let elems = field.elements();
    let mut out = Vec::new();
    let mut idx = vec![0usize; n];
    let mut point: Vec<ExtElem> = vec![elems[0]; n];
    loop {
        for (slot, &e) in point.iter_mut().zip(&idx) {
            *slot = elems[e];
        }
        let mut on = true;
        for g in i.generators() {
            if g.evaluate(&field, &point)? != field.zero() {
                on = false;
                break;
            }
        }
        if on {
            out.push(point.clone());
        }
        // odometer, last coordinate fastest
        let mut pos = n;
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < elems.len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

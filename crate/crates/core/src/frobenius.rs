//! Bracket powers, Frobenius roots and the `p^{-e}`-linear map
//! `φ(F^e_* f) = Φ_S(F^e_* u·f)`.
//!
//! Over `F_p` every coefficient is its own `p^e`-th root, so the root of a
//! polynomial is read off by sorting its terms into residue classes of the
//! exponent vector modulo `q = p^e`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::Coeff;
use crate::groebner::{normal_form, Ideal};
use crate::poly::Polynomial;
use crate::ring::{Monomial, MonomialOrder, Ring};

/// The map `f ↦ Φ_S(F^e_* u·f)`.
#[derive(Clone, Debug)]
pub struct PhiMap {
    u: Polynomial,
    e: u32,
    q: u32,
}

impl PhiMap {
    pub fn new(u: Polynomial, e: u32) -> Result<Self> {
        let q = frobenius_q(u.ring(), e)?;
        Ok(PhiMap { u, e, q })
    }

    /// `Φ_S` itself.
    pub fn trace_map(ring: &Ring, e: u32) -> Result<Self> {
        PhiMap::new(Polynomial::one(ring), e)
    }

    pub fn u(&self) -> &Polynomial {
        &self.u
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn ring(&self) -> &Ring {
        self.u.ring()
    }
}

/// `p^e`, checked against the exponent range.
pub fn frobenius_q(ring: &Ring, e: u32) -> Result<u32> {
    if e == 0 {
        return Err(Error::Precondition("e must be at least 1".into()));
    }
    (ring.p() as u64)
        .checked_pow(e)
        .filter(|&q| q < 1 << 31)
        .map(|q| q as u32)
        .ok_or_else(|| {
            Error::Unsupported(format!("p^e = {}^{e} exceeds the exponent range", ring.p()))
        })
}

/// `I^{[p^e]}`.
pub fn bracket_power(i: &Ideal, q: u32) -> Ideal {
    Ideal::new(
        i.ring(),
        i.generators()
            .iter()
            .map(|g| g.frobenius_power(q))
            .collect(),
    )
}

/// The polynomials `g_α` with `g = Σ_α g_α^q x^α`, keyed by `α`.
pub fn root_components(g: &Polynomial, q: u32) -> Vec<(Monomial, Polynomial)> {
    let ring = g.ring();
    let mut buckets: HashMap<Monomial, Vec<(Monomial, Coeff)>> = HashMap::new();
    for (m, c) in g.terms() {
        let alpha = Monomial::from_exps(m.exps().iter().map(|a| a % q));
        let base = Monomial::from_exps(m.exps().iter().map(|a| a / q));
        buckets.entry(alpha).or_default().push((base, *c));
    }
    let mut out: Vec<(Monomial, Polynomial)> = buckets
        .into_iter()
        .map(|(alpha, ts)| (alpha, Polynomial::from_terms(ring, ts)))
        .collect();
    out.sort_by(|a, b| ring.cmp(&b.0, &a.0));
    out
}

/// `I_e(J)`, the smallest ideal `A` with `J ⊆ A^{[q]}`.
pub fn frobenius_root(j: &Ideal, q: u32) -> Ideal {
    let mut gens: Vec<Polynomial> = Vec::new();
    for g in j.generators() {
        for (_, c) in root_components(g, q) {
            let c = c.monic();
            if !gens.contains(&c) {
                gens.push(c);
            }
        }
    }
    Ideal::new(j.ring(), gens)
}

/// `I_e(J)` by reduction modulo `x_i^q - y_i` in `S[y_1..y_n]`, with the `x`
/// block above the `y` block. Much slower than [`frobenius_root`]; kept for
/// differential testing.
pub fn frobenius_root_reference(j: &Ideal, q: u32) -> Ideal {
    let ring = j.ring();
    let n = ring.nvars();
    let mut names: Vec<String> = ring.vars().to_vec();
    for k in 0..n {
        let stem = format!("y{k}_");
        names.push(ring.fresh_name(&stem));
    }
    let t = ring.derived(names, MonomialOrder::Elimination(n));
    let xs: Vec<usize> = (0..n).collect();
    let basis: Vec<Polynomial> = (0..n)
        .map(|k| &Polynomial::var(&t, k).pow(q as u64) - &Polynomial::var(&t, n + k))
        .collect();
    let mut gens = Vec::new();
    for g in j.generators() {
        let r = normal_form(&g.map_to(&t, &xs), &basis);
        // group the remainder by its x-part; each group's y-polynomial, read
        // back in the x variables, is a generator
        let mut groups: HashMap<Vec<u32>, Vec<(Monomial, Coeff)>> = HashMap::new();
        for (m, c) in r.terms() {
            let alpha = m.exps()[..n].to_vec();
            let beta = Monomial::from_exps(m.exps()[n..].iter().copied());
            groups.entry(alpha).or_default().push((beta, *c));
        }
        for ts in groups.into_values() {
            gens.push(Polynomial::from_terms(ring, ts));
        }
    }
    Ideal::new(ring, gens)
}

/// `φ(F^e_* J) = I_e(u·J)`.
pub fn phi_apply(phi: &PhiMap, j: &Ideal) -> Ideal {
    frobenius_root(&j.scale(phi.u()), phi.q())
}

/// `Φ_S(F^e_* u·f)`: the component of `u·f` at `α = (q-1, …, q-1)`.
pub fn phi_element(phi: &PhiMap, f: &Polynomial) -> Polynomial {
    let q = phi.q();
    let n = phi.ring().nvars();
    let top = Monomial::from_exps(std::iter::repeat_n(q - 1, n));
    root_components(&(phi.u() * f), q)
        .into_iter()
        .find(|(alpha, _)| *alpha == top)
        .map(|(_, g)| g)
        .unwrap_or_else(|| Polynomial::zero(phi.ring()))
}

/// `φ(F^e_* 1) = 1`.
pub fn is_splitting(phi: &PhiMap) -> bool {
    phi_element(phi, &Polynomial::one(phi.ring())).is_one()
}

/// Result of the ascending chain `C_0 = J`, `C_t = C_{t-1} + φ(C_{t-1})`.
#[derive(Clone, Debug)]
pub struct StarChain {
    pub ideal: Ideal,
    /// First `t` with `C_t = C_{t+1}`.
    pub steps: usize,
}

/// `J^{★^e u}`, the smallest `A ⊇ J` with `u·A ⊆ A^{[q]}`.
pub fn star_closure(phi: &PhiMap, j: &Ideal) -> StarChain {
    let mut cur = j.reduced();
    let mut steps = 0;
    loop {
        let next = cur.sum(&phi_apply(phi, &cur));
        if cur.contains(&next) {
            return StarChain { ideal: cur, steps };
        }
        cur = next.reduced();
        steps += 1;
    }
}

/// A generator `g` of `I` with `u·g ∉ I^{[q]}`, with the offending normal
/// form. `None` means `u ∈ (I^{[q]} : I)`.
pub fn fedder_witness(phi: &PhiMap, i: &Ideal) -> Option<(Polynomial, Polynomial)> {
    let iq = bracket_power(i, phi.q());
    i.generators().iter().find_map(|g| {
        let nf = iq.normal_form(&(phi.u() * g));
        (!nf.is_zero()).then(|| (g.clone(), nf))
    })
}

/// `φ(F^e_* I) ⊆ I`.
pub fn fedder_compatible(phi: &PhiMap, i: &Ideal) -> bool {
    fedder_witness(phi, i).is_none()
}

pub(crate) fn require_compatible(phi: &PhiMap, i: &Ideal) -> Result<()> {
    match fedder_witness(phi, i) {
        None => Ok(()),
        Some((g, nf)) => Err(Error::NotCompatible {
            generator: g.to_string(),
            normal_form: nf.to_string(),
        }),
    }
}

/// Whether `φ/I` is surjective on `S/I`, i.e. `I + I_e(⟨u⟩) = ⟨1⟩`.
pub fn is_surjective_mod(phi: &PhiMap, i: &Ideal) -> Result<bool> {
    require_compatible(phi, i)?;
    let image = frobenius_root(&Ideal::principal(phi.u().clone()), phi.q());
    Ok(i.sum(&image).is_unit())
}

/// Ceiling on the number of applications of `φ` before the chain started
/// from an ideal generated in degree `≤ d` stabilises:
/// `⌈log_q d⌉ + C(⌊deg u / q⌋ + 1 + n, n)`.
pub fn application_bound(phi: &PhiMap, d: u32, n: usize) -> u64 {
    let q = phi.q() as u64;
    let d = d.max(1) as u64;
    let mut log = 0u64;
    let mut pw = 1u64;
    while pw < d {
        pw = pw.saturating_mul(q);
        log += 1;
    }
    let top = (phi.u().total_degree() as u64) / q + 1 + n as u64;
    log.saturating_add(binomial(top, n as u64))
}

fn binomial(n: u64, k: u64) -> u64 {
    let k = k.min(n.saturating_sub(k));
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc.min(u64::MAX as u128) as u64
}

/// Largest total degree among the generators.
pub fn generator_degree(i: &Ideal) -> u32 {
    i.generators()
        .iter()
        .map(|g| g.total_degree())
        .max()
        .unwrap_or(0)
}

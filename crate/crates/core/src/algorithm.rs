//! The recursive enumeration of `φ`-compatible primes.
//!
//! Each round takes a compatible prime `Q`, finds an ideal `J` cutting out
//! the singular locus of `S/Q`, the ideal `B` locating the divisor of `φ/Q`,
//! and the stable ideal `C` generated from `(J ∩ B) + Q`. The intersection
//! has the same radical as `J·B`, so the same primes contain it. The minimal
//! primes of `C` are new compatible primes and seed the next rounds. When `φ` is not
//! surjective the chain is the ascending one and primes containing
//! `K = √(φ(F^e_* S))` are set aside: every prime over `K` is compatible.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::decompose::{minimal_primes, radical, PrimeComponent};
use crate::error::{Error, Result};
use crate::frobenius::{
    application_bound, bracket_power, frobenius_root, generator_degree, is_surjective_mod,
    phi_apply, require_compatible, PhiMap,
};
use crate::groebner::Ideal;
use crate::poly::Polynomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Mode {
    #[default]
    Auto,
    Surjective,
    General,
}

impl Mode {
    pub fn parse(s: &str) -> Option<Mode> {
        match s {
            "auto" => Some(Mode::Auto),
            "surjective" => Some(Mode::Surjective),
            "general" => Some(Mode::General),
            _ => None,
        }
    }
}

/// Which chain produces `C`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    /// `φ^t(C_0) + Q` until two consecutive terms agree.
    Surjective,
    /// `C_t = C_{t-1} + φ(C_{t-1})`.
    General,
}

#[derive(Clone, Debug)]
pub struct CompatProblem {
    pub phi: PhiMap,
    pub seed: Ideal,
    pub mode: Mode,
    /// Replaces the Jacobian ideal in every round.
    pub j_override: Option<Ideal>,
    pub threads: usize,
}

impl CompatProblem {
    pub fn new(phi: PhiMap, seed: Ideal) -> Self {
        CompatProblem {
            phi,
            seed,
            mode: Mode::Auto,
            j_override: None,
            threads: 1,
        }
    }
}

/// One round for a prime `Q`.
#[derive(Clone, Debug)]
pub struct Round {
    pub q: Ideal,
    pub j: Ideal,
    pub b: Ideal,
    /// `None` when the round was closed early.
    pub c: Option<Ideal>,
    pub chain_length: usize,
    pub bound: u64,
    pub minimal_primes: Vec<PrimeComponent>,
    /// Minimal primes of `C` that survive the `K` filter.
    pub kept: Vec<PrimeComponent>,
    pub note: Option<String>,
}

#[derive(Clone, Debug)]
pub struct CompatResult {
    pub primes: Vec<PrimeComponent>,
    /// `(a, b)` when `primes[a] ⊊ primes[b]` with nothing in between.
    pub edges: Vec<(usize, usize)>,
    pub k: Ideal,
    pub surjective: bool,
    pub variant: Variant,
    pub trace: Vec<Round>,
    pub notes: Vec<String>,
}

/// The stable ideal `C` and how it was reached.
#[derive(Clone, Debug)]
pub struct Chain {
    pub ideal: Ideal,
    pub length: usize,
    pub bound: u64,
}

/// `Q` plus the maximal minors of the Jacobian matrix of `Q`'s basis that
/// matter: the `c × c` minors with `c = n - dim Q`. The polynomial ring
/// itself is regular, so `⟨0⟩` gives `⟨1⟩`.
pub fn singular_locus_ideal(q: &Ideal) -> Result<Ideal> {
    let ring = q.ring();
    if q.is_unit() {
        return Err(Error::Precondition(
            "the unit ideal has no singular locus".into(),
        ));
    }
    if q.is_zero() {
        return Ok(Ideal::unit(ring));
    }
    let gb = q.groebner_basis();
    let n = ring.nvars();
    let c = (n as i64 - q.dimension()) as usize;
    let entries: Vec<Vec<Polynomial>> = gb
        .iter()
        .map(|g| (0..n).map(|v| q.normal_form(&g.differentiate(v))).collect())
        .collect();
    let mut minors: Vec<Polynomial> = Vec::new();
    for rows in combinations(gb.len(), c) {
        // Laplace expansion along successive rows, indexed by column sets
        let mut level: HashMap<u64, Polynomial> = HashMap::from([(0u64, Polynomial::one(ring))]);
        for (k, &r) in rows.iter().enumerate() {
            let mut next: HashMap<u64, Polynomial> = HashMap::new();
            for (mask, det) in &level {
                for j in (0..n).filter(|j| mask & (1 << j) == 0) {
                    let a = &entries[r][j];
                    if a.is_zero() {
                        continue;
                    }
                    let below = (mask & ((1u64 << j) - 1)).count_ones() as usize;
                    let mut term = a * det;
                    if (k + below) % 2 == 1 {
                        term = -&term;
                    }
                    let slot = next
                        .entry(mask | (1 << j))
                        .or_insert_with(|| Polynomial::zero(ring));
                    *slot = &*slot + &term;
                }
            }
            level = next
                .into_iter()
                .map(|(m, f)| (m, q.normal_form(&f)))
                .filter(|(_, f)| !f.is_zero())
                .collect();
        }
        minors.extend(level.into_values());
    }
    if minors.is_empty() {
        return Err(Error::JacobianFailed(format!(
            "every {c}x{c} minor lies in {q}"
        )));
    }
    minors.sort_by_cached_key(|f| f.to_string());
    minors.dedup();
    Ok(q.add_generators(minors))
}

fn combinations(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            if m - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, m, k, cur, out);
            cur.pop();
        }
    }
    go(0, m, k, &mut cur, &mut out);
    out
}

/// `B = (⟨u⟩ + Q^{[q]}) : (Q^{[q]} : Q)`.
pub fn compute_b(phi: &PhiMap, q: &Ideal) -> Ideal {
    let qq = bracket_power(q, phi.q());
    let witnesses = qq.colon(q);
    qq.add_generators([phi.u().clone()]).colon(&witnesses)
}

/// `(J ∩ B) + Q`, the start of the chain.
pub fn chain_start(j: &Ideal, b: &Ideal, q: &Ideal) -> Ideal {
    j.intersect(b).sum(q)
}

/// Step 3 from the ideal `start`.
pub fn compute_c(phi: &PhiMap, q: &Ideal, start: &Ideal, variant: Variant) -> Result<Chain> {
    let n = phi.ring().nvars();
    let bound = application_bound(phi, generator_degree(start), n);
    let mut cur = start.reduced();
    let mut length = 0usize;
    loop {
        let applied = phi_apply(phi, &cur);
        let next = match variant {
            Variant::Surjective => applied.sum(q).reduced(),
            Variant::General => applied.sum(&cur).reduced(),
        };
        if next.equals(&cur) {
            return Ok(Chain {
                ideal: cur,
                length,
                bound,
            });
        }
        length += 1;
        if length as u64 > bound {
            return Err(Error::StabilizationFailed { bound });
        }
        cur = next;
    }
}

/// `K = √(I_e(⟨u⟩))`.
pub fn image_radical(phi: &PhiMap) -> Ideal {
    radical(&frobenius_root(&Ideal::principal(phi.u().clone()), phi.q()))
}

/// Every compatible prime properly containing some seed prime, plus the seed
/// primes themselves unless the seed is `⟨0⟩`.
pub fn compatible_primes(problem: &CompatProblem) -> Result<CompatResult> {
    let phi = &problem.phi;
    let seed = &problem.seed;
    require_compatible(phi, seed)?;
    let surjective = is_surjective_mod(phi, seed)?;
    let variant = match problem.mode {
        Mode::Auto if surjective => Variant::Surjective,
        Mode::Auto | Mode::General => Variant::General,
        Mode::Surjective if surjective => Variant::Surjective,
        Mode::Surjective => return Err(Error::NotSurjective),
    };
    let k = image_radical(phi);
    let mut notes = Vec::new();
    if !k.is_unit() {
        notes.push(format!(
            "every prime containing K = {k} is compatible, since phi vanishes modulo K; these are not enumerated"
        ));
    }

    let seeds: Vec<PrimeComponent> = if seed.is_zero() {
        vec![PrimeComponent::certified(Ideal::zero(seed.ring()))]
    } else {
        minimal_primes(seed)
    };
    let mut found: BTreeMap<String, PrimeComponent> = BTreeMap::new();
    if !seed.is_zero() {
        for s in &seeds {
            found.insert(s.ideal.canonical_key(), s.clone());
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(problem.threads.max(1))
        .build()
        .map_err(|e| Error::Internal(e.to_string()))?;
    let mut trace: Vec<Round> = Vec::new();
    let mut frontier: Vec<Ideal> = seeds.into_iter().map(|s| s.ideal).collect();
    while !frontier.is_empty() {
        let base = trace.len();
        let run = |(idx, q): (usize, &Ideal)| {
            run_round(phi, q, &k, problem.j_override.as_ref(), variant)
                .map_err(|e| e.in_round(base + idx))
        };
        let rounds: Vec<Round> = if problem.threads > 1 {
            pool.install(|| {
                frontier
                    .par_iter()
                    .enumerate()
                    .map(run)
                    .collect::<Result<_>>()
            })?
        } else {
            frontier
                .iter()
                .enumerate()
                .map(run)
                .collect::<Result<_>>()?
        };
        let mut next: BTreeMap<String, Ideal> = BTreeMap::new();
        for r in &rounds {
            for pc in &r.kept {
                let key = pc.ideal.canonical_key();
                if !found.contains_key(&key) {
                    found.insert(key.clone(), pc.clone());
                    next.insert(key, pc.ideal.clone());
                }
            }
        }
        trace.extend(rounds);
        frontier = next.into_values().collect();
    }

    let mut primes: Vec<PrimeComponent> = found.into_values().collect();
    primes.sort_by_cached_key(|pc| (-pc.ideal.dimension(), pc.ideal.canonical_key()));
    let ideals: Vec<Ideal> = primes.iter().map(|pc| pc.ideal.clone()).collect();
    let edges = poset_assemble(&ideals);
    Ok(CompatResult {
        primes,
        edges,
        k,
        surjective,
        variant,
        trace,
        notes,
    })
}

fn run_round(
    phi: &PhiMap,
    q: &Ideal,
    k: &Ideal,
    j_override: Option<&Ideal>,
    variant: Variant,
) -> Result<Round> {
    let j = match j_override {
        Some(j) => q.sum(j),
        None => singular_locus_ideal(q)?,
    };
    let b = compute_b(phi, q);
    let mut round = Round {
        q: q.clone(),
        j: j.reduced(),
        b: b.reduced(),
        c: None,
        chain_length: 0,
        bound: 0,
        minimal_primes: Vec::new(),
        kept: Vec::new(),
        note: None,
    };
    if q.contains(&j) {
        return Err(Error::JacobianFailed(format!("J is contained in {q}")));
    }
    if q.contains(&b) {
        return match variant {
            Variant::General => {
                round.note =
                    Some("phi vanishes modulo Q, so every prime containing Q is compatible".into());
                Ok(round)
            }
            Variant::Surjective => Err(Error::Internal(format!(
                "B is contained in {q} although phi is surjective"
            ))),
        };
    }
    let start = chain_start(&j, &b, q);
    let chain = compute_c(phi, q, &start, variant)?;
    if q.contains(&chain.ideal) {
        return Err(Error::Internal(format!("C does not properly contain {q}")));
    }
    round.minimal_primes = minimal_primes(&chain.ideal);
    round.kept = round
        .minimal_primes
        .iter()
        .filter(|pc| variant == Variant::Surjective || !pc.ideal.contains(k))
        .cloned()
        .collect();
    round.chain_length = chain.length;
    round.bound = chain.bound;
    round.c = Some(chain.ideal.reduced());
    Ok(round)
}

/// Covering relations of inclusion among pairwise distinct ideals.
pub fn poset_assemble(ideals: &[Ideal]) -> Vec<(usize, usize)> {
    let m = ideals.len();
    let below: Vec<Vec<bool>> = (0..m)
        .map(|a| {
            (0..m)
                .map(|b| a != b && ideals[b].contains(&ideals[a]))
                .collect()
        })
        .collect();
    let mut edges = Vec::new();
    for a in 0..m {
        for b in 0..m {
            if below[a][b] && !(0..m).any(|c| below[a][c] && below[c][b]) {
                edges.push((a, b));
            }
        }
    }
    edges
}

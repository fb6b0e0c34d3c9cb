//! Buchberger's algorithm with Gebauer–Möller pair elimination. Pairs are
//! selected by sugar degree, which is the normal strategy on homogeneous
//! input and keeps lex and elimination runs out of needlessly high degrees.

use std::cmp::{Ordering, Reverse};
use std::collections::{BinaryHeap, HashMap};

use crate::field::{self, Coeff};
use crate::poly::Polynomial;
use crate::ring::{Monomial, MonomialOrder, Ring};

type Terms = Vec<(Monomial, Coeff)>;

/// Leading-monomial index over a list of divisors.
struct Reducer<'a> {
    polys: Vec<&'a Polynomial>,
    lms: Vec<Monomial>,
    masks: Vec<u64>,
    // position of each divisor in the caller's list
    origin: Vec<usize>,
}

impl<'a> Reducer<'a> {
    // Candidates are tried smallest leading monomial first, which keeps
    // intermediate degrees down.
    fn new(polys: impl IntoIterator<Item = &'a Polynomial>) -> Self {
        let mut indexed: Vec<(usize, &Polynomial)> = polys
            .into_iter()
            .enumerate()
            .filter(|(_, g)| !g.is_zero())
            .collect();
        if let Some((_, g)) = indexed.first() {
            let ring = g.ring().clone();
            indexed.sort_by(|a, b| {
                ring.cmp(
                    a.1.leading_monomial().unwrap(),
                    b.1.leading_monomial().unwrap(),
                )
            });
        }
        let origin = indexed.iter().map(|(i, _)| *i).collect();
        let polys: Vec<&Polynomial> = indexed.into_iter().map(|(_, g)| g).collect();
        let lms: Vec<Monomial> = polys
            .iter()
            .map(|g| g.leading_monomial().unwrap().clone())
            .collect();
        let masks = lms.iter().map(|m| m.support_mask()).collect();
        Reducer {
            polys,
            lms,
            masks,
            origin,
        }
    }

    fn find(&self, m: &Monomial) -> Option<usize> {
        let mask = m.support_mask();
        (0..self.lms.len()).find(|&i| self.masks[i] & !mask == 0 && self.lms[i].divides(m))
    }
}

// a + c*m*b[1..], where b is the divisor; both inputs sorted descending.
fn merge_scaled(
    ring: &Ring,
    a: &[(Monomial, Coeff)],
    b: &[(Monomial, Coeff)],
    m: &Monomial,
    c: Coeff,
) -> Terms {
    let p = ring.p();
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    let mut j = 0;
    let mut bj: Option<(Monomial, Coeff)> =
        b.first().map(|(mm, cc)| (mm.mul(m), field::mul(*cc, c, p)));
    while i < a.len() {
        let Some((bm, bc)) = &bj else { break };
        match ring.cmp(&a[i].0, bm) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((bm.clone(), *bc));
                j += 1;
                bj = b.get(j).map(|(mm, cc)| (mm.mul(m), field::mul(*cc, c, p)));
            }
            Ordering::Equal => {
                let s = field::add(a[i].1, *bc, p);
                if s != 0 {
                    out.push((a[i].0.clone(), s));
                }
                i += 1;
                j += 1;
                bj = b.get(j).map(|(mm, cc)| (mm.mul(m), field::mul(*cc, c, p)));
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    if bj.is_some() {
        out.extend(
            b[j..]
                .iter()
                .map(|(mm, cc)| (mm.mul(m), field::mul(*cc, c, p))),
        );
    }
    out
}

/// Full reduction of `terms` by a reducer; `quotients` receives cofactors
/// when requested.
///
/// The working polynomial is a hash map of coefficients plus a max-heap of
/// monomials (with stale entries skipped on pop), so one reduction step
/// costs time proportional to the divisor rather than the dividend.
fn reduce_terms(
    ring: &Ring,
    cur: Terms,
    red: &Reducer,
    mut quotients: Option<&mut Vec<Terms>>,
) -> Terms {
    let p = ring.p();
    let order = ring.order();
    let mut rem = Vec::new();
    let mut coeffs: HashMap<Monomial, Coeff> = HashMap::with_capacity(cur.len() * 2);
    let mut heap: BinaryHeap<Ordered> = BinaryHeap::with_capacity(cur.len());
    for (m, c) in cur {
        coeffs.insert(m.clone(), c);
        heap.push(Ordered(m, order));
    }
    while let Some(Ordered(m, _)) = heap.pop() {
        let c = match coeffs.remove(&m) {
            Some(c) if c != 0 => c,
            _ => continue,
        };
        // duplicates of `m` may still sit in the heap; they are skipped above
        match red.find(&m) {
            Some(k) => {
                let g = red.polys[k];
                let q = red.lms[k].quotient_of(&m);
                let coef = field::mul(c, field::inv(g.leading_coeff(), p), p);
                if let Some(qs) = quotients.as_deref_mut() {
                    qs[red.origin[k]].push((q.clone(), coef));
                }
                let neg = field::neg(coef, p);
                for (gm, gc) in &g.terms()[1..] {
                    let mm = gm.mul(&q);
                    let add = field::mul(*gc, neg, p);
                    match coeffs.get_mut(&mm) {
                        Some(v) => *v = field::add(*v, add, p),
                        None => {
                            coeffs.insert(mm.clone(), add);
                            heap.push(Ordered(mm, order));
                        }
                    }
                }
            }
            None => {
                rem.push((m, c));
            }
        }
    }
    rem
}

// Monomial ordered by a fixed monomial order, for the reduction heap.
struct Ordered(Monomial, MonomialOrder);

impl PartialEq for Ordered {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

impl Eq for Ordered {}

impl PartialOrd for Ordered {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ordered {
    fn cmp(&self, other: &Self) -> Ordering {
        self.1.compare(&self.0, &other.0)
    }
}

/// Remainder of `f` on division by `basis`. When `basis` is a Gröbner basis
/// this is the unique normal form.
pub fn normal_form(f: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let red = Reducer::new(basis);
    if red.polys.is_empty() || f.is_zero() {
        return f.clone();
    }
    let ring = f.ring().clone();
    let rem = reduce_terms(&ring, f.terms().to_vec(), &red, None);
    Polynomial::from_sorted_unchecked(&ring, rem)
}

/// Division with cofactors: returns `(q, r)` with `f = sum q_i * basis_i + r`.
pub fn divide(f: &Polynomial, basis: &[Polynomial]) -> (Vec<Polynomial>, Polynomial) {
    let ring = f.ring().clone();
    let red = Reducer::new(basis);
    let mut qs = vec![Vec::new(); basis.len()];
    let rem = reduce_terms(&ring, f.terms().to_vec(), &red, Some(&mut qs));
    let out = qs
        .into_iter()
        .map(|terms| Polynomial::from_terms(&ring, terms))
        .collect();
    (out, Polynomial::from_sorted_unchecked(&ring, rem))
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
    alive: bool,
}

// Pair priority: smallest sugar first, then smallest lcm. Lex runs ignore
// sugar, which is then the plain normal strategy.
struct QueueKey {
    sugar: u32,
    lcm: Monomial,
    order: MonomialOrder,
    id: usize,
}

impl PartialEq for QueueKey {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for QueueKey {}

impl PartialOrd for QueueKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QueueKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sugar
            .cmp(&other.sugar)
            .then_with(|| self.order.compare(&self.lcm, &other.lcm))
            .then_with(|| self.id.cmp(&other.id))
    }
}

struct State {
    ring: Ring,
    polys: Vec<Polynomial>,
    lms: Vec<Monomial>,
    sugar: Vec<u32>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
    queue: BinaryHeap<Reverse<QueueKey>>,
}

impl State {
    fn active_basis(&self) -> impl Iterator<Item = &Polynomial> {
        self.polys
            .iter()
            .zip(&self.active)
            .filter(|(_, a)| **a)
            .map(|(g, _)| g)
    }

    fn reduce(&self, terms: Terms) -> Polynomial {
        let red = Reducer::new(self.active_basis());
        let rem = reduce_terms(&self.ring, terms, &red, None);
        Polynomial::from_sorted_unchecked(&self.ring, rem).monic()
    }

    fn spoly(&self, pair: &Pair) -> Terms {
        let p = self.ring.p();
        let (f, g) = (&self.polys[pair.i], &self.polys[pair.j]);
        let mf = self.lms[pair.i].quotient_of(&pair.lcm);
        let mg = self.lms[pair.j].quotient_of(&pair.lcm);
        let a: Terms = f.terms()[1..]
            .iter()
            .map(|(m, c)| (m.mul(&mf), *c))
            .collect();
        merge_scaled(&self.ring, &a, &g.terms()[1..], &mg, field::neg(1, p))
    }

    // Gebauer–Möller update for a new monic element.
    fn insert(&mut self, h: Polynomial, sugar: u32) {
        let hi = self.polys.len();
        let hl = h.leading_monomial().unwrap().clone();
        self.sugar.push(sugar);
        self.lms.push(hl.clone());
        self.polys.push(h);
        self.active.push(false);

        let cands: Vec<(usize, Monomial)> = (0..hi)
            .filter(|&g| self.active[g])
            .map(|g| (g, self.lms[g].lcm(&hl)))
            .collect();
        // chain criterion among the new pairs
        let mut kept: Vec<bool> = vec![false; cands.len()];
        for k in 0..cands.len() {
            let (g, l) = &cands[k];
            let coprime = self.lms[*g].is_coprime(&hl);
            let dominated_later = cands[k + 1..].iter().any(|(_, l2)| l2.divides(l));
            let dominated_kept = (0..k).any(|k2| kept[k2] && cands[k2].1.divides(l));
            kept[k] = coprime || !(dominated_later || dominated_kept);
        }
        // old pairs made redundant by h
        for pair in self.pairs.iter_mut().filter(|p| p.alive) {
            if hl.divides(&pair.lcm)
                && self.lms[pair.i].lcm(&hl) != pair.lcm
                && self.lms[pair.j].lcm(&hl) != pair.lcm
            {
                pair.alive = false;
            }
        }
        // product criterion on the survivors
        for (k, (g, l)) in cands.into_iter().enumerate() {
            if kept[k] && !self.lms[g].is_coprime(&hl) {
                let id = self.pairs.len();
                let deg = l.degree();
                let sugar =
                    (self.sugar[g] + deg - self.lms[g].degree()).max(sugar + deg - hl.degree());
                self.queue.push(Reverse(QueueKey {
                    sugar: if self.ring.order() == MonomialOrder::Lex {
                        0
                    } else {
                        sugar
                    },
                    lcm: l.clone(),
                    order: self.ring.order(),
                    id,
                }));
                self.pairs.push(Pair {
                    i: g,
                    j: hi,
                    lcm: l,
                    sugar,
                    alive: true,
                });
            }
        }
        for g in 0..hi {
            if self.active[g] && hl.divides(&self.lms[g]) {
                self.active[g] = false;
            }
        }
        self.active[hi] = true;
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens` with respect to the
/// order of `ring`, sorted by ascending leading monomial. The unit ideal
/// gives `[1]` and the zero ideal gives `[]`.
pub fn groebner_basis(ring: &Ring, gens: &[Polynomial]) -> Vec<Polynomial> {
    let mut st = State {
        ring: ring.clone(),
        polys: Vec::new(),
        lms: Vec::new(),
        sugar: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
        queue: BinaryHeap::new(),
    };
    let input = autoreduce(ring, gens);
    if matches!(input.first(), Some(g) if g.is_constant()) {
        return vec![Polynomial::one(ring)];
    }
    for f in input {
        let sugar = f.total_degree();
        let h = st.reduce(f.terms().to_vec());
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return vec![Polynomial::one(ring)];
        }
        st.insert(h, sugar);
    }
    while let Some(Reverse(QueueKey { id, .. })) = st.queue.pop() {
        if !st.pairs[id].alive {
            continue;
        }
        st.pairs[id].alive = false;
        let s = st.spoly(&st.pairs[id]);
        if s.is_empty() {
            continue;
        }
        let h = st.reduce(s);
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return vec![Polynomial::one(ring)];
        }
        let sugar = st.pairs[id].sugar;
        st.insert(h, sugar);
    }
    interreduce(ring, st.active_basis().cloned().collect())
}

// Passes of "reduce each input by the ones before it" until a pass changes
// nothing. Output is monic and sorted by ascending leading monomial.
fn autoreduce(ring: &Ring, gens: &[Polynomial]) -> Vec<Polynomial> {
    let mut cur: Vec<Polynomial> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| g.monic())
        .collect();
    loop {
        let mut next: Vec<Polynomial> = Vec::with_capacity(cur.len());
        for (k, g) in cur.iter().enumerate() {
            let before = Reducer::new(&cur[..k]);
            let r = reduce_terms(ring, g.terms().to_vec(), &before, None);
            let r = Polynomial::from_sorted_unchecked(ring, r).monic();
            if r.is_constant() && !r.is_zero() {
                return vec![Polynomial::one(ring)];
            }
            if !r.is_zero() {
                next.push(r);
            }
        }
        if next == cur {
            cur.sort_by(|a, b| {
                ring.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap())
            });
            return cur;
        }
        cur = next;
    }
}

// Inputs have pairwise non-dividing leading monomials.
fn interreduce(ring: &Ring, minimal: Vec<Polynomial>) -> Vec<Polynomial> {
    let mut out: Vec<Polynomial> = Vec::with_capacity(minimal.len());
    for (k, g) in minimal.iter().enumerate() {
        let others = Reducer::new(
            minimal
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != k)
                .map(|(_, h)| h),
        );
        let tail = reduce_terms(ring, g.terms()[1..].to_vec(), &others, None);
        let mut terms = Vec::with_capacity(tail.len() + 1);
        terms.push(g.terms()[0].clone());
        terms.extend(tail);
        out.push(Polynomial::from_sorted_unchecked(ring, terms).monic());
    }
    out.sort_by(|a, b| ring.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    out
}

/// S-polynomial of two nonzero polynomials (used by tests of the
/// Gröbner property).
pub fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let ring = f.ring();
    let (lf, lg) = (f.leading_monomial().unwrap(), g.leading_monomial().unwrap());
    let l = lf.lcm(lg);
    let p = ring.p();
    let a = f.mul_term(&lf.quotient_of(&l), field::inv(f.leading_coeff(), p));
    let b = g.mul_term(&lg.quotient_of(&l), field::inv(g.leading_coeff(), p));
    &a - &b
}

/// Whether `basis` satisfies Buchberger's criterion.
pub fn is_groebner(basis: &[Polynomial]) -> bool {
    basis.iter().enumerate().all(|(i, f)| {
        basis[i + 1..]
            .iter()
            .all(|g| normal_form(&s_polynomial(f, g), basis).is_zero())
    })
}

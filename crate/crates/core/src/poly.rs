//! Sparse multivariate polynomials over `F_p`.
//!
//! Terms are kept sorted by decreasing monomial in the ring's order with no
//! zero coefficients, so structural equality is ideal-free equality of
//! polynomials and the first term is the leading term.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{self, Coeff, ExtElem, ExtField};
use crate::ring::{Monomial, Ring};

#[derive(Clone)]
pub struct Polynomial {
    ring: Ring,
    terms: Vec<(Monomial, Coeff)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring)
            && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Ring, c: i64) -> Self {
        let c = field::from_i64(c, ring.p());
        Self::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, 1)
    }

    pub fn var(ring: &Ring, i: usize) -> Self {
        Self::monomial(ring, Monomial::var(ring.nvars(), i), 1)
    }

    pub fn monomial(ring: &Ring, m: Monomial, c: Coeff) -> Self {
        let c = c % ring.p();
        let terms = if c == 0 { Vec::new() } else { vec![(m, c)] };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Build from arbitrary terms: like monomials are combined, zeros dropped
    /// and the result sorted.
    pub fn from_terms(ring: &Ring, terms: impl IntoIterator<Item = (Monomial, Coeff)>) -> Self {
        let p = ring.p();
        let mut acc: HashMap<Monomial, Coeff> = HashMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), ring.nvars());
            let e = acc.entry(m).or_insert(0);
            *e = field::add(*e, c % p, p);
        }
        Self::from_map(ring, acc)
    }

    fn from_map(ring: &Ring, acc: HashMap<Monomial, Coeff>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
        terms.sort_unstable_by(|a, b| ring.cmp(&b.0, &a.0));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Wrap terms that are already sorted, combined and nonzero.
    pub(crate) fn from_sorted_unchecked(ring: &Ring, terms: Vec<(Monomial, Coeff)>) -> Self {
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|t| t.1 != 0));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    #[inline]
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    #[inline]
    pub fn terms(&self) -> &[(Monomial, Coeff)] {
        &self.terms
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn is_one(&self) -> bool {
        self.is_unit() && self.terms[0].1 == 1
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coeff(&self) -> Coeff {
        self.terms.first().map_or(0, |t| t.1)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|t| t.0.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|t| t.0.exp(var)).max().unwrap_or(0)
    }

    /// Bit mask of the variables that occur.
    pub fn support_mask(&self) -> u64 {
        self.terms.iter().fold(0, |m, t| m | t.0.support_mask())
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.iter().any(|t| t.0.exp(var) > 0)
    }

    /// The coefficient of the constant monomial.
    pub fn constant_term(&self) -> Coeff {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => *c,
            _ => 0,
        }
    }

    fn same_ring(&self, other: &Polynomial) {
        debug_assert!(
            Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring,
            "polynomials from different rings"
        );
    }

    pub fn scale(&self, c: Coeff) -> Polynomial {
        let p = self.ring.p();
        let c = c % p;
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), field::mul(*a, c, p)))
                .collect(),
        }
    }

    /// `c * m * self`; the order is multiplicative so sortedness is kept.
    pub fn mul_term(&self, m: &Monomial, c: Coeff) -> Polynomial {
        let p = self.ring.p();
        if c.is_multiple_of(p) {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(mm, a)| (mm.mul(m), field::mul(*a, c, p)))
                .collect(),
        }
    }

    /// Scale so that the leading coefficient is 1.
    pub fn monic(&self) -> Polynomial {
        match self.terms.first() {
            None => self.clone(),
            Some((_, 1)) => self.clone(),
            Some((_, c)) => self.scale(field::inv(*c, self.ring.p())),
        }
    }

    pub fn pow(&self, mut k: u64) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one(&self.ring);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self^(p^e)`: in characteristic `p` this maps each term to its power.
    pub fn frobenius_power(&self, q: u32) -> Polynomial {
        let p = self.ring.p();
        // c^q = c for c in F_p, and (sum)^q = sum of q-th powers
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.pow(q), field::pow(*c, q as u64, p)))
                .collect(),
        }
    }

    /// Formal partial derivative.
    pub fn differentiate(&self, var: usize) -> Polynomial {
        let p = self.ring.p();
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exp(var);
            let k = (e as u64 % p as u64) as Coeff;
            if k == 0 {
                continue;
            }
            let mut ex = m.exps().to_vec();
            ex[var] -= 1;
            terms.push((Monomial::from_exps(ex), field::mul(*c, k, p)));
        }
        // dividing every surviving term by the same variable keeps them sorted
        Polynomial::from_sorted_unchecked(&self.ring, terms)
    }

    /// Evaluate at a point of `F_{p^k}^n`.
    pub fn evaluate(&self, field: &ExtField, point: &[ExtElem]) -> Result<ExtElem> {
        if point.len() != self.ring.nvars() {
            return Err(Error::Arity {
                expected: self.ring.nvars(),
                found: point.len(),
            });
        }
        Ok(self.evaluate_unchecked(field, point))
    }

    pub(crate) fn evaluate_unchecked(&self, field: &ExtField, point: &[ExtElem]) -> ExtElem {
        let mut acc = field.zero();
        for (m, c) in &self.terms {
            let mut t = field.embed(*c);
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    t = field.mul(t, field.pow(point[i], e as u64));
                }
            }
            acc = field.add(acc, t);
        }
        acc
    }

    /// Substitute `var := value`.
    pub fn substitute(&self, var: usize, value: &Polynomial) -> Polynomial {
        self.same_ring(value);
        let mut powers: Vec<Polynomial> = vec![Polynomial::one(&self.ring)];
        let mut acc: HashMap<Monomial, Coeff> = HashMap::new();
        let p = self.ring.p();
        for (m, c) in &self.terms {
            let e = m.exp(var) as usize;
            while powers.len() <= e {
                let next = &powers[powers.len() - 1] * value;
                powers.push(next);
            }
            let mut rest = m.exps().to_vec();
            rest[var] = 0;
            let rest = Monomial::from_exps(rest);
            for (mm, cc) in &powers[e].terms {
                let key = mm.mul(&rest);
                let v = acc.entry(key).or_insert(0);
                *v = field::add(*v, field::mul(*c, *cc, p), p);
            }
        }
        Polynomial::from_map(&self.ring, acc)
    }

    /// Write `self = sum_k coeffs[k] * x_var^k` with coefficients free of `var`.
    pub fn coefficients_in(&self, var: usize) -> Vec<Polynomial> {
        let d = self.degree_in(var) as usize;
        let mut buckets: Vec<Vec<(Monomial, Coeff)>> = vec![Vec::new(); d + 1];
        for (m, c) in &self.terms {
            let e = m.exp(var) as usize;
            let mut ex = m.exps().to_vec();
            ex[var] = 0;
            buckets[e].push((Monomial::from_exps(ex), *c));
        }
        buckets
            .into_iter()
            .map(|b| Polynomial::from_terms(&self.ring, b))
            .collect()
    }

    /// Move into another ring; `map[i]` is the index in `target` of this
    /// ring's variable `i`.
    pub fn map_to(&self, target: &Ring, map: &[usize]) -> Polynomial {
        let n = target.nvars();
        let mut terms: Vec<(Monomial, Coeff)> = self
            .terms
            .iter()
            .map(|(m, c)| (m.remap(map, n), *c))
            .collect();
        terms.sort_unstable_by(|a, b| target.cmp(&b.0, &a.0));
        Polynomial {
            ring: target.clone(),
            terms,
        }
    }

    /// Same polynomial viewed in a ring with identical variables but possibly
    /// a different order.
    pub fn reorder(&self, target: &Ring) -> Polynomial {
        debug_assert_eq!(target.vars(), self.ring.vars());
        let id: Vec<usize> = (0..self.ring.nvars()).collect();
        self.map_to(target, &id)
    }

    fn merge(&self, other: &Polynomial, negate_other: bool) -> Polynomial {
        self.same_ring(other);
        let p = self.ring.p();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        let fix = |c: Coeff| if negate_other { field::neg(c, p) } else { c };
        while i < a.len() && j < b.len() {
            match self.ring.cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0.clone(), fix(b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = field::add(a[i].1, fix(b[j].1), p);
                    if c != 0 {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend(b[j..].iter().map(|(m, c)| (m.clone(), fix(*c))));
        Polynomial {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    fn product(&self, other: &Polynomial) -> Polynomial {
        self.same_ring(other);
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let (small, big) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        if small.len() == 1 {
            let (m, c) = &small.terms[0];
            return big.mul_term(m, *c);
        }
        let p = self.ring.p();
        let mut acc: HashMap<Monomial, Coeff> = HashMap::with_capacity(small.len() * big.len());
        for (ma, ca) in &small.terms {
            for (mb, cb) in &big.terms {
                let e = acc.entry(ma.mul(mb)).or_insert(0);
                *e = field::add(*e, field::mul(*ca, *cb, p), p);
            }
        }
        Polynomial::from_map(&self.ring, acc)
    }

    /// Render a monomial with this ring's variable names.
    pub fn format_monomial(ring: &Ring, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (i, &e) in m.exps().iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(ring.vars()[i].clone()),
                _ => parts.push(format!("{}^{}", ring.vars()[i], e)),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Display for Polynomial {
    /// Canonical text: terms in decreasing order, coefficients as symmetric
    /// residues, e.g. `x^2-y*z`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let p = self.ring.p();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let s = field::symmetric(*c, p);
            let (neg, mag) = if s < 0 { (true, -s) } else { (false, s) };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag == 1 {
                write!(f, "{}", Polynomial::format_monomial(&self.ring, m))?;
            } else {
                write!(f, "{mag}*{}", Polynomial::format_monomial(&self.ring, m))?;
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &'a Polynomial) -> Polynomial {
        self.merge(rhs, false)
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &'a Polynomial) -> Polynomial {
        self.merge(rhs, true)
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &'a Polynomial) -> Polynomial {
        self.product(rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(self.ring.p() - 1)
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;
    use crate::ring::{MonomialOrder, RingDescriptor};

    fn ring(p: u64, vars: &[&str]) -> Ring {
        RingDescriptor::with_vars(p, vars, MonomialOrder::GrevLex).unwrap()
    }

    fn poly(r: &Ring, s: &str) -> Polynomial {
        parse_polynomial(r, s).unwrap()
    }

    #[test]
    fn derivative_examples() {
        let r = ring(3, &["x", "y", "z", "w"]);
        let f = poly(&r, "x^2 - y*z");
        assert_eq!(f.differentiate(0), poly(&r, "2*x"));
        assert_eq!(poly(&r, "x^3").differentiate(0), Polynomial::zero(&r));
        assert_eq!(f.differentiate(3), Polynomial::zero(&r));
    }

    #[test]
    fn evaluation_examples() {
        let r = ring(3, &["x", "y", "z", "w"]);
        let f3 = ExtField::new(3, 1).unwrap();
        let zero = vec![f3.zero(); 4];
        assert_eq!(
            poly(&r, "x^2 - y*z").evaluate(&f3, &zero).unwrap(),
            f3.zero()
        );

        let r2 = ring(2, &["x"]);
        let f2 = ExtField::new(2, 1).unwrap();
        assert_eq!(
            poly(&r2, "x + 1").evaluate(&f2, &[f2.one()]).unwrap(),
            f2.zero()
        );

        let rxy = ring(2, &["x", "y"]);
        let f4 = ExtField::new(2, 2).unwrap();
        let t = f4.gen();
        assert_eq!(
            poly(&rxy, "x*y").evaluate(&f4, &[t, t]).unwrap(),
            ExtElem(1, 1) // t + 1
        );
        assert!(matches!(
            poly(&rxy, "x*y").evaluate(&f4, &[t]),
            Err(Error::Arity { .. })
        ));
    }

    #[test]
    fn display_uses_symmetric_coefficients() {
        let r = ring(3, &["x", "y", "z", "w"]);
        assert_eq!(poly(&r, "x^2 + 2*y*z").to_string(), "x^2-y*z");
        assert_eq!(poly(&r, "-1").to_string(), "-1");
        assert_eq!(poly(&r, "0").to_string(), "0");
        let r5 = ring(5, &["a"]);
        assert_eq!(poly(&r5, "3*a + 2").to_string(), "-2*a+2");
    }

    #[test]
    fn substitution_and_coefficients() {
        let r = ring(3, &["x", "y"]);
        let f = poly(&r, "x^2*y + x + 1");
        let g = f.substitute(0, &poly(&r, "y+1"));
        assert_eq!(g, poly(&r, "(y+1)^2*y + y + 2"));
        let cs = f.coefficients_in(0);
        assert_eq!(cs.len(), 3);
        assert_eq!(cs[2], poly(&r, "y"));
        assert_eq!(cs[1], poly(&r, "1"));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_poly(r: Ring) -> impl Strategy<Value = Polynomial> {
            let n = r.nvars();
            let p = r.p();
            prop::collection::vec((prop::collection::vec(0u32..4, n), 0..p), 0..6).prop_map(
                move |ts| {
                    Polynomial::from_terms(
                        &r,
                        ts.into_iter().map(|(e, c)| (Monomial::from_exps(e), c)),
                    )
                },
            )
        }

        fn triple(p: u64) -> impl Strategy<Value = (Polynomial, Polynomial, Polynomial)> {
            let r = ring(p, &["x", "y", "z"]);
            (arb_poly(r.clone()), arb_poly(r.clone()), arb_poly(r))
        }

        fn any_field_triple() -> impl Strategy<Value = (Polynomial, Polynomial, Polynomial)> {
            prop_oneof![triple(2), triple(3), triple(5)]
        }

        proptest! {
            #[test]
            fn ring_axioms((f, g, h) in any_field_triple()) {
                prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
                prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
                prop_assert_eq!(&(&f + &g) + &h, &f + &(&g + &h));
                prop_assert_eq!(&f * &g, &g * &f);
                prop_assert!((&f - &f).is_zero());
            }

            #[test]
            fn freshmans_dream((f, g, _h) in any_field_triple()) {
                let p = f.ring().p() as u64;
                prop_assert_eq!((&f + &g).pow(p), &f.pow(p) + &g.pow(p));
                prop_assert_eq!(f.frobenius_power(p as u32), f.pow(p));
            }

            #[test]
            fn print_parse_round_trip((f, _g, _h) in any_field_triple()) {
                let back = parse_polynomial(f.ring(), &f.to_string()).unwrap();
                prop_assert_eq!(back, f);
            }
        }
    }
}

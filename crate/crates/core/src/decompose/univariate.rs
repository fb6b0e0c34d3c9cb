//! Dense univariate polynomials over `F_p` and their factorization:
//! squarefree decomposition, distinct-degree and equal-degree splitting.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::{self, Coeff};

/// Coefficients from degree 0 upwards, with no trailing zeros.
pub type Dense = Vec<Coeff>;

fn trim(mut a: Dense) -> Dense {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn degree(a: &[Coeff]) -> Option<usize> {
    if a.is_empty() {
        None
    } else {
        Some(a.len() - 1)
    }
}

fn is_one(a: &[Coeff]) -> bool {
    a.len() == 1 && a[0] == 1
}

pub fn add(a: &[Coeff], b: &[Coeff], p: Coeff) -> Dense {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| field::add(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0), p))
        .collect();
    trim(out)
}

pub fn sub(a: &[Coeff], b: &[Coeff], p: Coeff) -> Dense {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| field::sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0), p))
        .collect();
    trim(out)
}

pub fn mul(a: &[Coeff], b: &[Coeff], p: Coeff) -> Dense {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    let pp = p as u64;
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % pp;
        }
    }
    trim(out.into_iter().map(|c| c as Coeff).collect())
}

pub fn scale(a: &[Coeff], c: Coeff, p: Coeff) -> Dense {
    trim(a.iter().map(|&x| field::mul(x, c, p)).collect())
}

pub fn monic(a: &[Coeff], p: Coeff) -> Dense {
    match a.last() {
        None => Vec::new(),
        Some(&lc) => scale(a, field::inv(lc, p), p),
    }
}

/// Quotient and remainder; `b` must be nonzero.
pub fn divrem(a: &[Coeff], b: &[Coeff], p: Coeff) -> (Dense, Dense) {
    let db = degree(b).expect("division by zero polynomial");
    let inv = field::inv(b[db], p);
    let mut r = a.to_vec();
    if r.len() <= db {
        return (Vec::new(), trim(r));
    }
    let mut q = vec![0; r.len() - db];
    for k in (0..q.len()).rev() {
        let c = field::mul(r[k + db], inv, p);
        if c == 0 {
            continue;
        }
        q[k] = c;
        for (j, &bj) in b.iter().enumerate() {
            r[k + j] = field::sub(r[k + j], field::mul(c, bj, p), p);
        }
    }
    r.truncate(db);
    (trim(q), trim(r))
}

pub fn rem(a: &[Coeff], b: &[Coeff], p: Coeff) -> Dense {
    divrem(a, b, p).1
}

pub fn div_exact(a: &[Coeff], b: &[Coeff], p: Coeff) -> Dense {
    divrem(a, b, p).0
}

/// Monic gcd (zero when both inputs are zero).
pub fn gcd(a: &[Coeff], b: &[Coeff], p: Coeff) -> Dense {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    monic(&a, p)
}

pub fn derivative(a: &[Coeff], p: Coeff) -> Dense {
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| field::mul(c, (i as u64 % p as u64) as Coeff, p))
            .collect(),
    )
}

/// `base^e mod m`.
pub fn powmod(base: &[Coeff], mut e: u128, m: &[Coeff], p: Coeff) -> Dense {
    let mut result = rem(&[1], m, p);
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            result = rem(&mul(&result, &b, p), m, p);
        }
        b = rem(&mul(&b, &b, p), m, p);
        e >>= 1;
    }
    result
}

/// `g` with `g(x)^p = f(x)`, for `f` whose exponents are all multiples of `p`
/// (coefficients are their own `p`-th roots).
fn pth_root(f: &[Coeff], p: Coeff) -> Dense {
    f.iter().step_by(p as usize).copied().collect()
}

/// Squarefree decomposition: pairs `(g, m)` of coprime squarefree monic
/// polynomials with `monic(f) = ∏ g^m`.
pub fn squarefree(f: &[Coeff], p: Coeff) -> Vec<(Dense, u32)> {
    let f = monic(f, p);
    let mut out = Vec::new();
    if degree(&f).unwrap_or(0) == 0 {
        return out;
    }
    let c0 = gcd(&f, &derivative(&f, p), p);
    let mut w = div_exact(&f, &c0, p);
    let mut c = c0;
    let mut i = 1u32;
    while !is_one(&w) {
        let y = gcd(&w, &c, p);
        let fac = div_exact(&w, &y, p);
        if !is_one(&fac) {
            out.push((fac, i));
        }
        w = y.clone();
        c = div_exact(&c, &y, p);
        i += 1;
    }
    if !is_one(&c) {
        for (g, m) in squarefree(&pth_root(&c, p), p) {
            out.push((g, m * p));
        }
    }
    out
}

/// Distinct-degree factorization of a squarefree monic `f`: pairs `(g, d)`
/// where `g` is the product of all irreducible factors of degree `d`.
pub fn distinct_degree(f: &[Coeff], p: Coeff) -> Vec<(Dense, usize)> {
    let mut out = Vec::new();
    let mut f = monic(f, p);
    let x: Dense = vec![0, 1];
    let mut h = rem(&x, &f, p);
    let mut d = 1;
    while degree(&f).unwrap_or(0) >= 2 * d {
        h = powmod(&h, p as u128, &f, p);
        let g = gcd(&f, &sub(&h, &x, p), p);
        if !is_one(&g) {
            f = div_exact(&f, &g, p);
            h = rem(&h, &f, p);
            out.push((g, d));
        }
        d += 1;
    }
    if degree(&f).unwrap_or(0) > 0 {
        let df = degree(&f).unwrap();
        out.push((f, df));
    }
    out
}

/// Split a squarefree monic product of irreducibles of degree `d` into its
/// irreducible factors.
pub fn equal_degree(f: &[Coeff], d: usize, p: Coeff, rng: &mut ChaCha8Rng) -> Vec<Dense> {
    let n = degree(f).unwrap_or(0);
    if n == 0 {
        return Vec::new();
    }
    if n == d {
        return vec![monic(f, p)];
    }
    loop {
        let a: Dense = trim((0..n).map(|_| rng.gen_range(0..p)).collect());
        if degree(&a).unwrap_or(0) == 0 {
            continue;
        }
        let b = if p == 2 {
            // absolute trace a + a^2 + … + a^{2^{d-1}}
            let mut t = rem(&a, f, p);
            let mut acc = t.clone();
            for _ in 1..d {
                t = rem(&mul(&t, &t, p), f, p);
                acc = add(&acc, &t, p);
            }
            acc
        } else {
            // a^{(p^d - 1)/2} = (a^{1 + p + … + p^{d-1}})^{(p-1)/2}
            let mut t = rem(&a, f, p);
            let mut norm = t.clone();
            for _ in 1..d {
                t = powmod(&t, p as u128, f, p);
                norm = rem(&mul(&norm, &t, p), f, p);
            }
            sub(&powmod(&norm, ((p - 1) / 2) as u128, f, p), &[1], p)
        };
        let g = gcd(f, &b, p);
        let dg = degree(&g).unwrap_or(0);
        if dg > 0 && dg < n {
            let mut out = equal_degree(&g, d, p, rng);
            out.extend(equal_degree(&div_exact(f, &g, p), d, p, rng));
            return out;
        }
    }
}

/// Irreducible factorization of a nonzero `f`: monic irreducible factors with
/// multiplicities, sorted by degree and then coefficients.
pub fn factor(f: &[Coeff], p: Coeff) -> Vec<(Dense, u32)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ p as u64);
    let mut out = Vec::new();
    for (g, m) in squarefree(f, p) {
        for (h, d) in distinct_degree(&g, p) {
            for k in equal_degree(&h, d, p, &mut rng) {
                out.push((k, m));
            }
        }
    }
    out.sort_by(|a, b| {
        a.0.len()
            .cmp(&b.0.len())
            .then_with(|| a.0.iter().rev().cmp(b.0.iter().rev()))
    });
    out
}

/// All roots in `F_p` of a polynomial that splits into distinct linear
/// factors.
pub fn roots(f: &[Coeff], p: Coeff) -> Vec<Coeff> {
    factor(f, p)
        .into_iter()
        .filter(|(g, _)| g.len() == 2)
        .map(|(g, _)| field::neg(g[0], p))
        .collect()
}

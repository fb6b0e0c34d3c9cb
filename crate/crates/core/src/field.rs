//! Prime-field arithmetic and the small extension fields used by the
//! point-evaluation oracle.

use crate::error::{Error, Result};

/// Residue class modulo a prime. The modulus lives in the ring, so plain
/// `u32` values are passed around and the helpers below take `p` explicitly.
pub type Coeff = u32;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[inline]
pub fn add(a: Coeff, b: Coeff, p: Coeff) -> Coeff {
    let s = a as u64 + b as u64;
    let p64 = p as u64;
    (if s >= p64 { s - p64 } else { s }) as Coeff
}

#[inline]
pub fn sub(a: Coeff, b: Coeff, p: Coeff) -> Coeff {
    if a >= b {
        a - b
    } else {
        (a as u64 + p as u64 - b as u64) as Coeff
    }
}

#[inline]
pub fn neg(a: Coeff, p: Coeff) -> Coeff {
    if a == 0 {
        0
    } else {
        p - a
    }
}

#[inline]
pub fn mul(a: Coeff, b: Coeff, p: Coeff) -> Coeff {
    ((a as u64 * b as u64) % p as u64) as Coeff
}

pub fn pow(mut a: Coeff, mut e: u64, p: Coeff) -> Coeff {
    let mut r = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a, p);
        }
        a = mul(a, a, p);
        e >>= 1;
    }
    r
}

/// Multiplicative inverse of a nonzero residue.
pub fn inv(a: Coeff, p: Coeff) -> Coeff {
    debug_assert!(!a.is_multiple_of(p), "inverse of zero");
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (p as i64, a as i64);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    t.rem_euclid(p as i64) as Coeff
}

/// Reduce an arbitrary signed integer into `[0, p)`.
pub fn from_i64(v: i64, p: Coeff) -> Coeff {
    v.rem_euclid(p as i64) as Coeff
}

/// Symmetric representative in `(-p/2, p/2]`, used for printing.
pub fn symmetric(a: Coeff, p: Coeff) -> i64 {
    if p > 2 && a > p / 2 {
        a as i64 - p as i64
    } else {
        a as i64
    }
}

/// A field `F_{p^k}` with `k ∈ {1, 2}`, realised as `F_p[t]/(t^2 + a t + b)`
/// for `k = 2`. The defining quadratic is the first monic irreducible one in
/// the order `(a, b) = (0, 1), (0, 2), …, (1, 0), …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtField {
    pub p: Coeff,
    pub degree: u32,
    /// `(a, b)` of the modulus `t^2 + a t + b` when `degree == 2`.
    pub modulus: (Coeff, Coeff),
}

/// Element `c0 + c1 t` of an [`ExtField`]; `c1 == 0` when `degree == 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtElem(pub Coeff, pub Coeff);

impl ExtField {
    pub fn new(p: Coeff, degree: u32) -> Result<Self> {
        match degree {
            1 => Ok(ExtField {
                p,
                degree,
                modulus: (0, 0),
            }),
            2 => {
                for a in 0..p {
                    for b in 1..p {
                        let has_root =
                            (0..p).any(|t| add(add(mul(t, t, p), mul(a, t, p), p), b, p) == 0);
                        if !has_root {
                            return Ok(ExtField {
                                p,
                                degree,
                                modulus: (a, b),
                            });
                        }
                    }
                }
                unreachable!("every prime field has an irreducible quadratic")
            }
            _ => Err(Error::Unsupported(format!(
                "extension degree {degree} (only 1 and 2 are supported)"
            ))),
        }
    }

    pub fn size(&self) -> u64 {
        (self.p as u64).pow(self.degree)
    }

    pub fn zero(&self) -> ExtElem {
        ExtElem(0, 0)
    }

    pub fn one(&self) -> ExtElem {
        ExtElem(1 % self.p, 0)
    }

    /// The generator `t` (only meaningful for `degree == 2`).
    pub fn gen(&self) -> ExtElem {
        ExtElem(0, 1)
    }

    pub fn embed(&self, c: Coeff) -> ExtElem {
        ExtElem(c % self.p, 0)
    }

    /// All field elements, in a fixed enumeration order.
    pub fn elements(&self) -> Vec<ExtElem> {
        let p = self.p;
        if self.degree == 1 {
            (0..p).map(|c| ExtElem(c, 0)).collect()
        } else {
            (0..p)
                .flat_map(|c1| (0..p).map(move |c0| ExtElem(c0, c1)))
                .collect()
        }
    }

    pub fn add(&self, x: ExtElem, y: ExtElem) -> ExtElem {
        ExtElem(add(x.0, y.0, self.p), add(x.1, y.1, self.p))
    }

    pub fn mul(&self, x: ExtElem, y: ExtElem) -> ExtElem {
        let p = self.p;
        if self.degree == 1 {
            return ExtElem(mul(x.0, y.0, p), 0);
        }
        // (x0 + x1 t)(y0 + y1 t) with t^2 = -a t - b
        let c0 = mul(x.0, y.0, p);
        let c1 = add(mul(x.0, y.1, p), mul(x.1, y.0, p), p);
        let c2 = mul(x.1, y.1, p);
        let (a, b) = self.modulus;
        ExtElem(sub(c0, mul(c2, b, p), p), sub(c1, mul(c2, a, p), p))
    }

    pub fn pow(&self, mut x: ExtElem, mut e: u64) -> ExtElem {
        let mut r = self.one();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, x);
            }
            x = self.mul(x, x);
            e >>= 1;
        }
        r
    }
}

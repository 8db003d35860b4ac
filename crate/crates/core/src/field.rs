//! Small finite fields `F_q` built from Conway polynomials.
//!
//! An element is stored as an integer whose base-`p` digits are its
//! coefficients in the polynomial basis `1, x, ..., x^{f-1}`. Addition and
//! multiplication use precomputed tables, so every operation is a lookup.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Largest supported field order.
pub const MAX_Q: u32 = 81;

/// Errors raised when constructing a field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldError {
    Unsupported(u32),
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldError::Unsupported(q) => {
                write!(f, "unsupported field order {q}: need q = p^f <= {MAX_Q} with p in {{2,3,5,7}}")
            }
        }
    }
}

impl core::error::Error for FieldError {}

/// Conway polynomial coefficients, constant term first, leading 1 omitted.
fn conway(p: u32, f: u32) -> Option<&'static [u32]> {
    Some(match (p, f) {
        (2, 1) => &[1],
        (2, 2) => &[1, 1],
        (2, 3) => &[1, 1, 0],
        (2, 4) => &[1, 1, 0, 0],
        (2, 5) => &[1, 0, 1, 0, 0],
        (2, 6) => &[1, 1, 0, 1, 1, 0],
        (3, 1) => &[1],
        (3, 2) => &[2, 2],
        (3, 3) => &[1, 2, 0],
        (3, 4) => &[2, 0, 0, 2],
        (5, 1) => &[3],
        (5, 2) => &[2, 4],
        (7, 1) => &[4],
        (7, 2) => &[3, 6],
        _ => return None,
    })
}

/// Splits `q` into `(p, f)` when `q` is a supported prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    for p in [2u32, 3, 5, 7] {
        let (mut x, mut f) = (q, 0);
        while x > 1 && x % p == 0 {
            x /= p;
            f += 1;
        }
        if x == 1 && f > 0 {
            return Some((p, f));
        }
    }
    None
}

/// The field `F_q` with lookup tables.
#[derive(Clone, Debug)]
pub struct Field {
    pub p: u32,
    pub f: u32,
    pub q: u32,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
    trace: Vec<u8>,
}

impl Field {
    /// Builds `F_q` for `q ∈ {2,4,...,64, 3,9,27,81, 5,25, 7,49}`.
    pub fn new(q: u32) -> Result<Field, FieldError> {
        let (p, f) = prime_power(q).ok_or(FieldError::Unsupported(q))?;
        let poly = conway(p, f).ok_or(FieldError::Unsupported(q))?;
        let qs = q as usize;
        let digits = |mut a: u32| -> Vec<u32> {
            let mut d = vec![0; f as usize];
            for x in d.iter_mut() {
                *x = a % p;
                a /= p;
            }
            d
        };
        let undigits = |d: &[u32]| -> u32 { d.iter().rev().fold(0, |acc, &x| acc * p + x) };
        let mut add = vec![0u8; qs * qs];
        let mut neg = vec![0u8; qs];
        for a in 0..q {
            let da = digits(a);
            neg[a as usize] = undigits(&da.iter().map(|&x| (p - x) % p).collect::<Vec<_>>()) as u8;
            for b in 0..q {
                let db = digits(b);
                let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a as usize * qs + b as usize] = undigits(&s) as u8;
            }
        }
        // Multiplication by x modulo the Conway polynomial.
        let times_x = |d: &[u32]| -> Vec<u32> {
            let top = d[f as usize - 1];
            let mut out = vec![0u32; f as usize];
            for i in (1..f as usize).rev() {
                out[i] = d[i - 1];
            }
            for (i, c) in poly.iter().enumerate() {
                out[i] = (out[i] + (p - c % p) * top) % p;
            }
            out
        };
        // Powers of the generator x (for f = 1 the generator is the root of x + c).
        let mut antilog = vec![0u32; qs - 1];
        let mut cur = vec![0u32; f as usize];
        cur[0] = 1;
        for slot in antilog.iter_mut() {
            *slot = undigits(&cur);
            cur = if f == 1 { vec![(cur[0] * ((p - poly[0]) % p)) % p] } else { times_x(&cur) };
        }
        let mut log = vec![usize::MAX; qs];
        for (i, &a) in antilog.iter().enumerate() {
            assert!(log[a as usize] == usize::MAX, "Conway polynomial for q={q} is not primitive");
            log[a as usize] = i;
        }
        let mut mul = vec![0u8; qs * qs];
        let mut inv = vec![0u8; qs];
        for a in 1..qs {
            for b in 1..qs {
                mul[a * qs + b] = antilog[(log[a] + log[b]) % (qs - 1)] as u8;
            }
            inv[a] = antilog[(qs - 1 - log[a]) % (qs - 1)] as u8;
        }
        let mut field = Field { p, f, q, add, mul, neg, inv, trace: Vec::new() };
        let mut trace = vec![0u8; qs];
        for a in 0..q {
            let mut t = 0u32;
            let mut x = a;
            for _ in 0..f {
                t = field.add(t, x);
                x = field.pow(x, p);
            }
            assert!(t < p, "trace must lie in the prime field");
            trace[a as usize] = t as u8;
        }
        field.trace = trace;
        Ok(field)
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[(a * self.q + b) as usize] as u32
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize] as u32
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[(a * self.q + b) as usize] as u32
    }

    /// Multiplicative inverse; `inv(0)` is defined as `0`.
    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize] as u32
    }

    pub fn pow(&self, a: u32, mut e: u32) -> u32 {
        let mut r = 1;
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        r
    }

    /// Absolute trace `Tr(a) = a + a^p + ... + a^{p^{f-1}}`, an element of `F_p`.
    #[inline]
    pub fn trace(&self, a: u32) -> u32 {
        self.trace[a as usize] as u32
    }

    /// Sign `±1` embedded in the field.
    #[inline]
    pub fn from_sign(&self, s: i8) -> u32 {
        if s >= 0 {
            1
        } else {
            self.neg(1)
        }
    }

    /// The integer `k` reduced into the prime field.
    pub fn from_int(&self, k: i64) -> u32 {
        k.rem_euclid(self.p as i64) as u32
    }

    /// Base-`p` digit `b` of an element.
    #[inline]
    pub fn digit(&self, a: u32, b: u32) -> u32 {
        (a / self.p.pow(b)) % self.p
    }

    /// The basis element `x^b`.
    #[inline]
    pub fn basis(&self, b: u32) -> u32 {
        self.p.pow(b)
    }

    /// `k · a` for an integer `k`, computed by repeated addition.
    pub fn scalar(&self, k: u32, a: u32) -> u32 {
        self.mul(self.from_int(k as i64), a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms_hold_for_all_supported_orders() {
        for q in [2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32, 49, 64, 81] {
            let k = Field::new(q).unwrap();
            for a in 0..q {
                assert_eq!(k.add(a, k.neg(a)), 0);
                if a != 0 {
                    assert_eq!(k.mul(a, k.inv(a)), 1);
                }
                for b in 0..q {
                    assert_eq!(k.add(a, b), k.add(b, a));
                    assert_eq!(k.mul(a, b), k.mul(b, a));
                    for c in [0, 1, q - 1] {
                        assert_eq!(k.mul(a, k.add(b, c)), k.add(k.mul(a, b), k.mul(a, c)));
                    }
                }
            }
            let mut counts = vec![0; k.p as usize];
            for a in 0..q {
                counts[k.trace(a) as usize] += 1;
            }
            assert!(counts.iter().all(|&c| c == q / k.p), "trace is balanced for q={q}");
        }
    }

    #[test]
    fn rejects_unsupported() {
        assert!(Field::new(6).is_err());
        assert!(Field::new(11).is_err());
        assert!(Field::new(128).is_err());
    }
}

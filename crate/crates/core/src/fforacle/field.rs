//! `F_q` for small prime powers, with elements encoded as integers
//! `0..q` (base-`p` digits of the coordinate vector over `F_p`). Index 0 is
//! zero, index 1 is one, and indices `0..p` form the prime field.

use std::fmt;

use crate::error::{Error, Result};

pub const DEFAULT_MAX_Q: u32 = 9;
/// Above this the `q x q` tables stop being cheap.
pub const HARD_MAX_Q: u32 = 64;

#[derive(Clone)]
pub struct Fq {
    p: u32,
    k: u32,
    q: u32,
    /// Monic, little-endian over `F_p`, length `k + 1`.
    modulus: Vec<u32>,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
    generator: u32,
    /// `log[x]` for `x != 0`, base `generator`.
    log: Vec<u32>,
    exp: Vec<u32>,
    trace: Vec<u32>,
}

fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let (mut m, mut k) = (q, 0);
    while m % p == 0 {
        m /= p;
        k += 1;
    }
    (m == 1).then_some((p, k))
}

fn digits(x: u32, p: u32, k: u32) -> Vec<u32> {
    let mut c = x;
    (0..k)
        .map(|_| {
            let d = c % p;
            c /= p;
            d
        })
        .collect()
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &x| acc * p + x)
}

/// Remainder of `a` modulo monic `m` over `F_p`.
fn rem_mod_p(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut a = a.to_vec();
    let dm = m.len() - 1;
    while a.len() > dm {
        let lead = a.pop().unwrap();
        if lead != 0 {
            let shift = a.len() - dm;
            for (i, &c) in m[..dm].iter().enumerate() {
                a[shift + i] = (a[shift + i] + p - (lead * c) % p) % p;
            }
        }
    }
    a
}

fn monic_is_irreducible_mod_p(f: &[u32], p: u32) -> bool {
    let d = f.len() - 1;
    for e in 1..=d / 2 {
        for code in 0..p.pow(e as u32) {
            let mut g = digits(code, p, e as u32);
            g.push(1);
            if rem_mod_p(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl Fq {
    pub fn new(q: u32) -> Result<Self> {
        Fq::with_limit(q, DEFAULT_MAX_Q)
    }

    pub fn with_limit(q: u32, limit: u32) -> Result<Self> {
        if q > limit.min(HARD_MAX_Q) {
            return Err(Error::UnsupportedField(q));
        }
        let (p, k) = prime_power(q).ok_or(Error::UnsupportedField(q))?;
        let modulus = (0..p.pow(k))
            .map(|code| {
                let mut m = digits(code, p, k);
                m.push(1);
                m
            })
            .find(|m| monic_is_irreducible_mod_p(m, p))
            .expect("irreducible polynomials exist in every degree");
        let n = q as usize;
        let mut add = vec![0; n * n];
        let mut mul = vec![0; n * n];
        for a in 0..q {
            let da = digits(a, p, k);
            for b in 0..q {
                let db = digits(b, p, k);
                let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = undigits(&s, p);
                let mut prod = vec![0u32; 2 * k as usize];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                let r = rem_mod_p(&prod, &modulus, p);
                mul[(a * q + b) as usize] = undigits(&r[..k as usize], p);
            }
        }
        let mut f = Fq {
            p,
            k,
            q,
            modulus,
            add,
            mul,
            neg: vec![0; n],
            inv: vec![0; n],
            generator: 0,
            log: vec![0; n],
            exp: vec![0; n],
            trace: vec![0; n],
        };
        for a in 0..q {
            f.neg[a as usize] = (0..q).find(|&b| f.add(a, b) == 0).unwrap();
            if a != 0 {
                f.inv[a as usize] = (0..q).find(|&b| f.mul(a, b) == 1).unwrap();
            }
        }
        f.generator = (1..q)
            .find(|&g| f.order(g) == q - 1)
            .expect("cyclic multiplicative group");
        let mut x = 1;
        for e in 0..q - 1 {
            f.exp[e as usize] = x;
            f.log[x as usize] = e;
            x = f.mul(x, f.generator);
        }
        for a in 0..q {
            let mut s = 0;
            let mut y = a;
            for _ in 0..k {
                s = f.add(s, y);
                y = f.pow(y, p as u64);
            }
            debug_assert!(s < p, "trace lands in the prime field");
            f.trace[a as usize] = s;
        }
        Ok(f)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn generator(&self) -> u32 {
        self.generator
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[(a * self.q + b) as usize]
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[(a * self.q + b) as usize]
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    /// Panics on zero.
    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero");
        self.inv[a as usize]
    }

    pub fn div(&self, a: u32, b: u32) -> u32 {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let (mut base, mut acc) = (a, 1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: u32) -> u32 {
        assert!(a != 0);
        let mut x = a;
        let mut n = 1;
        while x != 1 {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    /// Discrete logarithm to base [`Fq::generator`].
    pub fn log(&self, a: u32) -> u32 {
        assert!(a != 0, "log of zero");
        self.log[a as usize]
    }

    pub fn exp(&self, e: u64) -> u32 {
        self.exp[(e % (self.q as u64 - 1)) as usize]
    }

    /// The image of an integer in the prime field.
    pub fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }

    /// Absolute trace to `F_p`, returned as an integer in `0..p`.
    pub fn trace(&self, a: u32) -> u32 {
        self.trace[a as usize]
    }

    pub fn elements(&self) -> std::ops::Range<u32> {
        0..self.q
    }
}

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "F_{} (p={}, modulus={:?}, generator={})",
            self.q, self.p, self.modulus, self.generator
        )
    }
}

impl PartialEq for Fq {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q && self.modulus == other.modulus
    }
}

impl Eq for Fq {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms_small() {
        for q in [2, 3, 4, 5, 7, 8, 9] {
            let f = Fq::new(q).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                    assert_eq!(f.exp(f.log(a) as u64), a);
                }
                for b in f.elements() {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in f.elements() {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
            assert_eq!(f.order(f.generator()), q - 1);
        }
    }

    #[test]
    fn trace_is_additive_and_onto() {
        for q in [4, 8, 9] {
            let f = Fq::new(q).unwrap();
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(f.trace(f.add(a, b)), (f.trace(a) + f.trace(b)) % f.p());
                }
            }
            let hits = f.elements().filter(|&a| f.trace(a) == 1).count();
            assert_eq!(hits as u32, q / f.p());
        }
    }

    #[test]
    fn limits() {
        assert!(matches!(Fq::new(6), Err(Error::UnsupportedField(6))));
        assert!(matches!(Fq::new(11), Err(Error::UnsupportedField(11))));
        assert_eq!(Fq::with_limit(11, 16).unwrap().q(), 11);
        assert!(Fq::with_limit(128, 1000).is_err());
    }
}

//! Exact arithmetic in cyclotomic fields `Q(zeta_m)`, power basis modulo the
//! m-th cyclotomic polynomial.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_integer::Integer;
use num_traits::{One, Zero};

use super::poly::Poly;
use super::Q;

pub const MAX_CONDUCTOR: u32 = 100;

fn cyclotomic_cache() -> &'static Mutex<HashMap<u32, Arc<Poly>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Poly>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The m-th cyclotomic polynomial, `x^m - 1` divided by all `Phi_d`, `d | m`, `d < m`.
pub fn cyclotomic_poly(m: u32) -> Arc<Poly> {
    assert!(m >= 1);
    if let Some(p) = cyclotomic_cache().lock().unwrap().get(&m) {
        return p.clone();
    }
    let mut p = &Poly::monomial(Q::one(), m as usize) - &Poly::one();
    for d in 1..m {
        if m.is_multiple_of(d) {
            p = p.div_exact(&cyclotomic_poly(d));
        }
    }
    let p = Arc::new(p);
    cyclotomic_cache().lock().unwrap().insert(m, p.clone());
    p
}

#[derive(Clone)]
pub struct CyclotomicNumber {
    conductor: u32,
    /// Length equals `deg Phi_m`.
    coords: Vec<Q>,
}

impl CyclotomicNumber {
    fn check_conductor(m: u32) {
        assert!(
            (1..=MAX_CONDUCTOR).contains(&m),
            "cyclotomic conductor {m} outside 1..={MAX_CONDUCTOR}"
        );
    }

    fn degree(m: u32) -> usize {
        cyclotomic_poly(m).degree().unwrap()
    }

    fn from_poly(m: u32, p: &Poly) -> Self {
        let phi = cyclotomic_poly(m);
        let (_, r) = p.div_rem(&phi);
        let deg = phi.degree().unwrap();
        let coords = (0..deg).map(|k| r.coeff(k)).collect();
        CyclotomicNumber {
            conductor: m,
            coords,
        }
    }

    fn as_poly(&self) -> Poly {
        Poly::from_coeffs(self.coords.clone())
    }

    pub fn zero(m: u32) -> Self {
        Self::check_conductor(m);
        CyclotomicNumber {
            conductor: m,
            coords: vec![Q::zero(); Self::degree(m)],
        }
    }

    pub fn from_rational(c: Q) -> Self {
        CyclotomicNumber {
            conductor: 1,
            coords: vec![c],
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Q::from_integer(n.into()))
    }

    /// `zeta_m^k` for any integer `k`.
    pub fn root_of_unity(m: u32, k: i64) -> Self {
        Self::check_conductor(m);
        let e = k.rem_euclid(m as i64) as usize;
        Self::from_poly(m, &Poly::monomial(Q::one(), e))
    }

    /// `sum_k counts[k] * zeta_m^k`, with `counts.len() == m`.
    pub fn from_power_counts(m: u32, counts: &[Q]) -> Self {
        Self::check_conductor(m);
        assert_eq!(counts.len(), m as usize);
        Self::from_poly(m, &Poly::from_coeffs(counts.to_vec()))
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coords(&self) -> &[Q] {
        &self.coords
    }

    /// Re-expresses in `Q(zeta_big)`, `conductor | big`.
    pub fn lift(&self, big: u32) -> Self {
        assert!(
            big.is_multiple_of(self.conductor),
            "cannot lift conductor {} to {big}",
            self.conductor
        );
        if big == self.conductor {
            return self.clone();
        }
        Self::check_conductor(big);
        let p = self
            .as_poly()
            .compose_power((big / self.conductor) as usize);
        Self::from_poly(big, &p)
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        let m = a.conductor.lcm(&b.conductor);
        (a.lift(m), b.lift(m))
    }

    /// Complex conjugation, `zeta -> zeta^{-1}`.
    pub fn conj(&self) -> Self {
        let m = self.conductor as usize;
        let mut coeffs = vec![Q::zero(); m];
        for (k, c) in self.coords.iter().enumerate() {
            coeffs[(m - k) % m] += c;
        }
        Self::from_poly(self.conductor, &Poly::from_coeffs(coeffs))
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn as_rational(&self) -> Option<Q> {
        if self.coords.iter().skip(1).all(|c| c.is_zero()) {
            Some(self.coords[0].clone())
        } else {
            None
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        CyclotomicNumber {
            conductor: self.conductor,
            coords: self.coords.iter().map(|x| x * c).collect(),
        }
    }
}

impl Add<&CyclotomicNumber> for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn add(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        let (a, b) = CyclotomicNumber::common(self, rhs);
        let coords = a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect();
        CyclotomicNumber {
            conductor: a.conductor,
            coords,
        }
    }
}

impl Sub<&CyclotomicNumber> for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn sub(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        self + &(-rhs)
    }
}

impl Mul<&CyclotomicNumber> for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn mul(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        let (a, b) = CyclotomicNumber::common(self, rhs);
        CyclotomicNumber::from_poly(a.conductor, &(&a.as_poly() * &b.as_poly()))
    }
}

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        CyclotomicNumber {
            conductor: self.conductor,
            coords: self.coords.iter().map(|x| -x).collect(),
        }
    }
}

impl PartialEq for CyclotomicNumber {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = CyclotomicNumber::common(self, other);
        a.coords == b.coords
    }
}

impl Eq for CyclotomicNumber {}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rational() {
            return write!(f, "{}", super::poly::fmt_rational(&r));
        }
        let z = format!("z{}", self.conductor);
        let s = self.as_poly().to_string().replace('t', &z);
        write!(f, "{s}")
    }
}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embeddings_of_small_roots() {
        assert_eq!(
            CyclotomicNumber::root_of_unity(1, 0),
            CyclotomicNumber::from_int(1)
        );
        assert_eq!(
            CyclotomicNumber::root_of_unity(2, 1),
            CyclotomicNumber::from_int(-1)
        );
        assert_eq!(
            CyclotomicNumber::root_of_unity(4, 2),
            CyclotomicNumber::from_int(-1)
        );
    }

    #[test]
    fn conjugation_inverts_roots() {
        for m in 1..=12u32 {
            for k in 0..m as i64 {
                let z = CyclotomicNumber::root_of_unity(m, k);
                assert_eq!(z.conj(), CyclotomicNumber::root_of_unity(m, -k));
                assert_eq!(&z * &z.conj(), CyclotomicNumber::from_int(1));
            }
        }
    }

    #[test]
    fn root_sums_are_orthogonal() {
        for m in 1..=12u32 {
            for k in 0..(2 * m as i64) {
                let mut s = CyclotomicNumber::zero(m);
                for j in 0..m as i64 {
                    s = &s + &CyclotomicNumber::root_of_unity(m, j * k);
                }
                let expect = if k % m as i64 == 0 { m as i64 } else { 0 };
                assert_eq!(s, CyclotomicNumber::from_int(expect), "m={m} k={k}");
            }
        }
    }

    #[test]
    fn mixed_conductors_lift() {
        let a = CyclotomicNumber::root_of_unity(3, 1);
        let b = CyclotomicNumber::root_of_unity(2, 1);
        let c = &a * &b;
        assert_eq!(c.conductor(), 6);
        assert_eq!(c, CyclotomicNumber::root_of_unity(6, 5));
    }

    #[test]
    fn cyclotomic_polys() {
        assert_eq!(*cyclotomic_poly(4), Poly::from_ints(&[1, 0, 1]));
        assert_eq!(*cyclotomic_poly(6), Poly::from_ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_poly(12).degree(), Some(4));
    }
}

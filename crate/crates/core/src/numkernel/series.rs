//! Multivariate power series in `T_1..T_r` over `Q(t)`, truncated to the box
//! `0 <= w <= bound` (componentwise).
//!
//! Storage is dense over the box in mixed radix with the last variable
//! varying fastest, so every componentwise-smaller exponent has a smaller
//! index. The recurrences for `log` and `exp` rely on that order.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use super::ratfun::RationalFunction;
use super::Q;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    bound: Vec<usize>,
    coeffs: Vec<RationalFunction>,
}

fn box_len(bound: &[usize]) -> usize {
    bound.iter().map(|b| b + 1).product()
}

/// All exponent vectors `0 <= w <= bound` in storage order.
pub fn box_points(bound: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(box_len(bound));
    let mut w = vec![0usize; bound.len()];
    loop {
        out.push(w.clone());
        let mut i = bound.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if w[i] < bound[i] {
                w[i] += 1;
                break;
            }
            w[i] = 0;
        }
    }
}

impl TruncatedSeries {
    pub fn zero(bound: &[usize]) -> Self {
        assert!(!bound.is_empty(), "series needs at least one variable");
        TruncatedSeries {
            bound: bound.to_vec(),
            coeffs: vec![RationalFunction::zero(); box_len(bound)],
        }
    }

    pub fn one(bound: &[usize]) -> Self {
        let mut s = TruncatedSeries::zero(bound);
        s.coeffs[0] = RationalFunction::one();
        s
    }

    /// `c * T^w`, or zero when `w` leaves the box.
    pub fn monomial(bound: &[usize], w: &[usize], c: RationalFunction) -> Self {
        let mut s = TruncatedSeries::zero(bound);
        s.set(w, c);
        s
    }

    pub fn num_vars(&self) -> usize {
        self.bound.len()
    }

    pub fn bound(&self) -> &[usize] {
        &self.bound
    }

    pub fn in_box(&self, w: &[usize]) -> bool {
        w.len() == self.bound.len() && w.iter().zip(&self.bound).all(|(a, b)| a <= b)
    }

    fn index(&self, w: &[usize]) -> usize {
        let mut idx = 0;
        for (wi, bi) in w.iter().zip(&self.bound) {
            idx = idx * (bi + 1) + wi;
        }
        idx
    }

    fn exponent(&self, mut idx: usize) -> Vec<usize> {
        let mut w = vec![0; self.bound.len()];
        for i in (0..self.bound.len()).rev() {
            let b = self.bound[i] + 1;
            w[i] = idx % b;
            idx /= b;
        }
        w
    }

    /// Coefficient of `T^w`; zero outside the box.
    pub fn coeff(&self, w: &[usize]) -> RationalFunction {
        if self.in_box(w) {
            self.coeffs[self.index(w)].clone()
        } else {
            RationalFunction::zero()
        }
    }

    pub fn coeff_ref(&self, w: &[usize]) -> &RationalFunction {
        let i = self.index(w);
        &self.coeffs[i]
    }

    /// Sets a coefficient; exponents outside the box are dropped.
    pub fn set(&mut self, w: &[usize], c: RationalFunction) {
        if self.in_box(w) {
            let i = self.index(w);
            self.coeffs[i] = c;
        }
    }

    pub fn add_to(&mut self, w: &[usize], c: &RationalFunction) {
        if self.in_box(w) {
            let i = self.index(w);
            self.coeffs[i] += c;
        }
    }

    pub fn constant_term(&self) -> &RationalFunction {
        &self.coeffs[0]
    }

    /// Nonzero terms in storage order.
    pub fn terms(&self) -> impl Iterator<Item = (Vec<usize>, &RationalFunction)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (self.exponent(i), c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn check_shape(&self, other: &Self) -> Result<()> {
        if self.bound != other.bound {
            return Err(Error::DimensionMismatch(format!(
                "bounds {:?} and {:?}",
                self.bound, other.bound
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(TruncatedSeries {
            bound: self.bound.clone(),
            coeffs,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(TruncatedSeries {
            bound: self.bound.clone(),
            coeffs,
        })
    }

    pub fn scale(&self, c: &RationalFunction) -> Self {
        TruncatedSeries {
            bound: self.bound.clone(),
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn map_coeffs(&self, f: impl Fn(&RationalFunction) -> RationalFunction) -> Self {
        TruncatedSeries {
            bound: self.bound.clone(),
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// Exact product restricted to the box.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let mut out = TruncatedSeries::zero(&self.bound);
        let pts: Vec<Vec<usize>> = box_points(&self.bound);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let wa = &pts[i];
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let w: Vec<usize> = wa.iter().zip(&pts[j]).map(|(x, y)| x + y).collect();
                if out.in_box(&w) {
                    let k = out.index(&w);
                    out.coeffs[k] += &(a * b);
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, mut e: u64) -> Result<Self> {
        let mut base = self.clone();
        let mut acc = TruncatedSeries::one(&self.bound);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Classical logarithm of a series with constant term 1.
    ///
    /// Uses `E(S) = S * E(log S)` with `E = sum_i T_i d/dT_i`, which scales the
    /// coefficient of `T^w` by the total degree `|w|`.
    pub fn log(&self) -> Result<Self> {
        if !self.constant_term().is_one() {
            return Err(Error::WrongConstantTerm {
                expected: "1".into(),
                found: self.constant_term().to_string(),
            });
        }
        let pts = box_points(&self.bound);
        let degs: Vec<usize> = pts.iter().map(|w| w.iter().sum()).collect();
        let mut out = TruncatedSeries::zero(&self.bound);
        for k in 1..self.coeffs.len() {
            let w = &pts[k];
            let mut acc = self.coeffs[k].scale(&Q::from_integer(BigInt::from(degs[k])));
            for (j, u) in pts.iter().enumerate().take(k).skip(1) {
                if out.coeffs[j].is_zero() || !u.iter().zip(w).all(|(a, b)| a <= b) {
                    continue;
                }
                let rest: Vec<usize> = w.iter().zip(u).map(|(a, b)| a - b).collect();
                let s = self.coeff_ref(&rest);
                if s.is_zero() {
                    continue;
                }
                let term = (&out.coeffs[j] * s).scale(&Q::from_integer(BigInt::from(degs[j])));
                acc -= &term;
            }
            out.coeffs[k] = acc.scale(&Q::new(BigInt::one(), BigInt::from(degs[k])));
        }
        Ok(out)
    }

    /// Classical exponential of a series with zero constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.constant_term().is_zero() {
            return Err(Error::WrongConstantTerm {
                expected: "0".into(),
                found: self.constant_term().to_string(),
            });
        }
        let pts = box_points(&self.bound);
        let degs: Vec<usize> = pts.iter().map(|w| w.iter().sum()).collect();
        let mut out = TruncatedSeries::one(&self.bound);
        for k in 1..self.coeffs.len() {
            let w = &pts[k];
            let mut acc = RationalFunction::zero();
            for (j, u) in pts.iter().enumerate().take(k + 1).skip(1) {
                if self.coeffs[j].is_zero() || !u.iter().zip(w).all(|(a, b)| a <= b) {
                    continue;
                }
                let rest: Vec<usize> = w.iter().zip(u).map(|(a, b)| a - b).collect();
                let e = out.coeff_ref(&rest);
                if e.is_zero() {
                    continue;
                }
                let term = (&self.coeffs[j] * e).scale(&Q::from_integer(BigInt::from(degs[j])));
                acc += &term;
            }
            out.coeffs[k] = acc.scale(&Q::new(BigInt::one(), BigInt::from(degs[k])));
        }
        Ok(out)
    }

    /// Evaluates every coefficient at `t = q`.
    pub fn eval_coeffs(&self, q: &Q) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.eval(q).map(RationalFunction::from_rational))
            .collect::<Result<Vec<_>>>()?;
        Ok(TruncatedSeries {
            bound: self.bound.clone(),
            coeffs,
        })
    }

    pub fn has_zero_constant_term(&self) -> bool {
        self.coeffs[0].is_zero()
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (w, c) in self.terms() {
            m.entry(&w, &c.to_string());
        }
        m.finish()
    }
}

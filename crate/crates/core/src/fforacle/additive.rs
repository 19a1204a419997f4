//! The additive side: sums over `gl_v(F_q)` of the commuting-variety count
//! `Theta_v`, twisted by `psi(xi . Tr)` and a Fourier transform.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::field::Fq;
use super::group::{fixed_exponent, glv_order};
use super::matrix::Matrix;
use crate::error::{Error, Result};
use crate::numkernel::{CyclotomicNumber, Q};
use crate::quivermod::{generic_xi_fq, Quiver};

/// `gl_v(F_q)` listed in a fixed order.
pub struct LieAlgebra {
    pub v: Vec<usize>,
    pub elements: Vec<Vec<Matrix>>,
}

impl LieAlgebra {
    pub fn new(v: &[usize], f: &Fq, budget: u64) -> Result<Self> {
        let dim: usize = v.iter().map(|n| n * n).sum();
        let size = BigInt::from(f.q()).pow(dim as u32);
        if size > BigInt::from(budget) {
            return Err(Error::BudgetExceeded {
                order: size.to_string(),
                budget,
            });
        }
        let q = f.q() as u64;
        let total = q.pow(dim as u32);
        let elements = (0..total)
            .map(|mut code| {
                v.iter()
                    .map(|&n| {
                        let block = (n * n) as u32;
                        let m = Matrix::from_code(n, n, f.q(), code % q.pow(block));
                        code /= q.pow(block);
                        m
                    })
                    .collect()
            })
            .collect();
        Ok(LieAlgebra {
            v: v.to_vec(),
            elements,
        })
    }

    pub fn dim(&self) -> usize {
        self.v.iter().map(|n| n * n).sum()
    }

    pub fn index_of(&self, x: &[Matrix]) -> usize {
        self.elements
            .iter()
            .position(|y| y.as_slice() == x)
            .expect("element of gl_v")
    }
}

/// `Tr(x y) = sum_i Tr(x_i y_i)`.
pub fn trace_pairing(f: &Fq, x: &[Matrix], y: &[Matrix]) -> u32 {
    x.iter()
        .zip(y)
        .fold(0, |s, (a, b)| f.add(s, a.mul(f, b).trace(f)))
}

pub fn neg_element(f: &Fq, x: &[Matrix]) -> Vec<Matrix> {
    x.iter().map(|m| m.scale(f, f.neg(1))).collect()
}

/// `psi(a) = zeta_p^{Tr_{F_q/F_p}(a)}`.
pub fn psi(f: &Fq, a: u32) -> CyclotomicNumber {
    CyclotomicNumber::root_of_unity(f.p(), f.trace(a) as i64)
}

/// `F(g)(x) = sum_y g(y) psi(Tr(x y))`.
pub fn fourier(f: &Fq, g: &LieAlgebra, values: &[CyclotomicNumber]) -> Vec<CyclotomicNumber> {
    g.elements
        .iter()
        .map(|x| {
            let p = f.p() as usize;
            let mut buckets: Vec<CyclotomicNumber> = vec![CyclotomicNumber::from_int(0); p];
            for (y, val) in g.elements.iter().zip(values) {
                let e = f.trace(trace_pairing(f, x, y)) as usize;
                buckets[e] = &buckets[e] + val;
            }
            buckets
                .iter()
                .enumerate()
                .fold(CyclotomicNumber::from_int(0), |acc, (e, b)| {
                    &acc + &(b * &CyclotomicNumber::root_of_unity(f.p(), e as i64))
                })
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Endpoint {
    /// The semisimple orbit: the Fourier side is constant 1.
    Kac,
    /// The regular nilpotent orbit: the Fourier side is the transform of the
    /// nilpotent-cone indicator.
    Dt,
}

/// `(1 - q^{-1}) q^{-dim C / 2} (1/|GL_v|) sum_X Theta(X) conj(psi(xi . Tr X) N(X))`.
pub fn additive_side(
    gamma: &Quiver,
    v: &[usize],
    f: &Fq,
    endpoint: Endpoint,
    budget: u64,
) -> Result<Q> {
    let xi = generic_xi_fq(v, f)?;
    let g = LieAlgebra::new(v, f, budget)?;
    let p = f.p() as usize;
    let nilpotent: Vec<&Vec<Matrix>> = match endpoint {
        Endpoint::Kac => Vec::new(),
        Endpoint::Dt => g
            .elements
            .iter()
            .filter(|y| y.iter().all(|m| m.is_nilpotent(f)))
            .collect(),
    };
    let mut counts = vec![Q::zero(); p];
    for x in &g.elements {
        let theta = Q::from_integer(BigInt::from(f.q()).pow(fixed_exponent(gamma, f, x) as u32));
        let lin = x
            .iter()
            .zip(&xi)
            .fold(0, |s, (m, &c)| f.add(s, f.mul(c, m.trace(f))));
        let base = f.trace(lin) as usize;
        match endpoint {
            Endpoint::Kac => counts[(p - base) % p] += &theta,
            Endpoint::Dt => {
                for y in &nilpotent {
                    let e = (base + f.trace(trace_pairing(f, x, y)) as usize) % p;
                    counts[(p - e) % p] += &theta;
                }
            }
        }
    }
    let sum = CyclotomicNumber::from_power_counts(p as u32, &counts);
    let sum = sum
        .as_rational()
        .ok_or_else(|| Error::Inconsistency(format!("additive sum {sum} is not rational")))?;
    let q = Q::from_integer(f.q().into());
    let half_dim_c: usize = match endpoint {
        Endpoint::Kac => 0,
        Endpoint::Dt => v.iter().map(|n| n * n - n).sum::<usize>() / 2,
    };
    let mut scale = (Q::one() - q.recip()) / Q::from_integer(glv_order(v, f.q()));
    for _ in 0..half_dim_c {
        scale /= &q;
    }
    Ok(sum * scale)
}

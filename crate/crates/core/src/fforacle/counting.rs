//! Isomorphism classes of representations over `F_q`, counted by Burnside's
//! lemma and by explicit orbit enumeration.

use num_bigint::BigInt;
use num_traits::Zero;

use super::field::Fq;
use super::group::{enumerate_group, fixed_count, glv_order};
use super::matrix::Matrix;
use crate::error::{Error, Result};
use crate::numkernel::Q;
use crate::quivermod::Quiver;

/// `(1/|G|) sum_g #{rho : g . rho = rho}`.
pub fn burnside_count(gamma: &Quiver, v: &[usize], f: &Fq, budget: u64) -> Result<Q> {
    let elements = enumerate_group(v, f, budget)?;
    let mut total = BigInt::zero();
    for g in &elements {
        total += fixed_count(gamma, f, g);
    }
    Ok(Q::new(total, glv_order(v, f.q())))
}

fn decode(gamma: &Quiver, v: &[usize], q: u32, mut code: u64) -> Vec<Matrix> {
    gamma
        .arrows()
        .iter()
        .map(|&(i, j)| {
            let cells = (v[j] * v[i]) as u32;
            let m = Matrix::from_code(v[j], v[i], q, code % (q as u64).pow(cells));
            code /= (q as u64).pow(cells);
            m
        })
        .collect()
}

fn encode(rep: &[Matrix], q: u32) -> u64 {
    let mut code = 0u64;
    let mut place = 1u64;
    for m in rep {
        for &x in m.data() {
            code += x as u64 * place;
            place *= q as u64;
        }
    }
    code
}

/// Number of `GL_v`-orbits on `Rep(Gamma, v)`, by marking each orbit.
pub fn orbit_count(gamma: &Quiver, v: &[usize], f: &Fq, budget: u64) -> Result<usize> {
    let q = f.q();
    let reps = BigInt::from(q).pow(gamma.rep_dim(v) as u32);
    if reps > BigInt::from(budget) {
        return Err(Error::BudgetExceeded {
            order: reps.to_string(),
            budget,
        });
    }
    let total = (q as u64).pow(gamma.rep_dim(v) as u32);
    let group: Vec<(Vec<Matrix>, Vec<Matrix>)> = enumerate_group(v, f, budget)?
        .into_iter()
        .map(|g| {
            let inv = g
                .blocks
                .iter()
                .map(|b| b.inverse(f).expect("invertible"))
                .collect();
            (g.blocks, inv)
        })
        .collect();
    let mut seen = vec![false; total as usize];
    let mut orbits = 0;
    for start in 0..total {
        if seen[start as usize] {
            continue;
        }
        orbits += 1;
        let rho = decode(gamma, v, q, start);
        for (g, ginv) in &group {
            let moved: Vec<Matrix> = gamma
                .arrows()
                .iter()
                .zip(&rho)
                .map(|(&(i, j), x)| g[j].mul(f, x).mul(f, &ginv[i]))
                .collect();
            seen[encode(&moved, q) as usize] = true;
        }
    }
    Ok(orbits)
}

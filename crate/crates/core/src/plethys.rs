//! Plethystic operators on truncated series: Adams operations, `Psi`, its
//! Möbius inverse, and the plethystic `Log`/`Exp`, plus the type expansion of
//! `Log` for families indexed by multipartitions.
//!
//! Every series here has nonnegative exponents, so `psi_d` moves all nonzero
//! monomials out of the box once `d` exceeds the largest box side. The sums
//! over `d` stop there and are exact.

use std::collections::HashMap;
use std::sync::Mutex;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::numkernel::{RationalFunction, TruncatedSeries, Q};
use crate::parttype::{c_omega, enumerate_types, mobius, multipartitions_in_box, MultiPartition};

/// `f(t; T) -> f(t^d; T^d)`, dropping monomials that leave the box.
pub fn adams(f: &TruncatedSeries, d: usize) -> TruncatedSeries {
    assert!(d >= 1, "Adams index must be positive");
    if d == 1 {
        return f.clone();
    }
    let mut out = TruncatedSeries::zero(f.bound());
    for (w, c) in f.terms() {
        let dw: Vec<usize> = w.iter().map(|x| x * d).collect();
        if out.in_box(&dw) {
            out.set(&dw, c.compose_power(d));
        }
    }
    out
}

fn max_side(f: &TruncatedSeries) -> usize {
    f.bound().iter().copied().max().unwrap_or(0)
}

fn require_zero_constant(f: &TruncatedSeries) -> Result<()> {
    if !f.has_zero_constant_term() {
        return Err(Error::WrongConstantTerm {
            expected: "0".into(),
            found: f.constant_term().to_string(),
        });
    }
    Ok(())
}

fn weighted_adams_sum(f: &TruncatedSeries, weight: impl Fn(usize) -> i64) -> TruncatedSeries {
    let mut out = TruncatedSeries::zero(f.bound());
    for d in 1..=max_side(f) {
        let w = weight(d);
        if w == 0 {
            continue;
        }
        let c = RationalFunction::from_rational(Q::new(BigInt::from(w), BigInt::from(d)));
        out = out.add(&adams(f, d).scale(&c)).expect("same box");
    }
    out
}

/// `Psi(f) = sum_d psi_d(f) / d`.
pub fn psi(f: &TruncatedSeries) -> Result<TruncatedSeries> {
    require_zero_constant(f)?;
    Ok(weighted_adams_sum(f, |_| 1))
}

/// `Psi^{-1}(f) = sum_d mu(d) psi_d(f) / d`.
pub fn psi_inv(f: &TruncatedSeries) -> Result<TruncatedSeries> {
    require_zero_constant(f)?;
    Ok(weighted_adams_sum(f, mobius))
}

/// Plethystic logarithm, defined on series with constant term 1.
pub fn plog(f: &TruncatedSeries) -> Result<TruncatedSeries> {
    psi_inv(&f.log()?)
}

/// Plethystic exponential, defined on series with zero constant term.
pub fn pexp(f: &TruncatedSeries) -> Result<TruncatedSeries> {
    psi(f)?.exp()
}

type FamilyFn = dyn Fn(&MultiPartition) -> RationalFunction + Send + Sync;

/// A family `{H_mu}` of rational functions indexed by multipartitions with
/// `H_0 = 1`, evaluated lazily and memoized.
pub struct FamilyTable {
    r: usize,
    eval: Box<FamilyFn>,
    memo: Mutex<HashMap<MultiPartition, RationalFunction>>,
}

impl FamilyTable {
    pub fn new(
        r: usize,
        eval: impl Fn(&MultiPartition) -> RationalFunction + Send + Sync + 'static,
    ) -> Self {
        FamilyTable {
            r,
            eval: Box::new(eval),
            memo: Mutex::new(HashMap::new()),
        }
    }

    /// A table backed by explicit values; missing multipartitions map to zero.
    pub fn from_map(r: usize, values: HashMap<MultiPartition, RationalFunction>) -> Self {
        FamilyTable::new(r, move |mu| {
            values
                .get(mu)
                .cloned()
                .unwrap_or_else(RationalFunction::zero)
        })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn get(&self, mu: &MultiPartition) -> RationalFunction {
        assert_eq!(mu.r(), self.r, "multipartition arity");
        if mu.is_zero() {
            return RationalFunction::one();
        }
        if let Some(v) = self.memo.lock().unwrap().get(mu) {
            return v.clone();
        }
        let v = (self.eval)(mu);
        // Concurrent writers compute identical values, so a lost race is harmless.
        self.memo.lock().unwrap().insert(mu.clone(), v.clone());
        v
    }

    /// `sum_mu H_mu T^{|mu|}` on the box `bound`.
    pub fn series(&self, bound: &[usize]) -> TruncatedSeries {
        let mut s = TruncatedSeries::zero(bound);
        for mu in multipartitions_in_box(bound) {
            let h = self.get(&mu);
            s.add_to(&mu.sizes(), &h);
        }
        s
    }
}

/// Coefficients of `Log(sum_mu H_mu T^{|mu|})` for every `w <= v`, computed as
/// `sum_{omega in T_w} C^o_omega H_omega`. Shares nothing with [`plog`].
pub fn log_via_types(h: &FamilyTable, v: &[usize]) -> Result<TruncatedSeries> {
    assert_eq!(v.len(), h.r(), "dimension vector arity");
    let mut out = TruncatedSeries::zero(v);
    for w in crate::numkernel::series::box_points(v) {
        if w.iter().all(|&x| x == 0) {
            continue;
        }
        out.set(&w, type_sum(h, &w)?);
    }
    Ok(out)
}

/// `sum_{omega in T_w} C^o_omega H_omega(t)` for one size `w`.
pub fn type_sum(h: &FamilyTable, w: &[usize]) -> Result<RationalFunction> {
    let mut acc = RationalFunction::zero();
    for omega in enumerate_types(w) {
        let c = c_omega(&omega)?;
        if c == Q::from_integer(0.into()) {
            continue;
        }
        let hw = omega.extend_family(|mu| h.get(mu));
        acc += &hw.scale(&c);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::{q_frac, Poly};

    fn c(n: i64) -> RationalFunction {
        RationalFunction::from_int(n)
    }

    fn cq(n: i64, d: i64) -> RationalFunction {
        RationalFunction::from_rational(q_frac(n, d))
    }

    fn t() -> RationalFunction {
        RationalFunction::t()
    }

    #[test]
    fn adams_substitutes_both_variables() {
        let f = TruncatedSeries::monomial(&[2], &[1], t());
        let g = adams(&f, 2);
        assert_eq!(
            g.coeff(&[2]),
            RationalFunction::from_poly(Poly::from_ints(&[0, 0, 1]))
        );
        assert_eq!(g.coeff(&[1]), c(0));
        assert_eq!(adams(&f, 1), f);
    }

    #[test]
    fn psi_of_single_variable() {
        let f = TruncatedSeries::monomial(&[3], &[1], c(1));
        let p = psi(&f).unwrap();
        assert_eq!(p.coeff(&[1]), c(1));
        assert_eq!(p.coeff(&[2]), cq(1, 2));
        assert_eq!(p.coeff(&[3]), cq(1, 3));
        assert_eq!(psi_inv(&p).unwrap(), f);
    }

    #[test]
    fn psi_inverse_by_hand() {
        let mut g = TruncatedSeries::zero(&[3]);
        g.set(&[1], c(1));
        g.set(&[2], cq(1, 2));
        g.set(&[3], cq(1, 3));
        assert_eq!(
            psi_inv(&g).unwrap(),
            TruncatedSeries::monomial(&[3], &[1], c(1))
        );
    }

    #[test]
    fn pexp_of_t_is_geometric() {
        let f = TruncatedSeries::monomial(&[4], &[1], c(1));
        let e = pexp(&f).unwrap();
        for k in 0..=4 {
            assert_eq!(e.coeff(&[k]), c(1));
        }
    }

    #[test]
    fn plog_pexp_roundtrip_two_variables() {
        let f = TruncatedSeries::monomial(&[2, 2], &[1, 1], t());
        assert_eq!(plog(&pexp(&f).unwrap()).unwrap(), f);
    }

    #[test]
    fn plog_of_product_of_geometric_series() {
        let b = [3, 3];
        let mut g = TruncatedSeries::zero(&b);
        for w in crate::numkernel::series::box_points(&b) {
            g.set(&w, c(1));
        }
        let l = plog(&g).unwrap();
        let mut expect = TruncatedSeries::monomial(&b, &[1, 0], c(1));
        expect.set(&[0, 1], c(1));
        assert_eq!(l, expect);
    }

    #[test]
    fn constant_term_preconditions() {
        let one = TruncatedSeries::one(&[2]);
        assert!(psi(&one).is_err());
        assert!(psi_inv(&one).is_err());
        assert!(pexp(&one).is_err());
        assert!(plog(&TruncatedSeries::zero(&[2])).is_err());
    }

    #[test]
    fn type_expansion_of_trivial_family() {
        let h = FamilyTable::new(1, |_| RationalFunction::one());
        let l = log_via_types(&h, &[3]).unwrap();
        assert_eq!(l.coeff(&[1]), c(1));
        assert_eq!(l.coeff(&[2]), c(1));
        assert_eq!(l.coeff(&[3]), c(1));
    }

    #[test]
    fn type_expansion_matches_plog_for_powers_of_t() {
        let h = FamilyTable::new(1, |mu| RationalFunction::t_pow(mu.sizes()[0] as i64));
        let direct = plog(&h.series(&[3])).unwrap();
        assert_eq!(log_via_types(&h, &[3]).unwrap(), direct);
    }

    #[test]
    fn degenerate_box_reduces_to_one_vertex() {
        let h2 = FamilyTable::new(2, |mu| {
            RationalFunction::from_int(1 + mu.components()[0].len() as i64)
        });
        let h1 = FamilyTable::new(1, |mu| {
            RationalFunction::from_int(1 + mu.components()[0].len() as i64)
        });
        let a = log_via_types(&h2, &[1, 0]).unwrap();
        let b = log_via_types(&h1, &[1]).unwrap();
        assert_eq!(a.coeff(&[1, 0]), b.coeff(&[1]));
    }
}

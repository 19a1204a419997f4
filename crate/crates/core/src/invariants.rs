//! Kac polynomials, DT invariants of symmetric quivers without potential,
//! and generic multiplicities of Log-compatible families.
//!
//! A family here is given by its unipotent values `F_mu(t)`. Whether the
//! family is actually Log compatible is the caller's obligation; nothing in
//! this module can check it.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::numkernel::series::box_points;
use crate::numkernel::{
    ratfun_json, rational_to_string, HalfExponent, Poly, RationalFunction, TruncatedSeries, Q,
};
use crate::parttype::{
    c_omega, centralizer_poly, centralizer_poly_type, enumerate_types, multipartitions_in_box,
    phi_d, MultiPartition,
};
use crate::plethys::{pexp, plog, FamilyTable};
use crate::quivermod::{delta, Quiver};

fn t_minus_one() -> RationalFunction {
    RationalFunction::from_poly(Poly::from_ints(&[-1, 1]))
}

fn nonzero_points(v: &[usize]) -> Vec<Vec<usize>> {
    box_points(v)
        .into_iter()
        .filter(|w| w.iter().any(|&x| x != 0))
        .collect()
}

/// `sum_{omega in T_w} C^o_omega F_omega / Z_omega`, times `t - 1`.
fn by_types(f: &FamilyTable, w: &[usize]) -> Result<RationalFunction> {
    let mut acc = RationalFunction::zero();
    for omega in enumerate_types(w) {
        let c = c_omega(&omega)?;
        if c.is_zero() {
            continue;
        }
        let num = omega.extend_family(|mu| f.get(mu));
        let den = RationalFunction::from_poly(centralizer_poly_type(&omega));
        acc += &(&num / &den).scale(&c);
    }
    Ok(&acc * &t_minus_one())
}

/// `(t - 1) Log(sum_mu F_mu / Z_mu T^{|mu|})` on the box `v`.
fn by_plog(f: &FamilyTable, v: &[usize]) -> Result<TruncatedSeries> {
    let mut s = TruncatedSeries::zero(v);
    for mu in multipartitions_in_box(v) {
        let z = RationalFunction::from_poly(centralizer_poly(&mu));
        s.add_to(&mu.sizes(), &(&f.get(&mu) / &z));
    }
    Ok(plog(&s)?.scale(&t_minus_one()))
}

/// `V^gen_w` for every nonzero `w <= v`, each computed by the type sum and
/// checked against the plethystic logarithm.
pub fn generic_multiplicities(
    f: &FamilyTable,
    v: &[usize],
) -> Result<BTreeMap<Vec<usize>, RationalFunction>> {
    let series = by_plog(f, v)?;
    let mut out = BTreeMap::new();
    for w in nonzero_points(v) {
        let left = by_types(f, &w)?;
        let right = series.coeff(&w);
        if left != right {
            return Err(Error::RouteMismatch {
                what: format!("V^gen at {w:?}"),
                left: left.to_string(),
                right: right.to_string(),
            });
        }
        out.insert(w, left);
    }
    Ok(out)
}

/// `V^gen_v` alone.
pub fn generic_multiplicity(f: &FamilyTable, v: &[usize]) -> Result<RationalFunction> {
    let left = by_types(f, v)?;
    let right = by_plog(f, v)?.coeff(v);
    if left != right {
        return Err(Error::RouteMismatch {
            what: format!("V^gen at {v:?}"),
            left: left.to_string(),
            right: right.to_string(),
        });
    }
    Ok(left)
}

/// Hua's family `R_mu(t)`.
pub fn hua_family(gamma: &Quiver) -> FamilyTable {
    let g = gamma.clone();
    FamilyTable::new(gamma.r(), move |mu| g.hua_term(mu))
}

fn require_integer_poly(what: String, f: &RationalFunction) -> Result<()> {
    if !f.is_integer_polynomial() {
        return Err(Error::NonPolynomial {
            what,
            value: f.to_string(),
        });
    }
    Ok(())
}

fn require_positive_poly(what: String, f: &RationalFunction) -> Result<()> {
    require_integer_poly(what.clone(), f)?;
    if !f.is_nonnegative_integer_polynomial() {
        return Err(Error::Negativity {
            what,
            value: f.to_string(),
        });
    }
    Ok(())
}

/// `A_w` for every nonzero `w <= v`.
pub fn kac_polynomials(
    gamma: &Quiver,
    v: &[usize],
) -> Result<BTreeMap<Vec<usize>, RationalFunction>> {
    let table = generic_multiplicities(&hua_family(gamma), v)?;
    for (w, a) in &table {
        require_integer_poly(format!("A{w:?}"), a)?;
    }
    Ok(table)
}

/// The coefficient of `T^w` in the DT generating function:
/// `(-1)^{delta} t^{-(gamma_bar + delta)/2} / prod_i prod_{k <= w_i} (1 - t^{-k})`.
pub fn dt_series_term(gamma: &Quiver, w: &[usize]) -> Result<RationalFunction> {
    let d = delta(w) as i64;
    let e = HalfExponent::neg_half(gamma.gamma_bar(w) + d).finalize()?;
    let mut term = RationalFunction::t_pow(e);
    for &n in w {
        for k in 1..=n as i64 {
            let factor = &RationalFunction::one() - &RationalFunction::t_pow(-k);
            term = &term / &factor;
        }
    }
    Ok(if d % 2 == 0 { term } else { -term })
}

pub fn dt_series(gamma: &Quiver, v: &[usize]) -> Result<TruncatedSeries> {
    let mut s = TruncatedSeries::zero(v);
    for w in box_points(v) {
        s.set(&w, dt_series_term(gamma, &w)?);
    }
    Ok(s)
}

fn sign(w: &[usize]) -> RationalFunction {
    RationalFunction::from_int(if delta(w).is_multiple_of(2) { 1 } else { -1 })
}

/// `DT_w` for every nonzero `w <= v`, from the generating function.
pub fn dt_invariants(
    gamma: &Quiver,
    v: &[usize],
) -> Result<BTreeMap<Vec<usize>, RationalFunction>> {
    let logged = plog(&dt_series(gamma, v)?)?.scale(&t_minus_one());
    let mut out = BTreeMap::new();
    for w in nonzero_points(v) {
        let dt = &logged.coeff(&w) * &sign(&w);
        require_positive_poly(format!("DT{w:?}"), &dt)?;
        out.insert(w, dt);
    }
    Ok(out)
}

/// The family `(-1)^{delta} St_mu R_mu`, with `St_mu = t^{sum v_i(v_i-1)/2}`
/// on all-column multipartitions and zero elsewhere.
pub fn steinberg_family(gamma: &Quiver) -> FamilyTable {
    let g = gamma.clone();
    FamilyTable::new(gamma.r(), move |mu: &MultiPartition| {
        if !mu.is_columns() {
            return RationalFunction::zero();
        }
        let v = mu.sizes();
        let sq: i64 = v.iter().map(|&x| (x * x) as i64).sum();
        let e = HalfExponent::neg_half(delta(&v) as i64 - sq)
            .finalize()
            .expect("delta - sum v_i^2 is even");
        &(&RationalFunction::t_pow(e) * &g.hua_term(mu)) * &sign(&v)
    })
}

/// `DT_w` through the Steinberg family, checked against [`dt_invariants`].
pub fn dt_via_steinberg(
    gamma: &Quiver,
    v: &[usize],
) -> Result<BTreeMap<Vec<usize>, RationalFunction>> {
    let vgen = generic_multiplicities(&steinberg_family(gamma), v)?;
    let reference = dt_invariants(gamma, v)?;
    let mut out = BTreeMap::new();
    for (w, x) in vgen {
        let dt = &x * &sign(&w);
        let other = &reference[&w];
        if &dt != other {
            return Err(Error::RouteMismatch {
                what: format!("DT{w:?} Steinberg vs generating function"),
                left: dt.to_string(),
                right: other.to_string(),
            });
        }
        out.insert(w, dt);
    }
    Ok(out)
}

/// `V_w(t)`: the `Exp` of the Kac series, as rational functions.
pub fn total_count_polys(gamma: &Quiver, v: &[usize]) -> Result<TruncatedSeries> {
    let mut s = TruncatedSeries::zero(v);
    for (w, a) in kac_polynomials(gamma, v)? {
        s.set(&w, a);
    }
    pexp(&s)
}

fn q_to_u64(x: &Q, what: &str) -> Result<u64> {
    if !x.is_integer() {
        return Err(Error::Inconsistency(format!(
            "{what} = {} is not an integer",
            rational_to_string(x)
        )));
    }
    x.to_integer()
        .to_u64()
        .ok_or_else(|| Error::Inconsistency(format!("{what} out of range")))
}

/// `V_w(q)` for every `w <= v` by the `Exp` route and by
/// `prod_d (sum_mu F_mu(q^d)/Z_mu(q^d) T^{d|mu|})^{phi_d(q)}`.
pub fn total_count_series(gamma: &Quiver, v: &[usize], q: u32) -> Result<BTreeMap<Vec<usize>, Q>> {
    let qq = Q::from_integer(q.into());
    let exp_route = total_count_polys(gamma, v)?.eval_coeffs(&qq)?;
    let mut product = TruncatedSeries::one(v);
    let maxv = v.iter().copied().max().unwrap_or(0);
    for d in 1..=maxv {
        let qd = Q::from_integer(BigInt::from(q).pow(d as u32));
        let mut factor = TruncatedSeries::zero(v);
        for mu in multipartitions_in_box(&v.iter().map(|x| x / d).collect::<Vec<_>>()) {
            let w: Vec<usize> = mu.sizes().iter().map(|x| x * d).collect();
            let num = Q::from_integer(BigInt::from(q).pow((d * gamma.hua_exponent(&mu)) as u32));
            let den = centralizer_poly(&mu).eval(&qd);
            factor.add_to(&w, &RationalFunction::from_rational(num / den));
        }
        let e = q_to_u64(&phi_d(d, &qq), "phi_d(q)")?;
        product = product.mul(&factor.pow(e)?)?;
    }
    let mut out = BTreeMap::new();
    for w in box_points(v) {
        let a = exp_route
            .coeff(&w)
            .as_constant()
            .expect("numeric coefficient");
        let b = product
            .coeff(&w)
            .as_constant()
            .expect("numeric coefficient");
        if a != b {
            return Err(Error::RouteMismatch {
                what: format!("V{w:?}({q})"),
                left: rational_to_string(&a),
                right: rational_to_string(&b),
            });
        }
        out.insert(w, a);
    }
    Ok(out)
}

/// Everything computed for one quiver and box.
#[derive(Clone, Debug)]
pub struct InvariantReport {
    pub quiver: Quiver,
    pub v: Vec<usize>,
    pub kac: BTreeMap<Vec<usize>, RationalFunction>,
    pub dt: BTreeMap<Vec<usize>, RationalFunction>,
    pub total: BTreeMap<Vec<usize>, RationalFunction>,
    pub routes: Vec<String>,
}

impl InvariantReport {
    pub fn compute(gamma: &Quiver, v: &[usize]) -> Result<Self> {
        let kac = kac_polynomials(gamma, v)?;
        let dt = dt_via_steinberg(gamma, v)?;
        let mut s = TruncatedSeries::zero(v);
        for (w, a) in &kac {
            s.set(w, a.clone());
        }
        let exp = pexp(&s)?;
        let total = nonzero_points(v)
            .into_iter()
            .map(|w| (w.clone(), exp.coeff(&w)))
            .collect();
        Ok(InvariantReport {
            quiver: gamma.clone(),
            v: v.to_vec(),
            kac,
            dt,
            total,
            routes: vec![
                "A: type sum = plethystic Log".into(),
                "DT: generating function = Steinberg family type sum = plethystic Log".into(),
                "V: Exp of Kac series".into(),
            ],
        })
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .kac
            .keys()
            .map(|w| {
                json!({
                    "w": w,
                    "kac": ratfun_json(&self.kac[w]),
                    "dt": ratfun_json(&self.dt[w]),
                    "vgen": ratfun_json(&self.kac[w]),
                    "total": ratfun_json(&self.total[w]),
                })
            })
            .collect();
        json!({
            "schema": 1,
            "quiver": self.quiver.to_json(),
            "dim": self.v,
            "entries": rows,
            "routes": self.routes,
        })
    }
}

/// `1` as a family, so that `V^gen` isolates the centralizer sums.
pub fn centralizer_family(r: usize) -> FamilyTable {
    FamilyTable::new(r, |mu| RationalFunction::from_poly(centralizer_poly(mu)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::q_int;

    fn t() -> RationalFunction {
        RationalFunction::t()
    }

    fn c(n: i64) -> RationalFunction {
        RationalFunction::from_int(n)
    }

    #[test]
    fn vgen_examples() {
        assert_eq!(
            generic_multiplicity(&hua_family(&Quiver::arrowless(1)), &[1]).unwrap(),
            c(1)
        );
        assert_eq!(
            generic_multiplicity(&hua_family(&Quiver::jordan()), &[1]).unwrap(),
            t()
        );
        for n in 1..=4 {
            assert_eq!(
                generic_multiplicity(&centralizer_family(1), &[n]).unwrap(),
                t_minus_one()
            );
        }
    }

    #[test]
    fn kac_examples() {
        let j = kac_polynomials(&Quiver::jordan(), &[3]).unwrap();
        for n in 1..=3 {
            assert_eq!(j[&vec![n]], t());
        }
        let a = kac_polynomials(&Quiver::arrowless(1), &[2]).unwrap();
        assert_eq!(a[&vec![1]], c(1));
        assert_eq!(a[&vec![2]], c(0));
        assert_eq!(
            kac_polynomials(&Quiver::a2(), &[1, 1]).unwrap()[&vec![1, 1]],
            c(1)
        );
    }

    #[test]
    fn kronecker_kac_polynomials() {
        // Real roots give 1, the imaginary root (1,1) gives t + 1.
        let k = kac_polynomials(&Quiver::kronecker(2), &[2, 2]).unwrap();
        assert_eq!(k[&vec![1, 0]], c(1));
        assert_eq!(k[&vec![2, 1]], c(1));
        assert_eq!(k[&vec![1, 1]], &t() + &c(1));
        assert_eq!(k[&vec![2, 2]], &t() + &c(1));
    }

    #[test]
    fn dt_examples() {
        assert_eq!(
            dt_invariants(&Quiver::arrowless(1), &[3]).unwrap()[&vec![1]],
            c(1)
        );
        assert_eq!(
            dt_invariants(&Quiver::arrowless(1), &[3]).unwrap()[&vec![2]],
            c(0)
        );
        assert_eq!(
            dt_invariants(&Quiver::jordan(), &[1]).unwrap()[&vec![1]],
            t()
        );
        let via = dt_via_steinberg(&Quiver::jordan(), &[3]).unwrap();
        assert_eq!(via[&vec![1]], t());
    }

    #[test]
    fn dt_term_by_hand() {
        // -t^{-1} / (1 - t^{-1}) = -1 / (t - 1)
        let term = dt_series_term(&Quiver::arrowless(1), &[1]).unwrap();
        assert_eq!(term, &c(-1) / &t_minus_one());
    }

    #[test]
    fn total_counts() {
        assert_eq!(
            total_count_series(&Quiver::jordan(), &[1], 2).unwrap()[&vec![1]],
            q_int(2)
        );
        assert_eq!(
            total_count_series(&Quiver::arrowless(1), &[2], 2).unwrap()[&vec![2]],
            q_int(1)
        );
        assert_eq!(
            total_count_series(&Quiver::a2(), &[1, 1], 3).unwrap()[&vec![1, 1]],
            q_int(2)
        );
        assert_eq!(
            total_count_series(&Quiver::jordan(), &[2], 2).unwrap()[&vec![2]],
            q_int(6)
        );
    }

    #[test]
    fn report_json_has_schema() {
        let r = InvariantReport::compute(&Quiver::jordan(), &[2]).unwrap();
        let j = r.to_json();
        assert_eq!(j["schema"], 1);
        assert_eq!(j["entries"].as_array().unwrap().len(), 2);
    }
}

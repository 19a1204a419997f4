//! Exact arithmetic: rationals, polynomials and rational functions in `t`,
//! cyclotomic numbers, and truncated multivariate series over `Q(t)`.

pub mod cyclo;
pub mod halfexp;
pub mod poly;
pub mod ratfun;
pub mod series;

pub use cyclo::CyclotomicNumber;
pub use halfexp::HalfExponent;
pub use poly::Poly;
pub use ratfun::RationalFunction;
pub use series::TruncatedSeries;

use serde_json::{json, Value};

use crate::error::Result;

pub type Q = num_rational::BigRational;

pub fn q_int(n: i64) -> Q {
    Q::from_integer(n.into())
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

pub fn ratfun_eval(f: &RationalFunction, q0: &Q) -> Result<Q> {
    f.eval(q0)
}

pub fn series_mul(a: &TruncatedSeries, b: &TruncatedSeries) -> Result<TruncatedSeries> {
    a.mul(b)
}

pub fn series_log(s: &TruncatedSeries) -> Result<TruncatedSeries> {
    s.log()
}

pub fn series_exp(s: &TruncatedSeries) -> Result<TruncatedSeries> {
    s.exp()
}

pub fn cyclo_embed(m: u32, k: i64) -> CyclotomicNumber {
    CyclotomicNumber::root_of_unity(m, k)
}

pub fn rational_to_string(c: &Q) -> String {
    poly::fmt_rational(c)
}

/// Coefficient array, lowest degree first, each entry a rational string.
pub fn poly_json(p: &Poly) -> Value {
    Value::Array(
        p.coeffs()
            .iter()
            .map(|c| Value::String(rational_to_string(c)))
            .collect(),
    )
}

/// `{"text": ..., "num": [...], "den": [...]}`
pub fn ratfun_json(f: &RationalFunction) -> Value {
    json!({
        "text": f.to_string(),
        "num": poly_json(f.numer()),
        "den": poly_json(f.denom()),
    })
}

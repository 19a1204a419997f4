//! Class functions on `GL_v(F_q)`: the generic linear character, the
//! Steinberg character, Hua's fixed-point function, and inner products.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::field::Fq;
use super::group::{
    fixed_count, ClassTable, ConjClassDescriptor, GroupElement, Irreducibles, Mode,
};
use super::matrix::fpoly;
use crate::error::{Error, Result};
use crate::numkernel::{rational_to_string, CyclotomicNumber, Q};
use crate::parttype::{c_omega, enumerate_types};
use crate::quivermod::Quiver;

/// A multiplicative character of `F_q^x` sending the stored generator to
/// `zeta_N`.
#[derive(Clone, Debug)]
pub struct AlphaCharacter {
    pub order: u32,
    q: u32,
}

pub fn alpha_character(n: usize, f: &Fq) -> Result<AlphaCharacter> {
    let q = f.q();
    if n == 0 || !(q - 1).is_multiple_of(n as u32) {
        return Err(Error::InadmissibleQ { q, n });
    }
    Ok(AlphaCharacter { order: n as u32, q })
}

impl AlphaCharacter {
    /// Exponent `k` with `alpha(x) = zeta_N^k`.
    pub fn exponent(&self, f: &Fq, x: u32) -> u32 {
        debug_assert_eq!(f.q(), self.q);
        f.log(x) % self.order
    }

    pub fn value(&self, f: &Fq, x: u32) -> CyclotomicNumber {
        CyclotomicNumber::root_of_unity(self.order, self.exponent(f, x) as i64)
    }

    /// `prod_i alpha(det g_i)` as an exponent of `zeta_N`.
    pub fn twisted_exponent(&self, f: &Fq, dets: &[u32]) -> u32 {
        dets.iter().map(|&d| self.exponent(f, d)).sum::<u32>() % self.order
    }

    pub fn twisted_linear(&self, f: &Fq, dets: &[u32]) -> CyclotomicNumber {
        CyclotomicNumber::root_of_unity(self.order, self.twisted_exponent(f, dets) as i64)
    }
}

/// `St_v` on a class: zero off semisimple classes, otherwise per vertex
/// `(-1)^{v_i - sum_gamma m_gamma} prod_gamma q^{deg(gamma) m (m-1)/2}`.
pub fn steinberg_value(irr: &Irreducibles, q: u32, v: &[usize], d: &ConjClassDescriptor) -> Q {
    if !d.is_semisimple() {
        return Q::zero();
    }
    let mut sign_exp = v.iter().sum::<usize>();
    let mut p_exp = 0usize;
    for (&g, mu) in &d.map {
        let deg = irr.degree(g);
        for lam in mu.components() {
            let m = lam.len();
            sign_exp += m;
            p_exp += deg * m * m.saturating_sub(1) / 2;
        }
    }
    let val = Q::from_integer(BigInt::from(q).pow(p_exp as u32));
    if sign_exp % 2 == 0 {
        val
    } else {
        -val
    }
}

/// Semisimplicity of a raw element: every block has a squarefree minimal
/// polynomial.
pub fn is_semisimple_element(f: &Fq, g: &GroupElement) -> bool {
    g.blocks
        .iter()
        .all(|m| m.rows() == 0 || fpoly::is_squarefree(f, &m.minimal_poly(f)))
}

/// A class function with exact values, tied to a class table.
#[derive(Clone, Debug)]
pub struct ClassFunction {
    key: (Vec<usize>, u32, Mode, usize),
    pub values: Vec<CyclotomicNumber>,
}

impl ClassFunction {
    pub fn from_fn(table: &ClassTable, mut value: impl FnMut(usize) -> CyclotomicNumber) -> Self {
        let values = (0..table.classes.len()).map(&mut value).collect();
        ClassFunction {
            key: key_of(table),
            values,
        }
    }

    pub fn trivial(table: &ClassTable) -> Self {
        ClassFunction::from_fn(table, |_| CyclotomicNumber::from_int(1))
    }

    pub fn alpha(table: &ClassTable, alpha: &AlphaCharacter) -> Self {
        ClassFunction::from_fn(table, |c| {
            alpha.twisted_linear(&table.field, &table.classes[c].dets)
        })
    }

    pub fn steinberg(table: &ClassTable) -> Self {
        ClassFunction::from_fn(table, |c| {
            CyclotomicNumber::from_rational(steinberg_value(
                &table.irreducibles,
                table.field.q(),
                &table.v,
                &table.classes[c].descriptor,
            ))
        })
    }

    /// `R_v(g) = #{rho : g . rho = rho}`.
    pub fn hua(table: &ClassTable, gamma: &Quiver) -> Self {
        ClassFunction::from_fn(table, |c| {
            CyclotomicNumber::from_rational(Q::from_integer(fixed_count(
                gamma,
                &table.field,
                &table.classes[c].representative,
            )))
        })
    }

    pub fn tensor(&self, other: &ClassFunction) -> Result<ClassFunction> {
        if self.key != other.key {
            return Err(Error::GroupMismatch);
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b)
            .collect();
        Ok(ClassFunction {
            key: self.key.clone(),
            values,
        })
    }
}

fn key_of(table: &ClassTable) -> (Vec<usize>, u32, Mode, usize) {
    (
        table.v.clone(),
        table.field.q(),
        table.mode,
        table.classes.len(),
    )
}

/// `(1/|G|) sum_x f(x) conj(g(x))`, weighted by class sizes.
pub fn inner_product(
    table: &ClassTable,
    f: &ClassFunction,
    g: &ClassFunction,
) -> Result<CyclotomicNumber> {
    let key = key_of(table);
    if f.key != key || g.key != key {
        return Err(Error::GroupMismatch);
    }
    let mut acc = CyclotomicNumber::from_int(0);
    for (c, (a, b)) in table.classes.iter().zip(f.values.iter().zip(&g.values)) {
        let w = Q::from_integer(c.size.clone());
        acc = &acc + &(a * &b.conj()).scale(&w);
    }
    Ok(acc.scale(&Q::new(BigInt::one(), table.order.clone())))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Which {
    Trivial,
    Steinberg,
}

/// `<R_v, 1^alpha>` or `<R_v, 1^alpha (x) St_v>` over the class table.
/// Accumulates counts per power of `zeta_N` and converts once.
pub fn multiplicity_oracle(gamma: &Quiver, table: &ClassTable, which: Which) -> Result<Q> {
    let f = &table.field;
    let alpha = alpha_character(table.v.iter().sum(), f)?;
    let n = alpha.order as usize;
    let mut counts = vec![Q::zero(); n];
    for c in &table.classes {
        let st = match which {
            Which::Trivial => Q::one(),
            Which::Steinberg => {
                steinberg_value(&table.irreducibles, f.q(), &table.v, &c.descriptor)
            }
        };
        if st.is_zero() {
            continue;
        }
        let r = fixed_count(gamma, f, &c.representative);
        let k = alpha.twisted_exponent(f, &c.dets) as usize;
        counts[(n - k) % n] += Q::from_integer(&c.size * r) * st;
    }
    let total = CyclotomicNumber::from_power_counts(n as u32, &counts)
        .scale(&Q::new(BigInt::one(), table.order.clone()));
    total.as_rational().ok_or_else(|| {
        Error::Inconsistency(format!("multiplicity oracle value {total} is not rational"))
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct OmEntry {
    pub omega: String,
    pub classes: usize,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct OmReport {
    pub v: Vec<usize>,
    pub q: u32,
    pub mode: String,
    pub entries: Vec<OmEntry>,
}

impl OmReport {
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }
}

/// For every type `omega`, the unweighted sum of `1^alpha` over classes of
/// that type against `(q-1) C^o_omega`.
pub fn verify_om(table: &ClassTable) -> Result<OmReport> {
    let f = &table.field;
    let alpha = alpha_character(table.v.iter().sum(), f)?;
    let mut sums: BTreeMap<String, (usize, CyclotomicNumber)> = BTreeMap::new();
    for c in &table.classes {
        let e = sums
            .entry(c.omega.to_string())
            .or_insert((0, CyclotomicNumber::from_int(0)));
        e.0 += 1;
        e.1 = &e.1 + &alpha.twisted_linear(f, &c.dets);
    }
    let qm1 = Q::from_integer((f.q() - 1).into());
    let mut entries = Vec::new();
    for omega in enumerate_types(&table.v) {
        let key = omega.to_string();
        let (classes, lhs) = sums
            .remove(&key)
            .unwrap_or((0, CyclotomicNumber::from_int(0)));
        let rhs = &qm1 * c_omega(&omega)?;
        let pass = lhs == CyclotomicNumber::from_rational(rhs.clone());
        entries.push(OmEntry {
            omega: key,
            classes,
            lhs: lhs.to_string(),
            rhs: rational_to_string(&rhs),
            pass,
        });
    }
    if let Some(stray) = sums.keys().next() {
        return Err(Error::Inconsistency(format!(
            "classes of type {stray} outside the type list"
        )));
    }
    let mode = match table.mode {
        Mode::Element => "element",
        Mode::Class => "class",
    };
    Ok(OmReport {
        v: table.v.clone(),
        q: f.q(),
        mode: mode.into(),
        entries,
    })
}

/// Steinberg values read from raw elements, for cross-checks.
pub fn steinberg_on_element(f: &Fq, irr: &Irreducibles, v: &[usize], g: &GroupElement) -> Q {
    let d = super::group::descriptor_of(f, irr, g);
    let by_desc = steinberg_value(irr, f.q(), v, &d);
    debug_assert_eq!(by_desc.is_zero(), !is_semisimple_element(f, g));
    by_desc
}

//! Partitions, multipartitions and types of conjugacy classes, with the
//! counting data attached to them (pairings, centralizer polynomials, the
//! Log coefficients `C^o`, Weyl-group orders).

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numkernel::{Poly, RationalFunction, Q};

/// Weakly decreasing list of positive parts; the empty list is the zero partition.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn zero() -> Self {
        Partition { parts: Vec::new() }
    }

    /// The one-row partition `(n)`, zero for `n = 0`.
    pub fn row(n: usize) -> Self {
        Partition::new(vec![n])
    }

    /// The one-column partition `(1^n)`.
    pub fn column(n: usize) -> Self {
        Partition { parts: vec![1; n] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `m_i(lambda)` for `i >= 1`.
    pub fn multiplicity(&self, i: usize) -> usize {
        self.parts.iter().filter(|&&p| p == i).count()
    }

    /// Pairs `(part, multiplicity)` for the distinct parts, largest first.
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((q, m)) if *q == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    pub fn dual(&self) -> Partition {
        let Some(&first) = self.parts.first() else {
            return Partition::zero();
        };
        Partition {
            parts: (1..=first)
                .map(|j| self.parts.iter().filter(|&&p| p >= j).count())
                .collect(),
        }
    }

    /// All parts equal to one.
    pub fn is_column(&self) -> bool {
        self.parts.iter().all(|&p| p == 1)
    }
}

/// Same size: reverse-lexicographic, so `(3) < (2,1) < (1,1,1)`.
/// Smaller sizes come first.
impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size()
            .cmp(&other.size())
            .then_with(|| other.parts.cmp(&self.parts))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "0");
        }
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", s.join("+"))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

/// All partitions of `n`, in reverse-lexicographic order.
pub fn enumerate_partitions(n: usize) -> Vec<Partition> {
    fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            rec(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// `<lambda, mu> = sum_{i,j} min(i,j) m_i(lambda) m_j(mu)`.
pub fn pairing(lambda: &Partition, mu: &Partition) -> usize {
    let a = lambda.multiplicities();
    let b = mu.multiplicities();
    a.iter()
        .map(|&(i, mi)| b.iter().map(|&(j, mj)| i.min(j) * mi * mj).sum::<usize>())
        .sum()
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct MultiPartition {
    components: Vec<Partition>,
}

impl MultiPartition {
    pub fn new(components: Vec<Partition>) -> Self {
        MultiPartition { components }
    }

    pub fn zero(r: usize) -> Self {
        MultiPartition {
            components: vec![Partition::zero(); r],
        }
    }

    /// `v^1`: one Jordan block per vertex.
    pub fn rows(v: &[usize]) -> Self {
        MultiPartition {
            components: v.iter().map(|&n| Partition::row(n)).collect(),
        }
    }

    /// `1^v`: all blocks of size one.
    pub fn columns(v: &[usize]) -> Self {
        MultiPartition {
            components: v.iter().map(|&n| Partition::column(n)).collect(),
        }
    }

    pub fn components(&self) -> &[Partition] {
        &self.components
    }

    pub fn r(&self) -> usize {
        self.components.len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.components.iter().map(Partition::size).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Partition::is_empty)
    }

    pub fn dual(&self) -> MultiPartition {
        MultiPartition {
            components: self.components.iter().map(Partition::dual).collect(),
        }
    }

    pub fn is_columns(&self) -> bool {
        self.components.iter().all(Partition::is_column)
    }
}

impl fmt::Display for MultiPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.components.iter().map(|p| p.to_string()).collect();
        write!(f, "[{}]", s.join("|"))
    }
}

impl fmt::Debug for MultiPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// All multipartitions of size `v`, lexicographic in the component orders.
pub fn enumerate_multipartitions(v: &[usize]) -> Vec<MultiPartition> {
    let mut out = vec![Vec::<Partition>::new()];
    for &n in v {
        let parts = enumerate_partitions(n);
        out = out
            .into_iter()
            .flat_map(|prefix| {
                parts.iter().map(move |p| {
                    let mut c = prefix.clone();
                    c.push(p.clone());
                    c
                })
            })
            .collect();
    }
    out.into_iter().map(MultiPartition::new).collect()
}

/// Every multipartition with `|mu| <= bound` componentwise, zero included.
pub fn multipartitions_in_box(bound: &[usize]) -> Vec<MultiPartition> {
    crate::numkernel::series::box_points(bound)
        .iter()
        .flat_map(|w| enumerate_multipartitions(w))
        .collect()
}

/// `t^{<mu,mu>} prod_k phi_{m_k}(t^{-1})` with the negative powers cleared.
fn unipotent_centralizer(lambda: &Partition) -> Poly {
    let mut shift = pairing(lambda, lambda);
    let mut p = Poly::one();
    for (_, m) in lambda.multiplicities() {
        for j in 1..=m {
            p = &p * &(&Poly::monomial(Q::one(), j) - &Poly::one());
            shift -= j;
        }
    }
    p.shift(shift)
}

/// `Z_mu(t)`: order of the centralizer in `GL_v(F_q)` of a unipotent element of
/// Jordan type `mu`, as a polynomial in `q`.
pub fn centralizer_poly(mu: &MultiPartition) -> Poly {
    mu.components
        .iter()
        .fold(Poly::one(), |acc, l| &acc * &unipotent_centralizer(l))
}

/// Finitely supported map `(d, mu) -> multiplicity`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TypeOmega {
    r: usize,
    support: BTreeMap<(usize, MultiPartition), usize>,
}

impl TypeOmega {
    pub fn new(
        r: usize,
        entries: impl IntoIterator<Item = (usize, MultiPartition, usize)>,
    ) -> Result<Self> {
        let mut support = BTreeMap::new();
        for (d, mu, m) in entries {
            if d == 0 {
                return Err(Error::InvalidType("degree 0".into()));
            }
            if mu.is_zero() {
                return Err(Error::InvalidType("zero multipartition".into()));
            }
            if mu.r() != r {
                return Err(Error::InvalidType(format!(
                    "multipartition {mu} has {} components, expected {r}",
                    mu.r()
                )));
            }
            if m == 0 {
                return Err(Error::InvalidType("zero multiplicity".into()));
            }
            *support.entry((d, mu)).or_insert(0) += m;
        }
        Ok(TypeOmega { r, support })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, &MultiPartition, usize)> + '_ {
        self.support.iter().map(|((d, mu), &m)| (*d, mu, m))
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    /// `|omega|_i = sum d |mu^i| omega(d, mu)`.
    pub fn size(&self) -> Vec<usize> {
        let mut s = vec![0; self.r];
        for ((d, mu), m) in &self.support {
            for (i, p) in mu.components().iter().enumerate() {
                s[i] += d * p.size() * m;
            }
        }
        s
    }

    /// `r_omega`, the total multiplicity.
    pub fn total_multiplicity(&self) -> usize {
        self.support.values().sum()
    }

    /// `H_omega(t) = prod H_mu(t^d)^{omega(d,mu)}`.
    pub fn extend_family(
        &self,
        mut h: impl FnMut(&MultiPartition) -> RationalFunction,
    ) -> RationalFunction {
        let mut acc = RationalFunction::one();
        for ((d, mu), &m) in &self.support {
            let f = h(mu).compose_power(*d);
            acc = &acc * &f.pow(m as i32);
        }
        acc
    }
}

impl fmt::Display for TypeOmega {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self
            .support
            .iter()
            .map(|((d, mu), m)| format!("(d={d},{mu}):{m}"))
            .collect();
        write!(f, "{{{}}}", s.join(", "))
    }
}

impl fmt::Debug for TypeOmega {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

pub fn mobius(n: usize) -> i64 {
    assert!(n >= 1);
    let mut n = n;
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// The constant `C^o_omega`.
pub fn c_omega(omega: &TypeOmega) -> Result<Q> {
    let mut degrees = omega.support.keys().map(|(d, _)| *d);
    let Some(d) = degrees.next() else {
        return Err(Error::ZeroType);
    };
    if degrees.any(|e| e != d) {
        return Ok(Q::zero());
    }
    let r = omega.total_multiplicity();
    let sign = if (r - 1).is_multiple_of(2) { 1 } else { -1 };
    let denom = omega
        .support
        .values()
        .fold(BigInt::one(), |acc, &m| acc * factorial(m));
    let num = BigInt::from(mobius(d) * sign) * factorial(r - 1);
    Ok(Q::new(num, denom * BigInt::from(d)))
}

/// `|W(omega)| = prod d^{omega(d,mu)} omega(d,mu)!`.
pub fn weyl_order(omega: &TypeOmega) -> BigInt {
    omega
        .support
        .iter()
        .fold(BigInt::one(), |acc, ((d, _), &m)| {
            acc * BigInt::from(*d).pow(m as u32) * factorial(m)
        })
}

/// `Z_omega(t) = prod Z_mu(t^d)^{omega(d,mu)}`.
pub fn centralizer_poly_type(omega: &TypeOmega) -> Poly {
    omega
        .support
        .iter()
        .fold(Poly::one(), |acc, ((d, mu), &m)| {
            &acc * &centralizer_poly(mu).compose_power(*d).pow(m as u32)
        })
}

/// Number of Frobenius orbits of size `d` on `G_m`, i.e. monic irreducible
/// polynomials of degree `d` other than `x`.
pub fn phi_d(d: usize, q: &Q) -> Q {
    assert!(d >= 1);
    let mut acc = Q::zero();
    for r in (1..=d).filter(|r| d.is_multiple_of(*r)) {
        let mu = mobius(r);
        if mu != 0 {
            acc += Q::from_integer(mu.into()) * (num_traits::pow(q.clone(), d / r) - Q::one());
        }
    }
    acc / Q::from_integer(BigInt::from(d))
}

/// Every `(d, mu)` with `mu != 0` and `d |mu| <= v`, in canonical order.
fn atoms(v: &[usize]) -> Vec<(usize, MultiPartition)> {
    let maxv = v.iter().copied().max().unwrap_or(0);
    let mut out = Vec::new();
    for d in 1..=maxv {
        let cap: Vec<usize> = v.iter().map(|x| x / d).collect();
        for mu in multipartitions_in_box(&cap) {
            if !mu.is_zero() {
                out.push((d, mu));
            }
        }
    }
    out.sort();
    out
}

/// All types of size exactly `v`, each once, in canonical order.
pub fn enumerate_types(v: &[usize]) -> Vec<TypeOmega> {
    let r = v.len();
    let atoms = atoms(v);
    let weights: Vec<Vec<usize>> = atoms
        .iter()
        .map(|(d, mu)| mu.sizes().iter().map(|s| s * d).collect())
        .collect();
    let mut out = Vec::new();
    let mut chosen: Vec<(usize, usize)> = Vec::new();

    fn rec(
        k: usize,
        rest: &mut Vec<usize>,
        atoms: &[(usize, MultiPartition)],
        weights: &[Vec<usize>],
        chosen: &mut Vec<(usize, usize)>,
        r: usize,
        out: &mut Vec<TypeOmega>,
    ) {
        if rest.iter().all(|&x| x == 0) {
            if !chosen.is_empty() {
                let entries = chosen
                    .iter()
                    .map(|&(i, m)| (atoms[i].0, atoms[i].1.clone(), m));
                out.push(TypeOmega::new(r, entries).expect("atoms are valid"));
            }
            return;
        }
        if k == atoms.len() {
            return;
        }
        let w = &weights[k];
        let max_m = w
            .iter()
            .zip(rest.iter())
            .filter(|(a, _)| **a > 0)
            .map(|(a, b)| b / a)
            .min()
            .unwrap_or(0);
        // multiplicity 0 first keeps the output in a fixed order
        rec(k + 1, rest, atoms, weights, chosen, r, out);
        for m in 1..=max_m {
            for (x, a) in rest.iter_mut().zip(w) {
                *x -= a * m;
            }
            chosen.push((k, m));
            rec(k + 1, rest, atoms, weights, chosen, r, out);
            chosen.pop();
            for (x, a) in rest.iter_mut().zip(w) {
                *x += a * m;
            }
        }
    }

    let mut rest = v.to_vec();
    rec(0, &mut rest, &atoms, &weights, &mut chosen, r, &mut out);
    out.sort();
    out
}

//! Quivers, dimension vectors, Hua terms, and the dimension formula for
//! generic fibers of the moment map via the extended quiver.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fforacle::field::Fq;
use crate::numkernel::series::box_points;
use crate::numkernel::{RationalFunction, Q};
use crate::parttype::{pairing, MultiPartition};

/// A finite quiver. Vertices are `0..r` internally; the JSON form is 1-based.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Quiver {
    r: usize,
    arrows: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct QuiverJson {
    vertices: usize,
    arrows: Vec<[usize; 2]>,
}

impl Quiver {
    pub fn new(r: usize, arrows: Vec<(usize, usize)>) -> Result<Self> {
        if let Some(&(i, j)) = arrows.iter().find(|&&(i, j)| i >= r || j >= r) {
            return Err(Error::InvalidQuiver(format!(
                "arrow {}->{} outside {} vertices",
                i + 1,
                j + 1,
                r
            )));
        }
        let mut arrows = arrows;
        arrows.sort_unstable();
        Ok(Quiver { r, arrows })
    }

    pub fn arrowless(r: usize) -> Self {
        Quiver {
            r,
            arrows: Vec::new(),
        }
    }

    /// One vertex with `g` loops.
    pub fn loops(g: usize) -> Self {
        Quiver {
            r: 1,
            arrows: vec![(0, 0); g],
        }
    }

    pub fn jordan() -> Self {
        Quiver::loops(1)
    }

    /// `1 -> 2`.
    pub fn a2() -> Self {
        Quiver {
            r: 2,
            arrows: vec![(0, 1)],
        }
    }

    /// Two vertices joined by `m` parallel arrows.
    pub fn kronecker(m: usize) -> Self {
        Quiver {
            r: 2,
            arrows: vec![(0, 1); m],
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: QuiverJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let mut arrows = Vec::with_capacity(raw.arrows.len());
        for [i, j] in raw.arrows {
            if i == 0 || j == 0 || i > raw.vertices || j > raw.vertices {
                return Err(Error::InvalidQuiver(format!(
                    "arrow [{i}, {j}] outside vertices 1..={}",
                    raw.vertices
                )));
            }
            arrows.push((i - 1, j - 1));
        }
        Quiver::new(raw.vertices, arrows)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let arrows: Vec<[usize; 2]> = self.arrows.iter().map(|&(i, j)| [i + 1, j + 1]).collect();
        serde_json::to_value(QuiverJson {
            vertices: self.r,
            arrows,
        })
        .expect("plain data")
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn loop_count(&self) -> usize {
        self.arrows.iter().filter(|(i, j)| i == j).count()
    }

    /// The double quiver: every arrow together with its reverse.
    pub fn double(&self) -> Quiver {
        let mut arrows = self.arrows.clone();
        arrows.extend(self.arrows.iter().map(|&(i, j)| (j, i)));
        arrows.sort_unstable();
        Quiver { r: self.r, arrows }
    }

    fn check_len(&self, v: &[usize]) -> Result<()> {
        if v.len() != self.r {
            return Err(Error::DimensionMismatch(format!(
                "dimension vector has {} entries, quiver has {} vertices",
                v.len(),
                self.r
            )));
        }
        Ok(())
    }

    /// `dim Rep(Q, v) = sum_{i->j} v_i v_j`.
    pub fn rep_dim(&self, v: &[usize]) -> usize {
        self.arrows.iter().map(|&(i, j)| v[i] * v[j]).sum()
    }

    /// `sum v_i^2 - sum_{i->j in double} v_i v_j`.
    pub fn gamma_bar(&self, v: &[usize]) -> i64 {
        let sq: usize = v.iter().map(|x| x * x).sum();
        sq as i64 - self.double().rep_dim(v) as i64
    }

    /// Exponent of the Hua term: `sum_{i->j} <mu^i, mu^j>`.
    pub fn hua_exponent(&self, mu: &MultiPartition) -> usize {
        let c = mu.components();
        self.arrows
            .iter()
            .map(|&(i, j)| pairing(&c[i], &c[j]))
            .sum()
    }

    /// `R_mu(t) = prod_{i->j} t^{<mu^i, mu^j>}`.
    pub fn hua_term(&self, mu: &MultiPartition) -> RationalFunction {
        assert_eq!(mu.r(), self.r, "multipartition arity");
        RationalFunction::t_pow(self.hua_exponent(mu) as i64)
    }

    /// Symmetrized adjacency: entry `(i, j)` counts arrows `i->j` plus `j->i`,
    /// so a loop contributes 2 on the diagonal.
    pub fn symmetric_adjacency(&self) -> Vec<Vec<i64>> {
        let mut a = vec![vec![0i64; self.r]; self.r];
        for &(i, j) in &self.arrows {
            a[i][j] += 1;
            a[j][i] += 1;
        }
        a
    }

    /// `2 Id - symmetric_adjacency`.
    pub fn cartan(&self) -> Vec<Vec<i64>> {
        let mut c = self.symmetric_adjacency();
        for (i, row) in c.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = if i == j { 2 - *x } else { -*x };
            }
        }
        c
    }
}

impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_json())
    }
}

impl fmt::Debug for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Quiver({self})")
    }
}

/// A dimension vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct DimVector(pub Vec<usize>);

impl DimVector {
    pub fn new(v: Vec<usize>) -> Self {
        DimVector(v)
    }

    /// Parses `"2,1"`.
    pub fn parse(text: &str) -> Result<Self> {
        text.split(',')
            .map(|s| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|e| Error::Parse(format!("dimension entry {s:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(DimVector)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn delta(&self) -> usize {
        delta(&self.0)
    }

    pub fn gcd(&self) -> usize {
        self.0.iter().fold(0, |g, &x| g.gcd(&x))
    }

    pub fn is_indivisible(&self) -> bool {
        self.gcd() == 1
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &DimVector) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl std::ops::Deref for DimVector {
    type Target = [usize];
    fn deref(&self) -> &[usize] {
        &self.0
    }
}

impl From<Vec<usize>> for DimVector {
    fn from(v: Vec<usize>) -> Self {
        DimVector(v)
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

pub fn delta(v: &[usize]) -> usize {
    v.iter().sum()
}

pub fn is_indivisible(v: &[usize]) -> bool {
    v.iter().fold(0usize, |g, &x| g.gcd(&x)) == 1
}

/// `Gamma` with legs attached. Leg vertices are numbered after the base
/// vertices, leg by leg, each leg listed from the base outward.
#[derive(Clone, Debug)]
pub struct ExtendedQuiver {
    pub base: Quiver,
    /// Per base vertex, the dimension labels along its leg (possibly empty).
    pub legs: Vec<Vec<usize>>,
    pub quiver: Quiver,
    pub dims: Vec<usize>,
    pub cartan: Vec<Vec<i64>>,
}

impl ExtendedQuiver {
    /// `2 - v_C^T C v_C`.
    pub fn tits_dimension(&self) -> i64 {
        let n = self.dims.len();
        let mut form = 0i64;
        for a in 0..n {
            for b in 0..n {
                form += self.dims[a] as i64 * self.cartan[a][b] * self.dims[b] as i64;
            }
        }
        2 - form
    }
}

/// Attaches at vertex `i` a leg with labels
/// `v_i - mu_1, v_i - mu_1 - mu_2, ..., mu_s` oriented toward `i`.
pub fn extended_quiver(gamma: &Quiver, v: &[usize], mu: &MultiPartition) -> Result<ExtendedQuiver> {
    gamma.check_len(v)?;
    if mu.sizes() != v {
        return Err(Error::SizeMismatch {
            sizes: mu.sizes(),
            dims: v.to_vec(),
        });
    }
    let mut arrows = gamma.arrows().to_vec();
    let mut dims = v.to_vec();
    let mut legs = Vec::with_capacity(gamma.r());
    for (i, part) in mu.components().iter().enumerate() {
        let mut labels = Vec::new();
        let mut rest = v[i];
        for &p in &part.parts()[..part.len().saturating_sub(1)] {
            rest -= p;
            labels.push(rest);
        }
        let mut prev = i;
        for &label in &labels {
            let node = dims.len();
            dims.push(label);
            arrows.push((node, prev));
            prev = node;
        }
        legs.push(labels);
    }
    let quiver = Quiver::new(dims.len(), arrows)?;
    let cartan = quiver.cartan();
    Ok(ExtendedQuiver {
        base: gamma.clone(),
        legs,
        quiver,
        dims,
        cartan,
    })
}

/// Dimension of a generic moment-map fiber over an adjoint orbit, and its
/// codimension in the fiber over the regular orbit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VarietyDim {
    pub dimension: i64,
    pub codim_in_regular: i64,
}

/// `dim Rep(double) + dim C - 2 dim G_v`, where `C = xi + O` and `mu^i` is
/// the Jordan type of the nilpotent part at vertex `i`, so that
/// `dim O_{mu^i} = v_i^2 - <mu^i, mu^i>`.
fn dimension_by_orbits(gamma: &Quiver, v: &[usize], mu: &MultiPartition) -> i64 {
    let orbit: i64 = mu
        .components()
        .iter()
        .zip(v)
        .map(|(lam, &n)| (n * n) as i64 - pairing(lam, lam) as i64)
        .sum();
    let sq: i64 = v.iter().map(|&x| (x * x) as i64).sum();
    gamma.double().rep_dim(v) as i64 + orbit - 2 * (sq - 1)
}

/// Both sides of the dimension identity; the Cartan side uses the extended
/// quiver of the dual multipartition. Negative values mean the variety is
/// empty; non-emptiness is not decided here.
pub fn variety_dim(gamma: &Quiver, v: &[usize], mu: &MultiPartition) -> Result<VarietyDim> {
    let dimension = variety_dim_single(gamma, v, mu)?;
    let regular = variety_dim_single(gamma, v, &MultiPartition::rows(v))?;
    Ok(VarietyDim {
        dimension,
        codim_in_regular: regular - dimension,
    })
}

fn variety_dim_single(gamma: &Quiver, v: &[usize], mu: &MultiPartition) -> Result<i64> {
    let ext = extended_quiver(gamma, v, &mu.dual())?;
    let by_cartan = ext.tits_dimension();
    let by_orbits = dimension_by_orbits(gamma, v, mu);
    if by_cartan != by_orbits {
        return Err(Error::Inconsistency(format!(
            "dimension of fiber for v={v:?}, mu={mu}: Cartan form gives {by_cartan}, orbit count gives {by_orbits}"
        )));
    }
    Ok(by_cartan)
}

fn check_generic<T>(
    v: &[usize],
    dot: impl Fn(&[usize]) -> T,
    is_zero: impl Fn(&T) -> bool,
) -> Option<Vec<usize>> {
    box_points(v)
        .into_iter()
        .filter(|w| w.iter().any(|&x| x != 0) && w.as_slice() != v)
        .find(|w| is_zero(&dot(w)))
}

/// A generic `xi` over the rationals: `xi . v = 0` and `xi . w != 0` for
/// every `0 < w < v`.
pub fn generic_xi_rational(v: &[usize]) -> Result<Vec<Q>> {
    if !is_indivisible(v) {
        return Err(Error::NotIndivisible(v.to_vec()));
    }
    let k = v
        .iter()
        .rposition(|&x| x != 0)
        .expect("indivisible vector is nonzero");
    let mut last_failure = Vec::new();
    for attempt in 0..64i64 {
        let base = attempt + 2;
        let mut xi: Vec<Q> = (0..v.len())
            .map(|i| Q::from_integer(base.pow(i as u32).into()))
            .collect();
        let rest: Q = (0..v.len())
            .filter(|&i| i != k)
            .map(|i| &xi[i] * Q::from_integer(v[i].into()))
            .fold(Q::zero(), |a, b| a + b);
        xi[k] = -rest / Q::from_integer(v[k].into());
        let dot = |w: &[usize]| {
            w.iter()
                .zip(&xi)
                .map(|(&a, x)| x * Q::from_integer(a.into()))
                .fold(Q::zero(), |s, x| s + x)
        };
        match check_generic(v, dot, |x: &Q| x.is_zero()) {
            None => return Ok(xi),
            Some(w) => last_failure = w,
        }
    }
    Err(Error::NoGenericElement {
        q: 0,
        failing: last_failure,
    })
}

/// A generic `xi` over `F_q` by exhaustive search in a fixed order; elements
/// are field indices of `field`.
pub fn generic_xi_fq(v: &[usize], field: &Fq) -> Result<Vec<u32>> {
    if !is_indivisible(v) {
        return Err(Error::NotIndivisible(v.to_vec()));
    }
    let q = field.q();
    let r = v.len();
    let mut first_failure: Option<Vec<usize>> = None;
    let total = (q as u64).pow(r as u32);
    for code in 0..total {
        let mut xi = Vec::with_capacity(r);
        let mut c = code;
        for _ in 0..r {
            xi.push((c % q as u64) as u32);
            c /= q as u64;
        }
        let dot = |w: &[usize]| {
            w.iter().zip(&xi).fold(0u32, |s, (&a, &x)| {
                field.add(s, field.mul(field.from_int(a as i64), x))
            })
        };
        if dot(v) != 0 {
            continue;
        }
        match check_generic(v, dot, |&x| x == 0) {
            None => return Ok(xi),
            Some(w) => {
                first_failure.get_or_insert(w);
            }
        }
    }
    Err(Error::NoGenericElement {
        q,
        failing: first_failure.unwrap_or_default(),
    })
}

/// `gamma_bar(v) + delta(v)` and `delta(v) - sum v_i^2` are even.
pub fn parity_holds(gamma: &Quiver, v: &[usize]) -> bool {
    let d = delta(v) as i64;
    let sq: i64 = v.iter().map(|&x| (x * x) as i64).sum();
    (gamma.gamma_bar(v) + d).is_even() && (d - sq).is_even()
}

/// `q^{sum_{i->j} v_i v_j}` as a rational, for checks against enumeration.
pub fn rep_count(gamma: &Quiver, v: &[usize], q: u32) -> Q {
    let mut x = Q::one();
    for _ in 0..gamma.rep_dim(v) {
        x *= Q::from_integer(q.into());
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::q_int;
    use crate::parttype::{enumerate_multipartitions, Partition};

    fn mp(parts: &[&[usize]]) -> MultiPartition {
        MultiPartition::new(parts.iter().map(|p| Partition::new(p.to_vec())).collect())
    }

    #[test]
    fn double_quiver() {
        assert_eq!(Quiver::jordan().double().arrows(), &[(0, 0), (0, 0)]);
        assert_eq!(Quiver::a2().double().arrows(), &[(0, 1), (1, 0)]);
        assert_eq!(Quiver::arrowless(3).double(), Quiver::arrowless(3));
    }

    #[test]
    fn json_roundtrip_and_errors() {
        let q = Quiver::from_json(r#"{"vertices": 2, "arrows": [[1,2],[2,2],[1,2]]}"#).unwrap();
        assert_eq!(q.arrows(), &[(0, 1), (0, 1), (1, 1)]);
        assert_eq!(Quiver::from_json(&q.to_json().to_string()).unwrap(), q);
        assert!(matches!(
            Quiver::from_json(r#"{"vertices": 1, "arrows": [[1,2]]}"#),
            Err(Error::InvalidQuiver(_))
        ));
        assert!(matches!(Quiver::from_json("{"), Err(Error::Parse(_))));
    }

    #[test]
    fn delta_and_gamma_bar() {
        assert_eq!(delta(&[1, 2]), 3);
        for n in 0..5 {
            assert_eq!(Quiver::jordan().gamma_bar(&[n]), -((n * n) as i64));
        }
        assert_eq!(Quiver::arrowless(1).gamma_bar(&[1]), 1);
    }

    #[test]
    fn hua_terms() {
        let mu = mp(&[&[1, 1, 1]]);
        assert_eq!(Quiver::arrowless(1).hua_term(&mu), RationalFunction::one());
        assert_eq!(Quiver::jordan().hua_term(&mu), RationalFunction::t_pow(9));
        assert_eq!(
            Quiver::a2().hua_term(&mp(&[&[1], &[1]])),
            RationalFunction::t()
        );
    }

    #[test]
    fn legs() {
        let a2 = Quiver::a2();
        let e = extended_quiver(&a2, &[2, 1], &mp(&[&[1, 1], &[1]])).unwrap();
        assert_eq!(e.legs, vec![vec![1], vec![]]);
        assert_eq!(e.dims, vec![2, 1, 1]);
        let e = extended_quiver(&a2, &[2, 1], &mp(&[&[2], &[1]])).unwrap();
        assert_eq!(e.quiver, a2);
        let e = extended_quiver(&Quiver::jordan(), &[4], &mp(&[&[1, 1, 1, 1]])).unwrap();
        assert_eq!(e.legs, vec![vec![3, 2, 1]]);
        assert!(matches!(
            extended_quiver(&a2, &[2, 1], &mp(&[&[1], &[1]])),
            Err(Error::SizeMismatch { .. })
        ));
    }

    #[test]
    fn cartan_loops_subtract_two() {
        assert_eq!(Quiver::jordan().cartan(), vec![vec![0]]);
        assert_eq!(Quiver::a2().cartan(), vec![vec![2, -1], vec![-1, 2]]);
    }

    #[test]
    fn dimension_examples() {
        let d = variety_dim(&Quiver::arrowless(1), &[1], &mp(&[&[1]])).unwrap();
        assert_eq!(d.dimension, 0);
        let j = Quiver::jordan();
        let semisimple = variety_dim(&j, &[2], &mp(&[&[1, 1]])).unwrap();
        assert_eq!(
            semisimple,
            VarietyDim {
                dimension: 2,
                codim_in_regular: 2
            }
        );
        let regular = variety_dim(&j, &[2], &mp(&[&[2]])).unwrap();
        assert_eq!(
            regular,
            VarietyDim {
                dimension: 4,
                codim_in_regular: 0
            }
        );
    }

    #[test]
    fn dimension_sides_agree_on_small_quivers() {
        let quivers = [
            Quiver::arrowless(1),
            Quiver::jordan(),
            Quiver::loops(2),
            Quiver::a2(),
            Quiver::kronecker(2),
        ];
        for g in &quivers {
            for v in box_points(&vec![3; g.r()]) {
                for mu in enumerate_multipartitions(&v) {
                    let d = variety_dim(g, &v, &mu).unwrap();
                    assert!(d.dimension % 2 == 0);
                }
            }
        }
    }

    #[test]
    fn parity_exhaustive() {
        for g in [
            Quiver::jordan(),
            Quiver::a2(),
            Quiver::loops(3),
            Quiver::kronecker(3),
        ] {
            for v in box_points(&vec![6; g.r()]) {
                if delta(&v) <= 12 {
                    assert!(parity_holds(&g, &v), "{v:?}");
                }
            }
        }
    }

    #[test]
    fn generic_xi_examples() {
        assert_eq!(generic_xi_rational(&[1]).unwrap(), vec![q_int(0)]);
        assert_eq!(
            generic_xi_rational(&[1, 1]).unwrap(),
            vec![q_int(1), q_int(-1)]
        );
        assert!(matches!(
            generic_xi_rational(&[2]),
            Err(Error::NotIndivisible(_))
        ));
        let f2 = Fq::new(2).unwrap();
        assert_eq!(generic_xi_fq(&[1, 1], &f2).unwrap(), vec![1, 1]);
        let f3 = Fq::new(3).unwrap();
        assert!(matches!(
            generic_xi_fq(&[2, 2], &f3),
            Err(Error::NotIndivisible(_))
        ));
        // Over F_2 every xi with xi.v = 0 also vanishes on some proper subvector.
        let err = generic_xi_fq(&[1, 1, 1, 1], &f2).unwrap_err();
        assert!(matches!(err, Error::NoGenericElement { q: 2, .. }));
        let xi = generic_xi_rational(&[2, 3, 1]).unwrap();
        assert!(check_generic(
            &[2, 3, 1],
            |w| {
                w.iter()
                    .zip(&xi)
                    .map(|(&a, x)| x * Q::from_integer(a.into()))
                    .fold(Q::zero(), |s, x| s + x)
            },
            |x: &Q| x.is_zero()
        )
        .is_none());
    }

    #[test]
    fn rep_count_matches_formula() {
        assert_eq!(rep_count(&Quiver::jordan(), &[2], 3), q_int(81));
    }
}

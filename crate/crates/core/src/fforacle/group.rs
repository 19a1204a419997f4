//! `GL_v(F_q)`: element enumeration, conjugacy-class descriptors, and class
//! tables with closed-form sizes.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use super::field::Fq;
use super::matrix::{fpoly, intertwiner_nullity, Matrix};
use crate::error::{Error, Result};
use crate::numkernel::Q;
use crate::parttype::{
    centralizer_poly_type, enumerate_types, MultiPartition, Partition, TypeOmega,
};
use crate::quivermod::Quiver;

pub const DEFAULT_BUDGET: u64 = 200_000;

/// One invertible matrix per vertex.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GroupElement {
    pub blocks: Vec<Matrix>,
}

impl GroupElement {
    pub fn identity(v: &[usize]) -> Self {
        GroupElement {
            blocks: v.iter().map(|&n| Matrix::identity(n)).collect(),
        }
    }

    pub fn dets(&self, f: &Fq) -> Vec<u32> {
        self.blocks.iter().map(|b| b.det(f)).collect()
    }

    pub fn is_invertible(&self, f: &Fq) -> bool {
        self.blocks.iter().all(|b| b.is_invertible(f))
    }
}

pub fn gl_order(n: usize, q: u32) -> BigInt {
    let qn = BigInt::from(q).pow(n as u32);
    (0..n)
        .map(|k| &qn - BigInt::from(q).pow(k as u32))
        .product()
}

pub fn glv_order(v: &[usize], q: u32) -> BigInt {
    v.iter().map(|&n| gl_order(n, q)).product()
}

fn check_budget(order: &BigInt, budget: u64) -> Result<()> {
    if *order > BigInt::from(budget) {
        return Err(Error::BudgetExceeded {
            order: order.to_string(),
            budget,
        });
    }
    Ok(())
}

/// Invertible `n x n` matrices, built row by row skipping dependent rows.
fn enumerate_gl(f: &Fq, n: usize) -> Vec<Matrix> {
    let q = f.q();
    let rows: Vec<Matrix> = (0..(q as u64).pow(n as u32))
        .map(|c| Matrix::from_code(1, n, q, c))
        .collect();
    let mut out = Vec::new();
    let mut stack: Vec<Vec<&Matrix>> = vec![Vec::new()];
    while let Some(prefix) = stack.pop() {
        if prefix.len() == n {
            let data = prefix
                .iter()
                .flat_map(|r| r.data().iter().copied())
                .collect();
            out.push(Matrix::from_rows(n, n, data));
            continue;
        }
        for row in rows.iter().rev() {
            let mut cand = prefix.clone();
            cand.push(row);
            let data: Vec<u32> = cand.iter().flat_map(|r| r.data().iter().copied()).collect();
            if Matrix::from_rows(cand.len(), n, data).rank(f) == cand.len() {
                stack.push(cand);
            }
        }
    }
    out.reverse();
    out
}

/// Every element of `GL_v(F_q)` exactly once.
pub fn enumerate_group(v: &[usize], f: &Fq, budget: u64) -> Result<Vec<GroupElement>> {
    check_budget(&glv_order(v, f.q()), budget)?;
    let factors: Vec<Vec<Matrix>> = v.iter().map(|&n| enumerate_gl(f, n)).collect();
    let mut out = vec![GroupElement { blocks: Vec::new() }];
    for fac in &factors {
        let mut next = Vec::with_capacity(out.len() * fac.len());
        for g in &out {
            for m in fac {
                let mut blocks = g.blocks.clone();
                blocks.push(m.clone());
                next.push(GroupElement { blocks });
            }
        }
        out = next;
    }
    Ok(out)
}

/// `q^n`, `n = sum over arrows i->j of dim {X : g_j X = X g_i}`.
pub fn fixed_count(gamma: &Quiver, f: &Fq, g: &GroupElement) -> BigInt {
    BigInt::from(f.q()).pow(fixed_exponent(gamma, f, &g.blocks) as u32)
}

/// The exponent in [`fixed_count`]; also used for Lie algebra elements.
pub fn fixed_exponent(gamma: &Quiver, f: &Fq, blocks: &[Matrix]) -> usize {
    gamma
        .arrows()
        .iter()
        .map(|&(i, j)| intertwiner_nullity(f, &blocks[j], &blocks[i]))
        .sum()
}

/// Monic irreducible polynomials over `F_q` other than `x`, of degree up to
/// a bound, in order of degree then coefficient code.
#[derive(Clone, Debug)]
pub struct Irreducibles {
    pub polys: Vec<Vec<u32>>,
}

impl Irreducibles {
    pub fn new(f: &Fq, max_degree: usize) -> Self {
        let q = f.q() as u64;
        let mut polys: Vec<Vec<u32>> = Vec::new();
        for d in 1..=max_degree {
            for code in 0..q.pow(d as u32) {
                let mut p = Matrix::from_code(1, d, f.q(), code).data().to_vec();
                p.push(1);
                if p[0] == 0 {
                    continue;
                }
                let reducible = polys
                    .iter()
                    .filter(|g| 2 * (g.len() - 1) <= d)
                    .any(|g| fpoly::rem(f, &p, g).is_empty());
                if !reducible {
                    polys.push(p);
                }
            }
        }
        Irreducibles { polys }
    }

    pub fn degree(&self, idx: usize) -> usize {
        self.polys[idx].len() - 1
    }
}

/// A conjugacy class of `GL_v(F_q)`: for each irreducible `gamma` in the
/// support, the multipartition of Jordan types of `gamma` across vertices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConjClassDescriptor {
    pub map: BTreeMap<usize, MultiPartition>,
}

impl ConjClassDescriptor {
    pub fn omega(&self, irr: &Irreducibles, r: usize) -> TypeOmega {
        let mut counts: BTreeMap<(usize, MultiPartition), usize> = BTreeMap::new();
        for (&g, mu) in &self.map {
            *counts.entry((irr.degree(g), mu.clone())).or_default() += 1;
        }
        TypeOmega::new(r, counts.into_iter().map(|((d, mu), m)| (d, mu, m)))
            .expect("descriptor data is a valid type")
    }

    pub fn is_semisimple(&self) -> bool {
        self.map.values().all(|mu| mu.is_columns())
    }

    /// Block companion matrices of `gamma^{lambda_j}` per vertex.
    pub fn representative(&self, f: &Fq, irr: &Irreducibles, v: &[usize]) -> GroupElement {
        let blocks = (0..v.len())
            .map(|i| {
                let mut parts = Vec::new();
                for (&g, mu) in &self.map {
                    for &l in mu.components()[i].parts() {
                        parts.push(Matrix::companion(f, &fpoly::pow(f, &irr.polys[g], l)));
                    }
                }
                let m = Matrix::block_diag(&parts);
                if m.rows() == 0 {
                    Matrix::zero(0, 0)
                } else {
                    m
                }
            })
            .collect();
        GroupElement { blocks }
    }

    /// `|C(g)|` from the Jordan data: per `(gamma, vertex)` the unipotent
    /// centralizer in `GL(F_{q^d})`.
    pub fn centralizer_order(&self, irr: &Irreducibles, q: u32) -> BigInt {
        let mut total = BigInt::one();
        for (&g, mu) in &self.map {
            let qq = BigInt::from(q).pow(irr.degree(g) as u32);
            for lam in mu.components() {
                total *= unipotent_centralizer(lam, &qq);
            }
        }
        total
    }

    pub fn dets(&self, f: &Fq, irr: &Irreducibles, r: usize) -> Vec<u32> {
        let mut dets = vec![1u32; r];
        for (&g, mu) in &self.map {
            let p = &irr.polys[g];
            let d = p.len() - 1;
            // det of the companion of p is (-1)^d p(0).
            let dp = if d.is_multiple_of(2) {
                p[0]
            } else {
                f.neg(p[0])
            };
            for (i, lam) in mu.components().iter().enumerate() {
                dets[i] = f.mul(dets[i], f.pow(dp, lam.size() as u64));
            }
        }
        dets
    }

    pub fn display(&self, irr: &Irreducibles) -> String {
        let items: Vec<String> = self
            .map
            .iter()
            .map(|(&g, mu)| format!("{:?}:{}", irr.polys[g], mu))
            .collect();
        format!("{{{}}}", items.join(", "))
    }
}

impl fmt::Debug for ConjClassDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.map.iter().map(|(g, mu)| format!("{g}:{mu}")).collect();
        write!(f, "Class{{{}}}", items.join(", "))
    }
}

/// `Q^{sum lambda'_k^2} prod_k prod_{j <= m_k} (1 - Q^{-j})`, in integers.
fn unipotent_centralizer(lam: &Partition, qq: &BigInt) -> BigInt {
    let dual = lam.dual();
    let exp: usize = dual.parts().iter().map(|x| x * x).sum();
    let mut num = qq.pow(exp as u32);
    let mut den = BigInt::one();
    for (_, m) in lam.multiplicities() {
        for j in 1..=m {
            let qj = qq.pow(j as u32);
            num *= &qj - BigInt::one();
            den *= qj;
        }
    }
    assert!((&num % &den).is_zero());
    num / den
}

/// Jordan data of a matrix tuple, read off from kernel dimensions of
/// `gamma(g_i)^k`, which equal `deg(gamma) * sum_j min(k, lambda_j)`.
pub fn descriptor_of(f: &Fq, irr: &Irreducibles, g: &GroupElement) -> ConjClassDescriptor {
    let r = g.blocks.len();
    let mut per: BTreeMap<usize, Vec<Partition>> = BTreeMap::new();
    for (i, m) in g.blocks.iter().enumerate() {
        let n = m.rows();
        for (idx, p) in irr.polys.iter().enumerate() {
            let d = p.len() - 1;
            if d > n {
                break;
            }
            let pm = m.eval_poly(f, p);
            let mut kernels = vec![0usize];
            let mut power = Matrix::identity(n);
            loop {
                power = power.mul(f, &pm);
                let k = power.nullity(f);
                if k == *kernels.last().unwrap() {
                    break;
                }
                kernels.push(k);
            }
            if kernels.len() == 1 {
                continue;
            }
            let dual: Vec<usize> = kernels.windows(2).map(|w| (w[1] - w[0]) / d).collect();
            let lam = Partition::new(dual).dual();
            per.entry(idx).or_insert_with(|| vec![Partition::zero(); r])[i] = lam;
        }
    }
    ConjClassDescriptor {
        map: per
            .into_iter()
            .map(|(g, parts)| (g, MultiPartition::new(parts)))
            .collect(),
    }
}

/// All maps `h : irreducibles -> partitions` with `sum deg(gamma) |h(gamma)| = n`.
fn vertex_maps(irr: &Irreducibles, n: usize) -> Vec<Vec<(usize, Partition)>> {
    fn go(
        irr: &Irreducibles,
        start: usize,
        rest: usize,
        acc: &mut Vec<(usize, Partition)>,
        out: &mut Vec<Vec<(usize, Partition)>>,
    ) {
        if rest == 0 {
            out.push(acc.clone());
            return;
        }
        for idx in start..irr.polys.len() {
            let d = irr.degree(idx);
            if d > rest {
                break;
            }
            for size in 1..=rest / d {
                for lam in crate::parttype::enumerate_partitions(size) {
                    acc.push((idx, lam));
                    go(irr, idx + 1, rest - d * size, acc, out);
                    acc.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    go(irr, 0, n, &mut Vec::new(), &mut out);
    out
}

/// All conjugacy classes of `GL_v(F_q)`, in a fixed order.
pub fn enumerate_descriptors(irr: &Irreducibles, v: &[usize]) -> Vec<ConjClassDescriptor> {
    let r = v.len();
    let mut out: Vec<BTreeMap<usize, Vec<Partition>>> = vec![BTreeMap::new()];
    for (i, &n) in v.iter().enumerate() {
        let maps = vertex_maps(irr, n);
        let mut next = Vec::with_capacity(out.len() * maps.len());
        for partial in &out {
            for h in &maps {
                let mut m = partial.clone();
                for (idx, lam) in h {
                    m.entry(*idx).or_insert_with(|| vec![Partition::zero(); r])[i] = lam.clone();
                }
                next.push(m);
            }
        }
        out = next;
    }
    let mut descs: Vec<ConjClassDescriptor> = out
        .into_iter()
        .map(|m| ConjClassDescriptor {
            map: m
                .into_iter()
                .map(|(g, p)| (g, MultiPartition::new(p)))
                .collect(),
        })
        .collect();
    descs.sort();
    descs
}

#[derive(Clone, Debug)]
pub struct ClassInfo {
    pub descriptor: ConjClassDescriptor,
    pub omega: TypeOmega,
    pub size: BigInt,
    pub centralizer: BigInt,
    pub dets: Vec<u32>,
    pub representative: GroupElement,
}

/// How a class table was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Every group element enumerated and sorted into classes.
    Element,
    /// Descriptors enumerated directly with closed-form sizes.
    Class,
}

#[derive(Clone, Debug)]
pub struct ClassTable {
    pub v: Vec<usize>,
    pub field: Fq,
    pub irreducibles: Irreducibles,
    pub order: BigInt,
    pub mode: Mode,
    pub classes: Vec<ClassInfo>,
}

impl ClassTable {
    /// Class mode. `budget` bounds the number of classes.
    pub fn by_classes(v: &[usize], f: &Fq, budget: u64) -> Result<Self> {
        let irr = Irreducibles::new(f, v.iter().copied().max().unwrap_or(0));
        let descs = enumerate_descriptors(&irr, v);
        check_budget(&BigInt::from(descs.len()), budget)?;
        let order = glv_order(v, f.q());
        let known: BTreeSet<String> = enumerate_types(v).iter().map(|t| t.to_string()).collect();
        let mut classes = Vec::with_capacity(descs.len());
        let mut total = BigInt::zero();
        for d in descs {
            let omega = d.omega(&irr, v.len());
            if !known.contains(&omega.to_string()) {
                return Err(Error::Inconsistency(format!(
                    "class type {omega} missing from the type list of {v:?}"
                )));
            }
            let centralizer = d.centralizer_order(&irr, f.q());
            let by_type = centralizer_poly_type(&omega).eval(&Q::from_integer(f.q().into()));
            if by_type != Q::from_integer(centralizer.clone()) {
                return Err(Error::Inconsistency(format!(
                    "centralizer of {d:?}: Jordan data gives {centralizer}, type polynomial gives {by_type}"
                )));
            }
            let size = &order / &centralizer;
            total += &size;
            let dets = d.dets(f, &irr, v.len());
            let representative = d.representative(f, &irr, v);
            classes.push(ClassInfo {
                descriptor: d,
                omega,
                size,
                centralizer,
                dets,
                representative,
            });
        }
        if total != order {
            return Err(Error::Inconsistency(format!(
                "class sizes sum to {total}, group order is {order}"
            )));
        }
        Ok(ClassTable {
            v: v.to_vec(),
            field: f.clone(),
            irreducibles: irr,
            order,
            mode: Mode::Class,
            classes,
        })
    }

    /// Element mode: sorts every element by its descriptor, then checks each
    /// class against the closed forms and by brute-force centralizer counts.
    pub fn by_elements(v: &[usize], f: &Fq, budget: u64) -> Result<Self> {
        let elements = enumerate_group(v, f, budget)?;
        let irr = Irreducibles::new(f, v.iter().copied().max().unwrap_or(0));
        let mut groups: BTreeMap<ConjClassDescriptor, Vec<GroupElement>> = BTreeMap::new();
        for g in elements {
            groups
                .entry(descriptor_of(f, &irr, &g))
                .or_default()
                .push(g);
        }
        let order = glv_order(v, f.q());
        let mut classes = Vec::with_capacity(groups.len());
        for (d, members) in groups {
            let omega = d.omega(&irr, v.len());
            let size = BigInt::from(members.len());
            let rep = members[0].clone();
            let dets = rep.dets(f);
            if members.iter().any(|g| g.dets(f) != dets) {
                return Err(Error::Inconsistency(format!(
                    "determinant not constant on {d:?}"
                )));
            }
            let centralizer = &order / &size;
            if &centralizer * &size != order || centralizer != d.centralizer_order(&irr, f.q()) {
                return Err(Error::Inconsistency(format!(
                    "class {d:?} has {size} elements in a group of order {order}"
                )));
            }
            classes.push(ClassInfo {
                descriptor: d,
                omega,
                size,
                centralizer,
                dets,
                representative: rep,
            });
        }
        Ok(ClassTable {
            v: v.to_vec(),
            field: f.clone(),
            irreducibles: irr,
            order,
            mode: Mode::Element,
            classes,
        })
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }
}

/// Size of the centralizer of `g` by brute force over the whole group.
pub fn brute_centralizer(f: &Fq, elements: &[GroupElement], g: &GroupElement) -> usize {
    elements
        .iter()
        .filter(|h| {
            h.blocks
                .iter()
                .zip(&g.blocks)
                .all(|(a, b)| a.mul(f, b) == b.mul(f, a))
        })
        .count()
}

pub fn to_u64(x: &BigInt) -> u64 {
    x.to_u64().expect("fits in u64")
}

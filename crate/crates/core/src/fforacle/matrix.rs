//! Dense matrices over [`Fq`] and polynomials over `F_q`.

use std::fmt;

use super::field::Fq;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: usize, cols: usize, data: Vec<u32>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Matrix { rows, cols, data }
    }

    /// Decodes `code` as base-`q` digits, row-major, least significant first.
    pub fn from_code(n: usize, m: usize, q: u32, mut code: u64) -> Self {
        let mut data = Vec::with_capacity(n * m);
        for _ in 0..n * m {
            data.push((code % q as u64) as u32);
            code /= q as u64;
        }
        Matrix {
            rows: n,
            cols: m,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: u32) {
        self.data[i * self.cols + j] = x;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, f: &Fq, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let x = f.add(out.get(i, j), f.mul(a, other.get(l, j)));
                    out.set(i, j, x);
                }
            }
        }
        out
    }

    pub fn add(&self, f: &Fq, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, f: &Fq, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f.sub(a, b))
            .collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, f: &Fq, c: u32) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    pub fn trace(&self, f: &Fq) -> u32 {
        (0..self.rows.min(self.cols)).fold(0, |s, i| f.add(s, self.get(i, i)))
    }

    /// Row echelon form in place; returns the rank and the product of pivots
    /// with the sign of the row permutation folded in.
    fn eliminate(&mut self, f: &Fq) -> (usize, u32) {
        let mut rank = 0;
        let mut det = 1;
        for col in 0..self.cols {
            let Some(piv) = (rank..self.rows).find(|&r| self.get(r, col) != 0) else {
                det = 0;
                continue;
            };
            if piv != rank {
                for j in 0..self.cols {
                    self.data.swap(piv * self.cols + j, rank * self.cols + j);
                }
                det = f.neg(det);
            }
            let pv = self.get(rank, col);
            det = f.mul(det, pv);
            let inv = f.inv(pv);
            for r in rank + 1..self.rows {
                let c = self.get(r, col);
                if c == 0 {
                    continue;
                }
                let factor = f.mul(c, inv);
                for j in col..self.cols {
                    let x = f.sub(self.get(r, j), f.mul(factor, self.get(rank, j)));
                    self.set(r, j, x);
                }
            }
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        (rank, det)
    }

    pub fn rank(&self, f: &Fq) -> usize {
        self.clone().eliminate(f).0
    }

    /// Dimension of the right kernel.
    pub fn nullity(&self, f: &Fq) -> usize {
        self.cols - self.rank(f)
    }

    pub fn det(&self, f: &Fq) -> u32 {
        assert_eq!(self.rows, self.cols);
        let (rank, det) = self.clone().eliminate(f);
        if rank < self.rows {
            0
        } else {
            det
        }
    }

    pub fn is_invertible(&self, f: &Fq) -> bool {
        self.rows == self.cols && self.rank(f) == self.rows
    }

    /// Gauss-Jordan inverse; `None` if singular.
    pub fn inverse(&self, f: &Fq) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Matrix::zero(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        for col in 0..n {
            let piv = (col..n).find(|&r| aug.get(r, col) != 0)?;
            for j in 0..2 * n {
                aug.data.swap(piv * 2 * n + j, col * 2 * n + j);
            }
            let inv = f.inv(aug.get(col, col));
            for j in 0..2 * n {
                let x = f.mul(aug.get(col, j), inv);
                aug.set(col, j, x);
            }
            for r in 0..n {
                let c = aug.get(r, col);
                if r == col || c == 0 {
                    continue;
                }
                for j in 0..2 * n {
                    let x = f.sub(aug.get(r, j), f.mul(c, aug.get(col, j)));
                    aug.set(r, j, x);
                }
            }
        }
        let mut out = Matrix::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, aug.get(i, n + j));
            }
        }
        Some(out)
    }

    pub fn pow(&self, f: &Fq, e: usize) -> Matrix {
        let mut acc = Matrix::identity(self.rows);
        for _ in 0..e {
            acc = acc.mul(f, self);
        }
        acc
    }

    pub fn is_nilpotent(&self, f: &Fq) -> bool {
        self.pow(f, self.rows).is_zero()
    }

    /// `p(M)` by Horner's rule; `p` little-endian over `F_q`.
    pub fn eval_poly(&self, f: &Fq, p: &[u32]) -> Matrix {
        let n = self.rows;
        let mut acc = Matrix::zero(n, n);
        for &c in p.iter().rev() {
            acc = acc.mul(f, self);
            for i in 0..n {
                let x = f.add(acc.get(i, i), c);
                acc.set(i, i, x);
            }
        }
        acc
    }

    /// Companion matrix of a monic polynomial of positive degree.
    pub fn companion(f: &Fq, p: &[u32]) -> Matrix {
        let d = p.len() - 1;
        assert!(d >= 1 && p[d] == 1, "monic of positive degree");
        let mut m = Matrix::zero(d, d);
        for i in 1..d {
            m.set(i, i - 1, 1);
        }
        for (i, &c) in p[..d].iter().enumerate() {
            m.set(i, d - 1, f.neg(c));
        }
        m
    }

    pub fn block_diag(blocks: &[Matrix]) -> Matrix {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let m: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zero(n, m);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(r0 + i, c0 + j, b.get(i, j));
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Minimal polynomial, monic little-endian, from the first linear
    /// dependency among `I, M, M^2, ...`.
    pub fn minimal_poly(&self, f: &Fq) -> Vec<u32> {
        let n = self.rows;
        let mut powers = vec![Matrix::identity(n)];
        loop {
            let k = powers.len();
            // Columns are vectorized powers; solve sum c_i M^i = -M^k.
            let next = powers[k - 1].mul(f, self);
            let mut sys = Matrix::zero(n * n, k + 1);
            for (c, pw) in powers.iter().chain(std::iter::once(&next)).enumerate() {
                for (r, &x) in pw.data.iter().enumerate() {
                    sys.set(r, c, x);
                }
            }
            let rank_lhs = {
                let mut only = Matrix::zero(n * n, k);
                for r in 0..n * n {
                    for c in 0..k {
                        only.set(r, c, sys.get(r, c));
                    }
                }
                only.rank(f)
            };
            if sys.rank(f) == rank_lhs {
                let coeffs = solve_consistent(f, &sys, k);
                let mut p: Vec<u32> = coeffs.iter().map(|&c| f.neg(c)).collect();
                p.push(1);
                return p;
            }
            powers.push(next);
        }
    }
}

/// Solves `A x = b` where `A` is the first `k` columns of `sys` (independent)
/// and `b` its last column.
fn solve_consistent(f: &Fq, sys: &Matrix, k: usize) -> Vec<u32> {
    let mut m = sys.clone();
    m.eliminate(f);
    let mut x = vec![0u32; k];
    let mut pivots = Vec::new();
    for r in 0..m.rows {
        if let Some(c) = (0..k).find(|&c| m.get(r, c) != 0) {
            pivots.push((r, c));
        }
    }
    for &(r, c) in pivots.iter().rev() {
        let mut s = m.get(r, k);
        for (j, &xj) in x.iter().enumerate().skip(c + 1) {
            s = f.sub(s, f.mul(m.get(r, j), xj));
        }
        x[c] = f.div(s, m.get(r, c));
    }
    x
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                let r: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
                r.join(" ")
            })
            .collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

/// Nullity of `X -> a X - X b` on `rows(a) x rows(b)` matrices. The kernel
/// is the space of `X` with `a X = X b`.
pub fn intertwiner_nullity(f: &Fq, a: &Matrix, b: &Matrix) -> usize {
    let (n, m) = (a.rows(), b.rows());
    let dim = n * m;
    if dim == 0 {
        return 0;
    }
    let mut op = Matrix::zero(dim, dim);
    for s in 0..n {
        for t in 0..m {
            let row = s * m + t;
            for u in 0..n {
                let c = a.get(s, u);
                if c != 0 {
                    let col = u * m + t;
                    op.set(row, col, f.add(op.get(row, col), c));
                }
            }
            for u in 0..m {
                let c = b.get(u, t);
                if c != 0 {
                    let col = s * m + u;
                    op.set(row, col, f.sub(op.get(row, col), c));
                }
            }
        }
    }
    op.nullity(f)
}

/// Polynomials over `F_q`, little-endian, trimmed.
pub mod fpoly {
    use super::Fq;

    pub fn trim(mut a: Vec<u32>) -> Vec<u32> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn degree(a: &[u32]) -> Option<usize> {
        a.iter().rposition(|&c| c != 0)
    }

    pub fn mul(f: &Fq, a: &[u32], b: &[u32]) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(x, y));
            }
        }
        trim(out)
    }

    pub fn pow(f: &Fq, a: &[u32], e: usize) -> Vec<u32> {
        (0..e).fold(vec![1], |acc, _| mul(f, &acc, a))
    }

    /// Remainder modulo a nonzero `b`.
    pub fn rem(f: &Fq, a: &[u32], b: &[u32]) -> Vec<u32> {
        let db = degree(b).expect("nonzero divisor");
        let inv = f.inv(b[db]);
        let mut a = trim(a.to_vec());
        while let Some(da) = degree(&a) {
            if da < db {
                break;
            }
            let c = f.mul(a[da], inv);
            for i in 0..=db {
                a[da - db + i] = f.sub(a[da - db + i], f.mul(c, b[i]));
            }
            a = trim(a);
        }
        a
    }

    pub fn derivative(f: &Fq, a: &[u32]) -> Vec<u32> {
        trim(
            a.iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| f.mul(f.from_int(i as i64), c))
                .collect(),
        )
    }

    /// Monic gcd.
    pub fn gcd(f: &Fq, a: &[u32], b: &[u32]) -> Vec<u32> {
        let (mut x, mut y) = (trim(a.to_vec()), trim(b.to_vec()));
        while !y.is_empty() {
            let r = rem(f, &x, &y);
            x = y;
            y = r;
        }
        if let Some(d) = degree(&x) {
            let inv = f.inv(x[d]);
            x.iter().map(|&c| f.mul(c, inv)).collect()
        } else {
            x
        }
    }

    pub fn is_squarefree(f: &Fq, a: &[u32]) -> bool {
        degree(&gcd(f, a, &derivative(f, a))) == Some(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_det_and_inverse_test() {
        let f = Fq::new(3).unwrap();
        let m = Matrix::from_rows(2, 2, vec![1, 2, 2, 1]);
        assert_eq!(m.det(&f), 0);
        assert_eq!(m.rank(&f), 1);
        let m = Matrix::from_rows(2, 2, vec![0, 1, 1, 0]);
        assert_eq!(m.det(&f), 2);
        assert!(m.is_invertible(&f));
        let g = Matrix::from_rows(2, 2, vec![1, 2, 0, 1]);
        assert_eq!(g.mul(&f, &g.inverse(&f).unwrap()), Matrix::identity(2));
        assert!(Matrix::from_rows(2, 2, vec![1, 2, 2, 1])
            .inverse(&f)
            .is_none());
    }

    #[test]
    fn companion_has_its_polynomial_as_minimal() {
        let f = Fq::new(5).unwrap();
        let p = vec![2, 0, 1, 1]; // x^3 + x^2 + 2
        let c = Matrix::companion(&f, &p);
        assert!(c.eval_poly(&f, &p).is_zero());
        assert_eq!(c.minimal_poly(&f), p);
        assert_eq!(Matrix::identity(3).minimal_poly(&f), vec![4, 1]);
    }

    #[test]
    fn intertwiners_of_scalars() {
        let f = Fq::new(3).unwrap();
        let a = Matrix::from_rows(1, 1, vec![1]);
        let b = Matrix::from_rows(1, 1, vec![2]);
        assert_eq!(intertwiner_nullity(&f, &a, &b), 0);
        assert_eq!(intertwiner_nullity(&f, &a, &a), 1);
        assert_eq!(
            intertwiner_nullity(&f, &Matrix::identity(2), &Matrix::identity(3)),
            6
        );
    }

    #[test]
    fn squarefree_test() {
        let f = Fq::new(3).unwrap();
        assert!(fpoly::is_squarefree(&f, &[2, 0, 1]));
        assert!(!fpoly::is_squarefree(&f, &[1, 2, 1]));
    }
}

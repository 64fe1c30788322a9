//! Exact dense and sparse matrices over ℚ(i).

use std::fmt;

use super::gaussian::GaussRat;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<GaussRat>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = GaussRat;
    fn index(&self, (i, j): (usize, usize)) -> &GaussRat {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut GaussRat {
        &mut self.data[i * self.cols + j]
    }
}

/// Result of Gauss–Jordan elimination.
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![GaussRat::zero(); rows * cols] }
    }
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = GaussRat::one();
        }
        m
    }
    pub fn from_rows(rows: Vec<Vec<GaussRat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|v| v.len()).unwrap_or(0);
        assert!(rows.iter().all(|v| v.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }
    pub fn row(&self, i: usize) -> &[GaussRat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(GaussRat::is_zero)
    }
    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }
    pub fn conj_transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].conj();
            }
        }
        t
    }
    pub fn is_hermitian(&self) -> bool {
        self.rows == self.cols && *self == self.conj_transpose()
    }

    pub fn mul(&self, o: &Matrix) -> Result<Matrix> {
        if self.cols != o.rows {
            return Err(Error::Dimension(format!("{}x{} · {}x{}", self.rows, self.cols, o.rows, o.cols)));
        }
        let mut out = Matrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o[(k, j)];
                    if !b.is_zero() {
                        let t = a * b;
                        out[(i, j)] += &t;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else { continue };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m[(r, c)].inv().unwrap();
            for j in c..m.cols {
                if !m[(r, j)].is_zero() {
                    m[(r, j)] = &m[(r, j)] * &inv;
                }
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    if m[(r, j)].is_zero() {
                        continue;
                    }
                    let t = &f * &m[(r, j)];
                    m[(i, j)] -= &t;
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of the right kernel; vector `k` has a 1 at the `k`-th free column
    /// and 0 at the other free columns.
    pub fn nullspace(&self) -> Vec<Vec<GaussRat>> {
        let Rref { matrix: m, pivots } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![GaussRat::zero(); self.cols];
                v[f] = GaussRat::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -&m[(r, f)];
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::Shape("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = GaussRat::one();
        }
        let Rref { matrix, pivots } = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Shape("singular matrix".into()));
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = matrix[(i, n + j)].clone();
            }
        }
        Ok(inv)
    }

    pub fn mul_vec(&self, v: &[GaussRat]) -> Vec<GaussRat> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = GaussRat::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect()
    }

    /// Pivots of elimination without row exchanges; `None` if a zero pivot appears.
    pub fn elimination_pivots(&self) -> Option<Vec<GaussRat>> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.clone();
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            let p = m[(k, k)].clone();
            if p.is_zero() {
                return None;
            }
            let inv = p.inv().unwrap();
            for i in k + 1..n {
                if m[(i, k)].is_zero() {
                    continue;
                }
                let f = &m[(i, k)] * &inv;
                for j in k..n {
                    if !m[(k, j)].is_zero() {
                        let t = &f * &m[(k, j)];
                        m[(i, j)] -= &t;
                    }
                }
            }
            out.push(p);
        }
        Some(out)
    }

    /// Exact positive-definiteness test for a Hermitian matrix via its pivots.
    pub fn is_positive_definite(&self) -> bool {
        use malachite::num::basic::traits::Zero;
        self.is_hermitian()
            && self
                .elimination_pivots()
                .is_some_and(|ps| ps.iter().all(|p| p.is_real() && p.re > malachite::Rational::ZERO))
    }

    pub fn to_sparse(&self) -> SparseMat {
        let mut s = SparseMat::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if !self[(i, j)].is_zero() {
                    s.data[i].push((j as u32, self[(i, j)].clone()));
                }
            }
        }
        s
    }
}

/// Row-major sparse matrix; each row holds (column, value) sorted by column, no zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Vec<(u32, GaussRat)>>,
}

impl SparseMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMat { rows, cols, data: vec![Vec::new(); rows] }
    }
    pub fn from_columns(rows: usize, columns: &[Vec<GaussRat>]) -> Self {
        let mut s = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, v) in col.iter().enumerate() {
                if !v.is_zero() {
                    s.data[i].push((j as u32, v.clone()));
                }
            }
        }
        s
    }
    pub fn row(&self, i: usize) -> &[(u32, GaussRat)] {
        &self.data[i]
    }
    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }
    pub fn get(&self, i: usize, j: usize) -> GaussRat {
        match self.data[i].binary_search_by_key(&(j as u32), |e| e.0) {
            Ok(k) => self.data[i][k].1.clone(),
            Err(_) => GaussRat::zero(),
        }
    }
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &GaussRat)> {
        self.data.iter().enumerate().flat_map(|(i, r)| r.iter().map(move |(j, v)| (i, *j as usize, v)))
    }
    pub fn to_dense(&self) -> Matrix {
        let mut m = Matrix::zeros(self.rows, self.cols);
        for (i, j, v) in self.entries() {
            m[(i, j)] = v.clone();
        }
        m
    }
    pub fn transpose(&self) -> SparseMat {
        let mut t = SparseMat::zeros(self.cols, self.rows);
        for (i, j, v) in self.entries() {
            t.data[j].push((i as u32, v.clone()));
        }
        t
    }
    pub fn conj(&self) -> SparseMat {
        SparseMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|r| r.iter().map(|(j, v)| (*j, v.conj())).collect()).collect(),
        }
    }
    pub fn scale(&self, c: &GaussRat) -> SparseMat {
        if c.is_zero() {
            return SparseMat::zeros(self.rows, self.cols);
        }
        SparseMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|r| r.iter().map(|(j, v)| (*j, v * c)).collect()).collect(),
        }
    }

    /// `self + c·o`.
    pub fn add_scaled(&self, o: &SparseMat, c: &GaussRat) -> SparseMat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch");
        if c.is_zero() {
            return self.clone();
        }
        let mut out = SparseMat::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            let (a, b) = (&self.data[i], &o.data[i]);
            let (mut p, mut q) = (0, 0);
            let row = &mut out.data[i];
            while p < a.len() || q < b.len() {
                let ja = a.get(p).map(|e| e.0).unwrap_or(u32::MAX);
                let jb = b.get(q).map(|e| e.0).unwrap_or(u32::MAX);
                if ja < jb {
                    row.push(a[p].clone());
                    p += 1;
                } else if jb < ja {
                    row.push((jb, &b[q].1 * c));
                    q += 1;
                } else {
                    let v = &a[p].1 + &(&b[q].1 * c);
                    if !v.is_zero() {
                        row.push((ja, v));
                    }
                    p += 1;
                    q += 1;
                }
            }
        }
        out
    }

    pub fn sub(&self, o: &SparseMat) -> SparseMat {
        self.add_scaled(o, &GaussRat::from_int(-1))
    }

    pub fn mul(&self, o: &SparseMat) -> SparseMat {
        assert_eq!(self.cols, o.rows, "inner dimension mismatch");
        let mut out = SparseMat::zeros(self.rows, o.cols);
        let mut acc: Vec<Option<GaussRat>> = vec![None; o.cols];
        let mut touched: Vec<u32> = Vec::new();
        for i in 0..self.rows {
            for (k, a) in &self.data[i] {
                for (j, b) in &o.data[*k as usize] {
                    let t = a * b;
                    match &mut acc[*j as usize] {
                        Some(v) => *v += t,
                        slot @ None => {
                            *slot = Some(t);
                            touched.push(*j);
                        }
                    }
                }
            }
            touched.sort_unstable();
            for &j in &touched {
                let v = acc[j as usize].take().unwrap();
                if !v.is_zero() {
                    out.data[i].push((j, v));
                }
            }
            touched.clear();
        }
        out
    }
}

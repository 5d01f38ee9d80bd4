//! Dense exact linear algebra over [`FieldElement`].

use std::fmt;
use std::ops::{Index, IndexMut};

use num_complex::Complex64;
use thiserror::Error;

use crate::field::FieldElement;

pub type Vector = Vec<FieldElement>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("linear system has no solution")]
    NoSolution,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("matrix is singular")]
    Singular,
}

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Solution set of A x = b: one particular solution (columns match b) and a kernel basis of A.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub particular: Matrix,
    pub kernel: Vec<Vector>,
}

/// Reduced row echelon form with pivot columns.
#[derive(Debug, Clone)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![FieldElement::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = FieldElement::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> FieldElement) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vector>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(rows: usize, cols: &[Vector]) -> Self {
        Self::from_fn(rows, cols.len(), |r, c| cols[c][r].clone())
    }

    pub fn from_i64(rows: usize, cols: usize, vals: &[i64]) -> Self {
        assert_eq!(vals.len(), rows * cols);
        Matrix {
            rows,
            cols,
            data: vals.iter().map(|&v| FieldElement::from_integer(v)).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[FieldElement] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn map(&self, f: impl Fn(&FieldElement) -> FieldElement) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, s: &FieldElement) -> Self {
        self.map(|x| x * s)
    }

    pub fn add(&self, o: &Matrix) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &Matrix) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn mul(&self, o: &Matrix) -> Self {
        assert_eq!(self.cols, o.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.rows, o.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..o.cols {
                    let b = &o[(k, c)];
                    if !b.is_zero() {
                        out.data[r * o.cols + c] += &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[FieldElement]) -> Vector {
        assert_eq!(self.cols, v.len());
        let mut out = vec![FieldElement::zero(); self.rows];
        for (k, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (r, o) in out.iter_mut().enumerate() {
                let a = &self[(r, k)];
                if !a.is_zero() {
                    *o += &(a * x);
                }
            }
        }
        out
    }

    pub fn trace(&self) -> FieldElement {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).sum()
    }

    /// Kronecker product.
    pub fn kron(&self, o: &Matrix) -> Self {
        Self::from_fn(self.rows * o.rows, self.cols * o.cols, |r, c| {
            let a = &self[(r / o.rows, c / o.cols)];
            if a.is_zero() {
                FieldElement::zero()
            } else {
                a * &o[(r % o.rows, c % o.cols)]
            }
        })
    }

    /// Reduced row echelon form; pivots are chosen as the leftmost nonzero column, topmost row.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut prow = 0;
        for col in 0..m.cols {
            if prow == m.rows {
                break;
            }
            let Some(p) = (prow..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(p, prow);
            let inv = m[(prow, col)].inverse().unwrap();
            for c in col..m.cols {
                let v = &m[(prow, c)] * &inv;
                m[(prow, c)] = v;
            }
            let pivot_row: Vec<(usize, FieldElement)> = (col..m.cols)
                .filter(|&c| !m[(prow, c)].is_zero())
                .map(|c| (c, m[(prow, c)].clone()))
                .collect();
            for r in 0..m.rows {
                if r == prow {
                    continue;
                }
                let f = m[(r, col)].clone();
                if f.is_zero() {
                    continue;
                }
                for (c, v) in &pivot_row {
                    let d = &f * v;
                    m[(r, *c)] -= &d;
                }
            }
            pivots.push(col);
            prow += 1;
        }
        Rref { matrix: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of {x : A x = 0}, one vector per free column in increasing order.
    pub fn kernel(&self) -> Vec<Vector> {
        let Rref { matrix: m, pivots } = self.rref();
        kernel_from_rref(&m, &pivots, self.cols)
    }

    /// Solve A X = B exactly.
    pub fn solve(&self, b: &Matrix) -> Result<Solution, LinalgError> {
        if b.rows != self.rows {
            return Err(LinalgError::Shape(format!(
                "A has {} rows but b has {}",
                self.rows, b.rows
            )));
        }
        let aug = Self::from_fn(self.rows, self.cols + b.cols, |r, c| {
            if c < self.cols {
                self[(r, c)].clone()
            } else {
                b[(r, c - self.cols)].clone()
            }
        });
        let Rref { matrix: m, pivots } = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return Err(LinalgError::NoSolution);
        }
        let mut particular = Self::zeros(self.cols, b.cols);
        for (i, &p) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                particular[(p, j)] = m[(i, self.cols + j)].clone();
            }
        }
        let kernel = kernel_from_rref(&m, &pivots, self.cols);
        Ok(Solution { particular, kernel })
    }

    /// Solve A x = b for a single right-hand side, returning one solution.
    pub fn solve_vector(&self, b: &[FieldElement]) -> Result<Vector, LinalgError> {
        let bm = Self::from_columns(self.rows, &[b.to_vec()]);
        Ok(self.solve(&bm)?.particular.column(0))
    }

    pub fn inverse(&self) -> Result<Matrix, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::Shape("inverse of non-square matrix".into()));
        }
        let sol = self.solve(&Self::identity(self.rows)).map_err(|_| LinalgError::Singular)?;
        if !sol.kernel.is_empty() {
            return Err(LinalgError::Singular);
        }
        Ok(sol.particular)
    }

    pub fn determinant(&self) -> FieldElement {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        let mut det = FieldElement::one();
        for col in 0..m.cols {
            let Some(p) = (col..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                return FieldElement::zero();
            };
            if p != col {
                m.swap_rows(p, col);
                det = -det;
            }
            let piv = m[(col, col)].clone();
            det = &det * &piv;
            let inv = piv.inverse().unwrap();
            for r in col + 1..m.rows {
                let f = &m[(r, col)] * &inv;
                if f.is_zero() {
                    continue;
                }
                for c in col..m.cols {
                    let d = &f * &m[(col, c)];
                    m[(r, c)] -= &d;
                }
            }
        }
        det
    }

    pub fn to_complex(&self) -> nalgebra::DMatrix<Complex64> {
        nalgebra::DMatrix::from_fn(self.rows, self.cols, |r, c| self[(r, c)].to_complex())
    }

    pub fn conj(&self) -> Self {
        self.map(|x| x.conj())
    }
}

fn kernel_from_rref(m: &Matrix, pivots: &[usize], ncols: usize) -> Vec<Vector> {
    let mut is_pivot = vec![None; ncols];
    for (i, &p) in pivots.iter().enumerate() {
        is_pivot[p] = Some(i);
    }
    let mut basis = Vec::new();
    for free in 0..ncols {
        if is_pivot[free].is_some() {
            continue;
        }
        let mut v = vec![FieldElement::zero(); ncols];
        v[free] = FieldElement::one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = -&m[(i, free)];
        }
        basis.push(v);
    }
    basis
}

impl Index<(usize, usize)> for Matrix {
    type Output = FieldElement;
    fn index(&self, (r, c): (usize, usize)) -> &FieldElement {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut FieldElement {
        &mut self.data[r * self.cols + c]
    }
}

/// Incrementally maintained subspace in reduced echelon form.
#[derive(Debug, Clone, Default)]
pub struct Span {
    dim: usize,
    rows: Vec<(usize, Vector)>,
}

impl Span {
    pub fn new(ambient: usize) -> Self {
        Span {
            dim: ambient,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.dim
    }

    /// Remainder of `v` after reduction; zero iff `v` lies in the span.
    pub fn reduce(&self, v: &[FieldElement]) -> Vector {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (x, y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &(&f * y);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[FieldElement]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Add `v`; returns false if it was already in the span.
    pub fn insert(&mut self, v: &[FieldElement]) -> bool {
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].inverse().unwrap();
        for x in r.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        for (_, row) in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, y) in row.iter_mut().zip(&r) {
                if !y.is_zero() {
                    *x -= &(&f * y);
                }
            }
        }
        let pos = self.rows.partition_point(|(q, _)| *q < p);
        self.rows.insert(pos, (p, r));
        true
    }

    /// Echelon basis sorted by pivot column.
    pub fn basis(&self) -> Vec<Vector> {
        self.rows.iter().map(|(_, r)| r.clone()).collect()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|(p, _)| *p).collect()
    }

    /// Coordinates of `v` in [`Span::basis`], assuming `v` lies in the span.
    pub fn coordinates(&self, v: &[FieldElement]) -> Option<Vector> {
        let coords: Vector = self.rows.iter().map(|(p, _)| v[*p].clone()).collect();
        let mut rebuilt = vec![FieldElement::zero(); self.dim];
        for (c, (_, row)) in coords.iter().zip(&self.rows) {
            if c.is_zero() {
                continue;
            }
            for (x, y) in rebuilt.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x += &(c * y);
                }
            }
        }
        if rebuilt.as_slice() == v {
            Some(coords)
        } else {
            None
        }
    }
}

pub fn vec_add(a: &[FieldElement], b: &[FieldElement]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[FieldElement], b: &[FieldElement]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(a: &[FieldElement], s: &FieldElement) -> Vector {
    a.iter().map(|x| if x.is_zero() { x.clone() } else { x * s }).collect()
}

pub fn vec_is_zero(a: &[FieldElement]) -> bool {
    a.iter().all(|x| x.is_zero())
}

/// a += s * b
pub fn axpy(a: &mut [FieldElement], s: &FieldElement, b: &[FieldElement]) {
    if s.is_zero() {
        return;
    }
    for (x, y) in a.iter_mut().zip(b) {
        if !y.is_zero() {
            *x += &(s * y);
        }
    }
}

pub fn dot(a: &[FieldElement], b: &[FieldElement]) -> FieldElement {
    let mut s = FieldElement::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            s += &(x * y);
        }
    }
    s
}

pub fn unit_vector(n: usize, i: usize) -> Vector {
    let mut v = vec![FieldElement::zero(); n];
    v[i] = FieldElement::one();
    v
}

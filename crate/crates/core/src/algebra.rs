//! Finite-dimensional associative algebras given by sparse structure constants.

use crate::field::FieldElement;
use crate::linalg::{axpy, unit_vector, vec_is_zero, Matrix, Span, Vector};
use crate::tensor::Tensor;

/// Sparse linear combination of basis vectors.
pub type Sparse = Vec<(usize, FieldElement)>;

pub fn to_sparse(v: &[FieldElement]) -> Sparse {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn to_dense(n: usize, s: &Sparse) -> Vector {
    let mut v = vec![FieldElement::zero(); n];
    for (i, x) in s {
        v[*i] += x;
    }
    v
}

#[derive(Debug, Clone, PartialEq)]
pub struct Algebra {
    conductor: u32,
    dim: usize,
    table: Vec<Sparse>,
    unit: Vector,
}

impl Algebra {
    /// `table[a * dim + b]` is the product of basis vectors a and b.
    pub fn new(conductor: u32, dim: usize, table: Vec<Sparse>, unit: Vector) -> Self {
        assert_eq!(table.len(), dim * dim);
        assert_eq!(unit.len(), dim);
        Algebra {
            conductor,
            dim,
            table,
            unit,
        }
    }

    pub fn from_fn(conductor: u32, dim: usize, unit: Vector, mut f: impl FnMut(usize, usize) -> Vector) -> Self {
        let mut table = Vec::with_capacity(dim * dim);
        for a in 0..dim {
            for b in 0..dim {
                table.push(to_sparse(&f(a, b)));
            }
        }
        Self::new(conductor, dim, table, unit)
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &Vector {
        &self.unit
    }

    pub fn basis_product(&self, a: usize, b: usize) -> &Sparse {
        &self.table[a * self.dim + b]
    }

    pub fn table(&self) -> &[Sparse] {
        &self.table
    }

    pub fn mul(&self, x: &[FieldElement], y: &[FieldElement]) -> Vector {
        let mut out = vec![FieldElement::zero(); self.dim];
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if yb.is_zero() {
                    continue;
                }
                let s = xa * yb;
                for (c, v) in self.basis_product(a, b) {
                    out[*c] += &(&s * v);
                }
            }
        }
        out
    }

    pub fn power(&self, x: &[FieldElement], k: usize) -> Vector {
        let mut acc = self.unit.clone();
        for _ in 0..k {
            acc = self.mul(&acc, x);
        }
        acc
    }

    /// Matrix of y ↦ x y.
    pub fn left_matrix(&self, x: &[FieldElement]) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim)
            .map(|j| self.mul(x, &unit_vector(self.dim, j)))
            .collect();
        Matrix::from_columns(self.dim, &cols)
    }

    /// Matrix of y ↦ y x.
    pub fn right_matrix(&self, x: &[FieldElement]) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim)
            .map(|j| self.mul(&unit_vector(self.dim, j), x))
            .collect();
        Matrix::from_columns(self.dim, &cols)
    }

    pub fn opposite(&self) -> Algebra {
        let n = self.dim;
        let table = (0..n * n).map(|i| self.table[(i % n) * n + i / n].clone()).collect();
        Algebra::new(self.conductor, n, table, self.unit.clone())
    }

    pub fn is_associative(&self) -> bool {
        let n = self.dim;
        for a in 0..n {
            let ea = unit_vector(n, a);
            for b in 0..n {
                let eb = unit_vector(n, b);
                let ab = self.mul(&ea, &eb);
                for c in 0..n {
                    let ec = unit_vector(n, c);
                    if self.mul(&ab, &ec) != self.mul(&ea, &self.mul(&eb, &ec)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn is_unit(&self) -> bool {
        (0..self.dim).all(|a| {
            let ea = unit_vector(self.dim, a);
            self.mul(&self.unit, &ea) == ea && self.mul(&ea, &self.unit) == ea
        })
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.dim;
        (0..n).all(|a| (a + 1..n).all(|b| self.basis_product(a, b) == self.basis_product(b, a)))
    }

    /// Basis of the center.
    pub fn center(&self) -> Vec<Vector> {
        self.centralizer(&(0..self.dim).map(|a| unit_vector(self.dim, a)).collect::<Vec<_>>())
    }

    /// Basis of {x : x g = g x for every g in `gens`}.
    pub fn centralizer(&self, gens: &[Vector]) -> Vec<Vector> {
        let n = self.dim;
        let mut rows: Vec<Vector> = Vec::new();
        for g in gens {
            let m = self.right_matrix(g).sub(&self.left_matrix(g));
            for r in 0..n {
                let row = m.row(r).to_vec();
                if !vec_is_zero(&row) {
                    rows.push(row);
                }
            }
        }
        if rows.is_empty() {
            return (0..n).map(|a| unit_vector(n, a)).collect();
        }
        Matrix::from_rows(rows).kernel()
    }

    /// tr(L_x) for each basis vector.
    pub fn regular_traces(&self) -> Vector {
        (0..self.dim)
            .map(|c| {
                let mut t = FieldElement::zero();
                for a in 0..self.dim {
                    for (k, v) in self.basis_product(c, a) {
                        if *k == a {
                            t += v;
                        }
                    }
                }
                t
            })
            .collect()
    }

    /// Regular trace form (a, b) ↦ tr(L_{ab}).
    pub fn trace_form(&self) -> Matrix {
        let t = self.regular_traces();
        Matrix::from_fn(self.dim, self.dim, |a, b| {
            let mut s = FieldElement::zero();
            for (c, v) in self.basis_product(a, b) {
                if !t[*c].is_zero() {
                    s += &(v * &t[*c]);
                }
            }
            s
        })
    }

    /// Structure constants of the subalgebra spanned by `basis` (closed under product),
    /// expressed in that basis, together with the coordinate map.
    pub fn subalgebra(&self, basis: &[Vector]) -> Option<(Algebra, SubspaceCoords)> {
        let coords = SubspaceCoords::new(self.dim, basis);
        let k = basis.len();
        let mut table = Vec::with_capacity(k * k);
        for a in 0..k {
            for b in 0..k {
                let p = self.mul(&basis[a], &basis[b]);
                table.push(crate::algebra::to_sparse(&coords.coords(&p)?));
            }
        }
        let unit = coords.coords(&self.unit)?;
        Some((Algebra::new(self.conductor, k, table, unit), coords))
    }

    /// Span of {x b : b ∈ basis} ∪ ... as an echelon basis of the left ideal generated by x.
    pub fn left_ideal(&self, x: &[FieldElement]) -> Span {
        let mut sp = Span::new(self.dim);
        for a in 0..self.dim {
            let v = self.mul(&unit_vector(self.dim, a), x);
            sp.insert(&v);
        }
        sp
    }

    /// Factorwise product in A^{⊗k}.
    pub fn tensor_mul(&self, a: &Tensor, b: &Tensor) -> Tensor {
        assert_eq!(a.order(), b.order());
        let n = self.dim;
        let k = a.order();
        let mut out = Tensor::zero(n, k);
        let bt = b.terms();
        for (ia, va) in a.iter() {
            for (ib, vb) in &bt {
                let mut partial: Vec<(u64, FieldElement)> = vec![(0, va * vb)];
                for f in 0..k {
                    let prods = self.basis_product(ia[f], ib[f]);
                    if prods.is_empty() {
                        partial.clear();
                        break;
                    }
                    let mut next = Vec::with_capacity(partial.len() * prods.len());
                    for (key, c) in &partial {
                        for (r, v) in prods {
                            next.push((key * n as u64 + *r as u64, c * v));
                        }
                    }
                    partial = next;
                }
                for (key, c) in partial {
                    out.add_key(key, &c);
                }
            }
        }
        out
    }

    /// Basis of the unital subalgebra generated by `gens`.
    pub fn generated_subalgebra(&self, gens: &[Vector]) -> Vec<Vector> {
        let mut sp = Span::new(self.dim);
        sp.insert(&self.unit);
        let mut frontier = vec![self.unit.clone()];
        let mut all = vec![self.unit.clone()];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = self.mul(&x, g);
                if sp.insert(&y) {
                    frontier.push(y.clone());
                    all.push(y);
                }
            }
        }
        all
    }

    /// Minimal polynomial of `x` (monic, lowest degree first), with `one` as identity.
    pub fn minimal_polynomial(&self, x: &[FieldElement], one: &[FieldElement]) -> Vec<FieldElement> {
        let mut powers: Vec<Vector> = vec![one.to_vec()];
        let mut span = Span::new(self.dim);
        span.insert(one);
        loop {
            let next = self.mul(powers.last().unwrap(), x);
            if span.contains(&next) {
                let m = Matrix::from_columns(self.dim, &powers);
                let c = m.solve_vector(&next).expect("power lies in span");
                let mut poly: Vec<FieldElement> = c.into_iter().map(|v| -v).collect();
                poly.push(FieldElement::one());
                return poly;
            }
            span.insert(&next);
            powers.push(next);
        }
    }
}

/// Coordinates with respect to a (not necessarily echelon) basis of a subspace.
#[derive(Debug, Clone)]
pub struct SubspaceCoords {
    basis: Vec<Vector>,
    span: Span,
    // echelon row i expressed in the original basis
    transform: Vec<Vector>,
}

impl SubspaceCoords {
    pub fn new(ambient: usize, basis: &[Vector]) -> Self {
        let k = basis.len();
        // Echelonize [basis | identity] to recover echelon rows as combinations.
        let rows: Vec<Vector> = basis
            .iter()
            .enumerate()
            .map(|(i, b)| {
                let mut r = b.clone();
                r.extend(unit_vector(k, i));
                r
            })
            .collect();
        let rr = if rows.is_empty() {
            None
        } else {
            Some(Matrix::from_rows(rows).rref())
        };
        let mut span = Span::new(ambient);
        let mut transform = Vec::new();
        if let Some(rr) = rr {
            for (i, &p) in rr.pivots.iter().enumerate() {
                if p >= ambient {
                    break;
                }
                let row = rr.matrix.row(i);
                span.insert(&row[..ambient]);
                transform.push(row[ambient..].to_vec());
            }
        }
        assert_eq!(span.rank(), k, "subspace basis is linearly dependent");
        SubspaceCoords {
            basis: basis.to_vec(),
            span,
            transform,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    /// Coordinates of `v` in the stored basis, or None if `v` is outside the subspace.
    pub fn coords(&self, v: &[FieldElement]) -> Option<Vector> {
        let ech = self.span.coordinates(v)?;
        let mut out = vec![FieldElement::zero(); self.basis.len()];
        for (c, t) in ech.iter().zip(&self.transform) {
            axpy(&mut out, c, t);
        }
        Some(out)
    }

    pub fn embed(&self, c: &[FieldElement]) -> Vector {
        let mut out = vec![FieldElement::zero(); self.span.ambient()];
        for (x, b) in c.iter().zip(&self.basis) {
            axpy(&mut out, x, b);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn matrix_algebra(k: usize) -> Algebra {
        // basis E_ij at index i*k + j
        let n = k * k;
        let mut unit = vec![FieldElement::zero(); n];
        for i in 0..k {
            unit[i * k + i] = FieldElement::one();
        }
        Algebra::from_fn(1, n, unit, |a, b| {
            let (i, j) = (a / k, a % k);
            let (l, m) = (b / k, b % k);
            let mut v = vec![FieldElement::zero(); n];
            if j == l {
                v[i * k + m] = FieldElement::one();
            }
            v
        })
    }

    #[test]
    fn matrix_algebra_basics() {
        let a = matrix_algebra(2);
        assert!(a.is_associative());
        assert!(a.is_unit());
        assert!(!a.is_commutative());
        assert_eq!(a.center().len(), 1);
        assert_eq!(a.trace_form().rank(), 4);
        let e11 = unit_vector(4, 0);
        assert_eq!(a.left_ideal(&e11).rank(), 2);
        let mp = a.minimal_polynomial(&e11, a.unit());
        assert_eq!(mp, vec![FieldElement::zero(), FieldElement::from_integer(-1), FieldElement::one()]);
    }

    #[test]
    fn subalgebra_coordinates() {
        let a = matrix_algebra(2);
        let diag = vec![unit_vector(4, 0), unit_vector(4, 3)];
        let (sub, coords) = a.subalgebra(&diag).unwrap();
        assert_eq!(sub.dim(), 2);
        assert!(sub.is_commutative());
        assert_eq!(coords.coords(a.unit()).unwrap(), vec![FieldElement::one(), FieldElement::one()]);
        assert!(coords.coords(&unit_vector(4, 1)).is_none());
    }
}

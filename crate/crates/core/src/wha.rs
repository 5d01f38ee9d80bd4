//! Finite quantum groupoids (weak Hopf algebras) given by structure constants.

use thiserror::Error;

use crate::algebra::{to_sparse, Algebra, Sparse};
use crate::field::FieldElement;
use crate::linalg::{unit_vector, vec_is_zero, Matrix, Span, Vector};
use crate::tensor::Tensor;

/// Δ(e_c) as a list of (a, b, coefficient) meaning coefficient · e_a ⊗ e_b.
pub type CoproductTable = Vec<Vec<(usize, usize, FieldElement)>>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WhaError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("antipode is not invertible")]
    AntipodeNotInvertible,
    #[error("no normalized Haar integral exists")]
    NoHaar,
    #[error("internal error: {0}")]
    Internal(String),
    #[error("structure fails the quantum groupoid axioms: {0}")]
    Invalid(String),
}

/// Outcome of one axiom check; `witness` lists basis indices where it breaks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomCheck {
    pub name: &'static str,
    pub passed: bool,
    pub witness: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&AxiomCheck> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    pub fn get(&self, name: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn push(&mut self, name: &'static str, witness: Option<Vec<usize>>) {
        self.checks.push(AxiomCheck {
            name,
            passed: witness.is_none(),
            witness,
        });
    }

    pub fn summary(&self) -> String {
        let f: Vec<String> = self
            .failures()
            .iter()
            .map(|c| format!("{} (witness {:?})", c.name, c.witness.clone().unwrap_or_default()))
            .collect();
        if f.is_empty() {
            "all axioms hold".into()
        } else {
            f.join(", ")
        }
    }
}

/// A finite quantum groupoid over ℚ(ζ_N).
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumGroupoid {
    conductor: u32,
    labels: Vec<String>,
    alg: Algebra,
    comul: CoproductTable,
    counit: Vector,
    antipode: Matrix,
    antipode_cols: Vec<Sparse>,
    /// Attached R-matrix, if any.
    pub r_matrix: Option<Tensor>,
    /// Attached ribbon element, if any.
    pub ribbon: Option<Vector>,
    /// Antilinear involution: x* = star · conj(x), column j holding e_j*.
    pub star: Option<Matrix>,
}

impl QuantumGroupoid {
    pub fn new(
        conductor: u32,
        labels: Vec<String>,
        alg: Algebra,
        comul: CoproductTable,
        counit: Vector,
        antipode: Matrix,
    ) -> Result<Self, WhaError> {
        let n = alg.dim();
        if labels.len() != n || comul.len() != n || counit.len() != n {
            return Err(WhaError::ShapeMismatch(format!(
                "dimension {n} but {} labels, {} coproducts, counit of length {}",
                labels.len(),
                comul.len(),
                counit.len()
            )));
        }
        if antipode.rows() != n || antipode.cols() != n {
            return Err(WhaError::ShapeMismatch("antipode must be n x n".into()));
        }
        if comul.iter().flatten().any(|(a, b, _)| *a >= n || *b >= n) {
            return Err(WhaError::ShapeMismatch("coproduct index out of range".into()));
        }
        let antipode_cols = (0..n).map(|j| to_sparse(&antipode.column(j))).collect();
        let comul = comul
            .into_iter()
            .map(|terms| {
                let mut t = Tensor::zero(n, 2);
                for (a, b, c) in terms {
                    t.add_at(&[a, b], &c);
                }
                t.iter().map(|(i, c)| (i[0], i[1], c.clone())).collect()
            })
            .collect();
        Ok(QuantumGroupoid {
            conductor,
            labels,
            alg,
            comul,
            counit,
            antipode,
            antipode_cols,
            r_matrix: None,
            ribbon: None,
            star: None,
        })
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn set_labels(&mut self, labels: Vec<String>) {
        assert_eq!(labels.len(), self.dim());
        self.labels = labels;
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn coproduct_table(&self) -> &CoproductTable {
        &self.comul
    }

    pub fn counit(&self) -> &Vector {
        &self.counit
    }

    pub fn antipode_matrix(&self) -> &Matrix {
        &self.antipode
    }

    pub fn unit(&self) -> &Vector {
        self.alg.unit()
    }

    pub fn basis(&self, i: usize) -> Vector {
        unit_vector(self.dim(), i)
    }

    pub fn zero(&self) -> Vector {
        vec![FieldElement::zero(); self.dim()]
    }

    pub fn scalar(&self, c: &FieldElement) -> Vector {
        crate::linalg::vec_scale(self.unit(), c)
    }

    pub fn mul(&self, x: &[FieldElement], y: &[FieldElement]) -> Vector {
        self.alg.mul(x, y)
    }

    pub fn mul_all(&self, xs: &[&[FieldElement]]) -> Vector {
        let mut acc = self.unit().clone();
        for x in xs {
            acc = self.mul(&acc, x);
        }
        acc
    }

    pub fn counit_of(&self, x: &[FieldElement]) -> FieldElement {
        crate::linalg::dot(&self.counit, x)
    }

    pub fn antipode(&self, x: &[FieldElement]) -> Vector {
        self.antipode.apply(x)
    }

    pub fn antipode_basis(&self, j: usize) -> &Sparse {
        &self.antipode_cols[j]
    }

    pub fn antipode_inverse(&self) -> Result<Matrix, WhaError> {
        self.antipode.inverse().map_err(|_| WhaError::AntipodeNotInvertible)
    }

    pub fn coproduct_basis(&self, c: usize) -> &[(usize, usize, FieldElement)] {
        &self.comul[c]
    }

    pub fn coproduct(&self, x: &[FieldElement]) -> Tensor {
        let mut t = Tensor::zero(self.dim(), 2);
        for (c, xc) in x.iter().enumerate() {
            if xc.is_zero() {
                continue;
            }
            for (a, b, v) in &self.comul[c] {
                t.add_at(&[*a, *b], &(xc * v));
            }
        }
        t
    }

    pub fn delta_one(&self) -> Tensor {
        self.coproduct(self.unit())
    }

    /// Δ(1) with its factors swapped.
    pub fn delta_op_one(&self) -> Tensor {
        self.delta_one().flip()
    }

    /// Factorwise product in H^{⊗k}.
    pub fn tmul(&self, a: &Tensor, b: &Tensor) -> Tensor {
        self.alg.tensor_mul(a, b)
    }

    /// Product of several tensors of equal order, left to right.
    pub fn tmul_all(&self, ts: &[&Tensor]) -> Tensor {
        let mut acc = ts[0].clone();
        for t in &ts[1..] {
            acc = self.tmul(&acc, t);
        }
        acc
    }

    /// Apply Δ to factor `pos`.
    pub fn delta_factor(&self, t: &Tensor, pos: usize) -> Tensor {
        t.expand_factor(pos, |c| self.comul[c].clone())
    }

    /// Apply ε to factor `pos`.
    pub fn counit_factor(&self, t: &Tensor, pos: usize) -> Tensor {
        t.contract_factor(pos, &self.counit)
    }

    /// Apply S to factor `pos`.
    pub fn antipode_factor(&self, t: &Tensor, pos: usize) -> Tensor {
        t.map_factor(pos, |j| self.antipode_cols[j].clone())
    }

    /// Apply an arbitrary matrix to factor `pos`.
    pub fn matrix_factor(&self, t: &Tensor, pos: usize, m: &Matrix) -> Tensor {
        t.map_factor(pos, |j| to_sparse(&m.column(j)))
    }

    /// Multiply all factors together: x_1 x_2 ⋯ x_k.
    pub fn multiply_out(&self, t: &Tensor) -> Vector {
        let n = self.dim();
        let mut out = self.zero();
        for (idx, v) in t.iter() {
            let mut acc = unit_vector(n, idx[0]);
            for &i in &idx[1..] {
                acc = self.mul(&acc, &unit_vector(n, i));
            }
            crate::linalg::axpy(&mut out, v, &acc);
        }
        out
    }

    /// Tensor with 1 inserted at `pos`.
    pub fn insert_one(&self, t: &Tensor, pos: usize) -> Tensor {
        t.insert_factor(pos, self.unit())
    }

    /// ε_t(h) = (ε⊗id)(Δ(1)(h⊗1)).
    pub fn eps_t(&self, h: &[FieldElement]) -> Vector {
        let d1 = self.delta_one();
        let mut out = self.zero();
        for (idx, v) in d1.iter() {
            let e = self.counit_of(&self.mul(&self.basis(idx[0]), h));
            if !e.is_zero() {
                crate::linalg::axpy(&mut out, &(v * &e), &self.basis(idx[1]));
            }
        }
        out
    }

    /// ε_s(h) = (id⊗ε)((1⊗h)Δ(1)).
    pub fn eps_s(&self, h: &[FieldElement]) -> Vector {
        let d1 = self.delta_one();
        let mut out = self.zero();
        for (idx, v) in d1.iter() {
            let e = self.counit_of(&self.mul(h, &self.basis(idx[1])));
            if !e.is_zero() {
                crate::linalg::axpy(&mut out, &(v * &e), &self.basis(idx[0]));
            }
        }
        out
    }

    pub fn eps_t_matrix(&self) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim()).map(|j| self.eps_t(&self.basis(j))).collect();
        Matrix::from_columns(self.dim(), &cols)
    }

    pub fn eps_s_matrix(&self) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim()).map(|j| self.eps_s(&self.basis(j))).collect();
        Matrix::from_columns(self.dim(), &cols)
    }

    /// Check every axiom on all basis tuples.
    pub fn validate_axioms(&self) -> AxiomReport {
        let n = self.dim();
        let mut rep = AxiomReport::default();
        let e = |i: usize| unit_vector(n, i);

        // associativity
        let mut w = None;
        'assoc: for a in 0..n {
            for b in 0..n {
                let ab = self.alg.basis_product(a, b);
                for c in 0..n {
                    let mut left = self.zero();
                    for (k, v) in ab {
                        for (r, x) in self.alg.basis_product(*k, c) {
                            left[*r] += &(v * x);
                        }
                    }
                    let bc = crate::algebra::to_dense(n, self.alg.basis_product(b, c));
                    if left != self.mul(&e(a), &bc) {
                        w = Some(vec![a, b, c]);
                        break 'assoc;
                    }
                }
            }
        }
        rep.push("associativity", w);

        let w = (0..n)
            .find(|&a| self.mul(self.unit(), &e(a)) != e(a) || self.mul(&e(a), self.unit()) != e(a))
            .map(|a| vec![a]);
        rep.push("unit", w);

        let mut w = None;
        for c in 0..n {
            let d = self.coproduct(&e(c));
            if self.delta_factor(&d, 0) != self.delta_factor(&d, 1) {
                w = Some(vec![c]);
                break;
            }
        }
        rep.push("coassociativity", w);

        let mut w = None;
        for c in 0..n {
            let d = self.coproduct(&e(c));
            let l = self.counit_factor(&d, 0).to_vector();
            let r = self.counit_factor(&d, 1).to_vector();
            if l != e(c) || r != e(c) {
                w = Some(vec![c]);
                break;
            }
        }
        rep.push("counit", w);

        let deltas: Vec<Tensor> = (0..n).map(|c| self.coproduct(&e(c))).collect();
        let mut w = None;
        'mult: for a in 0..n {
            for b in 0..n {
                let prod = crate::algebra::to_dense(n, self.alg.basis_product(a, b));
                if self.coproduct(&prod) != self.tmul(&deltas[a], &deltas[b]) {
                    w = Some(vec![a, b]);
                    break 'mult;
                }
            }
        }
        rep.push("comultiplication_multiplicative", w);

        let d1 = self.delta_one();
        let lhs = self.delta_factor(&d1, 0);
        let a = self.insert_one(&d1, 2);
        let b = self.insert_one(&d1, 0);
        let ok = lhs == self.tmul(&a, &b) && lhs == self.tmul(&b, &a);
        rep.push("unit_coproduct", if ok { None } else { Some(vec![]) });

        rep.push("weak_counit", self.check_weak_counit());

        let et = self.eps_t_matrix();
        let es = self.eps_s_matrix();
        let mut wt = None;
        let mut ws = None;
        for h in 0..n {
            let d = &deltas[h];
            if wt.is_none() && self.multiply_out(&self.antipode_factor(d, 1)) != et.column(h) {
                wt = Some(vec![h]);
            }
            if ws.is_none() && self.multiply_out(&self.antipode_factor(d, 0)) != es.column(h) {
                ws = Some(vec![h]);
            }
        }
        rep.push("antipode_target", wt);
        rep.push("antipode_source", ws);

        let mut w = None;
        'anti: for a in 0..n {
            for b in 0..n {
                let prod = crate::algebra::to_dense(n, self.alg.basis_product(a, b));
                let sa = self.antipode.column(a);
                let sb = self.antipode.column(b);
                if self.antipode(&prod) != self.mul(&sb, &sa) {
                    w = Some(vec![a, b]);
                    break 'anti;
                }
            }
        }
        rep.push("antipode_antimultiplicative", w);

        let mut w = None;
        for h in 0..n {
            let lhs = self.coproduct(&self.antipode.column(h));
            let rhs = self.antipode_factor(&self.antipode_factor(&deltas[h].flip(), 0), 1);
            if lhs != rhs {
                w = Some(vec![h]);
                break;
            }
        }
        rep.push("antipode_anticomultiplicative", w);
        rep
    }

    /// ε(fgh) = ε(f g₁) ε(g₂ h) = ε(f g₂) ε(g₁ h) on all basis triples.
    fn check_weak_counit(&self) -> Option<Vec<usize>> {
        let n = self.dim();
        // E[x][y] = ε(e_x e_y)
        let eps_pair: Vec<Vec<FieldElement>> = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| {
                        let mut s = FieldElement::zero();
                        for (k, v) in self.alg.basis_product(x, y) {
                            if !self.counit[*k].is_zero() {
                                s += &(v * &self.counit[*k]);
                            }
                        }
                        s
                    })
                    .collect()
            })
            .collect();
        for g in 0..n {
            let mut m1 = Matrix::zeros(n, n);
            let mut m2 = Matrix::zeros(n, n);
            for (i, j, c) in &self.comul[g] {
                for f in 0..n {
                    let a1 = &eps_pair[f][*i];
                    let a2 = &eps_pair[f][*j];
                    for h in 0..n {
                        if !a1.is_zero() {
                            let b = &eps_pair[*j][h];
                            if !b.is_zero() {
                                m1[(f, h)] += &(&(c * a1) * b);
                            }
                        }
                        if !a2.is_zero() {
                            let b = &eps_pair[*i][h];
                            if !b.is_zero() {
                                m2[(f, h)] += &(&(c * a2) * b);
                            }
                        }
                    }
                }
            }
            for f in 0..n {
                let fg = self.alg.basis_product(f, g);
                for h in 0..n {
                    let mut lhs = FieldElement::zero();
                    for (k, v) in fg {
                        if !eps_pair[*k][h].is_zero() {
                            lhs += &(v * &eps_pair[*k][h]);
                        }
                    }
                    if lhs != m1[(f, h)] || lhs != m2[(f, h)] {
                        return Some(vec![f, g, h]);
                    }
                }
            }
        }
        None
    }

    /// Validate and wrap failures into an error.
    pub fn validated(self) -> Result<Self, WhaError> {
        let rep = self.validate_axioms();
        if rep.all_passed() {
            Ok(self)
        } else {
            Err(WhaError::Invalid(rep.summary()))
        }
    }

    /// Target/source counital maps, subalgebras, separability elements and Ad₁ projections.
    pub fn counital_data(&self) -> CounitalData {
        let n = self.dim();
        let eps_t = self.eps_t_matrix();
        let eps_s = self.eps_s_matrix();
        let ht = column_space(&eps_t);
        let hs = column_space(&eps_s);
        let d1 = self.delta_one();
        let e_t = self.antipode_factor(&d1, 0);
        let e_s = self.antipode_factor(&d1, 1);
        let mut ad_l = Vec::with_capacity(n);
        let mut ad_r = Vec::with_capacity(n);
        for j in 0..n {
            let h = self.basis(j);
            let mut l = self.zero();
            let mut r = self.zero();
            for (idx, v) in d1.iter() {
                let a = self.basis(idx[0]);
                let b = self.basis(idx[1]);
                let sl = self.mul_all(&[&a, &h, &self.antipode(&b)]);
                let sr = self.mul_all(&[&self.antipode(&a), &h, &b]);
                crate::linalg::axpy(&mut l, v, &sl);
                crate::linalg::axpy(&mut r, v, &sr);
            }
            ad_l.push(l);
            ad_r.push(r);
        }
        CounitalData {
            eps_t,
            eps_s,
            ht_basis: ht,
            hs_basis: hs,
            e_t,
            e_s,
            ad1_left: Matrix::from_columns(n, &ad_l),
            ad1_right: Matrix::from_columns(n, &ad_r),
        }
    }

    pub fn ht_basis(&self) -> Vec<Vector> {
        column_space(&self.eps_t_matrix())
    }

    pub fn hs_basis(&self) -> Vec<Vector> {
        column_space(&self.eps_s_matrix())
    }

    /// The dual quantum groupoid on the dual basis.
    pub fn dual(&self) -> QuantumGroupoid {
        let n = self.dim();
        // (ξ^a ξ^b)(e_c) = Δ(e_c)_{ab}
        let mut table: Vec<Sparse> = vec![Vec::new(); n * n];
        for c in 0..n {
            for (a, b, v) in &self.comul[c] {
                table[a * n + b].push((c, v.clone()));
            }
        }
        for t in table.iter_mut() {
            t.sort_by_key(|(c, _)| *c);
        }
        let alg = Algebra::new(self.conductor, n, table, self.counit.clone());
        let mut comul: CoproductTable = vec![Vec::new(); n];
        for a in 0..n {
            for b in 0..n {
                for (c, v) in self.alg.basis_product(a, b) {
                    comul[*c].push((a, b, v.clone()));
                }
            }
        }
        let labels = self.labels.iter().map(|l| dual_label(l)).collect();
        let mut d = QuantumGroupoid::new(
            self.conductor,
            labels,
            alg,
            comul,
            self.unit().clone(),
            self.antipode.transpose(),
        )
        .expect("dual has consistent shapes");
        if let Some(star) = &self.star {
            d.star = Some(dual_star(self, star));
        }
        d
    }

    /// H^op (antipode S⁻¹), H^cop (antipode S⁻¹) or H^op/cop (antipode S).
    pub fn variant(&self, which: Variant) -> Result<QuantumGroupoid, WhaError> {
        let (alg, comul, s) = match which {
            Variant::Op => (self.alg.opposite(), self.comul.clone(), self.antipode_inverse()?),
            Variant::Cop => (self.alg.clone(), flip_table(&self.comul), self.antipode_inverse()?),
            Variant::OpCop => (self.alg.opposite(), flip_table(&self.comul), self.antipode.clone()),
        };
        QuantumGroupoid::new(self.conductor, self.labels.clone(), alg, comul, self.counit.clone(), s)
    }

    /// Basis of the center and whether H_t ∩ Z(H) is one-dimensional.
    pub fn center_and_connectedness(&self) -> (Vec<Vector>, bool) {
        let center = self.alg.center();
        let ht = self.ht_basis();
        let k = intersection_dim(self.dim(), &center, &ht);
        (center, k == 1)
    }

    pub fn is_connected(&self) -> bool {
        self.center_and_connectedness().1
    }

    /// Normalized two-sided Haar integral.
    pub fn haar_integral(&self) -> Result<Vector, WhaError> {
        let n = self.dim();
        let mut rows: Vec<Vector> = Vec::new();
        for x in 0..n {
            let ex = self.basis(x);
            let lt = self.alg.left_matrix(&ex).sub(&self.alg.left_matrix(&self.eps_t(&ex)));
            let rs = self.alg.right_matrix(&ex).sub(&self.alg.right_matrix(&self.eps_s(&ex)));
            for m in [lt, rs] {
                for r in 0..n {
                    let row = m.row(r).to_vec();
                    if !vec_is_zero(&row) {
                        rows.push(row);
                    }
                }
            }
        }
        let integrals = if rows.is_empty() {
            (0..n).map(|i| self.basis(i)).collect()
        } else {
            Matrix::from_rows(rows).kernel()
        };
        if integrals.is_empty() {
            return Err(WhaError::NoHaar);
        }
        // ε_t(h) = 1 and ε_s(h) = 1
        let et = self.eps_t_matrix();
        let es = self.eps_s_matrix();
        let mut sys_rows: Vec<Vector> = Vec::new();
        let mut rhs: Vec<FieldElement> = Vec::new();
        for (m, target) in [(&et, self.unit()), (&es, self.unit())] {
            let imgs: Vec<Vector> = integrals.iter().map(|k| m.apply(k)).collect();
            for r in 0..n {
                sys_rows.push(imgs.iter().map(|v| v[r].clone()).collect());
                rhs.push(target[r].clone());
            }
        }
        let a = Matrix::from_rows(sys_rows);
        let b = Matrix::from_columns(rhs.len(), &[rhs]);
        let sol = a.solve(&b).map_err(|_| WhaError::NoHaar)?;
        if !sol.kernel.is_empty() {
            return Err(WhaError::Internal("normalized Haar integral is not unique".into()));
        }
        let c = sol.particular.column(0);
        let mut h = self.zero();
        for (ci, k) in c.iter().zip(&integrals) {
            crate::linalg::axpy(&mut h, ci, k);
        }
        Ok(h)
    }

    /// Whether `f` (columns = images of basis vectors of `self`) is a morphism self → k.
    pub fn is_morphism_to(&self, f: &Matrix, k: &QuantumGroupoid) -> bool {
        let n = self.dim();
        if f.rows() != k.dim() || f.cols() != n {
            return false;
        }
        if &f.apply(self.unit()) != k.unit() {
            return false;
        }
        for j in 0..n {
            let col = f.column(j);
            if k.counit_of(&col) != self.counit[j] {
                return false;
            }
            if k.antipode(&col) != f.apply(&self.antipode.column(j)) {
                return false;
            }
            let lhs = k.coproduct(&col);
            let d = self.coproduct(&self.basis(j));
            let rhs = k_matrix_both(k, &d, f);
            if lhs != rhs {
                return false;
            }
            for i in 0..n {
                let prod = crate::algebra::to_dense(n, self.alg.basis_product(j, i));
                if f.apply(&prod) != k.mul(&col, &f.column(i)) {
                    return false;
                }
            }
        }
        true
    }

    /// Apply the star structure: x ↦ x*.
    pub fn star_of(&self, x: &[FieldElement]) -> Option<Vector> {
        let s = self.star.as_ref()?;
        let cx: Vector = x.iter().map(|c| c.conj()).collect();
        Some(s.apply(&cx))
    }

    /// Drop attached R-matrix, ribbon and star data.
    pub fn bare(&self) -> QuantumGroupoid {
        let mut h = self.clone();
        h.r_matrix = None;
        h.ribbon = None;
        h.star = None;
        h
    }

    /// Matrix of S², used to probe the antipode order.
    pub fn antipode_squared(&self) -> Matrix {
        self.antipode.mul(&self.antipode)
    }

    /// The same structure in a new basis; column i of `p` is the i-th new basis vector.
    pub fn change_basis(&self, p: &Matrix, labels: Vec<String>) -> Result<QuantumGroupoid, WhaError> {
        let n = self.dim();
        let pinv = p
            .inverse()
            .map_err(|_| WhaError::ShapeMismatch("change of basis is singular".into()))?;
        let cols: Vec<Vector> = (0..n).map(|i| p.column(i)).collect();
        let alg = Algebra::from_fn(self.conductor, n, pinv.apply(self.unit()), |a, b| {
            pinv.apply(&self.mul(&cols[a], &cols[b]))
        });
        let to_new = |t: &Tensor| -> Tensor {
            let t = self.matrix_factor(t, 0, &pinv);
            self.matrix_factor(&t, 1, &pinv)
        };
        let comul: CoproductTable = cols
            .iter()
            .map(|c| to_new(&self.coproduct(c)).iter().map(|(i, v)| (i[0], i[1], v.clone())).collect())
            .collect();
        let counit = cols.iter().map(|c| self.counit_of(c)).collect();
        let s = pinv.mul(&self.antipode).mul(p);
        let mut h = QuantumGroupoid::new(self.conductor, labels, alg, comul, counit, s)?;
        h.r_matrix = self.r_matrix.as_ref().map(|r| to_new(r));
        h.ribbon = self.ribbon.as_ref().map(|v| pinv.apply(v));
        h.star = self.star.as_ref().map(|st| pinv.mul(st).mul(&p.conj()));
        Ok(h)
    }

    /// Whether Δ is unit preserving (the Hopf case).
    pub fn is_hopf(&self) -> bool {
        let one = self.unit();
        self.delta_one() == Tensor::pure(&[one, one])
    }
}

fn k_matrix_both(k: &QuantumGroupoid, d: &Tensor, f: &Matrix) -> Tensor {
    let mut t = Tensor::zero(k.dim(), 2);
    for (idx, v) in d.iter() {
        let a = f.column(idx[0]);
        let b = f.column(idx[1]);
        t = t.add(&Tensor::pure(&[&a, &b]).scale(v));
    }
    t
}

fn flip_table(t: &CoproductTable) -> CoproductTable {
    t.iter()
        .map(|terms| terms.iter().map(|(a, b, c)| (*b, *a, c.clone())).collect())
        .collect()
}

fn dual_label(l: &str) -> String {
    match l.strip_prefix('*') {
        Some(rest) => rest.to_string(),
        None => format!("*{l}"),
    }
}

/// ⟨φ*, h⟩ = conj⟨φ, S(h)*⟩.
fn dual_star(h: &QuantumGroupoid, star: &Matrix) -> Matrix {
    let n = h.dim();
    // (ξ^a)*(e_b) = conj( ξ^a( S(e_b)* ) ); antilinearity is handled by the conj convention.
    Matrix::from_fn(n, n, |b, a| {
        let sb = h.antipode.column(b);
        let cx: Vector = sb.iter().map(|c| c.conj()).collect();
        let img = star.apply(&cx);
        img[a].conj()
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    Op,
    Cop,
    OpCop,
}

/// Counital maps and related structure.
#[derive(Debug, Clone)]
pub struct CounitalData {
    pub eps_t: Matrix,
    pub eps_s: Matrix,
    pub ht_basis: Vec<Vector>,
    pub hs_basis: Vec<Vector>,
    pub e_t: Tensor,
    pub e_s: Tensor,
    pub ad1_left: Matrix,
    pub ad1_right: Matrix,
}

/// Echelon basis of the column space.
pub fn column_space(m: &Matrix) -> Vec<Vector> {
    let mut sp = Span::new(m.rows());
    for j in 0..m.cols() {
        sp.insert(&m.column(j));
    }
    sp.basis()
}

/// Echelon basis of the span of vectors.
pub fn span_basis(dim: usize, vs: &[Vector]) -> Vec<Vector> {
    let mut sp = Span::new(dim);
    for v in vs {
        sp.insert(v);
    }
    sp.basis()
}

/// Dimension of the intersection of two subspaces.
pub fn intersection_dim(dim: usize, a: &[Vector], b: &[Vector]) -> usize {
    intersection_basis(dim, a, b).len()
}

/// Basis of the intersection of span(a) and span(b).
pub fn intersection_basis(dim: usize, a: &[Vector], b: &[Vector]) -> Vec<Vector> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut cols: Vec<Vector> = a.to_vec();
    cols.extend(b.iter().map(|v| v.iter().map(|x| -x).collect::<Vector>()));
    let m = Matrix::from_columns(dim, &cols);
    let ker = m.kernel();
    let vs: Vec<Vector> = ker
        .iter()
        .map(|k| {
            let mut v = vec![FieldElement::zero(); dim];
            for (c, x) in k.iter().zip(a) {
                crate::linalg::axpy(&mut v, c, x);
            }
            v
        })
        .collect();
    span_basis(dim, &vs)
}

/// Whether `x` lies in span(basis).
pub fn in_span(dim: usize, basis: &[Vector], x: &[FieldElement]) -> bool {
    let mut sp = Span::new(dim);
    for b in basis {
        sp.insert(b);
    }
    sp.contains(x)
}

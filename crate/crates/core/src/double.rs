//! The Drinfeld double D(H) = (Ĥ^op ⊗ H)/J, its canonical R-matrix and its dual.
//!
//! The pre-double Ĥ^op ⊗ H uses the basis ξ^a ⊗ f_b at index a·n + b.

use std::cell::RefCell;
use std::collections::HashMap;

use thiserror::Error;

use crate::algebra::{to_sparse, Algebra, Sparse};
use crate::field::FieldElement;
use crate::linalg::{unit_vector, vec_is_zero, Matrix, Span, Vector};
use crate::qt::RMatrixData;
use crate::tensor::Tensor;
use crate::wedderburn::wedderburn;
use crate::wha::{intersection_dim, span_basis, AxiomReport, CoproductTable, QuantumGroupoid, WhaError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DoubleError {
    #[error("antipode is not invertible")]
    AntipodeNotInvertible,
    #[error("double construction is inconsistent: {}", .0.summary())]
    Inconsistent(AxiomReport),
    #[error(transparent)]
    Wha(#[from] WhaError),
}

/// D(H) with the data of the quotient map.
#[derive(Debug, Clone)]
pub struct DoubleData {
    pub d: QuantumGroupoid,
    /// Echelon basis of J in the pre-double.
    pub j_basis: Vec<Vector>,
    /// dim D × n²: coordinates of the class of a pre-double vector.
    pub projection: Matrix,
    /// n² × dim D: the pre-double basis vector chosen for each basis class.
    pub section: Matrix,
    pub r: RMatrixData,
    pub checks: AxiomReport,
}

/// The product and structure maps on Ĥ^op ⊗ H before the quotient.
pub struct PreDouble<'a> {
    h: &'a QuantumGroupoid,
    dual: QuantumGroupoid,
    s_inv: Matrix,
    // Δ²(f_b) as (p, q, r, coefficient)
    d2: Vec<Vec<(usize, usize, usize, FieldElement)>>,
    conj: RefCell<HashMap<(usize, usize), Vec<Sparse>>>,
    grouped: RefCell<HashMap<(usize, usize), Vec<(usize, Sparse)>>>,
}

impl<'a> PreDouble<'a> {
    pub fn new(h: &'a QuantumGroupoid) -> Result<Self, DoubleError> {
        let s_inv = h.antipode_inverse().map_err(|_| DoubleError::AntipodeNotInvertible)?;
        let d2 = (0..h.dim())
            .map(|b| {
                h.delta_factor(&h.coproduct(&h.basis(b)), 1)
                    .iter()
                    .map(|(i, c)| (i[0], i[1], i[2], c.clone()))
                    .collect()
            })
            .collect();
        Ok(PreDouble {
            h,
            d2,
            dual: h.dual(),
            s_inv,
            conj: RefCell::new(HashMap::new()),
            grouped: RefCell::new(HashMap::new()),
        })
    }

    pub fn n(&self) -> usize {
        self.h.dim()
    }

    pub fn dim(&self) -> usize {
        self.n() * self.n()
    }

    pub fn dual(&self) -> &QuantumGroupoid {
        &self.dual
    }

    /// φ ⊗ h as a pre-double vector.
    pub fn pure(&self, phi: &[FieldElement], x: &[FieldElement]) -> Vector {
        let n = self.n();
        let mut v = vec![FieldElement::zero(); n * n];
        for (a, pa) in phi.iter().enumerate() {
            if pa.is_zero() {
                continue;
            }
            for (b, xb) in x.iter().enumerate() {
                if !xb.is_zero() {
                    v[a * n + b] = pa * xb;
                }
            }
        }
        v
    }

    /// Rows c of y ↦ S(f_p) y f_r, i.e. the functionals y ↦ ξ^c(S(f_p) y f_r), sparse.
    fn conj_rows(&self, p: usize, r: usize) -> std::cell::Ref<'_, Vec<Sparse>> {
        if !self.conj.borrow().contains_key(&(p, r)) {
            let h = self.h;
            let alg = h.algebra();
            let m = alg
                .left_matrix(&h.antipode(&h.basis(p)))
                .mul(&alg.right_matrix(&h.basis(r)));
            let rows = (0..m.rows()).map(|c| to_sparse(m.row(c))).collect();
            self.conj.borrow_mut().insert((p, r), rows);
        }
        std::cell::Ref::map(self.conj.borrow(), |m| &m[&(p, r)])
    }

    /// Ψ_q = Σ_{p,r} c_{pqr} ψ(S(f_p) · f_r) over Δ²(f_b) = Σ c_{pqr} f_p⊗f_q⊗f_r, with ψ = ξ^c.
    fn grouped(&self, b: usize, c: usize) -> std::cell::Ref<'_, Vec<(usize, Sparse)>> {
        if !self.grouped.borrow().contains_key(&(b, c)) {
            let n = self.n();
            let mut by_q: Vec<Vector> = vec![Vec::new(); n];
            for (p, q, r, coef) in &self.d2[b] {
                let rows = self.conj_rows(*p, *r);
                if rows[c].is_empty() {
                    continue;
                }
                let acc = &mut by_q[*q];
                if acc.is_empty() {
                    *acc = vec![FieldElement::zero(); n];
                }
                for (k, v) in &rows[c] {
                    acc[*k] += &(coef * v);
                }
            }
            let list = by_q
                .into_iter()
                .enumerate()
                .map(|(q, v)| (q, to_sparse(&v)))
                .filter(|(_, v)| !v.is_empty())
                .collect();
            self.grouped.borrow_mut().insert((b, c), list);
        }
        std::cell::Ref::map(self.grouped.borrow(), |m| &m[&(b, c)])
    }

    /// out += s·(ξ^a⊗f_b)(ξ^c⊗f_d), where the product is
    /// ψ₂ξ^a ⊗ (f_b)₂f_d ⟨S((f_b)₁), ψ₁⟩⟨(f_b)₃, ψ₃⟩ with ψ = ξ^c.
    fn add_basis_product(&self, x: usize, y: usize, s: &FieldElement, out: &mut [FieldElement]) {
        let n = self.n();
        let (a, b) = (x / n, x % n);
        let (c, d) = (y / n, y % n);
        let dual_alg = self.dual.algebra();
        let alg = self.h.algebra();
        for (q, psi) in self.grouped(b, c).iter() {
            let g = alg.basis_product(*q, d);
            if g.is_empty() {
                continue;
            }
            // ψ'·ξ^a
            let mut phi = vec![FieldElement::zero(); n];
            for (k, pk) in psi {
                for (t, v1) in dual_alg.basis_product(*k, a) {
                    phi[*t] += &(pk * v1);
                }
            }
            for (t, pt) in phi.iter().enumerate() {
                if pt.is_zero() {
                    continue;
                }
                let w = s * pt;
                for (u, v2) in g {
                    out[t * n + u] += &(&w * v2);
                }
            }
        }
    }

    fn basis_product(&self, x: usize, y: usize) -> Vector {
        let mut out = vec![FieldElement::zero(); self.dim()];
        self.add_basis_product(x, y, &FieldElement::one(), &mut out);
        out
    }

    pub fn mul(&self, u: &[FieldElement], v: &[FieldElement]) -> Vector {
        let mut out = vec![FieldElement::zero(); self.dim()];
        for (x, ux) in u.iter().enumerate() {
            if ux.is_zero() {
                continue;
            }
            for (y, vy) in v.iter().enumerate() {
                if vy.is_zero() {
                    continue;
                }
                self.add_basis_product(x, y, &(ux * vy), &mut out);
            }
        }
        out
    }

    /// [ε ⊗ 1].
    pub fn unit(&self) -> Vector {
        self.pure(self.h.counit(), self.h.unit())
    }

    /// Spanning set of J: φ⊗zh − (ε↼z)φ⊗h and φ⊗yh − (y⇀ε)φ⊗h.
    pub fn j_generators(&self) -> Vec<Vector> {
        let h = self.h;
        let n = self.n();
        let mut gens = Vec::new();
        let eps_left = |z: &Vector| -> Vector { (0..n).map(|x| h.counit_of(&h.mul(z, &h.basis(x)))).collect() };
        let eps_right = |y: &Vector| -> Vector { (0..n).map(|x| h.counit_of(&h.mul(&h.basis(x), y))).collect() };
        let cd = h.counital_data();
        let mut rel = |w: &Vector, functional: Vector| {
            for a in 0..n {
                let xi = unit_vector(n, a);
                let phi = self.dual.mul(&functional, &xi);
                for b in 0..n {
                    let f = h.basis(b);
                    let lhs = self.pure(&xi, &h.mul(w, &f));
                    let rhs = self.pure(&phi, &f);
                    let g = crate::linalg::vec_sub(&lhs, &rhs);
                    if !vec_is_zero(&g) {
                        gens.push(g);
                    }
                }
            }
        };
        for z in &cd.ht_basis {
            rel(z, eps_left(z));
        }
        for y in &cd.hs_basis {
            rel(y, eps_right(y));
        }
        gens
    }

    /// Δ on the pre-double as an order-2 tensor over pre-double indices.
    pub fn coproduct_basis(&self, x: usize) -> Vec<(usize, usize, FieldElement)> {
        let n = self.n();
        let (a, b) = (x / n, x % n);
        let dphi = self.dual.coproduct(&unit_vector(n, a));
        let dh = self.h.coproduct(&self.h.basis(b));
        let mut out = Vec::new();
        for (i, c1) in dphi.iter() {
            for (j, c2) in dh.iter() {
                out.push((i[0] * n + j[0], i[1] * n + j[1], c1 * c2));
            }
        }
        out
    }

    /// ε[φ⊗h] = ⟨ε_t(h), φ⟩.
    pub fn counit_basis(&self, x: usize) -> FieldElement {
        let n = self.n();
        self.h.eps_t(&self.h.basis(x % n))[x / n].clone()
    }

    /// S[φ⊗h] = [Ŝ⁻¹(φ₂) ⊗ S(h₂)] ⟨h₁, φ₁⟩⟨S(h₃), φ₃⟩.
    pub fn antipode_basis(&self, x: usize) -> Vector {
        let h = self.h;
        let n = self.n();
        let (a, b) = (x / n, x % n);
        let s_hat_inv = self.s_inv.transpose();
        let alg = h.algebra();
        let right_s: Vec<Matrix> = (0..n).map(|r| alg.right_matrix(&h.antipode(&h.basis(r)))).collect();
        let mut by_q: Vec<Vector> = vec![vec![FieldElement::zero(); n]; n];
        for (p, q, r, coef) in &self.d2[b] {
            // y ↦ φ(f_p y S(f_r)), φ = ξ^a
            let left_row: Vector = (0..n)
                .map(|k| {
                    alg.basis_product(*p, k)
                        .iter()
                        .find(|(i, _)| *i == a)
                        .map_or_else(FieldElement::zero, |(_, v)| v.clone())
                })
                .collect();
            for (k, lk) in left_row.iter().enumerate() {
                if lk.is_zero() {
                    continue;
                }
                let w = coef * lk;
                for (y, ry) in right_s[*r].row(k).iter().enumerate() {
                    if !ry.is_zero() {
                        by_q[*q][y] += &(&w * ry);
                    }
                }
            }
        }
        let mut out = vec![FieldElement::zero(); n * n];
        for (q, phi) in by_q.iter().enumerate() {
            if vec_is_zero(phi) {
                continue;
            }
            let t = self.pure(&s_hat_inv.apply(phi), &h.antipode(&h.basis(q)));
            crate::linalg::axpy(&mut out, &FieldElement::one(), &t);
        }
        out
    }
}

/// Build D(H), validate it, and attach the canonical R-matrix.
pub fn drinfeld_double(h: &QuantumGroupoid) -> Result<DoubleData, DoubleError> {
    let pre = PreDouble::new(h)?;
    let n = h.dim();
    let big = n * n;
    let mut span = Span::new(big);
    for g in pre.j_generators() {
        span.insert(&g);
    }
    let j_basis = span.basis();
    let pivots = span.pivots();
    let free: Vec<usize> = (0..big).filter(|k| !pivots.contains(k)).collect();
    let m = free.len();
    let section = Matrix::from_fn(big, m, |r, c| if r == free[c] { FieldElement::one() } else { FieldElement::zero() });
    let proj_cols: Vec<Vector> = (0..big)
        .map(|k| {
            let red = span.reduce(&unit_vector(big, k));
            free.iter().map(|&f| red[f].clone()).collect()
        })
        .collect();
    let projection = Matrix::from_columns(m, &proj_cols);
    let project = |v: &[FieldElement]| projection.apply(v);

    let unit = project(&pre.unit());
    let alg = Algebra::from_fn(h.conductor(), m, unit, |i, j| project(&pre.basis_product(free[i], free[j])));
    let sparse_cols: Vec<Sparse> = proj_cols.iter().map(|c| to_sparse(c)).collect();
    let comul: CoproductTable = free
        .iter()
        .map(|&x| {
            let mut t = Tensor::zero(m, 2);
            for (p, q, c) in pre.coproduct_basis(x) {
                for (i, a) in &sparse_cols[p] {
                    let ca = &c * a;
                    for (j, b) in &sparse_cols[q] {
                        t.add_at(&[*i, *j], &(&ca * b));
                    }
                }
            }
            t.iter().map(|(i, v)| (i[0], i[1], v.clone())).collect()
        })
        .collect();
    let counit: Vector = free.iter().map(|&x| pre.counit_basis(x)).collect();
    let s_cols: Vec<Vector> = free.iter().map(|&x| project(&pre.antipode_basis(x))).collect();
    let antipode = Matrix::from_columns(m, &s_cols);
    let labels = free
        .iter()
        .map(|&x| format!("[{}|{}]", pre.dual().labels()[x / n], h.labels()[x % n]))
        .collect();
    let mut d = QuantumGroupoid::new(h.conductor(), labels, alg, comul, counit, antipode)?;

    let mut checks = d.validate_axioms();
    // J is a two-sided ideal; past 144 pre-double dimensions only against ξ^a⊗1 and ε⊗f_b
    let probes: Vec<Vector> = if big <= 144 {
        (0..big).map(|k| unit_vector(big, k)).collect()
    } else {
        (0..n)
            .map(|a| pre.pure(&unit_vector(n, a), h.unit()))
            .chain((0..n).map(|b| pre.pure(h.counit(), &h.basis(b))))
            .collect()
    };
    // J = ker π
    let in_j = |v: &[FieldElement]| {
        let mut acc = vec![FieldElement::zero(); m];
        for (k, c) in v.iter().enumerate() {
            if !c.is_zero() {
                crate::linalg::axpy(&mut acc, c, &proj_cols[k]);
            }
        }
        vec_is_zero(&acc)
    };
    let ideal = j_basis.iter().enumerate().find_map(|(i, j)| {
        probes
            .iter()
            .position(|e| !in_j(&pre.mul(j, e)) || !in_j(&pre.mul(e, j)))
            .map(|k| vec![i, k])
    });
    checks.push("j_ideal", ideal);

    // canonical R and R̄
    let one = h.unit();
    let eps = h.counit();
    let s_hat_inv = pre.s_inv.transpose();
    let mut r = Tensor::zero(m, 2);
    let mut rbar = Tensor::zero(m, 2);
    for i in 0..n {
        let xi = unit_vector(n, i);
        let right = project(&pre.pure(eps, &h.basis(i)));
        let left = project(&pre.pure(&xi, one));
        let left_bar = project(&pre.pure(&s_hat_inv.apply(&xi), one));
        r = r.add(&Tensor::pure(&[&left, &right]));
        rbar = rbar.add(&Tensor::pure(&[&left_bar, &right]));
    }
    d.r_matrix = Some(r.clone());

    // D_t = [ε⊗H_t], D_s = [Ĥ_s⊗1]
    let dt: Vec<Vector> = h.ht_basis().iter().map(|z| project(&pre.pure(eps, z))).collect();
    let ds: Vec<Vector> = pre.dual().hs_basis().iter().map(|y| project(&pre.pure(y, one))).collect();
    let d_ht = d.ht_basis();
    let d_hs = d.hs_basis();
    let same = |a: &[Vector], b: &[Vector]| {
        let a = span_basis(m, a);
        a.len() == b.len() && intersection_dim(m, &a, b) == b.len()
    };
    checks.push("target_subalgebra", (!same(&dt, &d_ht)).then(Vec::new));
    checks.push("source_subalgebra", (!same(&ds, &d_hs)).then(Vec::new));
    // ε_t[φ⊗h] = ⟨1₁ε_t(h), φ⟩[ε⊗1₂]
    let d1 = h.delta_one();
    checks.push(
        "target_map_closed_form",
        (0..m)
            .find(|&j| {
                let (a, b) = (free[j] / n, free[j] % n);
                let et = h.eps_t(&h.basis(b));
                let mut expected = vec![FieldElement::zero(); m];
                for (idx, c) in d1.iter() {
                    let coef = &h.mul(&h.basis(idx[0]), &et)[a] * c;
                    if !coef.is_zero() {
                        crate::linalg::axpy(&mut expected, &coef, &project(&pre.pure(eps, &h.basis(idx[1]))));
                    }
                }
                d.eps_t(&d.basis(j)) != expected
            })
            .map(|j| vec![j]),
    );
    if !checks.all_passed() {
        return Err(DoubleError::Inconsistent(checks));
    }
    if h.star.is_some() {
        d.star = Some(transfer_star(&d, h, &projection, &free));
    }
    Ok(DoubleData {
        d,
        j_basis,
        projection,
        section,
        r: RMatrixData { r, rbar },
        checks,
    })
}

/// The dual double: functionals on the pre-double vanishing on J, in the basis dual to D(H),
/// written as elements Σ h_k ⊗ φ_k of H ⊗ Ĥ^op (index a·n + b for f_a ⊗ ξ^b).
#[derive(Debug, Clone)]
pub struct DualDouble {
    pub dd: QuantumGroupoid,
    /// Row i is basis element i of the dual double inside H ⊗ Ĥ^op.
    pub elements: Matrix,
    pub checks: AxiomReport,
}

pub fn double_dual(h: &QuantumGroupoid) -> Result<DualDouble, DoubleError> {
    let data = drinfeld_double(h)?;
    dual_of(h, &data)
}

pub fn dual_of(h: &QuantumGroupoid, data: &DoubleData) -> Result<DualDouble, DoubleError> {
    let n = h.dim();
    let big = n * n;
    let dd = data.d.dual();
    let elements = data.projection.clone();
    let m = elements.rows();
    let rows: Vec<Vector> = (0..m).map(|i| elements.row(i).to_vec()).collect();
    let dual_h = h.dual();
    let mut checks = AxiomReport::default();
    // annihilates J and pairs nondegenerately with D(H)
    let annihilates = rows
        .iter()
        .all(|r| data.j_basis.iter().all(|j| crate::linalg::dot(r, j).is_zero()));
    checks.push("annihilates_j", (!annihilates).then(Vec::new));
    let pairing = Matrix::from_fn(m, m, |i, j| crate::linalg::dot(&rows[i], &data.section.column(j)));
    checks.push("nondegenerate_pairing", (pairing != Matrix::identity(m)).then(Vec::new));

    // componentwise product in H ⊗ Ĥ^op
    let times = |x: &[FieldElement], y: &[FieldElement]| -> Vector {
        let mut out = vec![FieldElement::zero(); big];
        for (k, xk) in x.iter().enumerate() {
            if xk.is_zero() {
                continue;
            }
            for (l, yl) in y.iter().enumerate() {
                if yl.is_zero() {
                    continue;
                }
                let hk = h.mul(&h.basis(k / n), &h.basis(l / n));
                let phi = dual_h.mul(&dual_h.basis(l % n), &dual_h.basis(k % n));
                for (a, ha) in hk.iter().enumerate() {
                    if ha.is_zero() {
                        continue;
                    }
                    for (b, pb) in phi.iter().enumerate() {
                        if !pb.is_zero() {
                            out[a * n + b] += &(&(xk * yl) * &(ha * pb));
                        }
                    }
                }
            }
        }
        out
    };
    let embed = |c: &[FieldElement]| -> Vector {
        let mut out = vec![FieldElement::zero(); big];
        for (i, ci) in c.iter().enumerate() {
            if !ci.is_zero() {
                crate::linalg::axpy(&mut out, ci, &rows[i]);
            }
        }
        out
    };
    let product_ok = (0..m * m).find(|&k| {
        let (i, j) = (k / m, k % m);
        times(&rows[i], &rows[j]) != embed(&dd.mul(&dd.basis(i), &dd.basis(j)))
    });
    checks.push("displayed_product", product_ok.map(|k| vec![k / m, k % m]));
    // unit 1₂ ⊗ (ε↼1₁)
    let mut unit = vec![FieldElement::zero(); big];
    for (idx, c) in h.delta_one().iter() {
        let eps_left: Vector = (0..n).map(|x| h.counit_of(&h.mul(&h.basis(idx[0]), &h.basis(x)))).collect();
        for (b, e) in eps_left.iter().enumerate() {
            if !e.is_zero() {
                unit[idx[1] * n + b] += &(c * e);
            }
        }
    }
    checks.push("displayed_unit", (unit != embed(dd.unit())).then(Vec::new));
    // ε(Σ h_k ⊗ φ_k) = Σ ε(h_k) φ_k(1)
    let counit_ok = (0..m).find(|&i| {
        let v: FieldElement = (0..big)
            .map(|k| &(&rows[i][k] * &h.counit()[k / n]) * &h.unit()[k % n])
            .sum();
        v != dd.counit()[i]
    });
    checks.push("displayed_counit", counit_ok.map(|i| vec![i]));
    if !checks.all_passed() {
        return Err(DoubleError::Inconsistent(checks));
    }
    Ok(DualDouble { dd, elements, checks })
}

/// Star on D(H): the dual double carries (h⊗φ)* = h*⊗φ*, and D(H) gets the dual star of that.
fn transfer_star(d: &QuantumGroupoid, h: &QuantumGroupoid, projection: &Matrix, free: &[usize]) -> Matrix {
    let n = h.dim();
    let m = free.len();
    let star_h: Vec<Vector> = (0..n).map(|p| h.star_of(&h.basis(p)).expect("star")).collect();
    // ⟨(ξ^q)*, f_b⟩ = conj⟨ξ^q, S(f_b)*⟩
    let s_star: Vec<Vector> = (0..n)
        .map(|b| h.star_of(&h.antipode(&h.basis(b))).expect("star"))
        .collect();
    let star_rows: Vec<Vector> = (0..m)
        .map(|i| {
            let r = projection.row(i);
            free.iter()
                .map(|&x| {
                    let (a, b) = (x / n, x % n);
                    let mut v = FieldElement::zero();
                    for (k, rk) in r.iter().enumerate() {
                        if rk.is_zero() {
                            continue;
                        }
                        let (p, q) = (k / n, k % n);
                        v += &(&(&rk.conj() * &star_h[p][a]) * &s_star[b][q].conj());
                    }
                    v
                })
                .collect()
        })
        .collect();
    let hat_star = Matrix::from_fn(m, m, |j, i| star_rows[i][j].clone());
    let mut d_hat = d.dual();
    d_hat.star = Some(hat_star);
    d_hat.dual().star.expect("dual star")
}

/// Central primitive idempotents of a counital subalgebra with their block dimensions.
fn counital_blocks(h: &QuantumGroupoid, basis: &[Vector]) -> Option<Vec<(Vector, usize)>> {
    let (sub, coords) = h.algebra().subalgebra(basis)?;
    let w = wedderburn(&sub).ok()?;
    Some(w.idempotents.iter().zip(&w.dims).map(|(e, d)| (coords.embed(e), *d)).collect())
}

fn block_permutations(a: &[usize], b: &[usize]) -> Vec<Vec<usize>> {
    fn go(a: &[usize], b: &[usize], used: &mut Vec<bool>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == a.len() {
            out.push(cur.clone());
            return;
        }
        for j in 0..b.len() {
            if !used[j] && b[j] == a[cur.len()] {
                used[j] = true;
                cur.push(j);
                go(a, b, used, cur, out);
                cur.pop();
                used[j] = false;
            }
        }
    }
    let mut out = Vec::new();
    if a.len() == b.len() {
        go(a, b, &mut vec![false; b.len()], &mut Vec::new(), &mut out);
    }
    out
}

/// Rows expressing g·x − y·g = 0 in the k² entries of g.
fn intertwining_rows(x: &Matrix, y: &Matrix, rows: &mut Vec<Vector>) {
    let k = x.rows();
    for i in 0..k {
        for j in 0..k {
            let mut r = vec![FieldElement::zero(); k * k];
            for s in 0..k {
                r[i * k + s] += &x.row(s)[j];
                r[s * k + j] -= &y.row(i)[s];
            }
            rows.push(r);
        }
    }
}

/// A quantum-groupoid isomorphism a → b when both algebras are simple. Every algebra isomorphism
/// is then conjugation by some g between the irreducible representations; g is constrained linearly
/// by the counits and by each matching of the central idempotents of the counital subalgebras, and
/// small integer combinations of the solution space are tried against the full structure.
pub fn simple_isomorphism(a: &QuantumGroupoid, b: &QuantumGroupoid) -> Option<Matrix> {
    let n = a.dim();
    if b.dim() != n {
        return None;
    }
    let wa = wedderburn(a.algebra()).ok()?;
    let wb = wedderburn(b.algebra()).ok()?;
    if wa.len() != 1 || wb.len() != 1 {
        return None;
    }
    let k = wa.dims[0];
    let vec_of = |m: &Matrix| m.entries().to_vec();
    let rb = Matrix::from_columns(k * k, &(0..n).map(|j| vec_of(&wb.irreps[0][j])).collect::<Vec<_>>());
    let rb_inv = rb.inverse().ok()?;
    let ra = Matrix::from_columns(k * k, &(0..n).map(|j| vec_of(&wa.irreps[0][j])).collect::<Vec<_>>());
    // ε(x) = Tr(Q ρ(x)); Tr(QX) = Σ Q_sr X_rs, so vec(Qᵀ) pairs with vec(X)
    let trace_form = |r: &Matrix, eps: &Vector| -> Option<Matrix> {
        let qt = r.transpose().solve_vector(eps).ok()?;
        Some(Matrix::from_rows((0..k).map(|i| qt[i * k..(i + 1) * k].to_vec()).collect()).transpose())
    };
    let qa = trace_form(&ra, a.counit())?;
    let qb = trace_form(&rb, b.counit())?;
    let ta = counital_blocks(a, &a.ht_basis())?;
    let tb = counital_blocks(b, &b.ht_basis())?;
    let sa = counital_blocks(a, &a.hs_basis())?;
    let sb = counital_blocks(b, &b.hs_basis())?;
    let dims = |v: &[(Vector, usize)]| v.iter().map(|(_, d)| *d).collect::<Vec<_>>();
    for pt in block_permutations(&dims(&ta), &dims(&tb)) {
        for ps in block_permutations(&dims(&sa), &dims(&sb)) {
            let mut rows = Vec::new();
            intertwining_rows(&qa, &qb, &mut rows);
            for (i, j) in pt.iter().enumerate() {
                intertwining_rows(&wa.action(0, &ta[i].0), &wb.action(0, &tb[*j].0), &mut rows);
            }
            for (i, j) in ps.iter().enumerate() {
                intertwining_rows(&wa.action(0, &sa[i].0), &wb.action(0, &sb[*j].0), &mut rows);
            }
            let kernel = Matrix::from_rows(rows).kernel();
            if kernel.is_empty() || kernel.len() > 4 {
                continue;
            }
            let coeffs = [1i64, -1, 2, -2, 0];
            let total = coeffs.len().pow(kernel.len() as u32);
            for mut idx in 0..total {
                let mut g = vec![FieldElement::zero(); k * k];
                for v in &kernel {
                    let c = FieldElement::from_integer(coeffs[idx % coeffs.len()]);
                    idx /= coeffs.len();
                    crate::linalg::axpy(&mut g, &c, v);
                }
                let g = Matrix::from_rows((0..k).map(|i| g[i * k..(i + 1) * k].to_vec()).collect());
                let Ok(g_inv) = g.inverse() else { continue };
                let cols: Vec<Vector> = (0..n)
                    .map(|j| rb_inv.apply(&vec_of(&g.mul(&wa.irreps[0][j]).mul(&g_inv))))
                    .collect();
                let f = Matrix::from_columns(n, &cols);
                if a.is_morphism_to(&f, b) {
                    return Some(f);
                }
            }
        }
    }
    None
}

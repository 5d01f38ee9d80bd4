//! Finite-dimensional left modules, truncated tensor products, the unit object and duals.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use thiserror::Error;

use crate::algebra::SubspaceCoords;
use crate::field::FieldElement;
use crate::linalg::{unit_vector, Matrix, Span, Vector};
use crate::tensor::Tensor;
use crate::wedderburn::{wedderburn, WedderburnError};
use crate::wha::{column_space, QuantumGroupoid};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("modules belong to different quantum groupoids")]
    ParentMismatch,
    #[error("invalid module: {0}")]
    InvalidAction(String),
    #[error("algebra is not semisimple")]
    NotSemisimple,
    #[error("algebra does not split over the base field: {0}")]
    NotSplit(String),
}

impl From<WedderburnError> for RepError {
    fn from(e: WedderburnError) -> Self {
        match e {
            WedderburnError::NotSemisimple { .. } => RepError::NotSemisimple,
            other @ WedderburnError::NotSplit { .. } => RepError::NotSplit(other.to_string()),
        }
    }
}

fn fingerprint(h: &QuantumGroupoid) -> u64 {
    let mut s = DefaultHasher::new();
    h.dim().hash(&mut s);
    h.labels().hash(&mut s);
    for c in h.counit() {
        c.to_string().hash(&mut s);
    }
    s.finish()
}

/// A left H-module given by the matrices of the basis elements of H.
#[derive(Debug, Clone, PartialEq)]
pub struct HModule {
    pub label: String,
    pub rank: usize,
    /// `action[a]` is the matrix of e_a.
    pub action: Vec<Matrix>,
    parent: u64,
}

impl HModule {
    /// Checks ρ(1) = id and ρ(e_a e_b) = ρ(e_a)ρ(e_b).
    pub fn new(h: &QuantumGroupoid, label: impl Into<String>, action: Vec<Matrix>) -> Result<Self, RepError> {
        let m = Self::unchecked(h, label, action)?;
        if m.act(h.unit()) != Matrix::identity(m.rank) {
            return Err(RepError::InvalidAction("unit does not act as identity".into()));
        }
        for a in 0..h.dim() {
            for b in 0..h.dim() {
                let ab = h.mul(&h.basis(a), &h.basis(b));
                if m.act(&ab) != m.action[a].mul(&m.action[b]) {
                    return Err(RepError::InvalidAction(format!("not multiplicative on ({a}, {b})")));
                }
            }
        }
        Ok(m)
    }

    fn unchecked(h: &QuantumGroupoid, label: impl Into<String>, action: Vec<Matrix>) -> Result<Self, RepError> {
        if action.len() != h.dim() {
            return Err(RepError::InvalidAction(format!(
                "{} matrices for an algebra of dimension {}",
                action.len(),
                h.dim()
            )));
        }
        let rank = action.first().map(|m| m.rows()).unwrap_or(0);
        if action.iter().any(|m| m.rows() != rank || m.cols() != rank) {
            return Err(RepError::InvalidAction("action matrices must be square of equal size".into()));
        }
        Ok(HModule {
            label: label.into(),
            rank,
            action,
            parent: fingerprint(h),
        })
    }

    /// Left regular module.
    pub fn regular(h: &QuantumGroupoid) -> Self {
        let action = (0..h.dim()).map(|a| h.algebra().left_matrix(&h.basis(a))).collect();
        Self::unchecked(h, "regular", action).expect("regular module")
    }

    /// Matrix of an arbitrary element.
    pub fn act(&self, x: &[FieldElement]) -> Matrix {
        let mut m = Matrix::zeros(self.rank, self.rank);
        for (a, c) in x.iter().enumerate() {
            if !c.is_zero() {
                m = m.add(&self.action[a].scale(c));
            }
        }
        m
    }

    pub fn belongs_to(&self, h: &QuantumGroupoid) -> bool {
        self.parent == fingerprint(h)
    }

    pub fn character(&self) -> Vector {
        self.action.iter().map(|m| m.trace()).collect()
    }
}

fn same_parent(ms: &[&HModule]) -> Result<(), RepError> {
    if ms.windows(2).any(|w| w[0].parent != w[1].parent) {
        Err(RepError::ParentMismatch)
    } else {
        Ok(())
    }
}

/// Action of an order-k tensor on V_1 ⊗_k … ⊗_k V_k (no truncation).
pub fn ambient_action(mods: &[&HModule], t: &Tensor) -> Matrix {
    let dim: usize = mods.iter().map(|m| m.rank).product();
    let mut out = Matrix::zeros(dim, dim);
    for (idx, c) in t.iter() {
        let mut k = mods[0].action[idx[0]].clone();
        for (m, &i) in mods.iter().zip(&idx).skip(1) {
            k = k.kron(&m.action[i]);
        }
        out = out.add(&k.scale(c));
    }
    out
}

/// Ambient actions of all basis elements on V_1 ⊗_k … ⊗_k V_k through Δ^{(k-1)}, built from the right.
pub fn ambient_actions(h: &QuantumGroupoid, mods: &[&HModule]) -> Vec<Matrix> {
    let n = h.dim();
    let (first, rest) = mods.split_first().expect("at least one factor");
    if rest.is_empty() {
        return first.action.clone();
    }
    let tail = ambient_actions(h, rest);
    let dim = first.rank * tail[0].rows();
    (0..n)
        .map(|c| {
            let mut out = Matrix::zeros(dim, dim);
            for (idx, v) in h.coproduct(&h.basis(c)).iter() {
                out = out.add(&first.action[idx[0]].kron(&tail[idx[1]]).scale(v));
            }
            out
        })
        .collect()
}

/// Action of x on the ambient product, given [`ambient_actions`].
pub fn act_with(actions: &[Matrix], x: &[FieldElement]) -> Matrix {
    let mut out = Matrix::zeros(actions[0].rows(), actions[0].cols());
    for (a, c) in actions.iter().zip(x) {
        if !c.is_zero() {
            out = out.add(&a.scale(c));
        }
    }
    out
}

/// Δ^{(k-1)}(x) as an order-k tensor.
pub fn iterated_coproduct(h: &QuantumGroupoid, x: &[FieldElement], k: usize) -> Tensor {
    let mut t = Tensor::from_vector(x);
    for pos in 0..k.saturating_sub(1) {
        t = h.delta_factor(&t, pos);
    }
    t
}

/// Permutation matrix V⊗W → W⊗V.
pub fn flip_matrix(rv: usize, rw: usize) -> Matrix {
    let mut m = Matrix::zeros(rv * rw, rv * rw);
    for i in 0..rv {
        for j in 0..rw {
            m[(j * rv + i, i * rw + j)] = FieldElement::one();
        }
    }
    m
}

/// A truncated tensor product Δ^{(k-1)}(1)·(V_1 ⊗_k … ⊗_k V_k).
#[derive(Debug, Clone)]
pub struct TensorModule {
    pub module: HModule,
    pub factor_ranks: Vec<usize>,
    /// Ambient × rank; columns are the chosen basis.
    pub embed: Matrix,
    /// Rank × ambient; coordinates of the projection Δ(1)·x.
    pub project: Matrix,
}

impl TensorModule {
    pub fn ambient_dim(&self) -> usize {
        self.embed.rows()
    }

    /// Restrict an ambient operator preserving the subspace.
    pub fn restrict(&self, amb: &Matrix) -> Matrix {
        self.project.mul(amb).mul(&self.embed)
    }
}

/// Image of an idempotent as a reduced echelon basis, with the matching projection.
fn image_of_idempotent(p: &Matrix) -> (Matrix, Matrix) {
    let amb = p.rows();
    let mut span = Span::new(amb);
    for j in 0..p.cols() {
        span.insert(&p.column(j));
    }
    let basis = span.basis();
    let pivots = span.pivots();
    let embed = Matrix::from_columns(amb, &basis);
    let sel = Matrix::from_fn(pivots.len(), amb, |r, c| {
        if pivots[r] == c {
            FieldElement::one()
        } else {
            FieldElement::zero()
        }
    });
    (embed, sel.mul(p))
}

fn tensor_pair(h: &QuantumGroupoid, v: &HModule, w: &HModule) -> Result<TensorModule, RepError> {
    let acts = ambient_actions(h, &[v, w]);
    let p = act_with(&acts, h.unit());
    let (embed, project) = image_of_idempotent(&p);
    let action = acts.iter().map(|amb| project.mul(amb).mul(&embed)).collect();
    Ok(TensorModule {
        module: HModule::unchecked(h, format!("{}⊗{}", v.label, w.label), action)?,
        factor_ranks: vec![v.rank, w.rank],
        embed,
        project,
    })
}

/// V_1 ⊗ … ⊗ V_k with the diagonal action through Δ^{(k-1)}, truncated one factor at a time.
pub fn tensor_many(h: &QuantumGroupoid, mods: &[&HModule]) -> Result<TensorModule, RepError> {
    same_parent(mods)?;
    if mods.iter().any(|m| !m.belongs_to(h)) {
        return Err(RepError::ParentMismatch);
    }
    let (first, rest) = mods
        .split_first()
        .ok_or_else(|| RepError::InvalidAction("empty tensor product".into()))?;
    let id = Matrix::identity(first.rank);
    let mut acc = TensorModule {
        module: (*first).clone(),
        factor_ranks: vec![first.rank],
        embed: id.clone(),
        project: id,
    };
    if let Some((second, _)) = rest.split_first() {
        acc = tensor_pair(h, first, second)?;
    }
    for m in rest.iter().skip(1) {
        // Δ^{(k)}(1) = (Δ^{(k-1)}⊗id)Δ(1) only sees the truncated left part
        let next = tensor_pair(h, &acc.module, m)?;
        let im = Matrix::identity(m.rank);
        acc.embed = acc.embed.kron(&im).mul(&next.embed);
        acc.project = next.project.mul(&acc.project.kron(&im));
        acc.module = next.module;
        acc.factor_ranks.push(m.rank);
    }
    Ok(acc)
}

pub fn tensor_module(h: &QuantumGroupoid, v: &HModule, w: &HModule) -> Result<TensorModule, RepError> {
    tensor_many(h, &[v, w])
}

/// The unit object H_t with h·z = ε_t(hz), plus coordinates on H_t.
#[derive(Debug, Clone)]
pub struct UnitObject {
    pub module: HModule,
    pub coords: SubspaceCoords,
}

impl UnitObject {
    pub fn element(&self, c: &[FieldElement]) -> Vector {
        self.coords.embed(c)
    }

    pub fn coordinates(&self, z: &[FieldElement]) -> Vector {
        self.coords.coords(z).expect("element of H_t")
    }
}

pub fn unit_module(h: &QuantumGroupoid) -> UnitObject {
    let ht = h.ht_basis();
    let coords = SubspaceCoords::new(h.dim(), &ht);
    let k = ht.len();
    let action = (0..h.dim())
        .map(|a| {
            let cols: Vec<Vector> = ht
                .iter()
                .map(|z| coords.coords(&h.eps_t(&h.mul(&h.basis(a), z))).expect("ε_t lands in H_t"))
                .collect();
            Matrix::from_columns(k, &cols)
        })
        .collect();
    UnitObject {
        module: HModule::unchecked(h, "1", action).expect("unit module"),
        coords,
    }
}

/// z_j ⊗ v ↦ z_j·v on the ambient H_t ⊗_k V.
fn left_unitor_ambient(unit: &UnitObject, v: &HModule) -> Matrix {
    let k = unit.coords.dim();
    let r = v.rank;
    let mats: Vec<Matrix> = (0..k).map(|j| v.act(&unit.element(&unit_vector(k, j)))).collect();
    Matrix::from_fn(r, k * r, |row, col| mats[col / r][(row, col % r)].clone())
}

/// v ⊗ z_j ↦ S⁻¹(z_j)·v on the ambient V ⊗_k H_t.
fn right_unitor_ambient(h: &QuantumGroupoid, unit: &UnitObject, v: &HModule) -> Matrix {
    let s_inv = h.antipode_inverse().expect("invertible antipode");
    let k = unit.coords.dim();
    let r = v.rank;
    let mats: Vec<Matrix> = (0..k)
        .map(|j| v.act(&s_inv.apply(&unit.element(&unit_vector(k, j)))))
        .collect();
    Matrix::from_fn(r, r * k, |row, col| mats[col % k][(row, col / k)].clone())
}

/// The unitors l_V, r_V and their inverses in truncated coordinates.
#[derive(Debug, Clone)]
pub struct Unitors {
    pub unit_tensor_v: TensorModule,
    pub v_tensor_unit: TensorModule,
    pub l: Matrix,
    pub l_inv: Matrix,
    pub r: Matrix,
    pub r_inv: Matrix,
}

pub fn unitors(h: &QuantumGroupoid, unit: &UnitObject, v: &HModule) -> Result<Unitors, RepError> {
    let uv = tensor_module(h, &unit.module, v)?;
    let vu = tensor_module(h, v, &unit.module)?;
    let k = unit.coords.dim();
    let r = v.rank;
    let d1 = h.delta_one();
    // l⁻¹(v) = ε_t(1₁) ⊗ 1₂·v,  r⁻¹(v) = 1₁·v ⊗ ε_t(1₂)
    let mut l_inv_amb = Matrix::zeros(k * r, r);
    let mut r_inv_amb = Matrix::zeros(r * k, r);
    for (idx, c) in d1.iter() {
        let za = unit.coordinates(&h.eps_t(&h.basis(idx[0])));
        let zb = unit.coordinates(&h.eps_t(&h.basis(idx[1])));
        let za_col = Matrix::from_columns(k, &[za]);
        let zb_col = Matrix::from_columns(k, &[zb]);
        l_inv_amb = l_inv_amb.add(&za_col.kron(&v.action[idx[1]]).scale(c));
        r_inv_amb = r_inv_amb.add(&v.action[idx[0]].kron(&zb_col).scale(c));
    }
    Ok(Unitors {
        l: left_unitor_ambient(unit, v).mul(&uv.embed),
        l_inv: uv.project.mul(&l_inv_amb),
        r: right_unitor_ambient(h, unit, v).mul(&vu.embed),
        r_inv: vu.project.mul(&r_inv_amb),
        unit_tensor_v: uv,
        v_tensor_unit: vu,
    })
}

/// Checks id_V ⊗ l_W = r_V ⊗ id_W on the truncated V ⊗ H_t ⊗ W.
pub fn triangle_holds(h: &QuantumGroupoid, unit: &UnitObject, v: &HModule, w: &HModule) -> Result<bool, RepError> {
    let t = tensor_many(h, &[v, &unit.module, w])?;
    let lhs = Matrix::identity(v.rank).kron(&left_unitor_ambient(unit, w));
    let rhs = right_unitor_ambient(h, unit, v).kron(&Matrix::identity(w.rank));
    Ok(lhs.mul(&t.embed) == rhs.mul(&t.embed))
}

/// Dual module with (h·φ)(v) = φ(S(h)·v).
pub fn dual_module(h: &QuantumGroupoid, v: &HModule) -> HModule {
    let action = (0..h.dim())
        .map(|a| v.act(&h.antipode(&h.basis(a))).transpose())
        .collect();
    HModule::unchecked(h, format!("{}*", v.label), action).expect("dual module")
}

/// b_V : H_t → V⊗V* and d_V : V*⊗V → H_t, both as ambient and truncated matrices.
#[derive(Debug, Clone)]
pub struct DualityMorphisms {
    pub dual: HModule,
    pub v_tensor_dual: TensorModule,
    pub dual_tensor_v: TensorModule,
    /// Unit coordinates → ambient V⊗_k V*.
    pub b_ambient: Matrix,
    /// Ambient V*⊗_k V → unit coordinates.
    pub d_ambient: Matrix,
    /// Unit coordinates → truncated V⊗V*.
    pub b: Matrix,
    /// Truncated V*⊗V → unit coordinates.
    pub d: Matrix,
}

pub fn dual_module_with_duality(h: &QuantumGroupoid, unit: &UnitObject, v: &HModule) -> Result<DualityMorphisms, RepError> {
    let dual = dual_module(h, v);
    let vd = tensor_module(h, v, &dual)?;
    let dv = tensor_module(h, &dual, v)?;
    let r = v.rank;
    let k = unit.coords.dim();
    let canonical: Vector = (0..r * r)
        .map(|i| if i / r == i % r { FieldElement::one() } else { FieldElement::zero() })
        .collect();
    let b_cols: Vec<Vector> = (0..k)
        .map(|j| {
            let z = unit.element(&unit_vector(k, j));
            ambient_action(&[v, &dual], &h.coproduct(&z)).apply(&canonical)
        })
        .collect();
    let b_ambient = Matrix::from_columns(r * r, &b_cols);
    // d(ξ^i ⊗ f_j) = Σ ξ^i(1₁·f_j) ε_t(1₂)
    let mut d_ambient = Matrix::zeros(k, r * r);
    for (idx, c) in h.delta_one().iter() {
        let z = unit.coordinates(&h.eps_t(&h.basis(idx[1])));
        let rho = &v.action[idx[0]];
        for i in 0..r {
            for j in 0..r {
                let s = c * &rho[(i, j)];
                if s.is_zero() {
                    continue;
                }
                for (m, zm) in z.iter().enumerate() {
                    d_ambient[(m, i * r + j)] += &(&s * zm);
                }
            }
        }
    }
    Ok(DualityMorphisms {
        b: vd.project.mul(&b_ambient),
        d: d_ambient.mul(&dv.embed),
        dual,
        v_tensor_dual: vd,
        dual_tensor_v: dv,
        b_ambient,
        d_ambient,
    })
}

/// The two zig-zag composites, expected to be identities on V and V*.
pub fn zigzags(h: &QuantumGroupoid, unit: &UnitObject, v: &HModule, dm: &DualityMorphisms) -> (Matrix, Matrix) {
    let r = v.rank;
    let k = unit.coords.dim();
    let d1 = h.delta_one();
    let mut l_inv = Matrix::zeros(k * r, r);
    let mut r_inv_dual = Matrix::zeros(r * k, r);
    for (idx, c) in d1.iter() {
        let za = Matrix::from_columns(k, &[unit.coordinates(&h.eps_t(&h.basis(idx[0])))]);
        let zb = Matrix::from_columns(k, &[unit.coordinates(&h.eps_t(&h.basis(idx[1])))]);
        l_inv = l_inv.add(&za.kron(&v.action[idx[1]]).scale(c));
        r_inv_dual = r_inv_dual.add(&dm.dual.action[idx[0]].kron(&zb).scale(c));
    }
    let iv = Matrix::identity(r);
    // V → H_t⊗V → V⊗V*⊗V → V⊗H_t → V
    let first = right_unitor_ambient(h, unit, v)
        .mul(&iv.kron(&dm.d_ambient))
        .mul(&dm.b_ambient.kron(&iv))
        .mul(&l_inv);
    // V* → V*⊗H_t → V*⊗V⊗V* → H_t⊗V* → V*
    let second = left_unitor_ambient(unit, &dm.dual)
        .mul(&dm.d_ambient.kron(&iv))
        .mul(&iv.kron(&dm.b_ambient))
        .mul(&r_inv_dual);
    (first, second)
}

/// Basis of Hom_H(V, W) as rank(W) × rank(V) matrices.
pub fn hom_space(v: &HModule, w: &HModule) -> Result<Vec<Matrix>, RepError> {
    same_parent(&[v, w])?;
    let (rv, rw) = (v.rank, w.rank);
    let unknowns = rv * rw;
    if unknowns == 0 {
        return Ok(Vec::new());
    }
    // vec(ρ_W X − X ρ_V) = (ρ_W ⊗ I − I ⊗ ρ_Vᵀ) vec X, row-major
    let mut span = Span::new(unknowns);
    let mut rows: Vec<Vector> = Vec::new();
    for a in 0..v.action.len() {
        let m = w.action[a]
            .kron(&Matrix::identity(rv))
            .sub(&Matrix::identity(rw).kron(&v.action[a].transpose()));
        for r in 0..unknowns {
            let row = m.row(r).to_vec();
            if span.insert(&row) {
                rows.push(row);
            }
        }
        if span.rank() == unknowns {
            return Ok(Vec::new());
        }
    }
    let kernel = if rows.is_empty() {
        (0..unknowns).map(|i| unit_vector(unknowns, i)).collect()
    } else {
        Matrix::from_rows(rows).kernel()
    };
    Ok(kernel
        .into_iter()
        .map(|x| Matrix::from_fn(rw, rv, |i, j| x[i * rv + j].clone()))
        .collect())
}

/// An irreducible module together with its character on the basis of H.
#[derive(Debug, Clone)]
pub struct Irreducible {
    pub module: HModule,
    pub character: Vector,
    pub central_idempotent: Vector,
}

/// One irreducible per Wedderburn block, in the decomposition order.
pub fn irreducibles(h: &QuantumGroupoid) -> Result<Vec<Irreducible>, RepError> {
    let w = wedderburn(h.algebra())?;
    Ok((0..w.len())
        .map(|i| Irreducible {
            module: HModule::unchecked(h, format!("V{i}"), w.irreps[i].clone()).expect("irreducible"),
            character: w.characters[i].clone(),
            central_idempotent: w.idempotents[i].clone(),
        })
        .collect())
}

/// Multiplicity of each irreducible in V, via dim Hom(V_i, V).
pub fn decompose(irreps: &[Irreducible], v: &HModule) -> Result<Vec<usize>, RepError> {
    irreps.iter().map(|i| Ok(hom_space(&i.module, v)?.len())).collect()
}

/// Index of the irreducible isomorphic to V, if V is irreducible.
pub fn identify(irreps: &[Irreducible], v: &HModule) -> Result<Option<usize>, RepError> {
    let m = decompose(irreps, v)?;
    let nonzero: Vec<usize> = (0..m.len()).filter(|&i| m[i] > 0).collect();
    if nonzero.len() == 1 && m[nonzero[0]] == 1 && irreps[nonzero[0]].module.rank == v.rank {
        Ok(Some(nonzero[0]))
    } else {
        Ok(None)
    }
}

/// Columns of a subspace embedding, as an echelon basis, for subspace comparisons.
pub fn subspace(m: &Matrix) -> Vec<Vector> {
    column_space(m)
}

//! Generators for the standard families of quantum groupoids.

use std::collections::BTreeSet;

use num_complex::Complex64;
use thiserror::Error;

use crate::algebra::Algebra;
use crate::field::FieldElement;
use crate::linalg::{unit_vector, vec_is_zero, Matrix, Span, Vector};
use crate::tensor::Tensor;
use crate::wha::{CoproductTable, QuantumGroupoid, WhaError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExampleError {
    #[error("invalid groupoid: {0}")]
    InvalidGroupoid(String),
    #[error("bad partition: {0}")]
    BadPartition(String),
    #[error("q is not normalized: pi(q^-1) != 1")]
    QNotNormalized,
    #[error("q is not invertible")]
    QNotInvertible,
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("Temperley-Lieb construction is only available for n = 2, got n = {0}")]
    UnsupportedN(usize),
    #[error("unknown example `{0}`")]
    Unknown(String),
    #[error(transparent)]
    Wha(#[from] WhaError),
}

fn fe(k: i64) -> FieldElement {
    FieldElement::from_integer(k)
}

fn zeros(n: usize) -> Vector {
    vec![FieldElement::zero(); n]
}

// ---------------------------------------------------------------- groups

/// A finite group given by its multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    pub labels: Vec<String>,
    /// `mul[a][b]` = ab.
    pub mul: Vec<Vec<usize>>,
}

impl FiniteGroup {
    pub fn cyclic(m: usize) -> Self {
        let labels = (0..m)
            .map(|k| match k {
                0 => "1".to_string(),
                1 => "g".to_string(),
                _ => format!("g^{k}"),
            })
            .collect();
        let mul = (0..m).map(|a| (0..m).map(|b| (a + b) % m).collect()).collect();
        FiniteGroup { labels, mul }
    }

    /// Permutations of {0,1,2} in one-line notation; product is composition (ab)(i) = a(b(i)).
    pub fn symmetric3() -> Self {
        let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let labels = perms.iter().map(|p| format!("{}{}{}", p[0], p[1], p[2])).collect();
        let mul = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| {
                        let c = [a[b[0]], a[b[1]], a[b[2]]];
                        perms.iter().position(|p| *p == c).unwrap()
                    })
                    .collect()
            })
            .collect();
        FiniteGroup { labels, mul }
    }

    pub fn order(&self) -> usize {
        self.mul.len()
    }

    pub fn identity(&self) -> usize {
        (0..self.order())
            .find(|&e| (0..self.order()).all(|a| self.mul[e][a] == a && self.mul[a][e] == a))
            .expect("group has an identity")
    }

    pub fn inverse(&self, a: usize) -> usize {
        let e = self.identity();
        (0..self.order()).find(|&b| self.mul[a][b] == e).expect("group element has an inverse")
    }
}

// ---------------------------------------------------------------- groupoids

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    pub source: usize,
    pub target: usize,
    pub label: String,
}

/// A finite groupoid; `compose[g][h]` is g∘h (h first), defined when source(g) = target(h).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupoidSpec {
    pub objects: Vec<String>,
    pub morphisms: Vec<Morphism>,
    pub compose: Vec<Vec<Option<usize>>>,
    pub inverse: Vec<usize>,
}

impl GroupoidSpec {
    /// One-object groupoid of a group.
    pub fn from_group(g: &FiniteGroup) -> Self {
        let n = g.order();
        GroupoidSpec {
            objects: vec!["*".into()],
            morphisms: g
                .labels
                .iter()
                .map(|l| Morphism {
                    source: 0,
                    target: 0,
                    label: l.clone(),
                })
                .collect(),
            compose: (0..n).map(|a| (0..n).map(|b| Some(g.mul[a][b])).collect()).collect(),
            inverse: (0..n).map(|a| g.inverse(a)).collect(),
        }
    }

    pub fn cyclic(m: usize) -> Self {
        Self::from_group(&FiniteGroup::cyclic(m))
    }

    pub fn symmetric3() -> Self {
        Self::from_group(&FiniteGroup::symmetric3())
    }

    /// Pair groupoid: exactly one morphism between any two of k objects.
    pub fn pair(k: usize) -> Self {
        let idx = |t: usize, s: usize| t * k + s;
        let mut morphisms = Vec::new();
        for t in 0..k {
            for s in 0..k {
                morphisms.push(Morphism {
                    source: s,
                    target: t,
                    label: format!("{s}->{t}"),
                });
            }
        }
        let n = k * k;
        let compose = (0..n)
            .map(|g| {
                (0..n)
                    .map(|h| {
                        let (gt, gs) = (g / k, g % k);
                        let (ht, hs) = (h / k, h % k);
                        (gs == ht).then(|| idx(gt, hs))
                    })
                    .collect()
            })
            .collect();
        let inverse = (0..n).map(|g| idx(g % k, g / k)).collect();
        GroupoidSpec {
            objects: (0..k).map(|i| i.to_string()).collect(),
            morphisms,
            compose,
            inverse,
        }
    }

    pub fn disjoint_union(a: &GroupoidSpec, b: &GroupoidSpec) -> Self {
        let (na, oa) = (a.morphisms.len(), a.objects.len());
        let mut objects: Vec<String> = a.objects.iter().map(|o| format!("L{o}")).collect();
        objects.extend(b.objects.iter().map(|o| format!("R{o}")));
        let mut morphisms: Vec<Morphism> = a
            .morphisms
            .iter()
            .map(|m| Morphism {
                source: m.source,
                target: m.target,
                label: format!("L{}", m.label),
            })
            .collect();
        morphisms.extend(b.morphisms.iter().map(|m| Morphism {
            source: m.source + oa,
            target: m.target + oa,
            label: format!("R{}", m.label),
        }));
        let n = morphisms.len();
        let compose = (0..n)
            .map(|g| {
                (0..n)
                    .map(|h| match (g < na, h < na) {
                        (true, true) => a.compose[g][h],
                        (false, false) => b.compose[g - na][h - na].map(|c| c + na),
                        _ => None,
                    })
                    .collect()
            })
            .collect();
        let mut inverse = a.inverse.clone();
        inverse.extend(b.inverse.iter().map(|i| i + na));
        GroupoidSpec {
            objects,
            morphisms,
            compose,
            inverse,
        }
    }

    /// Identity morphism of object x.
    pub fn identity(&self, x: usize) -> Option<usize> {
        (0..self.morphisms.len()).find(|&i| {
            let m = &self.morphisms[i];
            m.source == x
                && m.target == x
                && (0..self.morphisms.len()).all(|g| {
                    let mg = &self.morphisms[g];
                    (mg.target != x || self.compose[i][g] == Some(g)) && (mg.source != x || self.compose[g][i] == Some(g))
                })
        })
    }

    /// Check the category and invertibility axioms.
    pub fn validate(&self) -> Result<(), ExampleError> {
        let n = self.morphisms.len();
        let bad = |m: String| Err(ExampleError::InvalidGroupoid(m));
        if self.compose.len() != n || self.compose.iter().any(|r| r.len() != n) || self.inverse.len() != n {
            return bad("composition table or inverse list has the wrong size".into());
        }
        for m in &self.morphisms {
            if m.source >= self.objects.len() || m.target >= self.objects.len() {
                return bad(format!("morphism {} has an unknown endpoint", m.label));
            }
        }
        for g in 0..n {
            for h in 0..n {
                let (mg, mh) = (&self.morphisms[g], &self.morphisms[h]);
                match self.compose[g][h] {
                    Some(c) if mg.source == mh.target => {
                        if c >= n || self.morphisms[c].source != mh.source || self.morphisms[c].target != mg.target {
                            return bad(format!("{} o {} has the wrong endpoints", mg.label, mh.label));
                        }
                    }
                    None if mg.source != mh.target => {}
                    _ => return bad(format!("{} o {} is defined inconsistently", mg.label, mh.label)),
                }
            }
        }
        for f in 0..n {
            for g in 0..n {
                for h in 0..n {
                    if let (Some(fg), Some(gh)) = (self.compose[f][g], self.compose[g][h]) {
                        if self.compose[fg][h] != self.compose[f][gh] {
                            return bad("composition is not associative".into());
                        }
                    }
                }
            }
        }
        for x in 0..self.objects.len() {
            if self.identity(x).is_none() {
                return bad(format!("object {} has no identity", self.objects[x]));
            }
        }
        for g in 0..n {
            let m = &self.morphisms[g];
            let i = self.inverse[g];
            if i >= n
                || self.compose[g][i] != self.identity(m.target)
                || self.compose[i][g] != self.identity(m.source)
            {
                return bad(format!("{} has no inverse", m.label));
            }
        }
        Ok(())
    }
}

/// The groupoid algebra kG (Δg = g⊗g, ε(g) = 1, S(g) = g⁻¹, g* = g⁻¹), or its dual
/// function algebra with basis p_g.
pub fn groupoid_algebra(g: &GroupoidSpec, dual: bool) -> Result<QuantumGroupoid, ExampleError> {
    g.validate()?;
    let n = g.morphisms.len();
    let mut unit = zeros(n);
    for x in 0..g.objects.len() {
        unit[g.identity(x).unwrap()] = FieldElement::one();
    }
    let alg = Algebra::from_fn(1, n, unit, |a, b| match g.compose[a][b] {
        Some(c) => unit_vector(n, c),
        None => zeros(n),
    });
    let comul: CoproductTable = (0..n).map(|a| vec![(a, a, FieldElement::one())]).collect();
    let counit = vec![FieldElement::one(); n];
    let inv = Matrix::from_fn(n, n, |r, c| if g.inverse[c] == r { fe(1) } else { fe(0) });
    let labels: Vec<String> = g.morphisms.iter().map(|m| m.label.clone()).collect();
    let mut h = QuantumGroupoid::new(1, labels.clone(), alg, comul, counit, inv.clone())?;
    h.star = Some(inv);
    if dual {
        let mut d = h.dual();
        d.set_labels(labels.iter().map(|l| format!("p_{l}")).collect());
        return Ok(d);
    }
    Ok(h)
}

// ---------------------------------------------------------------- multi-matrix algebras

/// B = ⊕_α M_{n_α} with basis E^α_ij ordered by block, then row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiMatrix {
    pub blocks: Vec<usize>,
    /// (α, i, j) for each basis index.
    pub units: Vec<(usize, usize, usize)>,
}

impl MultiMatrix {
    pub fn new(blocks: &[usize]) -> Self {
        let mut units = Vec::new();
        for (a, &na) in blocks.iter().enumerate() {
            for i in 0..na {
                for j in 0..na {
                    units.push((a, i, j));
                }
            }
        }
        MultiMatrix {
            blocks: blocks.to_vec(),
            units,
        }
    }

    pub fn dim(&self) -> usize {
        self.units.len()
    }

    pub fn index(&self, a: usize, i: usize, j: usize) -> usize {
        let offset: usize = self.blocks[..a].iter().map(|n| n * n).sum();
        offset + i * self.blocks[a] + j
    }

    /// Index of the transposed matrix unit.
    pub fn transpose_index(&self, k: usize) -> usize {
        let (a, i, j) = self.units[k];
        self.index(a, j, i)
    }

    pub fn block_size(&self, k: usize) -> usize {
        self.blocks[self.units[k].0]
    }

    pub fn algebra(&self, conductor: u32) -> Algebra {
        let m = self.dim();
        let mut unit = zeros(m);
        for (a, &na) in self.blocks.iter().enumerate() {
            for i in 0..na {
                unit[self.index(a, i, i)] = FieldElement::one();
            }
        }
        Algebra::from_fn(conductor, m, unit, |x, y| {
            let (a, i, j) = self.units[x];
            let (b, k, l) = self.units[y];
            if a == b && j == k {
                unit_vector(m, self.index(a, i, l))
            } else {
                zeros(m)
            }
        })
    }

    /// ω(x) = trace of left multiplication: ω(E^α_ij) = δ_ij n_α.
    pub fn omega(&self, x: &[FieldElement]) -> FieldElement {
        let mut s = FieldElement::zero();
        for (k, c) in x.iter().enumerate() {
            let (a, i, j) = self.units[k];
            if i == j && !c.is_zero() {
                s += &(c * &fe(self.blocks[a] as i64));
            }
        }
        s
    }

    /// π(x) = Σ (1/n_α) E^α_ij x E^α_ji.
    pub fn pi(&self, alg: &Algebra, x: &[FieldElement]) -> Vector {
        let m = self.dim();
        let mut out = zeros(m);
        for k in 0..m {
            let w = FieldElement::from_ratio(1, self.block_size(k) as i64);
            let p = alg.mul(&alg.mul(&unit_vector(m, k), x), &unit_vector(m, self.transpose_index(k)));
            crate::linalg::axpy(&mut out, &w, &p);
        }
        out
    }
}

/// Data for B^op⊗B: block sizes of B and the twisting element q (coordinates in B).
#[derive(Debug, Clone, PartialEq)]
pub struct SeparableAlgebraSpec {
    pub blocks: Vec<usize>,
    pub q: Vector,
    pub conductor: u32,
}

impl SeparableAlgebraSpec {
    /// q = 1.
    pub fn with_unit_q(blocks: &[usize]) -> Self {
        let b = MultiMatrix::new(blocks);
        SeparableAlgebraSpec {
            blocks: blocks.to_vec(),
            q: b.algebra(1).unit().clone(),
            conductor: 1,
        }
    }

    /// q diagonal in every block, entries listed block by block.
    pub fn diagonal_q(blocks: &[usize], diag: &[FieldElement]) -> Self {
        let b = MultiMatrix::new(blocks);
        let mut q = zeros(b.dim());
        let mut it = diag.iter();
        for (a, &na) in blocks.iter().enumerate() {
            for i in 0..na {
                q[b.index(a, i, i)] = it.next().expect("one diagonal entry per row").clone();
            }
        }
        let conductor = diag.iter().fold(1, |c, x| num_integer::lcm(c, x.conductor()));
        SeparableAlgebraSpec {
            blocks: blocks.to_vec(),
            q,
            conductor,
        }
    }
}

/// B^op⊗B together with the element g_q implementing S² = Ad(g_q).
#[derive(Debug, Clone)]
pub struct Bopb {
    pub groupoid: QuantumGroupoid,
    pub g_q: Vector,
}

/// B^op⊗B with Δ(b⊗c) = (b⊗e′q⁻¹)⊗(e″⊗c), ε(b⊗c) = ω(qbc), S(b⊗c) = q⁻¹cq⊗b.
pub fn bopb(spec: &SeparableAlgebraSpec) -> Result<Bopb, ExampleError> {
    if spec.blocks.is_empty() || spec.blocks.contains(&0) {
        return Err(ExampleError::BadPartition("blocks must be positive".into()));
    }
    let b = MultiMatrix::new(&spec.blocks);
    let m = b.dim();
    if spec.q.len() != m {
        return Err(ExampleError::BadPartition(format!("q must have {m} coordinates")));
    }
    let conductor = spec.q.iter().fold(spec.conductor, |c, x| num_integer::lcm(c, x.conductor()));
    let balg = b.algebra(conductor);
    let q = &spec.q;
    let qinv = balg
        .left_matrix(q)
        .solve_vector(balg.unit())
        .map_err(|_| ExampleError::QNotInvertible)?;
    if &balg.mul(q, &qinv) != balg.unit() {
        return Err(ExampleError::QNotInvertible);
    }
    // Δ is multiplicative exactly when π(q⁻¹) = 1.
    if &b.pi(&balg, &qinv) != balg.unit() {
        return Err(ExampleError::QNotNormalized);
    }
    let n = m * m;
    let idx = |x: usize, y: usize| x * m + y;
    let mut unit = zeros(n);
    for x in 0..m {
        for y in 0..m {
            unit[idx(x, y)] = &balg.unit()[x] * &balg.unit()[y];
        }
    }
    let alg = Algebra::from_fn(conductor, n, unit, |s, t| {
        let (b1, c1) = (s / m, s % m);
        let (b2, c2) = (t / m, t % m);
        let left = balg.basis_product(b2, b1);
        let right = balg.basis_product(c1, c2);
        let mut v = zeros(n);
        for (x, u) in left {
            for (y, w) in right {
                v[idx(*x, *y)] += &(u * w);
            }
        }
        v
    });
    // e' q⁻¹ for every matrix unit
    let eq: Vec<Vector> = (0..m).map(|k| balg.mul(&unit_vector(m, k), &qinv)).collect();
    let comul: CoproductTable = (0..n)
        .map(|s| {
            let (bx, cx) = (s / m, s % m);
            let mut terms = Vec::new();
            for k in 0..m {
                let w = FieldElement::from_ratio(1, b.block_size(k) as i64);
                let kt = b.transpose_index(k);
                for (y, c) in eq[k].iter().enumerate() {
                    if !c.is_zero() {
                        terms.push((idx(bx, y), idx(kt, cx), &w * c));
                    }
                }
            }
            terms
        })
        .collect();
    let counit: Vector = (0..n)
        .map(|s| {
            let (bx, cx) = (s / m, s % m);
            let p = balg.mul(&balg.mul(q, &unit_vector(m, bx)), &unit_vector(m, cx));
            b.omega(&p)
        })
        .collect();
    let antipode_cols: Vec<Vector> = (0..n)
        .map(|s| {
            let (bx, cx) = (s / m, s % m);
            let left = balg.mul(&balg.mul(&qinv, &unit_vector(m, cx)), q);
            let mut v = zeros(n);
            for (x, c) in left.iter().enumerate() {
                if !c.is_zero() {
                    v[idx(x, bx)] = c.clone();
                }
            }
            v
        })
        .collect();
    let antipode = Matrix::from_columns(n, &antipode_cols);
    let labels = (0..n).map(|s| format!("{}|{}", unit_label(&b, s / m), unit_label(&b, s % m))).collect();
    let mut h = QuantumGroupoid::new(conductor, labels, alg, comul, counit, antipode)?;
    let is_central = (0..m).all(|k| {
        let e = unit_vector(m, k);
        balg.mul(q, &e) == balg.mul(&e, q)
    });
    if is_central && q.iter().all(|c| c.conj() == *c) {
        // (b⊗c)* = b*⊗c* with (E_ij)* = E_ji
        h.star = Some(Matrix::from_fn(n, n, |r, c| {
            let (bx, cx) = (c / m, c % m);
            if r == idx(b.transpose_index(bx), b.transpose_index(cx)) {
                fe(1)
            } else {
                fe(0)
            }
        }));
    }
    // In B^op⊗B, (q⊗q⁻¹)(b⊗c)(q⁻¹⊗q) = q⁻¹bq ⊗ q⁻¹cq = S²(b⊗c).
    let mut g_q = zeros(n);
    for (x, u) in q.iter().enumerate() {
        for (y, w) in qinv.iter().enumerate() {
            if !u.is_zero() && !w.is_zero() {
                g_q[idx(x, y)] = u * w;
            }
        }
    }
    Ok(Bopb { groupoid: h, g_q })
}

fn unit_label(b: &MultiMatrix, k: usize) -> String {
    let (a, i, j) = b.units[k];
    if b.blocks.len() == 1 {
        format!("E{}{}", i + 1, j + 1)
    } else {
        format!("E{}{}.{}", i + 1, j + 1, a + 1)
    }
}

// ---------------------------------------------------------------- elementary

/// The quantum groupoid H ≅ M_n(k) with H_t ≅ ⊕_α M_{n_α}, n = Σ n_α², carrying its
/// R-matrix, ribbon element 1 and the star structure E[x,y]* = (n_{α(y)}/n_{α(x)}) E[y,x].
///
/// Basis: matrix units `E[a,b]` indexed by pairs of matrix units of ⊕_α M_{n_α}.
pub fn elementary(partition: &[usize]) -> Result<QuantumGroupoid, ExampleError> {
    if partition.is_empty() || partition.contains(&0) {
        return Err(ExampleError::BadPartition("parts must be positive".into()));
    }
    let b = MultiMatrix::new(partition);
    let m = b.dim();
    let base = bopb(&SeparableAlgebraSpec::with_unit_q(partition))?.groupoid.dual();
    let n = m * m;
    // F_{a,b} = n_{α(b)} ξ^{a, b^T} multiply as matrix units.
    let p = Matrix::from_fn(n, n, |r, c| {
        let (x, y) = (c / m, c % m);
        if r == x * m + b.transpose_index(y) {
            fe(b.block_size(y) as i64)
        } else {
            fe(0)
        }
    });
    let labels = (0..n).map(|c| format!("E[{},{}]", c / m, c % m)).collect();
    let mut h = base.bare().change_basis(&p, labels)?;
    let mut r = Tensor::zero(n, 2);
    // R = Σ (1/n_α) E^{ikα}_{jlα} ⊗ E^{klα}_{ijα}, with E^{klβ}_{ijα} = E[(jiα),(lkβ)]
    for (a, &na) in partition.iter().enumerate() {
        let w = FieldElement::from_ratio(1, na as i64);
        for i in 0..na {
            for j in 0..na {
                for k in 0..na {
                    for l in 0..na {
                        let first = b.index(a, l, j) * m + b.index(a, k, i);
                        let second = b.index(a, j, i) * m + b.index(a, l, k);
                        r.add_at(&[first, second], &w);
                    }
                }
            }
        }
    }
    h.r_matrix = Some(r);
    h.ribbon = Some(h.unit().clone());
    // the basis rescaling by n_{α(b)} makes plain transposition fail for unequal blocks
    h.star = Some(Matrix::from_fn(n, n, |row, c| {
        let (x, y) = (c / m, c % m);
        if row == y * m + x {
            FieldElement::from_ratio(b.block_size(y) as i64, b.block_size(x) as i64)
        } else {
            fe(0)
        }
    }));
    Ok(h)
}

// ---------------------------------------------------------------- transformation groupoids

/// B^op ⋊ kΓ ⋉ B for B = functions on a finite Γ-set X; `action[γ][x]` = γ·x.
///
/// Basis δ_x⊗γ⊗δ_y at index (x·|Γ| + γ)·|X| + y.
pub fn transformation_groupoid(group: &FiniteGroup, action: &[Vec<usize>]) -> Result<QuantumGroupoid, ExampleError> {
    let g = group.order();
    if action.len() != g {
        return Err(ExampleError::InvalidAction("one row per group element required".into()));
    }
    let nx = action.first().map_or(0, |r| r.len());
    if nx == 0 || action.iter().any(|r| r.len() != nx || r.iter().any(|&y| y >= nx)) {
        return Err(ExampleError::InvalidAction("rows must be maps X -> X".into()));
    }
    let e = group.identity();
    for x in 0..nx {
        if action[e][x] != x {
            return Err(ExampleError::InvalidAction("identity must act trivially".into()));
        }
        for a in 0..g {
            for c in 0..g {
                if action[group.mul[a][c]][x] != action[a][action[c][x]] {
                    return Err(ExampleError::InvalidAction("action is not compatible with the product".into()));
                }
            }
        }
    }
    let n = nx * g * nx;
    let idx = |x: usize, c: usize, y: usize| (x * g + c) * nx + y;
    let split = |s: usize| (s / (g * nx), (s / nx) % g, s % nx);
    let mut unit = zeros(n);
    for x in 0..nx {
        for y in 0..nx {
            unit[idx(x, e, y)] = FieldElement::one();
        }
    }
    let alg = Algebra::from_fn(1, n, unit, |s, t| {
        let (x, c, y) = split(s);
        let (x2, c2, y2) = split(t);
        let c2inv = group.inverse(c2);
        if x == action[c][x2] && y2 == action[c2inv][y] {
            unit_vector(n, idx(x, group.mul[c][c2], y2))
        } else {
            zeros(n)
        }
    });
    let comul: CoproductTable = (0..n)
        .map(|s| {
            let (x, c, y) = split(s);
            (0..nx)
                .map(|z| (idx(x, c, z), idx(action[c][z], c, y), FieldElement::one()))
                .collect()
        })
        .collect();
    let counit = (0..n)
        .map(|s| {
            let (x, c, y) = split(s);
            if x == action[c][y] {
                fe(1)
            } else {
                fe(0)
            }
        })
        .collect();
    let antipode = Matrix::from_fn(n, n, |r, s| {
        let (x, c, y) = split(s);
        if r == idx(y, group.inverse(c), x) {
            fe(1)
        } else {
            fe(0)
        }
    });
    let labels = (0..n)
        .map(|s| {
            let (x, c, y) = split(s);
            format!("d{x}.{}.d{y}", group.labels[c])
        })
        .collect();
    Ok(QuantumGroupoid::new(1, labels, alg, comul, counit, antipode)?)
}

// ---------------------------------------------------------------- Temperley–Lieb

type Diagram = [usize; 8];
const STRANDS: usize = 4;

fn find(p: &mut [usize], mut x: usize) -> usize {
    while p[x] != x {
        p[x] = p[p[x]];
        x = p[x];
    }
    x
}

/// Stack x above y (x's bottom glued to y's top); returns the diagram and the number of closed loops.
fn compose_diagrams(x: &Diagram, y: &Diagram) -> (Diagram, usize) {
    let mut parent: Vec<usize> = (0..16).collect();
    let union = |p: &mut Vec<usize>, a: usize, b: usize| {
        let (ra, rb) = (find(p, a), find(p, b));
        p[ra] = rb;
    };
    for a in 0..8 {
        union(&mut parent, a, x[a]);
        union(&mut parent, 8 + a, 8 + y[a]);
    }
    for j in 0..STRANDS {
        union(&mut parent, STRANDS + j, 8 + j);
    }
    // external points: x top (0..4) -> result 0..4, y bottom (12..16) -> result 4..8
    let ext: Vec<(usize, usize)> = (0..STRANDS).map(|j| (j, j)).chain((0..STRANDS).map(|j| (12 + j, STRANDS + j))).collect();
    let mut out = [0usize; 8];
    for &(node, r) in &ext {
        let root = find(&mut parent, node);
        let other = ext
            .iter()
            .find(|&&(n2, _)| n2 != node && find(&mut parent, n2) == root)
            .expect("every external point is paired");
        out[r] = other.1;
    }
    let ext_roots: BTreeSet<usize> = ext.iter().map(|&(n, _)| find(&mut parent, n)).collect();
    let mut loops = BTreeSet::new();
    for node in 0..16 {
        let r = find(&mut parent, node);
        if !ext_roots.contains(&r) {
            loops.insert(r);
        }
    }
    (out, loops.len())
}

fn identity_diagram() -> Diagram {
    let mut d = [0; 8];
    for j in 0..STRANDS {
        d[j] = STRANDS + j;
        d[STRANDS + j] = j;
    }
    d
}

/// U_i joins strands i-1 and i at the top and at the bottom.
fn cup_cap(i: usize) -> Diagram {
    let mut d = identity_diagram();
    let (a, b) = (i - 1, i);
    d[a] = b;
    d[b] = a;
    d[STRANDS + a] = STRANDS + b;
    d[STRANDS + b] = STRANDS + a;
    d
}

/// Loops in the trace closure (top j joined to bottom j).
fn closure_loops(d: &Diagram) -> usize {
    let mut parent: Vec<usize> = (0..8).collect();
    for a in 0..8 {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, d[a]));
        parent[ra] = rb;
    }
    for j in 0..STRANDS {
        let (ra, rb) = (find(&mut parent, j), find(&mut parent, STRANDS + j));
        parent[ra] = rb;
    }
    (0..8).map(|a| find(&mut parent, a)).collect::<BTreeSet<_>>().len()
}

/// Internal data of the Temperley–Lieb quantum groupoid.
#[derive(Debug, Clone)]
pub struct TLData {
    pub n: usize,
    /// Loop value δ = 2cos(π/5); e_i = δ⁻¹U_i.
    pub delta: FieldElement,
    /// λ = δ⁻², so e_i e_{i±1} e_i = λ e_i.
    pub lambda: FieldElement,
    /// Reduced words (letters 1..=3) forming the basis.
    pub words: Vec<Vec<usize>>,
    /// Generators e_1, e_2, e_3 in the word basis.
    pub generators: Vec<Vector>,
    /// Markov trace on the basis.
    pub tau: Vector,
    /// The anti-automorphism e_i ↦ e_{4-i} as a matrix.
    pub sigma: Matrix,
    /// Central element of A_{3,3} with τ(w·) = regular trace of A_{3,3}.
    pub w: Vector,
    pub w_inverse: Vector,
    /// Jones projection.
    pub f: Vector,
    /// Image under σ⊗id of the symmetric separability idempotent of A_{1,1}; equals Δ(1).
    pub p1: Tensor,
    /// Image under σ⊗id of the Markov-trace dual-basis element of A_{1,2};
    /// Δ(e_2) = λ(w⁻¹⊗1)·p2.
    pub p2: Tensor,
    pub algebra: Algebra,
    pub groupoid: QuantumGroupoid,
}

/// The quantum groupoid A_{1,3} built from the Jones tower at index 4cos²(π/5).
pub fn temperley_lieb(n: usize) -> Result<QuantumGroupoid, ExampleError> {
    Ok(temperley_lieb_data(n)?.groupoid)
}

pub fn temperley_lieb_data(n: usize) -> Result<TLData, ExampleError> {
    if n != 2 {
        return Err(ExampleError::UnsupportedN(n));
    }
    let conductor = 5;
    let z = FieldElement::zeta(5);
    let delta = -(&z.pow(2).unwrap() + &z.pow(3).unwrap());
    let delta_inv = delta.inverse().expect("δ is nonzero");
    let lambda = &delta_inv * &delta_inv;

    // Diagram algebra TL_4 on its 14 planar matchings.
    let mut diagrams: Vec<Diagram> = vec![identity_diagram()];
    let mut k = 0;
    while k < diagrams.len() {
        for i in 1..STRANDS {
            let (d, _) = compose_diagrams(&diagrams[k], &cup_cap(i));
            if !diagrams.contains(&d) {
                diagrams.push(d);
            }
        }
        k += 1;
    }
    let nd = diagrams.len();
    let pos = |d: &Diagram| diagrams.iter().position(|e| e == d).unwrap();
    let dmul = |x: &[FieldElement], y: &[FieldElement]| -> Vector {
        let mut out = zeros(nd);
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if yb.is_zero() {
                    continue;
                }
                let (d, loops) = compose_diagrams(&diagrams[a], &diagrams[b]);
                out[pos(&d)] += &(&(xa * yb) * &delta.pow(loops as i64).unwrap());
            }
        }
        out
    };
    let dtau: Vector = diagrams
        .iter()
        .map(|d| delta.pow(closure_loops(d) as i64 - STRANDS as i64).unwrap())
        .collect();
    let trace = |x: &[FieldElement]| crate::linalg::dot(&dtau, x);
    let gram = Matrix::from_fn(nd, nd, |a, b| trace(&dmul(&unit_vector(nd, a), &unit_vector(nd, b))));
    let radical = gram.kernel();

    let gen_diag: Vec<Vector> = (1..STRANDS)
        .map(|i| crate::linalg::vec_scale(&unit_vector(nd, pos(&cup_cap(i))), &delta_inv))
        .collect();
    let mut span = Span::new(nd);
    for r in &radical {
        span.insert(r);
    }
    let mut words: Vec<Vec<usize>> = Vec::new();
    let mut vecs: Vec<Vector> = Vec::new();
    let mut layer: Vec<(Vec<usize>, Vector)> = vec![(Vec::new(), unit_vector(nd, pos(&identity_diagram())))];
    while !layer.is_empty() {
        let mut next = Vec::new();
        for (w, v) in layer {
            if span.insert(&v) {
                for (i, g) in gen_diag.iter().enumerate() {
                    if w.last() != Some(&(i + 1)) {
                        let mut w2 = w.clone();
                        w2.push(i + 1);
                        next.push((w2, dmul(&v, g)));
                    }
                }
                words.push(w);
                vecs.push(v);
            }
        }
        layer = next;
    }
    let dim = words.len();
    let mut cols = vecs.clone();
    cols.extend(radical.iter().cloned());
    let to_coords = Matrix::from_columns(nd, &cols).inverse().expect("words and radical span TL_4");
    let coords = |v: &[FieldElement]| -> Vector { to_coords.apply(v)[..dim].to_vec() };

    let alg = Algebra::from_fn(conductor, dim, unit_vector(dim, 0), |a, b| coords(&dmul(&vecs[a], &vecs[b])));
    let tau: Vector = vecs.iter().map(|v| trace(v)).collect();
    let generators: Vec<Vector> = gen_diag.iter().map(|g| coords(g)).collect();
    let word_value = |w: &[usize], letter: &dyn Fn(usize) -> usize| -> Vector {
        let mut acc = alg.unit().clone();
        for &l in w {
            acc = alg.mul(&acc, &generators[letter(l) - 1]);
        }
        acc
    };
    // σ reverses words and maps e_i to e_{4-i}.
    let sigma_cols: Vec<Vector> = words
        .iter()
        .map(|w| {
            let rev: Vec<usize> = w.iter().rev().cloned().collect();
            word_value(&rev, &|l| STRANDS - l)
        })
        .collect();
    let sigma = Matrix::from_columns(dim, &sigma_cols);

    // w ∈ A_{3,3} with τ(w x) = tr(L_x on A_{3,3})
    let a33 = alg.generated_subalgebra(&[generators[2].clone()]);
    let (sub33, _) = alg.subalgebra(&a33).expect("A_{3,3} is a subalgebra");
    let reg33 = sub33.regular_traces();
    let sys = Matrix::from_fn(a33.len(), a33.len(), |r, c| crate::linalg::dot(&tau, &alg.mul(&a33[c], &a33[r])));
    let wc = sys.solve_vector(&reg33).map_err(|_| WhaError::Internal("index element does not exist".into()))?;
    let mut w = zeros(dim);
    for (c, x) in wc.iter().zip(&a33) {
        crate::linalg::axpy(&mut w, c, x);
    }
    let w_inverse = alg
        .left_matrix(&w)
        .solve_vector(alg.unit())
        .map_err(|_| WhaError::Internal("index element is not invertible".into()))?;

    // (σ⊗id) of Σ x_j ⊗ y^j, with dual bases for the bilinear form (x, y) ↦ φ(xy) on the
    // subalgebra generated by `gens`.
    let dual_bases = |gens: &[Vector], phi: &dyn Fn(&[Vector]) -> Matrix| -> Tensor {
        let basis = alg.generated_subalgebra(gens);
        let ginv = phi(&basis).inverse().expect("subalgebra is separable");
        let mut t = Tensor::zero(dim, 2);
        for (j, x) in basis.iter().enumerate() {
            let mut y = zeros(dim);
            for (k, b) in basis.iter().enumerate() {
                crate::linalg::axpy(&mut y, &ginv[(k, j)], b);
            }
            t = t.add(&Tensor::pure(&[&sigma.apply(x), &y]));
        }
        t
    };
    let regular = |basis: &[Vector]| -> Matrix {
        let (sub, _) = alg.subalgebra(basis).expect("generated subalgebra is closed");
        sub.trace_form()
    };
    let markov = |basis: &[Vector]| -> Matrix {
        Matrix::from_fn(basis.len(), basis.len(), |a, b| crate::linalg::dot(&tau, &alg.mul(&basis[a], &basis[b])))
    };
    let p1 = dual_bases(&[generators[0].clone()], &regular);
    let p2 = dual_bases(&[generators[0].clone(), generators[1].clone()], &markov);

    let one = alg.unit().clone();
    let d1 = p1.clone();
    let de1 = alg.tensor_mul(&Tensor::pure(&[&generators[0], &one]), &p1);
    let de3 = alg.tensor_mul(&Tensor::pure(&[&one, &generators[2]]), &p1);
    let de2 = alg
        .tensor_mul(&Tensor::pure(&[&w_inverse, &one]), &p2)
        .scale(&lambda);
    let gen_delta = [de1, de2, de3];
    let comul: CoproductTable = words
        .iter()
        .map(|w| {
            let t = w.iter().fold(d1.clone(), |acc, &l| alg.tensor_mul(&acc, &gen_delta[l - 1]));
            t.iter().map(|(i, c)| (i[0], i[1], c.clone())).collect()
        })
        .collect();

    let f = jones_projection(&alg, &generators, &lambda);
    let fw = alg.mul(&f, &w);
    let eps_scale = lambda.pow(-(n as i64)).expect("λ is nonzero");
    let counit: Vector = (0..dim)
        .map(|a| &eps_scale * &crate::linalg::dot(&tau, &alg.mul(&unit_vector(dim, a), &fw)))
        .collect();
    let antipode_cols: Vec<Vector> = (0..dim)
        .map(|a| alg.mul(&alg.mul(&w_inverse, &sigma.column(a)), &w))
        .collect();
    let antipode = Matrix::from_columns(dim, &antipode_cols);
    let labels = words
        .iter()
        .map(|w| {
            if w.is_empty() {
                "1".to_string()
            } else {
                w.iter().map(|l| format!("e{l}")).collect::<Vec<_>>().join("")
            }
        })
        .collect();
    let groupoid = QuantumGroupoid::new(conductor, labels, alg.clone(), comul, counit, antipode)?;
    Ok(TLData {
        n,
        delta,
        lambda,
        words,
        generators,
        tau,
        sigma,
        w,
        w_inverse,
        f,
        p1,
        p2,
        algebra: alg,
        groupoid,
    })
}

/// f = λ^{-n(n-1)/2}(e_n⋯e_1)(e_{n+1}⋯e_2)⋯(e_{2n-1}⋯e_n) for n = 2.
fn jones_projection(alg: &Algebra, gens: &[Vector], lambda: &FieldElement) -> Vector {
    let p = [&gens[1], &gens[0], &gens[2], &gens[1]]
        .iter()
        .fold(alg.unit().clone(), |acc, g| alg.mul(&acc, g));
    crate::linalg::vec_scale(&p, &lambda.inverse().expect("λ is nonzero"))
}

/// Evidence that the antipode has large (conjecturally infinite) order.
#[derive(Debug, Clone)]
pub struct OrderCertificate {
    /// S^{2k} ≠ id for every k ≤ this bound.
    pub checked_up_to: usize,
    /// An eigenvalue of S² that is not a root of unity of order ≤ 60.
    pub eigenvalue_witness: Option<Complex64>,
}

/// Checks S^{2k} ≠ id exactly for k ≤ `bound`, and looks for an eigenvalue of S² that is not a
/// root of unity of small order. Returns None if some S^{2k} = id.
pub fn antipode_order_certificate(h: &QuantumGroupoid, bound: usize) -> Option<OrderCertificate> {
    let s2 = h.antipode_squared();
    let id = Matrix::identity(h.dim());
    let mut p = s2.clone();
    for _ in 1..=bound {
        if p == id {
            return None;
        }
        p = p.mul(&s2);
    }
    let eig = nalgebra::linalg::Schur::new(s2.to_complex()).eigenvalues();
    let witness = eig.and_then(|ev| {
        ev.iter().cloned().find(|mu| {
            (1..=60).all(|k| (mu.powu(k) - Complex64::new(1.0, 0.0)).norm() > 1e-6)
        })
    });
    Some(OrderCertificate {
        checked_up_to: bound,
        eigenvalue_witness: witness,
    })
}

// ---------------------------------------------------------------- registry

/// Names accepted by [`builtin`].
pub const BUILTIN_NAMES: &[&str] = &[
    "z2",
    "z2-dual",
    "pair2",
    "pair2-dual",
    "s3",
    "s3-dual",
    "z2+pt",
    "z2+pt-dual",
    "elementary-1",
    "elementary-1-1",
    "elementary-1-2",
    "bopb-kk",
    "bopb-m2",
    "transformation-z2",
    "tl2",
];

fn z2_plus_point() -> GroupoidSpec {
    GroupoidSpec::disjoint_union(&GroupoidSpec::cyclic(2), &GroupoidSpec::cyclic(1))
}

/// The ℤ/2 action swapping two points.
pub fn swap_action() -> (FiniteGroup, Vec<Vec<usize>>) {
    (FiniteGroup::cyclic(2), vec![vec![0, 1], vec![1, 0]])
}

/// Look up a built-in example by name.
pub fn builtin(name: &str) -> Result<QuantumGroupoid, ExampleError> {
    let (base, dual) = match name.strip_suffix("-dual") {
        Some(b) => (b, true),
        None => (name, false),
    };
    let groupoid = match base {
        "z2" => Some(GroupoidSpec::cyclic(2)),
        "pair2" => Some(GroupoidSpec::pair(2)),
        "s3" => Some(GroupoidSpec::symmetric3()),
        "z2+pt" => Some(z2_plus_point()),
        _ => None,
    };
    if let Some(g) = groupoid {
        return groupoid_algebra(&g, dual);
    }
    if dual {
        return Err(ExampleError::Unknown(name.into()));
    }
    match name {
        "elementary-1" => elementary(&[1]),
        "elementary-1-1" => elementary(&[1, 1]),
        "elementary-1-2" => elementary(&[1, 2]),
        "bopb-kk" => Ok(bopb(&SeparableAlgebraSpec::with_unit_q(&[1, 1]))?.groupoid),
        "bopb-m2" => Ok(bopb(&SeparableAlgebraSpec::diagonal_q(
            &[2],
            &[FieldElement::from_integer(2), FieldElement::from_ratio(2, 3)],
        ))?
        .groupoid),
        "transformation-z2" => {
            let (g, act) = swap_action();
            transformation_groupoid(&g, &act)
        }
        "tl2" => temperley_lieb(2),
        _ => Err(ExampleError::Unknown(name.into())),
    }
}

/// Whether `x` is a nonzero multiple of `y`.
pub fn is_proportional(x: &[FieldElement], y: &[FieldElement]) -> bool {
    if vec_is_zero(x) || vec_is_zero(y) {
        return false;
    }
    let i = y.iter().position(|c| !c.is_zero()).unwrap();
    let r = &x[i] / &y[i];
    x.iter().zip(y).all(|(a, b)| *a == &r * b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_validate() {
        for name in BUILTIN_NAMES {
            let h = builtin(name).unwrap();
            let rep = h.validate_axioms();
            assert!(rep.all_passed(), "{name}: {}", rep.summary());
        }
    }
}

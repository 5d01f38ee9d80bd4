//! Wedderburn decomposition of split semisimple algebras.

use thiserror::Error;

use crate::algebra::Algebra;
use crate::field::{poly_to_string, FieldElement};
use crate::linalg::{unit_vector, vec_scale, vec_sub, Matrix, Span, Vector};
use crate::roots::roots_in_field;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WedderburnError {
    #[error("algebra is not semisimple: regular trace form has rank {rank} < {dim}")]
    NotSemisimple { rank: usize, dim: usize },
    #[error("algebra does not split over Q(zeta_{conductor}): {polynomial} has no root there")]
    NotSplit { conductor: u32, polynomial: String },
}

/// Simple components of a split semisimple algebra.
#[derive(Debug, Clone)]
pub struct WedderburnData {
    /// Central primitive idempotents.
    pub idempotents: Vec<Vector>,
    /// Dimensions of the irreducible modules.
    pub dims: Vec<usize>,
    /// Irreducible characters, evaluated on the basis.
    pub characters: Vec<Vector>,
    /// `irreps[i][a]` is the action of basis vector a on the i-th irreducible module.
    pub irreps: Vec<Vec<Matrix>>,
}

impl WedderburnData {
    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    /// χ_i(x) for an arbitrary element.
    pub fn character(&self, i: usize, x: &[FieldElement]) -> FieldElement {
        crate::linalg::dot(&self.characters[i], x)
    }

    /// Matrix of an arbitrary element in the i-th irreducible module.
    pub fn action(&self, i: usize, x: &[FieldElement]) -> Matrix {
        let d = self.dims[i];
        let mut m = Matrix::zeros(d, d);
        for (a, c) in x.iter().enumerate() {
            if !c.is_zero() {
                m = m.add(&self.irreps[i][a].scale(c));
            }
        }
        m
    }

    /// Re-check idempotent relations, centrality, dimension count and the representation property.
    pub fn verify(&self, alg: &Algebra) -> Result<(), String> {
        let n = alg.dim();
        let mut sum = vec![FieldElement::zero(); n];
        for (i, e) in self.idempotents.iter().enumerate() {
            for (j, f) in self.idempotents.iter().enumerate() {
                let p = alg.mul(e, f);
                let want = if i == j { e.clone() } else { vec![FieldElement::zero(); n] };
                if p != want {
                    return Err(format!("idempotents {i},{j} are not orthogonal idempotents"));
                }
            }
            for a in 0..n {
                let ea = unit_vector(n, a);
                if alg.mul(e, &ea) != alg.mul(&ea, e) {
                    return Err(format!("idempotent {i} is not central"));
                }
            }
            sum = crate::linalg::vec_add(&sum, e);
        }
        if &sum != alg.unit() {
            return Err("idempotents do not sum to 1".into());
        }
        let total: usize = self.dims.iter().map(|d| d * d).sum();
        if total != n {
            return Err(format!("sum of squared block dimensions is {total}, expected {n}"));
        }
        for i in 0..self.len() {
            if self.character(i, alg.unit()) != FieldElement::from_integer(self.dims[i] as i64) {
                return Err(format!("character {i} does not take the value d_i at 1"));
            }
            for a in 0..n {
                for b in 0..n {
                    let prod = alg.mul(&unit_vector(n, a), &unit_vector(n, b));
                    if self.action(i, &prod) != self.irreps[i][a].mul(&self.irreps[i][b]) {
                        return Err(format!("irrep {i} is not multiplicative"));
                    }
                }
            }
        }
        Ok(())
    }
}

fn not_split(conductor: u32, poly: &[FieldElement]) -> WedderburnError {
    WedderburnError::NotSplit {
        conductor,
        polynomial: poly_to_string(poly),
    }
}

/// Quotient of p by (x - r), assuming r is a root.
fn divide_linear(p: &[FieldElement], r: &FieldElement) -> Vec<FieldElement> {
    let deg = p.len() - 1;
    let mut q = vec![FieldElement::zero(); deg];
    let mut carry = FieldElement::zero();
    for k in (1..=deg).rev() {
        carry = &p[k] + &(&carry * r);
        q[k - 1] = carry.clone();
    }
    q
}

/// Deterministic sequence of candidate elements inside the span of `gens`.
fn candidates(gens: &[Vector]) -> Vec<Vector> {
    let mut out: Vec<Vector> = gens.to_vec();
    for weights in 1..=3i64 {
        let mut acc = vec![FieldElement::zero(); gens.first().map_or(0, |g| g.len())];
        for (j, g) in gens.iter().enumerate() {
            let w = FieldElement::from_integer((j as i64 + 1).pow(weights as u32));
            acc = crate::linalg::vec_add(&acc, &vec_scale(g, &w));
        }
        out.push(acc);
    }
    out
}

/// Split `e` (an idempotent of the commutative algebra spanned by `center`) into
/// primitive idempotents.
fn split_center(alg: &Algebra, center: &[Vector]) -> Result<Vec<Vector>, WedderburnError> {
    let n = alg.dim();
    let conductor = alg.conductor();
    let mut done: Vec<Vector> = Vec::new();
    let mut todo: Vec<Vector> = vec![alg.unit().clone()];
    while let Some(e) = todo.pop() {
        let local: Vec<Vector> = center.iter().map(|z| alg.mul(&e, z)).collect();
        let mut sp = Span::new(n);
        for z in &local {
            sp.insert(z);
        }
        if sp.rank() <= 1 {
            done.push(e);
            continue;
        }
        let mut e_span = Span::new(n);
        e_span.insert(&e);
        let mut split = false;
        for y in candidates(&local) {
            if e_span.contains(&y) {
                continue;
            }
            let mp = alg.minimal_polynomial(&y, &e);
            let roots = roots_in_field(&mp, conductor);
            if roots.len() + 1 < mp.len() {
                let rest = roots.iter().fold(mp.clone(), |p, r| divide_linear(&p, r));
                return Err(not_split(conductor, &rest));
            }
            for (r_i, r) in roots.iter().enumerate() {
                let mut p = e.clone();
                for (s_i, s) in roots.iter().enumerate() {
                    if s_i == r_i {
                        continue;
                    }
                    let factor = vec_sub(&y, &vec_scale(&e, s));
                    let scale = (r - s).inverse().unwrap();
                    p = vec_scale(&alg.mul(&p, &factor), &scale);
                }
                todo.push(p);
            }
            split = true;
            break;
        }
        if !split {
            done.push(e);
        }
    }
    Ok(done)
}

/// Primitive idempotent inside the block of the central idempotent `e`.
fn primitive_idempotent(alg: &Algebra, e: &Vector) -> Result<Vector, WedderburnError> {
    let n = alg.dim();
    let conductor = alg.conductor();
    let mut f = e.clone();
    loop {
        let corner: Vec<Vector> = (0..n)
            .map(|a| alg.mul(&alg.mul(&f, &unit_vector(n, a)), &f))
            .collect();
        let mut f_span = Span::new(n);
        f_span.insert(&f);
        let Some(b) = candidates(&corner).into_iter().find(|b| !f_span.contains(b)) else {
            return Ok(f);
        };
        let mp = alg.minimal_polynomial(&b, &f);
        let roots = roots_in_field(&mp, conductor);
        let Some(lambda) = roots.first() else {
            return Err(not_split(conductor, &mp));
        };
        let y = vec_sub(&b, &vec_scale(&f, lambda));
        // f' in A y with y f' = y is an idempotent generating the same left ideal.
        let ideal = alg.left_ideal(&y).basis();
        let cols: Vec<Vector> = ideal.iter().map(|l| alg.mul(&y, l)).collect();
        let m = Matrix::from_columns(n, &cols);
        let c = m
            .solve_vector(&y)
            .map_err(|_| not_split(conductor, &mp))?;
        let mut next = vec![FieldElement::zero(); n];
        for (ci, l) in c.iter().zip(&ideal) {
            crate::linalg::axpy(&mut next, ci, l);
        }
        f = next;
    }
}

/// Decompose a split semisimple algebra into matrix blocks.
pub fn wedderburn(alg: &Algebra) -> Result<WedderburnData, WedderburnError> {
    let n = alg.dim();
    let rank = alg.trace_form().rank();
    if rank < n {
        return Err(WedderburnError::NotSemisimple { rank, dim: n });
    }
    let center = alg.center();
    let idempotents = split_center(alg, &center)?;
    let mut blocks = Vec::new();
    for e in idempotents {
        let f = primitive_idempotent(alg, &e)?;
        let module = alg.left_ideal(&f);
        let basis = module.basis();
        let d = basis.len();
        let irrep: Vec<Matrix> = (0..n)
            .map(|a| {
                let ea = unit_vector(n, a);
                let cols: Vec<Vector> = basis
                    .iter()
                    .map(|v| module.coordinates(&alg.mul(&ea, v)).expect("left ideal is stable"))
                    .collect();
                Matrix::from_columns(d, &cols)
            })
            .collect();
        let chi: Vector = irrep.iter().map(|m| m.trace()).collect();
        blocks.push((d, chi, e, irrep));
    }
    blocks.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
    let mut data = WedderburnData {
        idempotents: Vec::new(),
        dims: Vec::new(),
        characters: Vec::new(),
        irreps: Vec::new(),
    };
    for (d, chi, e, irrep) in blocks {
        data.dims.push(d);
        data.characters.push(chi);
        data.idempotents.push(e);
        data.irreps.push(irrep);
    }
    Ok(data)
}

//! S-matrix, twists, negligible modules and the modularity verdict.

use thiserror::Error;

use crate::field::FieldElement;
use crate::linalg::Matrix;
use crate::qt::{braiding_twist, factorizability, quantum_trace, quantum_trace_map, QtData, QtError, RibbonData};
use crate::rep::{dual_module, hom_space, identify, irreducibles, tensor_module, unit_module, HModule, Irreducible, RepError};
use crate::tensor::Tensor;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModularError {
    #[error("quantum groupoid is not connected")]
    NotConnected,
    #[error("algebra is not split semisimple")]
    NotSemisimple,
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Qt(#[from] QtError),
}

impl From<RepError> for ModularError {
    fn from(e: RepError) -> Self {
        match e {
            RepError::NotSemisimple | RepError::NotSplit(_) => ModularError::NotSemisimple,
            other => ModularError::Qt(QtError::Rep(other)),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SMatrix {
    pub s: Matrix,
    /// θ_i: the scalar of ν on V_i.
    pub theta: Vec<FieldElement>,
    /// χ_i(uν), the diagonal of the factorization S = DT.
    pub u_nu_characters: Vec<FieldElement>,
    /// Entries (i, j) compared against tr_q(c_{V_i,V_j}∘c_{V_j,V_i}).
    pub categorical_checked: Vec<(usize, usize)>,
}

/// The scalar by which a central element acts on an irreducible.
fn scalar_on(v: &HModule, x: &[FieldElement]) -> FieldElement {
    v.act(x).row(0)[0].clone()
}

/// tr_q(c_{V_i,V_j}∘c_{V_j,V_i}) on V_j⊗V_i.
pub fn categorical_entry(qt: &QtData, ribbon: &RibbonData, vi: &HModule, vj: &HModule) -> Result<FieldElement, ModularError> {
    let h = &qt.h;
    let ji = braiding_twist(qt, ribbon, vj, vi)?;
    let ij = braiding_twist(qt, ribbon, vi, vj)?;
    let w = tensor_module(h, vj, vi)?;
    Ok(quantum_trace(qt, ribbon, &w.module, &ij.c.mul(&ji.c))?)
}

/// S_ij = (dim H_t)⁻¹ (χ_j⊗χ_i)((uν⊗uν)R₂₁R), cross-checked against the categorical route
/// on every entry when there are at most `categorical_limit` irreducibles and on (0, 0) otherwise.
pub fn s_matrix_checked(qt: &QtData, ribbon: &RibbonData, categorical_limit: usize) -> Result<SMatrix, ModularError> {
    let h = &qt.h;
    if !h.is_connected() {
        return Err(ModularError::NotConnected);
    }
    let irr = irreducibles(h)?;
    let k = irr.len();
    let unu = h.mul(&qt.u, &ribbon.nu);
    let x = h.tmul(&Tensor::pure(&[&unu, &unu]), &qt.monodromy());
    let dim_t = FieldElement::from_integer(h.ht_basis().len() as i64);
    let s = Matrix::from_fn(k, k, |i, j| {
        let mut acc = FieldElement::zero();
        for (idx, c) in x.iter() {
            let t = &irr[j].character[idx[0]] * &irr[i].character[idx[1]];
            if !t.is_zero() {
                acc += &(c * &t);
            }
        }
        &acc / &dim_t
    });
    let theta = irr.iter().map(|v| scalar_on(&v.module, &ribbon.nu)).collect();
    let u_nu_characters = irr.iter().map(|v| crate::linalg::dot(&v.character, &unu)).collect();
    let pairs: Vec<(usize, usize)> = if k <= categorical_limit {
        (0..k * k).map(|p| (p / k, p % k)).collect()
    } else {
        vec![(0, 0)]
    };
    for &(i, j) in &pairs {
        let c = categorical_entry(qt, ribbon, &irr[i].module, &irr[j].module)?;
        if c != s[(i, j)] {
            return Err(ModularError::Inconsistent(format!(
                "S[{i}][{j}] = {} from characters but {c} from the braiding",
                s[(i, j)]
            )));
        }
    }
    Ok(SMatrix {
        s,
        theta,
        u_nu_characters,
        categorical_checked: pairs,
    })
}

pub fn s_matrix(qt: &QtData, ribbon: &RibbonData) -> Result<SMatrix, ModularError> {
    s_matrix_checked(qt, ribbon, 4)
}

/// Whether tr_q vanishes on all of End(V).
pub fn is_negligible(v: &HModule, qt: &QtData, ribbon: &RibbonData) -> Result<bool, ModularError> {
    let ends = hom_space(v, v)?;
    Ok(ends.iter().all(|f| quantum_trace_map(qt, ribbon, v, f).is_zero()))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModularVerdict {
    pub connected: bool,
    pub haar_exists: bool,
    pub factorizable: bool,
    /// Index of the unit object among the irreducibles.
    pub unit_index: Option<usize>,
    /// i ↦ i*.
    pub duality: Vec<Option<usize>>,
    pub s: Option<SMatrix>,
    pub s_invertible: bool,
    pub verdict: bool,
    pub reasons: Vec<String>,
}

pub fn modularity_verdict(qt: &QtData, ribbon: &RibbonData) -> Result<ModularVerdict, ModularError> {
    let h = &qt.h;
    let connected = h.is_connected();
    let haar_exists = h.haar_integral().is_ok();
    let factorizable = factorizability(qt).is_factorizable;
    let irr: Vec<Irreducible> = irreducibles(h)?;
    let mut reasons = Vec::new();
    let unit = unit_module(h);
    let unit_index = identify(&irr, &unit.module)?;
    if unit_index.is_none() {
        reasons.push("unit object is not irreducible".to_string());
    }
    let duality = irr
        .iter()
        .map(|v| identify(&irr, &dual_module(h, &v.module)))
        .collect::<Result<Vec<_>, _>>()?;
    if duality.iter().any(|d| d.is_none()) {
        reasons.push("a dual of an irreducible is not irreducible".to_string());
    }
    // domination holds for split semisimple algebras
    let s = if connected {
        Some(s_matrix(qt, ribbon)?)
    } else {
        reasons.push("not connected".to_string());
        None
    };
    if !haar_exists {
        reasons.push("no normalized Haar integral".to_string());
    }
    let s_invertible = s.as_ref().is_some_and(|s| !s.s.determinant().is_zero());
    if s.is_some() && !s_invertible {
        reasons.push("S is singular".to_string());
    }
    if connected && factorizable && haar_exists && !s_invertible {
        return Err(ModularError::Inconsistent(
            "connected factorizable quantum groupoid with Haar integral has singular S".into(),
        ));
    }
    let verdict = connected && haar_exists && s_invertible && unit_index.is_some();
    Ok(ModularVerdict {
        connected,
        haar_exists,
        factorizable,
        unit_index,
        duality,
        s,
        s_invertible,
        verdict,
        reasons,
    })
}

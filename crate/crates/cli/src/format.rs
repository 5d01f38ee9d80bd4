//! The `qgroupoid/1` document: one JSON object holding the structure constants of a quantum
//! groupoid plus optional R-matrix, ribbon element and star.
//!
//! Coefficients are field-element strings such as `"1/2"` or `"z + 2*z^3 (mod Phi_5)"`;
//! a string without a suffix is read in ℚ(ζ_N) for the declared conductor N.

use std::collections::BTreeMap;

use qgroupoid::algebra::Algebra;
use qgroupoid::linalg::{Matrix, Vector};
use qgroupoid::tensor::Tensor;
use qgroupoid::wha::QuantumGroupoid;
use qgroupoid::FieldElement;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const FORMAT: &str = "qgroupoid/1";

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FormatError {
    #[error("parse error at line {line}, column {column}: {msg}")]
    Syntax { line: usize, column: usize, msg: String },
    #[error("invalid document at {path}: {msg}")]
    Invalid { path: String, msg: String },
}

fn invalid(path: impl Into<String>, msg: impl Into<String>) -> FormatError {
    FormatError::Invalid {
        path: path.into(),
        msg: msg.into(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct Provenance {
    pub generator: String,
    #[serde(default)]
    pub params: BTreeMap<String, String>,
}

/// The document as read from disk, before coefficients are parsed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecDocument {
    pub format: String,
    pub conductor: u32,
    pub dim: usize,
    pub labels: Vec<String>,
    /// (i, c): 1 = Σ c e_i.
    pub unit: Vec<(usize, String)>,
    /// (a, b, c, x): e_a e_b = Σ x e_c.
    pub mul: Vec<(usize, usize, usize, String)>,
    /// (c, a, b, x): Δ(e_c) = Σ x e_a⊗e_b.
    pub comul: Vec<(usize, usize, usize, String)>,
    pub counit: Vec<(usize, String)>,
    /// (i, j, x): S(e_j) = Σ x e_i.
    pub antipode: Vec<(usize, usize, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_matrix: Option<Vec<(usize, usize, String)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ribbon: Option<Vec<(usize, String)>>,
    /// (i, j, x): e_j* = Σ x e_i.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub star: Option<Vec<(usize, usize, String)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
}

impl SpecDocument {
    pub fn parse(text: &str) -> Result<Self, FormatError> {
        let doc: SpecDocument = serde_json::from_str(text).map_err(|e| FormatError::Syntax {
            line: e.line(),
            column: e.column(),
            msg: e.to_string(),
        })?;
        if doc.format != FORMAT {
            return Err(invalid("format", format!("expected {FORMAT:?}, found {:?}", doc.format)));
        }
        if doc.conductor == 0 {
            return Err(invalid("conductor", "must be positive"));
        }
        Ok(doc)
    }

    /// Canonical text: fixed key order, one entry per line.
    pub fn write(&self) -> String {
        let mut out = String::from("{\n");
        let mut fields: Vec<String> = vec![
            format!("  \"format\": {}", json(&self.format)),
            format!("  \"conductor\": {}", self.conductor),
            format!("  \"dim\": {}", self.dim),
            format!("  \"labels\": {}", json(&self.labels)),
            format!("  \"unit\": {}", entries(&self.unit)),
            format!("  \"mul\": {}", entries(&self.mul)),
            format!("  \"comul\": {}", entries(&self.comul)),
            format!("  \"counit\": {}", entries(&self.counit)),
            format!("  \"antipode\": {}", entries(&self.antipode)),
        ];
        if let Some(r) = &self.r_matrix {
            fields.push(format!("  \"r_matrix\": {}", entries(r)));
        }
        if let Some(r) = &self.ribbon {
            fields.push(format!("  \"ribbon\": {}", entries(r)));
        }
        if let Some(s) = &self.star {
            fields.push(format!("  \"star\": {}", entries(s)));
        }
        if let Some(p) = &self.provenance {
            fields.push(format!("  \"provenance\": {}", json(p)));
        }
        out.push_str(&fields.join(",\n"));
        out.push_str("\n}\n");
        out
    }

    pub fn from_groupoid(h: &QuantumGroupoid, provenance: Option<Provenance>) -> Self {
        let n = h.dim();
        let big_n = h.conductor();
        let s = |c: &FieldElement| coefficient(c, big_n);
        let mut mul = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let mut p: Vec<(usize, FieldElement)> = h.algebra().basis_product(a, b).clone();
                p.sort_by_key(|(c, _)| *c);
                for (c, x) in p.iter().filter(|(_, x)| !x.is_zero()) {
                    mul.push((a, b, *c, s(x)));
                }
            }
        }
        let mut comul = Vec::new();
        for c in 0..n {
            let mut terms = h.coproduct_basis(c).to_vec();
            terms.sort_by_key(|(a, b, _)| (*a, *b));
            for (a, b, x) in terms.iter().filter(|(_, _, x)| !x.is_zero()) {
                comul.push((c, *a, *b, s(x)));
            }
        }
        SpecDocument {
            format: FORMAT.into(),
            conductor: big_n,
            dim: n,
            labels: h.labels().to_vec(),
            unit: sparse_vector(h.unit(), big_n),
            mul,
            comul,
            counit: sparse_vector(h.counit(), big_n),
            antipode: sparse_matrix(h.antipode_matrix(), big_n),
            r_matrix: h.r_matrix.as_ref().map(|r| {
                r.iter()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(i, x)| (i[0], i[1], s(x)))
                    .collect()
            }),
            ribbon: h.ribbon.as_ref().map(|v| sparse_vector(v, big_n)),
            star: h.star.as_ref().map(|m| sparse_matrix(m, big_n)),
            provenance,
        }
    }

    pub fn to_groupoid(&self) -> Result<QuantumGroupoid, FormatError> {
        let n = self.dim;
        let big_n = self.conductor;
        if self.labels.len() != n {
            return Err(invalid("labels", format!("{} labels for dimension {n}", self.labels.len())));
        }
        let idx = |path: String, i: usize| -> Result<usize, FormatError> {
            if i < n {
                Ok(i)
            } else {
                Err(invalid(path, format!("index {i} out of range for dimension {n}")))
            }
        };
        let coef = |path: String, s: &str| parse_coefficient(&path, s, big_n);
        let vector = |name: &str, es: &[(usize, String)]| -> Result<Vector, FormatError> {
            let mut v = vec![FieldElement::zero(); n];
            for (k, (i, x)) in es.iter().enumerate() {
                let p = format!("{name}[{k}]");
                let i = idx(p.clone(), *i)?;
                v[i] += &coef(p, x)?;
            }
            Ok(v)
        };
        let matrix = |name: &str, es: &[(usize, usize, String)]| -> Result<Matrix, FormatError> {
            let mut m = Matrix::zeros(n, n);
            for (k, (i, j, x)) in es.iter().enumerate() {
                let p = format!("{name}[{k}]");
                let (i, j) = (idx(p.clone(), *i)?, idx(p.clone(), *j)?);
                m[(i, j)] += &coef(p, x)?;
            }
            Ok(m)
        };
        let unit = vector("unit", &self.unit)?;
        let mut table: Vec<Vec<(usize, FieldElement)>> = vec![Vec::new(); n * n];
        for (k, (a, b, c, x)) in self.mul.iter().enumerate() {
            let p = format!("mul[{k}]");
            let (a, b, c) = (idx(p.clone(), *a)?, idx(p.clone(), *b)?, idx(p.clone(), *c)?);
            table[a * n + b].push((c, coef(p, x)?));
        }
        let table = table
            .into_iter()
            .map(|entries| {
                let mut dense = vec![FieldElement::zero(); n];
                for (c, x) in entries {
                    dense[c] += &x;
                }
                qgroupoid::algebra::to_sparse(&dense)
            })
            .collect();
        let alg = Algebra::new(big_n, n, table, unit);
        let mut comul = vec![Vec::new(); n];
        for (k, (c, a, b, x)) in self.comul.iter().enumerate() {
            let p = format!("comul[{k}]");
            let (c, a, b) = (idx(p.clone(), *c)?, idx(p.clone(), *a)?, idx(p.clone(), *b)?);
            comul[c].push((a, b, coef(p, x)?));
        }
        let counit = vector("counit", &self.counit)?;
        let antipode = matrix("antipode", &self.antipode)?;
        let mut h = QuantumGroupoid::new(big_n, self.labels.clone(), alg, comul, counit, antipode)
            .map_err(|e| invalid("", e.to_string()))?;
        if let Some(r) = &self.r_matrix {
            let mut t = Tensor::zero(n, 2);
            for (k, (i, j, x)) in r.iter().enumerate() {
                let p = format!("r_matrix[{k}]");
                let (i, j) = (idx(p.clone(), *i)?, idx(p.clone(), *j)?);
                t.add_at(&[i, j], &coef(p, x)?);
            }
            h.r_matrix = Some(t);
        }
        if let Some(r) = &self.ribbon {
            h.ribbon = Some(vector("ribbon", r)?);
        }
        if let Some(s) = &self.star {
            h.star = Some(matrix("star", s)?);
        }
        Ok(h)
    }
}

fn json<T: Serialize + ?Sized>(x: &T) -> String {
    serde_json::to_string(x).expect("plain data serializes")
}

fn entries<T: Serialize>(es: &[T]) -> String {
    if es.is_empty() {
        return "[]".into();
    }
    let lines: Vec<String> = es.iter().map(|e| format!("    {}", json(e))).collect();
    format!("[\n{}\n  ]", lines.join(",\n"))
}

pub fn coefficient(c: &FieldElement, conductor: u32) -> String {
    c.lift(conductor).to_string()
}

pub fn parse_coefficient(path: &str, s: &str, conductor: u32) -> Result<FieldElement, FormatError> {
    let x = FieldElement::parse_with(s, Some(conductor)).map_err(|e| invalid(path, format!("{s:?}: {e}")))?;
    if conductor % x.conductor() != 0 {
        return Err(invalid(
            path,
            format!("{s:?} lies in Q(zeta_{}), not in Q(zeta_{conductor})", x.conductor()),
        ));
    }
    Ok(x.lift(conductor))
}

pub fn sparse_vector(v: &[FieldElement], conductor: u32) -> Vec<(usize, String)> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, coefficient(x, conductor)))
        .collect()
}

pub fn sparse_matrix(m: &Matrix, conductor: u32) -> Vec<(usize, usize, String)> {
    let mut out = Vec::new();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let x = &m[(i, j)];
            if !x.is_zero() {
                out.push((i, j, coefficient(x, conductor)));
            }
        }
    }
    out
}

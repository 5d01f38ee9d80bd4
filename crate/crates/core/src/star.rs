//! *-structures: exact axiom checks, the canonical group-like element and the ribbon ν = u⁻¹g.

use nalgebra::DMatrix;
use num_complex::Complex64;
use thiserror::Error;

use crate::field::FieldElement;
use crate::linalg::{Matrix, Vector};
use crate::qt::{find_ribbons, is_ribbon, QtData, QtError, RibbonData};
use crate::roots::square_roots;
use crate::tensor::Tensor;
use crate::wedderburn::{wedderburn, WedderburnError};
use crate::wha::{in_span, AxiomReport, QuantumGroupoid};

pub const PROBE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StarError {
    #[error("no star structure attached")]
    NoStar,
    #[error("star axioms fail: {}", .0.summary())]
    AxiomFailure(AxiomReport),
    #[error("no canonical group-like element: {0}")]
    NoSuchElement(String),
    #[error("ν = u⁻¹g is not a ribbon element")]
    NotRibbon,
    #[error(transparent)]
    Qt(#[from] QtError),
}

impl From<WedderburnError> for StarError {
    fn from(e: WedderburnError) -> Self {
        StarError::Qt(e.into())
    }
}

/// Smallest eigenvalue of (x, y) ↦ τ(x*y) at ζ_N ↦ exp(2πi/N). Numeric, not a certificate.
#[derive(Debug, Clone, PartialEq)]
pub struct PositivityProbe {
    pub min_eigenvalue: f64,
    pub positive: bool,
    pub heuristic: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StarReport {
    pub axioms: AxiomReport,
    pub probe: PositivityProbe,
}

fn star_apply(star: &Matrix, x: &[FieldElement]) -> Vector {
    let cx: Vector = x.iter().map(|c| c.conj()).collect();
    star.apply(&cx)
}

fn star_tensor(star: &Matrix, t: &Tensor) -> Tensor {
    let n = t.n();
    let cols: Vec<Vector> = (0..n).map(|j| star.column(j)).collect();
    let mut out = Tensor::zero(n, t.order());
    for (idx, c) in t.iter() {
        let factors: Vec<&[FieldElement]> = idx.iter().map(|&i| cols[i].as_slice()).collect();
        out = out.add(&Tensor::pure(&factors).scale(&c.conj()));
    }
    out
}

pub fn validate_star(h: &QuantumGroupoid, star: &Matrix) -> StarReport {
    let n = h.dim();
    let st = |x: &[FieldElement]| star_apply(star, x);
    let mut rep = AxiomReport::default();
    let ok = star.rows() == n && star.cols() == n;
    rep.push("shape", (!ok).then(Vec::new));
    if !ok {
        return StarReport {
            axioms: rep,
            probe: PositivityProbe {
                min_eigenvalue: f64::NAN,
                positive: false,
                heuristic: true,
            },
        };
    }
    rep.push("involutive", (0..n).find(|&a| st(&st(&h.basis(a))) != h.basis(a)).map(|a| vec![a]));
    rep.push(
        "anti_multiplicative",
        (0..n * n)
            .find(|&k| {
                let (a, b) = (h.basis(k / n), h.basis(k % n));
                st(&h.mul(&a, &b)) != h.mul(&st(&b), &st(&a))
            })
            .map(|k| vec![k / n, k % n]),
    );
    rep.push("unit", (&st(h.unit()) != h.unit()).then(Vec::new));
    rep.push(
        "comultiplicative",
        (0..n)
            .find(|&a| h.coproduct(&st(&h.basis(a))) != star_tensor(star, &h.coproduct(&h.basis(a))))
            .map(|a| vec![a]),
    );
    rep.push(
        "antipode_star_involutive",
        (0..n)
            .find(|&a| {
                let once = h.antipode(&st(&h.basis(a)));
                h.antipode(&st(&once)) != h.basis(a)
            })
            .map(|a| vec![a]),
    );
    rep.push(
        "counit",
        (0..n).find(|&a| h.counit_of(&st(&h.basis(a))) != h.counit()[a].conj()).map(|a| vec![a]),
    );
    let ht = h.ht_basis();
    let hs = h.hs_basis();
    rep.push("target_closed", ht.iter().position(|z| !in_span(n, &ht, &st(z))).map(|i| vec![i]));
    rep.push("source_closed", hs.iter().position(|y| !in_span(n, &hs, &st(y))).map(|i| vec![i]));
    StarReport {
        axioms: rep,
        probe: positivity_probe(h, star),
    }
}

pub fn positivity_probe(h: &QuantumGroupoid, star: &Matrix) -> PositivityProbe {
    let n = h.dim();
    let tau = h.algebra().regular_traces();
    let stars: Vec<Vector> = (0..n).map(|i| star_apply(star, &h.basis(i))).collect();
    let gram = DMatrix::from_fn(n, n, |i, j| {
        let p = h.mul(&stars[i], &h.basis(j));
        crate::linalg::dot(&tau, &p).to_complex()
    });
    let herm = (&gram + gram.adjoint()) * Complex64::new(0.5, 0.0);
    let eig = herm.symmetric_eigenvalues();
    let min = eig.iter().cloned().fold(f64::INFINITY, f64::min);
    PositivityProbe {
        min_eigenvalue: min,
        positive: min > -PROBE_TOLERANCE,
        heuristic: true,
    }
}

/// The attached star, validated.
pub fn attached_star(h: &QuantumGroupoid) -> Result<Matrix, StarError> {
    let star = h.star.clone().ok_or(StarError::NoStar)?;
    let rep = validate_star(h, &star);
    if rep.axioms.all_passed() {
        Ok(star)
    } else {
        Err(StarError::AxiomFailure(rep.axioms))
    }
}

/// g with S² = Ad(g), S(g) = g⁻¹, Δ(g) = (g⊗g)Δ(1) and tr π_α(g) = tr π_α(g⁻¹) ≠ 0 on every block.
pub fn canonical_grouplike(h: &QuantumGroupoid, star: &Matrix) -> Result<Vector, StarError> {
    let rep = validate_star(h, star);
    if !rep.axioms.all_passed() {
        return Err(StarError::AxiomFailure(rep.axioms));
    }
    let n = h.dim();
    let alg = h.algebra();
    let s2 = h.antipode_squared();
    // S²(x) g − g x = 0 for all basis x
    let mut rows: Vec<Vector> = Vec::new();
    for a in 0..n {
        let lhs = alg.left_matrix(&s2.column(a));
        let rhs = alg.right_matrix(&h.basis(a));
        let m = lhs.sub(&rhs);
        for r in 0..n {
            rows.push(m.row(r).to_vec());
        }
    }
    let kernel = Matrix::from_rows(rows).kernel();
    let w = wedderburn(alg)?;
    let mut g = h.zero();
    for (i, e) in w.idempotents.iter().enumerate() {
        let ga = kernel
            .iter()
            .map(|k| h.mul(k, e))
            .find(|x| x.iter().any(|c| !c.is_zero()))
            .ok_or_else(|| StarError::NoSuchElement(format!("S² is not inner on block {i}")))?;
        // invert inside the block: solve x·g_α = e_α in e_α H
        let ga_inv = block_inverse(h, &ga, e)
            .ok_or_else(|| StarError::NoSuchElement(format!("block {i} has no invertible solution")))?;
        let t = w.character(i, &ga);
        let t_inv = w.character(i, &ga_inv);
        if t.is_zero() || t_inv.is_zero() {
            return Err(StarError::NoSuchElement(format!("trace vanishes on block {i}")));
        }
        // λ² = tr(g_α⁻¹)/tr(g_α)
        let ratio = &t_inv / &t;
        let roots = square_roots(&ratio, h.conductor());
        let lambda = roots
            .into_iter()
            .filter(|l| !l.is_zero())
            .max_by(|a, b| {
                let ra = (a * &t).to_complex().re;
                let rb = (b * &t).to_complex().re;
                ra.total_cmp(&rb)
            })
            .ok_or_else(|| StarError::NoSuchElement(format!("λ² = {ratio} has no root in the field on block {i}")))?;
        crate::linalg::axpy(&mut g, &lambda, &ga);
    }
    let g_inv = alg
        .left_matrix(&g)
        .solve_vector(h.unit())
        .map_err(|_| StarError::NoSuchElement("g is not invertible".into()))?;
    if h.antipode(&g) != g_inv {
        return Err(StarError::NoSuchElement("S(g) ≠ g⁻¹".into()));
    }
    if !crate::qt::is_grouplike(h, &g) {
        return Err(StarError::NoSuchElement("g is not group-like".into()));
    }
    for i in 0..w.len() {
        let (a, b) = (w.character(i, &g), w.character(i, &g_inv));
        if a != b || a.is_zero() {
            return Err(StarError::NoSuchElement(format!("trace condition fails on block {i}")));
        }
    }
    Ok(g)
}

fn block_inverse(h: &QuantumGroupoid, x: &[FieldElement], e: &[FieldElement]) -> Option<Vector> {
    // (x + 1 − e)⁻¹ e
    let one_minus_e = crate::linalg::vec_sub(h.unit(), e);
    let y = crate::linalg::vec_add(x, &one_minus_e);
    let inv = h.algebra().left_matrix(&y).solve_vector(h.unit()).ok()?;
    Some(h.mul(&inv, e))
}

/// ν = u⁻¹g, verified as a ribbon element and found among find_ribbons when that succeeds.
pub fn star_ribbon(qt: &QtData, g: &[FieldElement]) -> Result<RibbonData, StarError> {
    let h = &qt.h;
    let nu = h.mul(&qt.u_inv, g);
    if !is_ribbon(qt, &nu) {
        return Err(StarError::NotRibbon);
    }
    let all = find_ribbons(qt)?;
    all.into_iter().find(|r| r.nu == nu).ok_or(StarError::NotRibbon)
}

/// R̄ = R* with * applied factorwise.
pub fn rbar_is_r_star(qt: &QtData, star: &Matrix) -> bool {
    star_tensor(star, &qt.r.r) == qt.r.rbar
}

/// S(u⁻¹) = u*.
pub fn drinfeld_star_identity(qt: &QtData, star: &Matrix) -> bool {
    qt.h.antipode(&qt.u_inv) == star_apply(star, &qt.u)
}

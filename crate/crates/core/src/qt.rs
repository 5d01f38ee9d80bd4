//! Quasitriangular and ribbon structure: R-matrices, Drinfeld elements, ribbons, braidings, traces.

use thiserror::Error;

use crate::algebra::Algebra;
use crate::field::FieldElement;
use crate::linalg::{unit_vector, vec_add, vec_scale, Matrix, Vector};
use crate::rep::{ambient_action, flip_matrix, tensor_many, tensor_module, unit_module, HModule, RepError};
use crate::roots::square_roots;
use crate::tensor::Tensor;
use crate::wedderburn::{wedderburn, WedderburnError};
use crate::wha::{column_space, AxiomReport, CoproductTable, QuantumGroupoid};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QtError {
    #[error("R-matrix axioms fail: {}", .0.summary())]
    AxiomFailure(AxiomReport),
    #[error("R-matrix passes the axioms but a derived identity fails (implementation bug): {}", .0.summary())]
    TheoremFailed(AxiomReport),
    #[error("no R-matrix attached")]
    NoRMatrix,
    #[error("no R-bar exists for this R")]
    NoInverse,
    #[error("square root of {value} needed on block {block} is not in Q(zeta_{conductor})")]
    SquareRootNotInField { block: usize, value: String, conductor: u32 },
    #[error("algebra is not semisimple")]
    NotSemisimple,
    #[error("algebra does not split: {0}")]
    NotSplit(String),
    #[error("quantum groupoid is not connected; the trace is H_t-valued")]
    NotConnected,
    #[error(transparent)]
    Rep(#[from] RepError),
}

impl From<WedderburnError> for QtError {
    fn from(e: WedderburnError) -> Self {
        match e {
            WedderburnError::NotSemisimple { .. } => QtError::NotSemisimple,
            other => QtError::NotSplit(other.to_string()),
        }
    }
}

/// R and its weak inverse R̄.
#[derive(Debug, Clone, PartialEq)]
pub struct RMatrixData {
    pub r: Tensor,
    pub rbar: Tensor,
}

/// A verified quasitriangular structure with its Drinfeld elements and the map F.
#[derive(Debug, Clone)]
pub struct QtData {
    pub h: QuantumGroupoid,
    pub r: RMatrixData,
    pub u: Vector,
    pub u_inv: Vector,
    pub v: Vector,
    pub v_inv: Vector,
    /// F(ξ^j) in column j.
    pub f: Matrix,
    /// Basis of W_s = {φ : φ = φ∘Ad₁ʳ}, as covectors.
    pub ws_basis: Vec<Vector>,
    /// Axioms and derived identities, all passed.
    pub report: AxiomReport,
}

impl QtData {
    /// R₂₁R.
    pub fn monodromy(&self) -> Tensor {
        self.h.tmul(&self.r.r.flip(), &self.r.r)
    }

    /// (vu)⁻¹ = u⁻¹v⁻¹.
    pub fn vu_inverse(&self) -> Vector {
        self.h.mul(&self.u_inv, &self.v_inv)
    }
}

fn tensor_witness(a: &Tensor, b: &Tensor) -> Option<Vec<usize>> {
    a.sub(b).iter().next().map(|(i, _)| i)
}

fn check_all(n: usize, f: impl Fn(usize) -> bool) -> Option<Vec<usize>> {
    (0..n).find(|&i| !f(i)).map(|i| vec![i])
}

fn pure2(a: &[FieldElement], b: &[FieldElement]) -> Tensor {
    Tensor::pure(&[a, b])
}

/// Solve for X with X·R = Δ(1), R·X = Δ^op(1) and X = Δ(1)XΔ^op(1).
fn solve_rbar(h: &QuantumGroupoid, r: &Tensor) -> Option<Tensor> {
    let n = h.dim();
    let n2 = n * n;
    let d1 = h.delta_one();
    let d1op = h.delta_op_one();
    let cols: Vec<Vector> = (0..n2)
        .map(|k| {
            let e = Tensor::basis(n, &[k / n, k % n]);
            let mut col = h.tmul(&e, r).to_dense();
            col.extend(h.tmul(r, &e).to_dense());
            col.extend(h.tmul_all(&[&d1, &e, &d1op]).sub(&e).to_dense());
            col
        })
        .collect();
    let m = Matrix::from_columns(3 * n2, &cols);
    let mut rhs = d1.to_dense();
    rhs.extend(d1op.to_dense());
    rhs.extend(vec![FieldElement::zero(); n2]);
    m.solve_vector(&rhs).ok().map(|x| Tensor::from_dense2(n, &x))
}

// Above this dimension R̄ is taken to be (S⊗id)R and verified through the defining equations.
const RBAR_SOLVE_MAX_DIM: usize = 16;

/// Validate R against the quasitriangular axioms, then verify the derived identities and
/// compute u, v, F and W_s.
pub fn validate_r(h: &QuantumGroupoid, r: &Tensor) -> Result<QtData, QtError> {
    let n = h.dim();
    let mut rep = AxiomReport::default();
    let d1 = h.delta_one();
    let d1op = h.delta_op_one();
    let one = h.unit().clone();

    rep.push("r_truncation", tensor_witness(&h.tmul_all(&[&d1op, r, &d1]), r));
    rep.push(
        "r_intertwines",
        check_all(n, |a| {
            let x = h.coproduct(&h.basis(a));
            h.tmul(&x.flip(), r) == h.tmul(r, &x)
        }),
    );
    let r13 = r.insert_factor(1, &one);
    let r12 = r.insert_factor(2, &one);
    let r23 = r.insert_factor(0, &one);
    rep.push("r_coproduct_second", tensor_witness(&h.delta_factor(r, 1), &h.tmul(&r13, &r12)));
    rep.push("r_coproduct_first", tensor_witness(&h.delta_factor(r, 0), &h.tmul(&r13, &r23)));

    let candidate = if n <= RBAR_SOLVE_MAX_DIM {
        solve_rbar(h, r)
    } else {
        Some(h.antipode_factor(r, 0))
    };
    let rbar = match candidate {
        Some(x) => x,
        None => {
            rep.push("rbar_exists", Some(Vec::new()));
            return Err(QtError::AxiomFailure(rep));
        }
    };
    rep.push("rbar_truncation", tensor_witness(&h.tmul_all(&[&d1, &rbar, &d1op]), &rbar));
    rep.push("r_rbar", tensor_witness(&h.tmul(r, &rbar), &d1op));
    rep.push("rbar_r", tensor_witness(&h.tmul(&rbar, r), &d1));
    if !rep.all_passed() {
        return Err(QtError::AxiomFailure(rep));
    }

    let s_inv = h.antipode_inverse().map_err(|_| QtError::TheoremFailed(rep.clone()))?;
    let cd = h.counital_data();
    let s = h.antipode_matrix();

    rep.push(
        "yang_baxter",
        tensor_witness(&h.tmul_all(&[&r12, &r13, &r23]), &h.tmul_all(&[&r23, &r13, &r12])),
    );
    let scalar1 = Tensor::from_vector(&one);
    rep.push("counit_first", tensor_witness(&h.counit_factor(r, 0), &scalar1));
    rep.push("counit_second", tensor_witness(&h.counit_factor(r, 1), &scalar1));
    rep.push("eps_s_first", tensor_witness(&h.matrix_factor(r, 0, &cd.eps_s), &d1));
    rep.push(
        "eps_s_second",
        tensor_witness(&h.matrix_factor(r, 1, &cd.eps_s), &h.matrix_factor(&d1op, 0, &s_inv)),
    );
    rep.push("eps_t_first", tensor_witness(&h.matrix_factor(r, 0, &cd.eps_t), &d1op));
    rep.push(
        "eps_t_second",
        tensor_witness(&h.matrix_factor(r, 1, &cd.eps_t), &h.matrix_factor(&d1, 0, &s_inv)),
    );
    rep.push("antipode_first_is_rbar", tensor_witness(&h.antipode_factor(r, 0), &rbar));
    rep.push("antipode_inverse_second_is_rbar", tensor_witness(&h.matrix_factor(r, 1, &s_inv), &rbar));
    rep.push(
        "antipode_both_fixes_r",
        tensor_witness(&h.antipode_factor(&h.antipode_factor(r, 0), 1), r),
    );

    // the six commutation identities with H_t and H_s
    let zs = &cd.ht_basis;
    let ys = &cd.hs_basis;
    let six: [(&'static str, Box<dyn Fn(usize) -> bool>); 6] = [
        ("ht_second_to_first", Box::new(|i| h.tmul(&pure2(&one, &zs[i]), r) == h.tmul(r, &pure2(&zs[i], &one)))),
        ("hs_first_to_second", Box::new(|i| h.tmul(&pure2(&ys[i], &one), r) == h.tmul(r, &pure2(&one, &ys[i])))),
        (
            "ht_left_antipode",
            Box::new(|i| h.tmul(&pure2(&zs[i], &one), r) == h.tmul(&pure2(&one, &h.antipode(&zs[i])), r)),
        ),
        (
            "hs_left_antipode",
            Box::new(|i| h.tmul(&pure2(&one, &ys[i]), r) == h.tmul(&pure2(&s_inv.apply(&ys[i]), &one), r)),
        ),
        (
            "hs_right_antipode",
            Box::new(|i| h.tmul(r, &pure2(&ys[i], &one)) == h.tmul(r, &pure2(&one, &h.antipode(&ys[i])))),
        ),
        (
            "ht_right_antipode",
            Box::new(|i| h.tmul(r, &pure2(&one, &zs[i])) == h.tmul(r, &pure2(&s_inv.apply(&zs[i]), &one))),
        ),
    ];
    for (name, f) in six.iter() {
        let len = if name.starts_with("ht") { zs.len() } else { ys.len() };
        rep.push(name, check_all(len, f));
    }

    // Drinfeld elements
    let u = h.multiply_out(&h.antipode_factor(&r.flip(), 0));
    let s2 = s.mul(s);
    let u_inv = h.multiply_out(&h.matrix_factor(&r.flip(), 1, &s2));
    let v = h.antipode(&u);
    let v_inv = h.antipode(&u_inv);
    rep.push("u_invertible", (h.mul(&u, &u_inv) != one || h.mul(&u_inv, &u) != one).then(Vec::new));
    rep.push(
        "antipode_square_is_ad_u",
        check_all(n, |a| h.antipode(&h.antipode(&h.basis(a))) == h.mul_all(&[&u, &h.basis(a), &u_inv])),
    );
    let rbar21 = rbar.flip();
    rep.push(
        "coproduct_of_u",
        tensor_witness(&h.coproduct(&u), &h.tmul_all(&[&rbar, &rbar21, &pure2(&u, &u)])),
    );
    let uv = h.mul(&u, &v);
    rep.push("uv_commute", (uv != h.mul(&v, &u)).then(Vec::new));
    rep.push(
        "uv_central",
        check_all(n, |a| h.mul(&uv, &h.basis(a)) == h.mul(&h.basis(a), &uv)),
    );
    let g = h.mul(&u, &v_inv);
    let g_inv = h.mul(&v, &u_inv);
    let gg = pure2(&g, &g);
    let dg = h.coproduct(&g);
    rep.push(
        "uv_inverse_grouplike",
        (dg != h.tmul(&gg, &d1) || dg != h.tmul(&d1, &gg) || h.mul(&g, &g_inv) != one).then(Vec::new),
    );
    let s4 = s2.mul(&s2);
    rep.push(
        "antipode_fourth_is_ad_g",
        check_all(n, |a| s4.apply(&h.basis(a)) == h.mul_all(&[&g, &h.basis(a), &g_inv])),
    );

    // R₁ : φ ↦ (id⊗φ)R is an anti-homomorphism and a coalgebra map Ĥ → H
    let r1 = Matrix::from_fn(n, n, |i, j| r.get(&[i, j]));
    let dual = h.dual();
    rep.push(
        "r1_antihomomorphism",
        (0..n * n)
            .find(|&k| {
                let (a, b) = (k / n, k % n);
                r1.apply(&dual.mul(&dual.basis(a), &dual.basis(b))) != h.mul(&r1.column(b), &r1.column(a))
            })
            .map(|k| vec![k / n, k % n]),
    );
    rep.push(
        "r1_coalgebra_map",
        check_all(n, |c| {
            let lhs = h.coproduct(&r1.column(c));
            let t = dual.coproduct(&dual.basis(c));
            h.matrix_factor(&h.matrix_factor(&t, 0, &r1), 1, &r1) == lhs
        }),
    );

    // F(φ) = (φ⊗id)(R₂₁R)
    let q = h.tmul(&r.flip(), r);
    let f = Matrix::from_fn(n, n, |i, j| q.get(&[j, i]));
    let centralizer = h.algebra().centralizer(&cd.hs_basis);
    let fimg = column_space(&f);
    rep.push(
        "f_image_in_centralizer",
        (!fimg.iter().all(|x| crate::wha::in_span(n, &centralizer, x))).then(Vec::new),
    );
    let ws_basis = cd.ad1_right.transpose().sub(&Matrix::identity(n)).kernel();

    if !rep.all_passed() {
        return Err(QtError::TheoremFailed(rep));
    }
    Ok(QtData {
        h: h.clone(),
        r: RMatrixData { r: r.clone(), rbar },
        u,
        u_inv,
        v,
        v_inv,
        f,
        ws_basis,
        report: rep,
    })
}

/// Validate the R-matrix attached to `h`.
pub fn validate_attached(h: &QuantumGroupoid) -> Result<QtData, QtError> {
    let r = h.r_matrix.as_ref().ok_or(QtError::NoRMatrix)?;
    validate_r(h, r)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorizability {
    pub is_factorizable: bool,
    pub rank_on_ws: usize,
    pub centralizer_dim: usize,
}

pub fn factorizability(qt: &QtData) -> Factorizability {
    let h = &qt.h;
    let cols: Vec<Vector> = qt.ws_basis.iter().map(|phi| qt.f.apply(phi)).collect();
    let rank = if cols.is_empty() {
        0
    } else {
        Matrix::from_columns(h.dim(), &cols).rank()
    };
    let cdim = h.algebra().centralizer(&h.hs_basis()).len();
    Factorizability {
        is_factorizable: rank == cdim,
        rank_on_ws: rank,
        centralizer_dim: cdim,
    }
}

/// A ribbon element with its scalars on the Wedderburn blocks.
#[derive(Debug, Clone, PartialEq)]
pub struct RibbonData {
    pub nu: Vector,
    pub nu_inv: Vector,
    /// θ_i: the scalar by which ν acts on the i-th irreducible.
    pub theta: Vec<FieldElement>,
}

/// The scalar of a central element on the block with central idempotent e.
fn block_scalar(h: &QuantumGroupoid, x: &[FieldElement], e: &[FieldElement]) -> FieldElement {
    let xe = h.mul(x, e);
    let i = e.iter().position(|c| !c.is_zero()).expect("nonzero idempotent");
    &xe[i] / &e[i]
}

fn block_square_roots(c: &FieldElement, block: usize, conductor: u32) -> Result<Vec<FieldElement>, QtError> {
    let roots = square_roots(c, conductor);
    if roots.is_empty() {
        Err(QtError::SquareRootNotInField {
            block,
            value: c.to_string(),
            conductor,
        })
    } else {
        Ok(roots)
    }
}

fn combine(h: &QuantumGroupoid, idem: &[Vector], s: &[FieldElement]) -> Vector {
    idem.iter()
        .zip(s)
        .fold(h.zero(), |acc, (e, c)| vec_add(&acc, &vec_scale(e, c)))
}

/// Whether g is group-like: invertible with Δ(g) = (g⊗g)Δ(1) = Δ(1)(g⊗g).
pub fn is_grouplike(h: &QuantumGroupoid, g: &[FieldElement]) -> bool {
    let d1 = h.delta_one();
    let gg = pure2(g, g);
    let dg = h.coproduct(g);
    dg == h.tmul(&gg, &d1) && dg == h.tmul(&d1, &gg) && h.algebra().left_matrix(g).rank() == h.dim()
}

/// Whether ν is a ribbon element for the given R-matrix.
pub fn is_ribbon(qt: &QtData, nu: &[FieldElement]) -> bool {
    let h = &qt.h;
    let central = (0..h.dim()).all(|a| h.mul(nu, &h.basis(a)) == h.mul(&h.basis(a), nu));
    central
        && h.antipode(nu) == nu
        && h.algebra().left_matrix(nu).rank() == h.dim()
        && h.coproduct(nu) == h.tmul(&qt.monodromy(), &pure2(nu, nu))
}

/// All ribbon elements ν = Σ s_i e_i with s_i² = c_i⁻¹, where vu = Σ c_i e_i.
pub fn find_ribbons(qt: &QtData) -> Result<Vec<RibbonData>, QtError> {
    let h = &qt.h;
    let w = wedderburn(h.algebra())?;
    let vu = h.mul(&qt.v, &qt.u);
    let mut choices = Vec::with_capacity(w.len());
    for (i, e) in w.idempotents.iter().enumerate() {
        let c = block_scalar(h, &vu, e);
        let cinv = c.inverse().map_err(|_| QtError::TheoremFailed(qt.report.clone()))?;
        choices.push(block_square_roots(&cinv, i, h.conductor())?);
    }
    let mut found = Vec::new();
    let mut idx = vec![0usize; choices.len()];
    loop {
        let s: Vec<FieldElement> = idx.iter().zip(&choices).map(|(&k, c)| c[k].clone()).collect();
        let nu = combine(h, &w.idempotents, &s);
        if is_ribbon(qt, &nu) {
            let sinv: Vec<FieldElement> = s.iter().map(|x| x.inverse().expect("nonzero")).collect();
            found.push(RibbonData {
                nu_inv: combine(h, &w.idempotents, &sinv),
                nu,
                theta: s,
            });
        }
        // odometer over the sign choices
        let mut k = 0;
        loop {
            if k == idx.len() {
                return verify_ribbon_ratios(qt, found);
            }
            idx[k] += 1;
            if idx[k] < choices[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

fn verify_ribbon_ratios(qt: &QtData, found: Vec<RibbonData>) -> Result<Vec<RibbonData>, QtError> {
    let h = &qt.h;
    let one = h.unit();
    let vu_inv = qt.vu_inverse();
    let mut rep = AxiomReport::default();
    for (i, a) in found.iter().enumerate() {
        let sq = h.mul(&a.nu, &a.nu);
        let counital = &h.eps_t(&a.nu) == one && &h.eps_s(&a.nu) == one;
        rep.push("ribbon_square", (sq != vu_inv || !counital).then(|| vec![i]));
        for (j, b) in found.iter().enumerate().skip(i + 1) {
            let e = h.mul(&b.nu, &a.nu_inv);
            let ok = is_grouplike(h, &e) && &h.mul(&e, &e) == one;
            rep.push("ribbon_ratio_grouplike", (!ok).then(|| vec![i, j]));
        }
    }
    if rep.all_passed() {
        Ok(found)
    } else {
        Err(QtError::TheoremFailed(rep))
    }
}

/// H̃ = H + Hν with ν² = (vu)⁻¹ adjoined; basis e_i then e_iν.
pub fn ribbon_extension(qt: &QtData) -> Result<(QuantumGroupoid, RibbonData), QtError> {
    let h = &qt.h;
    let n = h.dim();
    let w = qt.vu_inverse();
    let unit = {
        let mut u = h.unit().clone();
        u.extend(vec![FieldElement::zero(); n]);
        u
    };
    let alg = Algebra::from_fn(h.conductor(), 2 * n, unit, |a, b| {
        let (ia, na) = (a % n, a >= n);
        let (ib, nb) = (b % n, b >= n);
        let mut p = h.mul(&h.basis(ia), &h.basis(ib));
        if na && nb {
            p = h.mul(&p, &w);
        }
        let mut out = vec![FieldElement::zero(); 2 * n];
        let off = if na != nb { n } else { 0 };
        for (i, c) in p.into_iter().enumerate() {
            out[off + i] = c;
        }
        out
    });
    let mono = qt.monodromy();
    let mut comul: CoproductTable = (0..n).map(|c| h.coproduct_basis(c).to_vec()).collect();
    for c in 0..n {
        let t = h.tmul(&h.coproduct(&h.basis(c)), &mono);
        comul.push(t.iter().map(|(i, v)| (i[0] + n, i[1] + n, v.clone())).collect());
    }
    let mut counit = h.counit().clone();
    counit.extend(h.counit().iter().cloned());
    let s = h.antipode_matrix();
    let st = Matrix::from_fn(2 * n, 2 * n, |r, c| {
        if (r >= n) == (c >= n) {
            s[(r % n, c % n)].clone()
        } else {
            FieldElement::zero()
        }
    });
    let mut labels: Vec<String> = h.labels().to_vec();
    labels.extend(h.labels().iter().map(|l| format!("{l}·nu")));
    let mut ext = QuantumGroupoid::new(h.conductor(), labels, alg, comul, counit, st)
        .map_err(|e| QtError::NotSplit(e.to_string()))?;
    let mut r = Tensor::zero(2 * n, 2);
    for (i, v) in qt.r.r.iter() {
        r.add_at(&i, v);
    }
    ext.r_matrix = Some(r);
    let mut nu = vec![FieldElement::zero(); 2 * n];
    for (i, c) in h.unit().iter().enumerate() {
        nu[n + i] = c.clone();
    }
    // ν⁻¹ = (vu)ν
    let vu = h.mul(&qt.v, &qt.u);
    let mut nu_inv = vec![FieldElement::zero(); 2 * n];
    for (i, c) in vu.into_iter().enumerate() {
        nu_inv[n + i] = c;
    }
    ext.ribbon = Some(nu.clone());
    let theta = match wedderburn(ext.algebra()) {
        Ok(wd) => wd.idempotents.iter().map(|e| block_scalar(&ext, &nu, e)).collect(),
        Err(_) => Vec::new(),
    };
    Ok((ext, RibbonData { nu, nu_inv, theta }))
}

/// Inclusion H → H̃ as a 2n × n matrix.
pub fn extension_inclusion(n: usize) -> Matrix {
    Matrix::from_fn(2 * n, n, |r, c| if r == c { FieldElement::one() } else { FieldElement::zero() })
}

/// c_{V,W}, its inverse and the twists, in truncated bases.
#[derive(Debug, Clone)]
pub struct Braiding {
    pub c: Matrix,
    pub c_inv: Matrix,
    pub theta_v: Matrix,
    pub theta_w: Matrix,
    pub checks: AxiomReport,
}

/// Ambient c_{V,W}: v⊗w ↦ R″w ⊗ R′v.
pub fn braiding_ambient(qt: &QtData, v: &HModule, w: &HModule) -> Matrix {
    ambient_action(&[w, v], &qt.r.r.flip()).mul(&flip_matrix(v.rank, w.rank))
}

/// Ambient c⁻¹_{V,W}: w⊗v ↦ R̄′v ⊗ R̄″w.
pub fn braiding_inverse_ambient(qt: &QtData, v: &HModule, w: &HModule) -> Matrix {
    ambient_action(&[v, w], &qt.r.rbar).mul(&flip_matrix(w.rank, v.rank))
}

/// Permutation matrix moving the first factor of U⊗V⊗W to the end.
fn cycle_first_to_last(ru: usize, rv: usize, rw: usize) -> Matrix {
    let d = ru * rv * rw;
    let mut m = Matrix::zeros(d, d);
    for a in 0..ru {
        for b in 0..rv {
            for c in 0..rw {
                m[((b * rw + c) * ru + a, (a * rv + b) * rw + c)] = FieldElement::one();
            }
        }
    }
    m
}

/// Permutation matrix moving the last factor of U⊗V⊗W to the front.
fn cycle_last_to_first(ru: usize, rv: usize, rw: usize) -> Matrix {
    let d = ru * rv * rw;
    let mut m = Matrix::zeros(d, d);
    for a in 0..ru {
        for b in 0..rv {
            for c in 0..rw {
                m[((c * ru + a) * rv + b, (a * rv + b) * rw + c)] = FieldElement::one();
            }
        }
    }
    m
}

/// Both hexagon identities on U⊗V⊗W, compared on the truncated subspace.
pub fn hexagons_hold(qt: &QtData, u: &HModule, v: &HModule, w: &HModule) -> Result<(bool, bool), QtError> {
    let h = &qt.h;
    let t = tensor_many(h, &[u, v, w])?;
    let (ru, rv, rw) = (u.rank, v.rank, w.rank);
    let r21 = qt.r.r.flip();
    // c_{U,V⊗W} = (id_V ⊗ c_{U,W})(c_{U,V} ⊗ id_W)
    let lhs1 = ambient_action(&[v, w, u], &h.delta_factor(&r21, 0)).mul(&cycle_first_to_last(ru, rv, rw));
    let rhs1 = Matrix::identity(rv)
        .kron(&braiding_ambient(qt, u, w))
        .mul(&braiding_ambient(qt, u, v).kron(&Matrix::identity(rw)));
    // c_{U⊗V,W} = (c_{U,W} ⊗ id_V)(id_U ⊗ c_{V,W})
    let lhs2 = ambient_action(&[w, u, v], &h.delta_factor(&r21, 1)).mul(&cycle_last_to_first(ru, rv, rw));
    let rhs2 = braiding_ambient(qt, u, w)
        .kron(&Matrix::identity(rv))
        .mul(&Matrix::identity(ru).kron(&braiding_ambient(qt, v, w)));
    Ok((lhs1.mul(&t.embed) == rhs1.mul(&t.embed), lhs2.mul(&t.embed) == rhs2.mul(&t.embed)))
}

pub fn braiding_twist(qt: &QtData, ribbon: &RibbonData, v: &HModule, w: &HModule) -> Result<Braiding, QtError> {
    let h = &qt.h;
    let vw = tensor_module(h, v, w)?;
    let wv = tensor_module(h, w, v)?;
    let c = wv.project.mul(&braiding_ambient(qt, v, w)).mul(&vw.embed);
    let c_inv = vw.project.mul(&braiding_inverse_ambient(qt, v, w)).mul(&wv.embed);
    let theta_v = v.act(&ribbon.nu);
    let theta_w = w.act(&ribbon.nu);
    let mut checks = AxiomReport::default();
    let id_vw = Matrix::identity(vw.module.rank);
    let id_wv = Matrix::identity(wv.module.rank);
    checks.push("braiding_invertible", (c_inv.mul(&c) != id_vw || c.mul(&c_inv) != id_wv).then(Vec::new));
    checks.push(
        "braiding_linear",
        check_all(h.dim(), |a| c.mul(&vw.module.action[a]) == wv.module.action[a].mul(&c)),
    );
    let nat = |f: &Matrix, g: &Matrix| {
        let fg = vw.project.mul(&f.kron(g)).mul(&vw.embed);
        let gf = wv.project.mul(&g.kron(f)).mul(&wv.embed);
        c.mul(&fg) == gf.mul(&c)
    };
    let ends_v = crate::rep::hom_space(v, v)?;
    let ends_w = crate::rep::hom_space(w, w)?;
    let iv = Matrix::identity(v.rank);
    let iw = Matrix::identity(w.rank);
    checks.push(
        "braiding_natural",
        (!(ends_v.iter().all(|f| nat(f, &iw)) && ends_w.iter().all(|g| nat(&iv, g)))).then(Vec::new),
    );
    let (hex1, hex2) = hexagons_hold(qt, v, v, w)?;
    checks.push("hexagon", (!(hex1 && hex2)).then(Vec::new));
    // θ_{V⊗W} = c_{W,V} c_{V,W} (θ_V ⊗ θ_W)
    let cwv = vw.project.mul(&braiding_ambient(qt, w, v)).mul(&wv.embed);
    let tt = vw.project.mul(&theta_v.kron(&theta_w)).mul(&vw.embed);
    checks.push("twist", (vw.module.act(&ribbon.nu) != cwv.mul(&c).mul(&tt)).then(Vec::new));
    Ok(Braiding {
        c,
        c_inv,
        theta_v,
        theta_w,
        checks,
    })
}

/// tr_q(f) as the endomorphism z ↦ Σ Tr(S(1₁)uνf)·z1₂ of H_t, in unit-object coordinates.
pub fn quantum_trace_map(qt: &QtData, ribbon: &RibbonData, v: &HModule, f: &Matrix) -> Matrix {
    let h = &qt.h;
    let unit = unit_module(h);
    let k = unit.coords.dim();
    let unu = h.mul(&qt.u, &ribbon.nu);
    let mut acc = h.zero();
    for (idx, c) in h.delta_one().iter() {
        let x = h.mul(&h.antipode(&h.basis(idx[0])), &unu);
        let t = v.act(&x).mul(f).trace();
        if !t.is_zero() {
            acc = vec_add(&acc, &vec_scale(&h.basis(idx[1]), &(c * &t)));
        }
    }
    let cols: Vec<Vector> = (0..k)
        .map(|j| unit.coordinates(&h.mul(&unit.element(&unit_vector(k, j)), &acc)))
        .collect();
    Matrix::from_columns(k, &cols)
}

/// Scalar quantum trace (dim H_t)⁻¹ Tr(uνf) for connected H.
pub fn quantum_trace(qt: &QtData, ribbon: &RibbonData, v: &HModule, f: &Matrix) -> Result<FieldElement, QtError> {
    let h = &qt.h;
    if !h.is_connected() {
        return Err(QtError::NotConnected);
    }
    let dim_t = FieldElement::from_integer(h.ht_basis().len() as i64);
    let unu = h.mul(&qt.u, &ribbon.nu);
    Ok(&v.act(&unu).mul(f).trace() / &dim_t)
}

pub fn quantum_dim(qt: &QtData, ribbon: &RibbonData, v: &HModule) -> Result<FieldElement, QtError> {
    quantum_trace(qt, ribbon, v, &Matrix::identity(v.rank))
}

/// The trivial R = Δ^op(1) for cocommutative examples.
pub fn trivial_r(h: &QuantumGroupoid) -> Tensor {
    h.delta_op_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn missing_square_root_is_reported() {
        let e = block_square_roots(&FieldElement::from_integer(2), 3, 1).unwrap_err();
        assert!(matches!(e, QtError::SquareRootNotInField { block: 3, .. }));
        assert_eq!(block_square_roots(&FieldElement::from_integer(4), 0, 1).unwrap().len(), 2);
    }
}

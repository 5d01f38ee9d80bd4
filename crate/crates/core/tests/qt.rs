use qgroupoid::examples::{builtin, elementary};
use qgroupoid::linalg::{unit_vector, Matrix};
use qgroupoid::qt::*;
use qgroupoid::rep::{hom_space, irreducibles, tensor_module, unit_module, HModule};
use qgroupoid::tensor::Tensor;
use qgroupoid::wha::QuantumGroupoid;
use qgroupoid::FieldElement;

fn one_tensor(h: &QuantumGroupoid) -> Tensor {
    Tensor::pure(&[h.unit(), h.unit()])
}

fn elementary_qt(p: &[usize]) -> QtData {
    validate_attached(&elementary(p).unwrap()).unwrap()
}

fn z2_qt() -> QtData {
    let h = builtin("z2").unwrap();
    validate_r(&h, &one_tensor(&h)).unwrap()
}

#[test]
fn elementary_r_matrices_validate() {
    for p in [vec![1], vec![1, 1], vec![1, 2]] {
        let qt = elementary_qt(&p);
        let one = qt.h.unit().clone();
        assert_eq!(qt.u, one, "{p:?}");
        assert_eq!(qt.v, one, "{p:?}");
        assert!(qt.report.get("yang_baxter").unwrap().passed);
        assert!(qt.report.all_passed());
    }
}

#[test]
fn trivial_r_on_z2() {
    let qt = z2_qt();
    assert_eq!(&qt.u, qt.h.unit());
    assert_eq!(qt.r.rbar, one_tensor(&qt.h));
    assert_eq!(trivial_r(&qt.h), one_tensor(&qt.h));
}

#[test]
fn untruncated_r_on_pair_groupoid_fails_membership() {
    let h = builtin("pair2").unwrap();
    match validate_r(&h, &one_tensor(&h)) {
        Err(QtError::AxiomFailure(rep)) => {
            let c = rep.get("r_truncation").unwrap();
            assert!(!c.passed);
            assert!(c.witness.is_some());
        }
        other => panic!("expected a membership failure, got {other:?}"),
    }
}

#[test]
fn groupoid_algebras_are_triangular_with_trivial_r() {
    // Δ is cocommutative on groupoid algebras, so R = Δ^op(1) works, R̄ = Δ(1) and F(Ĥ) = H_t
    for name in ["z2", "pair2", "s3", "z2+pt"] {
        let h = builtin(name).unwrap();
        let qt = validate_r(&h, &trivial_r(&h)).unwrap();
        assert_eq!(qt.r.rbar, h.delta_one(), "{name}");
        assert_eq!(qgroupoid::wha::column_space(&qt.f), h.ht_basis(), "{name}");
        assert_eq!(factorizability(&qt).rank_on_ws, h.ht_basis().len(), "{name}");
    }
    // pair2 ≅ M₂ has C_H(H_s) = H_t, so even the triangular structure is factorizable
    let p = builtin("pair2").unwrap();
    assert!(factorizability(&validate_r(&p, &trivial_r(&p)).unwrap()).is_factorizable);
}

#[test]
fn broken_r_is_reported() {
    let h = elementary(&[1, 1]).unwrap();
    let r = h.r_matrix.clone().unwrap().scale(&FieldElement::from_integer(2));
    assert!(matches!(validate_r(&h, &r), Err(QtError::AxiomFailure(_))));
    assert_eq!(validate_attached(&builtin("z2").unwrap()).unwrap_err(), QtError::NoRMatrix);
}

#[test]
fn factorizability_examples() {
    let f = factorizability(&z2_qt());
    assert!(!f.is_factorizable);
    assert_eq!(f.rank_on_ws, 1);
    assert_eq!(f.centralizer_dim, 2);
    // triangular: F(Ĥ) = H_t
    let qt = z2_qt();
    assert_eq!(qgroupoid::wha::column_space(&qt.f), qt.h.ht_basis());
    for p in [vec![1, 1], vec![1, 2]] {
        assert!(factorizability(&elementary_qt(&p)).is_factorizable);
    }
}

#[test]
fn drinfeld_element_identities() {
    for p in [vec![1, 1], vec![1, 2]] {
        let qt = elementary_qt(&p);
        let h = &qt.h;
        let n = h.dim();
        for a in 0..n {
            let x = unit_vector(n, a);
            assert_eq!(h.antipode(&h.antipode(&x)), h.mul_all(&[&qt.u, &x, &qt.u_inv]));
        }
        let rbar = &qt.r.rbar;
        let lhs = h.coproduct(&qt.u);
        let rhs = h.tmul_all(&[rbar, &rbar.flip(), &Tensor::pure(&[&qt.u, &qt.u])]);
        assert_eq!(lhs, rhs);
        assert_eq!(h.antipode_factor(&qt.r.r, 0), qt.r.rbar);
    }
}

#[test]
fn ribbons() {
    let qt = elementary_qt(&[1, 1]);
    let rib = find_ribbons(&qt).unwrap();
    assert_eq!(rib.len(), 1);
    assert_eq!(&rib[0].nu, qt.h.unit());
    let qt = z2_qt();
    let rib = find_ribbons(&qt).unwrap();
    assert!(rib.iter().any(|r| &r.nu == qt.h.unit()));
    for r in &rib {
        assert_eq!(qt.h.mul(&r.nu, &r.nu), qt.vu_inverse());
    }
    // -1 squares to (vu)⁻¹ but is not a ribbon
    let minus = qt.h.scalar(&FieldElement::from_integer(-1));
    assert!(!is_ribbon(&qt, &minus));
}

#[test]
fn ribbon_extensions() {
    for (qt, dim) in [(z2_qt(), 4), (elementary_qt(&[1, 1]), 8)] {
        let (ext, rib) = ribbon_extension(&qt).unwrap();
        assert_eq!(ext.dim(), dim);
        let rep = ext.validate_axioms();
        assert!(rep.all_passed(), "{}", rep.summary());
        let eqt = validate_attached(&ext).unwrap();
        assert!(is_ribbon(&eqt, &rib.nu));
        assert_eq!(&ext.eps_t(&rib.nu), ext.unit());
        assert_eq!(&ext.eps_s(&rib.nu), ext.unit());
        assert_eq!(&ext.mul(&rib.nu, &rib.nu_inv), ext.unit());
        let found = find_ribbons(&eqt).unwrap();
        assert!(found.iter().any(|r| r.nu == rib.nu));
        // H sits inside H̃ as a quantum subgroupoid
        let n = qt.h.dim();
        let inc = extension_inclusion(n);
        for a in 0..n {
            for b in 0..n {
                let ab = qt.h.mul(&unit_vector(n, a), &unit_vector(n, b));
                assert_eq!(inc.apply(&ab), ext.mul(&inc.column(a), &inc.column(b)));
            }
            let d = qt.h.coproduct(&unit_vector(n, a));
            let lifted = ext.matrix_factor(&ext.matrix_factor(&embed2(&d, 2 * n), 0, &Matrix::identity(2 * n)), 1, &Matrix::identity(2 * n));
            assert_eq!(ext.coproduct(&inc.column(a)), lifted);
        }
    }
}

fn embed2(t: &Tensor, n: usize) -> Tensor {
    let mut out = Tensor::zero(n, 2);
    for (i, v) in t.iter() {
        out.add_at(&i, v);
    }
    out
}

#[test]
fn braiding_on_z2_is_the_flip() {
    let qt = z2_qt();
    let rib = find_ribbons(&qt).unwrap().into_iter().find(|r| &r.nu == qt.h.unit()).unwrap();
    let irr = irreducibles(&qt.h).unwrap();
    let reg = HModule::regular(&qt.h);
    let mods: Vec<&HModule> = irr.iter().map(|i| &i.module).chain([&reg]).collect();
    for v in &mods {
        for w in &mods {
            let b = braiding_twist(&qt, &rib, v, w).unwrap();
            assert!(b.checks.all_passed(), "{}", b.checks.summary());
            assert_eq!(b.c, qgroupoid::rep::flip_matrix(v.rank, w.rank));
        }
    }
}

#[test]
fn braiding_on_unit_is_identity() {
    let qt = elementary_qt(&[1, 1]);
    let rib = &find_ribbons(&qt).unwrap()[0];
    let unit = unit_module(&qt.h);
    let b = braiding_twist(&qt, rib, &unit.module, &unit.module).unwrap();
    assert!(b.checks.all_passed(), "{}", b.checks.summary());
    assert_eq!(b.c, Matrix::identity(b.c.rows()));
}

#[test]
fn braiding_axioms_on_elementary() {
    for p in [vec![1, 1], vec![1, 2]] {
        let qt = elementary_qt(&p);
        let rib = &find_ribbons(&qt).unwrap()[0];
        let irr = irreducibles(&qt.h).unwrap();
        let v = &irr[0].module;
        let b = braiding_twist(&qt, rib, v, v).unwrap();
        assert!(b.checks.all_passed(), "{p:?}: {}", b.checks.summary());
        let (h1, h2) = hexagons_hold(&qt, v, v, v).unwrap();
        assert!(h1 && h2);
        // tr_q(c²) from the braiding agrees with the monodromy acting on V⊗V
        let vv = tensor_module(&qt.h, v, v).unwrap();
        let double = b.c.mul(&b.c);
        let mono = vv.restrict(&qgroupoid::rep::ambient_action(&[v, v], &qt.monodromy()));
        assert_eq!(double, mono);
    }
}

#[test]
fn quantum_traces() {
    let qt = elementary_qt(&[1, 1]);
    let rib = &find_ribbons(&qt).unwrap()[0];
    let v = &irreducibles(&qt.h).unwrap()[0].module;
    assert_eq!(quantum_dim(&qt, rib, v).unwrap(), FieldElement::one());
    let map = quantum_trace_map(&qt, rib, v, &Matrix::identity(v.rank));
    assert_eq!(map, Matrix::identity(map.rows()));

    let qt = z2_qt();
    let rib = find_ribbons(&qt).unwrap().into_iter().find(|r| &r.nu == qt.h.unit()).unwrap();
    let triv = &irreducibles(&qt.h).unwrap()[0].module;
    assert_eq!(quantum_dim(&qt, &rib, triv).unwrap(), FieldElement::one());

    // tr_q(fg) = tr_q(gf) on End(regular)
    let reg = HModule::regular(&qt.h);
    let ends = hom_space(&reg, &reg).unwrap();
    for f in &ends {
        for g in &ends {
            assert_eq!(
                quantum_trace(&qt, &rib, &reg, &f.mul(g)).unwrap(),
                quantum_trace(&qt, &rib, &reg, &g.mul(f)).unwrap()
            );
        }
    }
}

#[test]
fn scalar_trace_needs_connectedness() {
    let h = builtin("z2+pt").unwrap();
    let qt = validate_r(&h, &trivial_r(&h)).unwrap();
    let rib = find_ribbons(&qt).unwrap().into_iter().find(|r| &r.nu == h.unit()).unwrap();
    let reg = HModule::regular(&h);
    assert_eq!(quantum_dim(&qt, &rib, &reg).unwrap_err(), QtError::NotConnected);
    let map = quantum_trace_map(&qt, &rib, &reg, &Matrix::identity(reg.rank));
    assert_eq!(map.rows(), 2);
}

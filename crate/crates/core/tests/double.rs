use qgroupoid::double::*;
use qgroupoid::examples::{builtin, elementary};
use qgroupoid::linalg::unit_vector;
use qgroupoid::qt::{factorizability, validate_attached, validate_r};
use qgroupoid::rep::irreducibles;
use qgroupoid::FieldElement;

#[test]
fn double_of_z2() {
    let h = builtin("z2").unwrap();
    let data = drinfeld_double(&h).unwrap();
    assert!(data.j_basis.is_empty());
    assert_eq!(data.d.dim(), 4);
    assert!(data.d.algebra().is_commutative());
    let irr = irreducibles(&data.d).unwrap();
    assert_eq!(irr.len(), 4);
    assert!(irr.iter().all(|i| i.module.rank == 1));
    assert!(data.checks.all_passed());
}

#[test]
fn elementary_is_its_own_double() {
    let h = elementary(&[1, 1]).unwrap();
    let data = drinfeld_double(&h).unwrap();
    assert_eq!(data.d.dim(), 4);
    let f = simple_isomorphism(&data.d, &h).expect("isomorphism");
    assert!(data.d.is_morphism_to(&f, &h));
    assert!(f.inverse().is_ok());
    assert!(factorizability(&validate_attached(&data.d).unwrap()).is_factorizable);
}

#[test]
fn isomorphism_search_rejects_non_simple() {
    let z2 = builtin("z2").unwrap();
    assert!(simple_isomorphism(&z2, &z2).is_none());
}

#[test]
fn canonical_r_is_factorizable() {
    for name in ["z2", "pair2", "z2+pt"] {
        let h = builtin(name).unwrap();
        let data = drinfeld_double(&h).unwrap();
        assert_eq!(data.d.dim() + data.j_basis.len(), h.dim() * h.dim(), "{name}");
        let qt = validate_r(&data.d, &data.r.r).unwrap();
        assert_eq!(qt.r.rbar, data.r.rbar, "{name}");
        assert!(qt.report.all_passed(), "{name}: {}", qt.report.summary());
        assert!(factorizability(&qt).is_factorizable, "{name}");
    }
}

#[test]
fn projection_and_section() {
    let h = builtin("pair2").unwrap();
    let data = drinfeld_double(&h).unwrap();
    let m = data.d.dim();
    assert_eq!(data.projection.mul(&data.section), qgroupoid::linalg::Matrix::identity(m));
    for j in &data.j_basis {
        assert!(qgroupoid::linalg::vec_is_zero(&data.projection.apply(j)));
    }
}

#[test]
fn dual_bases_identities() {
    // Σ ξ^i₁⊗ξ^i₂⊗f_i = Σ ξ^i⊗ξ^j⊗f_i f_j and Σ ξ^i⊗f_i₁⊗f_i₂ = Σ ξ^jξ^i⊗f_j⊗f_i, evaluated on basis triples
    for name in ["z2", "pair2", "s3"] {
        let h = builtin(name).unwrap();
        let dual = h.dual();
        let n = h.dim();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    // ⟨Σ ξ^i₁⊗ξ^i₂⊗f_i, f_a⊗f_b⊗ξ^c⟩ = Δ̂(ξ^c)(f_a⊗f_b)
                    let lhs = dual.coproduct(&unit_vector(n, c)).get(&[a, b]);
                    let rhs = h.mul(&h.basis(a), &h.basis(b))[c].clone();
                    assert_eq!(lhs, rhs, "{name}");
                    // ⟨Σ ξ^i⊗f_i₁⊗f_i₂, f_a⊗ξ^b⊗ξ^c⟩ = Δ(f_a)_{bc}
                    let lhs = h.coproduct(&h.basis(a)).get(&[b, c]);
                    let rhs = dual.mul(&unit_vector(n, b), &unit_vector(n, c))[a].clone();
                    assert_eq!(lhs, rhs, "{name}");
                }
            }
        }
    }
}

#[test]
fn dual_double() {
    let h = builtin("z2").unwrap();
    let dd = double_dual(&h).unwrap();
    assert_eq!(dd.dd.dim(), 4);
    assert!(dd.checks.all_passed());
    // unit 1⊗ε: f_a⊗ξ^b at a·n+b with 1 = f_0 and ε = ξ^0 + ξ^1
    let unit = dd.elements.transpose().apply(dd.dd.unit());
    let one = FieldElement::one();
    let zero = FieldElement::zero();
    assert_eq!(unit, vec![one.clone(), one, zero.clone(), zero]);
    for name in ["pair2", "z2+pt"] {
        let h = builtin(name).unwrap();
        let data = drinfeld_double(&h).unwrap();
        let dd = dual_of(&h, &data).unwrap();
        assert_eq!(dd.dd.dim(), data.d.dim(), "{name}");
    }
}

#[test]
fn double_of_s3() {
    let h = builtin("s3").unwrap();
    let t = std::time::Instant::now();
    let data = drinfeld_double(&h).unwrap();
    assert_eq!(data.d.dim(), 36);
    let qt = validate_r(&data.d, &data.r.r).unwrap();
    assert!(factorizability(&qt).is_factorizable);
    eprintln!("D(kS3): {:?}", t.elapsed());
}

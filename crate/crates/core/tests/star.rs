use qgroupoid::double::drinfeld_double;
use qgroupoid::examples::{builtin, elementary};
use qgroupoid::linalg::Matrix;
use qgroupoid::qt::{validate_attached, validate_r};
use qgroupoid::star::*;
use qgroupoid::tensor::Tensor;
use qgroupoid::FieldElement;

#[test]
fn groupoid_star_passes_with_positive_probe() {
    for name in ["z2", "pair2", "s3", "z2+pt"] {
        let h = builtin(name).unwrap();
        let rep = validate_star(&h, h.star.as_ref().unwrap());
        assert!(rep.axioms.all_passed(), "{name}: {}", rep.axioms.summary());
        assert!(rep.probe.positive && rep.probe.heuristic, "{name}");
    }
}

#[test]
fn negated_grouplike_breaks_comultiplicativity() {
    let h = builtin("z2").unwrap();
    // 1* = 1, g* = -g
    let bad = Matrix::from_i64(2, 2, &[1, 0, 0, -1]);
    let rep = validate_star(&h, &bad);
    let failures = rep.axioms.failures();
    assert_eq!(failures[0].name, "comultiplicative");
    assert!(rep.axioms.get("involutive").unwrap().passed);
    assert!(rep.axioms.get("anti_multiplicative").unwrap().passed);
}

#[test]
fn dual_star_passes() {
    for name in ["z2", "pair2", "s3"] {
        let d = builtin(name).unwrap().dual();
        let rep = validate_star(&d, d.star.as_ref().unwrap());
        assert!(rep.axioms.all_passed(), "{name}: {}", rep.axioms.summary());
        assert!(rep.probe.positive, "{name}");
    }
}

#[test]
fn canonical_grouplike_is_one_when_s_is_involutive() {
    for h in [builtin("z2").unwrap(), builtin("pair2").unwrap(), builtin("s3").unwrap(), elementary(&[1, 1]).unwrap()] {
        let g = canonical_grouplike(&h, h.star.as_ref().unwrap()).unwrap();
        assert_eq!(&g, h.unit());
    }
    let h = builtin("z2").unwrap();
    assert_eq!(canonical_grouplike(&h.bare(), &Matrix::identity(1)).unwrap_err().to_string(), "star axioms fail: shape (witness [])");
}

#[test]
fn star_ribbons() {
    let qt = validate_attached(&elementary(&[1, 1]).unwrap()).unwrap();
    let star = qt.h.star.clone().unwrap();
    let g = canonical_grouplike(&qt.h, &star).unwrap();
    assert_eq!(&star_ribbon(&qt, &g).unwrap().nu, qt.h.unit());
    assert!(rbar_is_r_star(&qt, &star));
    assert!(drinfeld_star_identity(&qt, &star));

    let h = builtin("z2").unwrap();
    let qt = validate_r(&h, &Tensor::pure(&[h.unit(), h.unit()])).unwrap();
    let g = canonical_grouplike(&h, h.star.as_ref().unwrap()).unwrap();
    assert_eq!(&star_ribbon(&qt, &g).unwrap().nu, h.unit());
}

#[test]
fn transferred_star_on_doubles() {
    for name in ["z2", "pair2"] {
        let h = builtin(name).unwrap();
        let data = drinfeld_double(&h).unwrap();
        let d = &data.d;
        let star = attached_star(d).unwrap();
        assert!(validate_star(d, &star).probe.positive, "{name}");
        let qt = validate_r(d, &data.r.r).unwrap();
        assert!(rbar_is_r_star(&qt, &star), "{name}");
        assert!(drinfeld_star_identity(&qt, &star), "{name}");
        let g = canonical_grouplike(d, &star).unwrap();
        let rib = star_ribbon(&qt, &g).unwrap();
        assert_eq!(qt.h.mul(&rib.nu, &qt.u), g, "{name}");
    }
    let _ = FieldElement::one();
}

#[test]
fn elementary_star_with_unequal_blocks() {
    for p in [vec![1, 2], vec![2, 1]] {
        let h = elementary(&p).unwrap();
        let rep = validate_star(&h, h.star.as_ref().unwrap());
        assert!(rep.axioms.all_passed(), "{p:?}: {}", rep.axioms.summary());
        assert!(rep.probe.positive, "{p:?}");
    }
    let qt = validate_attached(&elementary(&[1, 2]).unwrap()).unwrap();
    let star = qt.h.star.clone().unwrap();
    assert!(rbar_is_r_star(&qt, &star));
    assert!(drinfeld_star_identity(&qt, &star));
}

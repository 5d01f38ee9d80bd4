use qgroupoid::examples::*;
use qgroupoid::linalg::{unit_vector, Matrix};
use qgroupoid::wha::{intersection_dim, Variant};
use qgroupoid::FieldElement;

fn fe(k: i64) -> FieldElement {
    FieldElement::from_integer(k)
}

fn q(p: i64, d: i64) -> FieldElement {
    FieldElement::from_ratio(p, d)
}

#[test]
fn every_builtin_passes_the_axioms() {
    for name in BUILTIN_NAMES {
        let h = builtin(name).unwrap();
        let rep = h.validate_axioms();
        assert!(rep.all_passed(), "{name}: {}", rep.summary());
    }
}

#[test]
fn pair_groupoid_counital_data() {
    let h = groupoid_algebra(&GroupoidSpec::pair(2), false).unwrap();
    assert_eq!(h.dim(), 4);
    assert_eq!(h.counit_of(h.unit()), fe(2));
    let ht = h.ht_basis();
    assert_eq!(ht.len(), 2);
    // H_t is spanned by the two identities (labels 0->0 and 1->1)
    let ids: Vec<_> = ["0->0", "1->1"]
        .iter()
        .map(|l| unit_vector(4, h.labels().iter().position(|x| x == l).unwrap()))
        .collect();
    assert_eq!(intersection_dim(4, &ht, &ids), 2);
    assert!(!h.is_hopf());
    assert!(h.is_connected());
}

#[test]
fn target_map_on_groupoid_is_g_g_inverse() {
    let g = GroupoidSpec::pair(2);
    let h = groupoid_algebra(&g, false).unwrap();
    for (i, m) in g.morphisms.iter().enumerate() {
        let id = g.identity(m.target).unwrap();
        assert_eq!(h.eps_t(&unit_vector(4, i)), unit_vector(4, id));
    }
}

#[test]
fn cyclic_group_is_hopf() {
    let h = groupoid_algebra(&GroupoidSpec::cyclic(2), false).unwrap();
    assert!(h.is_hopf());
    assert_eq!(h.dim(), 2);
}

#[test]
fn dual_pair_groupoid() {
    let g = GroupoidSpec::pair(2);
    let d = groupoid_algebra(&g, true).unwrap();
    assert!(d.algebra().is_commutative());
    for (i, m) in g.morphisms.iter().enumerate() {
        let expected = if m.source == m.target { fe(1) } else { fe(0) };
        assert_eq!(d.counit()[i], expected, "{}", d.labels()[i]);
    }
}

#[test]
fn disjoint_union_is_disconnected() {
    let h = builtin("z2+pt").unwrap();
    assert!(!h.is_connected());
    assert!(builtin("s3").unwrap().is_connected());
}

#[test]
fn invalid_groupoid_is_rejected() {
    let mut g = GroupoidSpec::cyclic(2);
    g.inverse[1] = 0;
    assert!(matches!(groupoid_algebra(&g, false), Err(ExampleError::InvalidGroupoid(_))));
}

#[test]
fn double_dual_is_identity() {
    for name in BUILTIN_NAMES {
        let h = builtin(name).unwrap();
        let dd = h.dual().dual();
        assert_eq!(dd.bare(), h.bare(), "{name}");
    }
}

#[test]
fn op_cop_variants_validate() {
    for name in ["pair2", "bopb-m2", "transformation-z2"] {
        let h = builtin(name).unwrap();
        for v in [Variant::Op, Variant::Cop, Variant::OpCop] {
            let x = h.variant(v).unwrap();
            assert!(x.validate_axioms().all_passed(), "{name} {v:?}");
        }
        let back = h.variant(Variant::OpCop).unwrap().variant(Variant::OpCop).unwrap();
        assert_eq!(back, h.bare().variant(Variant::OpCop).unwrap().variant(Variant::OpCop).unwrap());
    }
}

#[test]
fn elementary_dimensions() {
    for (p, n) in [(vec![1], 1), (vec![1, 1], 2), (vec![1, 2], 5)] {
        let h = elementary(&p).unwrap();
        assert_eq!(h.dim(), n * n);
        assert_eq!(h.ht_basis().len(), p.iter().map(|k| k * k).sum::<usize>());
        assert_eq!(h.algebra().center().len(), 1);
    }
    assert!(matches!(elementary(&[]), Err(ExampleError::BadPartition(_))));
}

#[test]
fn elementary_is_a_matrix_algebra() {
    let h = elementary(&[1, 1]).unwrap();
    let m = 2;
    for a in 0..4 {
        for b in 0..4 {
            let (i, j) = (a / m, a % m);
            let (k, l) = (b / m, b % m);
            let expected = if j == k { unit_vector(4, i * m + l) } else { vec![FieldElement::zero(); 4] };
            assert_eq!(h.mul(&unit_vector(4, a), &unit_vector(4, b)), expected);
        }
    }
}

#[test]
fn bopb_commutative_case() {
    let b = bopb(&SeparableAlgebraSpec::with_unit_q(&[1, 1])).unwrap();
    let h = &b.groupoid;
    assert_eq!(h.dim(), 4);
    assert!(h.algebra().is_commutative());
    assert_eq!(h.antipode_squared(), Matrix::identity(4));
}

#[test]
fn bopb_antipode_square_is_conjugation_by_g_q() {
    let spec = SeparableAlgebraSpec::diagonal_q(&[2], &[fe(2), q(2, 3)]);
    let b = bopb(&spec).unwrap();
    let h = &b.groupoid;
    assert_ne!(h.antipode_squared(), Matrix::identity(16));
    let g = &b.g_q;
    let gi = h.algebra().left_matrix(g).solve_vector(h.unit()).unwrap();
    for j in 0..16 {
        let x = unit_vector(16, j);
        assert_eq!(h.antipode(&h.antipode(&x)), h.mul_all(&[g, &x, &gi]));
    }
    let ht = h.ht_basis();
    let hs = h.hs_basis();
    assert_eq!((ht.len(), hs.len()), (4, 4));
}

#[test]
fn bopb_different_q_same_algebra_different_coproduct() {
    let a = bopb(&SeparableAlgebraSpec::diagonal_q(&[2], &[fe(2), q(2, 3)])).unwrap().groupoid;
    let b = bopb(&SeparableAlgebraSpec::diagonal_q(&[2], &[fe(3), q(3, 5)])).unwrap().groupoid;
    assert!(b.validate_axioms().all_passed());
    assert_eq!(a.algebra(), b.algebra());
    assert_ne!(a.coproduct_table(), b.coproduct_table());
}

#[test]
fn bopb_rejects_bad_q() {
    let not_normalized = SeparableAlgebraSpec::diagonal_q(&[2], &[fe(1), fe(2)]);
    assert!(matches!(bopb(&not_normalized), Err(ExampleError::QNotNormalized)));
    let singular = SeparableAlgebraSpec::diagonal_q(&[2], &[fe(0), fe(1)]);
    assert!(matches!(bopb(&singular), Err(ExampleError::QNotInvertible)));
    assert!(bopb(&SeparableAlgebraSpec::with_unit_q(&[2])).is_ok());
}

#[test]
fn transformation_groupoids() {
    let (g, act) = swap_action();
    let h = transformation_groupoid(&g, &act).unwrap();
    assert_eq!(h.dim(), 8);
    let trivial = transformation_groupoid(&FiniteGroup::cyclic(2), &[vec![0], vec![0]]).unwrap();
    assert_eq!(trivial.dim(), 2);
    assert!(trivial.is_hopf());
    assert!(trivial.validate_axioms().all_passed());
    let bad = transformation_groupoid(&FiniteGroup::cyclic(2), &[vec![0, 1], vec![0, 0]]);
    assert!(matches!(bad, Err(ExampleError::InvalidAction(_))));
}

#[test]
fn transformation_counit_matches_direct_evaluation() {
    // ε(δ_x⊗γ⊗δ_y) = ω(δ_x (γ·δ_y)) = [x = γy]
    let (g, act) = swap_action();
    let h = transformation_groupoid(&g, &act).unwrap();
    for x in 0..2 {
        for c in 0..2 {
            for y in 0..2 {
                let i = (x * 2 + c) * 2 + y;
                let expected = if x == act[c][y] { fe(1) } else { fe(0) };
                assert_eq!(h.counit()[i], expected);
            }
        }
    }
}

#[test]
fn temperley_lieb_structure() {
    let d = temperley_lieb_data(2).unwrap();
    let h = &d.groupoid;
    assert_eq!(h.dim(), 13);
    // λ = (3 - √5)/2 with √5 = 1 + 2(ζ + ζ⁴)
    let z = FieldElement::zeta(5);
    let sqrt5 = &fe(1) + &(&fe(2) * &(&z + &z.pow(4).unwrap()));
    assert_eq!(&sqrt5 * &sqrt5, fe(5));
    assert_eq!(d.lambda, &(&fe(3) - &sqrt5) / &fe(2));
    let a = &d.algebra;
    let e = &d.generators;
    for i in 0..3 {
        assert_eq!(a.mul(&e[i], &e[i]), e[i]);
        for j in 0..3 {
            let lhs = a.mul(&a.mul(&e[i], &e[j]), &e[i]);
            if i.abs_diff(j) == 1 {
                assert_eq!(lhs, qgroupoid::linalg::vec_scale(&e[i], &d.lambda));
            }
        }
    }
    assert_eq!(a.mul(&e[0], &e[2]), a.mul(&e[2], &e[0]));
    let gram = Matrix::from_fn(13, 13, |x, y| {
        qgroupoid::linalg::dot(&d.tau, &a.mul(&unit_vector(13, x), &unit_vector(13, y)))
    });
    assert_eq!(gram.rank(), 13);
    assert_eq!(a.mul(&d.f, &d.f), d.f);
    assert_eq!(h.ht_basis().len(), 2);
    assert_eq!(h.hs_basis().len(), 2);
    assert!(matches!(temperley_lieb(4), Err(ExampleError::UnsupportedN(4))));
}

#[test]
fn temperley_lieb_antipode_order() {
    let h = temperley_lieb(2).unwrap();
    let cert = antipode_order_certificate(&h, 24).expect("S^{2k} != id for k <= 24");
    assert_eq!(cert.checked_up_to, 24);
    assert!(cert.eigenvalue_witness.is_some());
    // a group algebra has S² = id
    assert!(antipode_order_certificate(&builtin("z2").unwrap(), 24).is_none());
}

#[test]
fn unknown_builtin() {
    assert!(matches!(builtin("nope"), Err(ExampleError::Unknown(_))));
}

use qgroupoid::double::drinfeld_double;
use qgroupoid::examples::{builtin, elementary};
use qgroupoid::invariants::*;
use qgroupoid::linalg::Matrix;
use qgroupoid::modular::s_matrix;
use qgroupoid::qt::{find_ribbons, quantum_dim, trivial_r, validate_attached, validate_r, QtData, RibbonData};
use qgroupoid::rep::tensor_many;
use qgroupoid::star::{canonical_grouplike, star_ribbon};
use qgroupoid::FieldElement;

mod common;
use common::braids::{braid_relations, markov_suite, palette};

fn double_qt(name: &str) -> (QtData, RibbonData) {
    let data = drinfeld_double(&builtin(name).unwrap()).unwrap();
    let qt = validate_r(&data.d, &data.r.r).unwrap();
    let g = canonical_grouplike(&qt.h, qt.h.star.as_ref().unwrap()).unwrap();
    let rib = star_ribbon(&qt, &g).unwrap();
    (qt, rib)
}

fn elementary_qt(p: &[usize]) -> (QtData, RibbonData) {
    let qt = validate_attached(&elementary(p).unwrap()).unwrap();
    let rib = find_ribbons(&qt).unwrap().remove(0);
    (qt, rib)
}

fn word(s: &str) -> BraidWord {
    s.parse().unwrap()
}

#[test]
fn parsing() {
    let b = word("s1 s1^-1 s2");
    assert_eq!(b.strands, 3);
    assert_eq!(b.word, vec![1, -1, 2]);
    let b = word("s1^3 f=(2)");
    assert_eq!(b.word, vec![1, 1, 1]);
    assert_eq!(b.framing, vec![2]);
    let b = word("s1 s1 f=(0, 1)");
    assert_eq!(b.components(), vec![vec![0], vec![1]]);
    assert_eq!(b.linking_matrix(), vec![vec![0, 1], vec![1, 1]]);
    assert_eq!(word(&b.to_string()), b);
    assert_eq!(word("m=0").strands, 0);
    assert!(matches!("s0".parse::<BraidWord>(), Err(InvariantError::Parse(_))));
    assert!(matches!("t1".parse::<BraidWord>(), Err(InvariantError::Parse(_))));
    assert!(matches!("m=2 s2".parse::<BraidWord>(), Err(InvariantError::IndexOutOfRange(_))));
    assert!(matches!(BraidWord::new(2, vec![1]).unwrap().with_framing(vec![0, 0]), Err(InvariantError::IndexOutOfRange(_))));
}

#[test]
fn components_and_writhe() {
    let trefoil = word("s1 s1 s1");
    assert_eq!(trefoil.components().len(), 1);
    assert_eq!(trefoil.writhes(), vec![3]);
    let hopf = word("s1 s1");
    assert_eq!(hopf.writhes(), vec![0, 0]);
    assert_eq!(word("s1 s2^-1").components(), vec![vec![0, 2, 1]]);
    let b = word("s1 s1").with_colors(vec![0, 1]).unwrap();
    assert!(b.coloring_consistent().is_ok());
    let b = word("s1").with_colors(vec![0, 1]).unwrap();
    assert_eq!(b.coloring_consistent(), Err(InvariantError::InconsistentColoring(0)));
    assert_eq!(signature(&[vec![1, 0], vec![0, -2]]), (1, 1));
}

fn qt_examples() -> Vec<(String, QtData)> {
    let mut out: Vec<(String, QtData)> = [vec![1], vec![1, 1], vec![1, 2]]
        .into_iter()
        .map(|p| (format!("{p:?}"), elementary_qt(&p).0))
        .collect();
    let z2 = builtin("z2").unwrap();
    out.push(("z2".into(), validate_r(&z2, &trivial_r(&z2)).unwrap()));
    let pair = builtin("pair2").unwrap();
    out.push(("pair2".into(), validate_r(&pair, &trivial_r(&pair)).unwrap()));
    out.push(("D(z2)".into(), double_qt("z2").0));
    out.push(("D(pair2)".into(), double_qt("pair2").0));
    out
}

#[test]
fn braid_relations_on_four_strands() {
    for (name, qt) in qt_examples() {
        braid_relations(&qt, 3).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}

#[test]
fn empty_braid_is_identity() {
    let (qt, _) = elementary_qt(&[1, 1]);
    let pal = palette(&qt);
    let b = word("m=3");
    let t = tensor_many(&qt.h, &[&pal[0], &pal[0], &pal[0]]).unwrap();
    assert_eq!(braid_endomorphism(&b, &qt, &pal).unwrap(), Matrix::identity(t.module.rank));
}

#[test]
fn unknot_is_quantum_dimension() {
    for (qt, rib) in [elementary_qt(&[1, 1]), double_qt("z2")] {
        let pal = palette(&qt);
        for (c, v) in pal.iter().enumerate() {
            let b = word("m=1").with_colors(vec![c]).unwrap();
            assert_eq!(link_invariant(&b, &qt, &rib, &pal).unwrap(), quantum_dim(&qt, &rib, v).unwrap());
            // a kink with matching framing is the same framed knot
            let kink = word("s1").with_colors(vec![c, c]).unwrap();
            assert_eq!(link_invariant(&kink, &qt, &rib, &pal).unwrap(), quantum_dim(&qt, &rib, v).unwrap());
        }
    }
}

#[test]
fn hopf_link_gives_s_matrix() {
    let (qt, rib) = double_qt("z2");
    let pal = palette(&qt);
    let s = s_matrix(&qt, &rib).unwrap().s;
    for i in 0..pal.len() {
        for j in 0..pal.len() {
            let b = word("s1 s1").with_colors(vec![i, j]).unwrap();
            assert_eq!(link_invariant(&b, &qt, &rib, &pal).unwrap(), s[(j, i)], "({i}, {j})");
        }
    }
}

#[test]
fn trefoil_stabilization_on_elementary() {
    let (qt, rib) = elementary_qt(&[1, 1]);
    let pal = palette(&qt);
    let a = link_invariant(&word("s1 s1 s1"), &qt, &rib, &pal).unwrap();
    let b = link_invariant(&word("s1 s1 s1 s2"), &qt, &rib, &pal).unwrap();
    let c = link_invariant(&word("s1 s1 s1 s2^-1"), &qt, &rib, &pal).unwrap();
    assert_eq!(a, b);
    assert_eq!(a, c);
}

#[test]
fn markov_moves_over_double_of_z2() {
    let (qt, rib) = double_qt("z2");
    markov_suite(&qt, &rib, 7, 20).unwrap();
}

#[test]
fn markov_moves_over_other_modular_examples() {
    for ((qt, rib), seed, cases) in [
        (double_qt("pair2"), 11, 8),
        (elementary_qt(&[1, 1]), 13, 8),
        (elementary_qt(&[1, 2]), 17, 4),
    ] {
        markov_suite(&qt, &rib, seed, cases).unwrap();
    }
}

#[test]
fn mirror_image_conjugates() {
    for (qt, rib) in [double_qt("z2"), double_qt("pair2")] {
        let pal = palette(&qt);
        for c in 0..pal.len() {
            let t = word("s1 s1 s1").with_colors(vec![c, c]).unwrap();
            let v = link_invariant(&t, &qt, &rib, &pal).unwrap();
            let m = link_invariant(&t.mirror(), &qt, &rib, &pal).unwrap();
            assert_eq!(m, v.conj());
        }
    }
}

#[test]
fn surgery_normalization() {
    for (qt, rib) in [elementary_qt(&[1, 1]), double_qt("z2")] {
        let empty = rt_invariant(&word("m=0"), &qt, &rib).unwrap();
        assert_eq!(empty.value, FieldElement::one());
        let plus = rt_invariant(&word("m=1 f=(1)"), &qt, &rib).unwrap();
        assert_eq!(plus.value, empty.value);
        let minus = rt_invariant(&word("m=1 f=(-1)"), &qt, &rib).unwrap();
        assert_eq!(minus.value, empty.value);
        assert_eq!(plus.signature, (1, 0));
    }
    // S¹×S²: Σ dim_q(V_i)², which is 4 for the toric code
    let (qt, rib) = double_qt("z2");
    let v = rt_invariant(&word("m=1"), &qt, &rib).unwrap();
    assert_eq!(v.value, FieldElement::from_integer(4));
    assert_eq!(v.signature, (0, 0));
    // the Hopf link with framings (0, 0) is S³ again
    let hopf = rt_invariant(&word("s1 s1 f=(0,0)"), &qt, &rib).unwrap();
    assert_eq!(hopf.signature, (1, 1));
    assert_eq!(hopf.value, FieldElement::one());
}

#[test]
fn surgery_needs_modularity() {
    let h = builtin("z2").unwrap();
    let qt = validate_r(&h, &trivial_r(&h)).unwrap();
    let rib = find_ribbons(&qt).unwrap().into_iter().find(|r| &r.nu == h.unit()).unwrap();
    assert_eq!(rt_invariant(&word("m=0"), &qt, &rib).unwrap_err(), InvariantError::NotModular);
}

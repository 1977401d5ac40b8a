mod common;

use common::{q, replay_marks, two_oversized, LONG_EDGE_MARKS};
use lr_grade::bspline::LRBSpline;
use lr_grade::eg::testing::GraderOptions;
use lr_grade::eg::Variant;
use lr_grade::lrset::LRSet;
use lr_grade::verify::{self, is_nested, spanning_failures};
use lr_grade::{Direction, Domain, Dyadic, LRMesh};

fn uniform_quarter(degree: [usize; 2]) -> LRMesh {
    let c: Vec<Dyadic> = (1..4).map(|i| q(i, 2)).collect();
    LRMesh::open_tensor(Domain::unit(), degree, &c, &c).unwrap()
}

fn quarters(ix: [i128; 4]) -> Vec<Dyadic> {
    ix.iter().map(|&i| q(i, 3)).collect()
}

#[test]
fn full_insertion_splits_a_bspline_into_two_minimal_ones() {
    let mesh = uniform_quarter([2, 2]);
    let b = LRBSpline::new(quarters([0, 2, 4, 6]), quarters([0, 2, 4, 6]), 1.0).unwrap();
    assert!(b.has_minimal_support(&mesh));
    let mesh2 = mesh.insert_segment(Direction::Vertical, q(3, 3), q(0, 0), q(3, 2)).unwrap();
    assert!(!b.has_minimal_support(&mesh2));
    let (lo, hi, _, _) = b.knot_insert(0, q(3, 3)).unwrap();
    assert_eq!(lo.knots[0], quarters([0, 2, 3, 4]));
    assert_eq!(hi.knots[0], quarters([2, 3, 4, 6]));
    assert!(lo.has_minimal_support(&mesh2) && hi.has_minimal_support(&mesh2));
    assert!(lo.support().interiors_overlap(&hi.support()));
}

/// A short vertical line leaves B alone; a horizontal line through B then
/// produces a lower child that the short line does traverse.
fn two_line_cascade(vertical_first: bool) -> LRSet {
    let mesh = uniform_quarter([2, 2]);
    let set = LRSet::initial(&mesh).unwrap();
    let insert_v = |m: &LRMesh| m.insert_segment(Direction::Vertical, q(3, 3), q(0, 0), q(1, 1)).unwrap();
    let insert_h = |m: &LRMesh| m.insert_segment(Direction::Horizontal, q(3, 3), q(0, 0), q(3, 2)).unwrap();
    let m1 = if vertical_first { insert_v(&mesh) } else { insert_h(&mesh) };
    let set1 = set.update(m1.clone()).unwrap();
    let m2 = if vertical_first { insert_h(&m1) } else { insert_v(&m1) };
    set1.update(m2).unwrap()
}

#[test]
fn short_line_then_cross_line_cascade() {
    let b = LRBSpline::new(quarters([0, 2, 4, 6]), quarters([0, 2, 4, 6]), 1.0).unwrap();
    let mesh = uniform_quarter([2, 2]);
    let set = LRSet::initial(&mesh).unwrap();
    assert!(set.weight(&b.key()).is_some());

    let short = mesh.insert_segment(Direction::Vertical, q(3, 3), q(0, 0), q(1, 1)).unwrap();
    assert!(set.update(short).unwrap().weight(&b.key()).is_some(), "B is not traversed");

    let fin = two_line_cascade(true);
    assert!(fin.weight(&b.key()).is_none());
    for k in [
        [quarters([0, 2, 3, 4]), quarters([0, 2, 3, 4])],
        [quarters([2, 3, 4, 6]), quarters([0, 2, 3, 4])],
        [quarters([0, 2, 4, 6]), quarters([2, 3, 4, 6])],
    ] {
        assert!(fin.weight(&k).is_some(), "missing {k:?}");
    }
    // weights differ from 1 here, but the weighted sum is still one
    assert!(verify::verify(&fin, 200, 1).partition_of_unity.detail.weighted_deviation <= 1e-12);
}

#[test]
fn insertion_order_does_not_matter() {
    let a = two_line_cascade(true);
    let b = two_line_cascade(false);
    assert_eq!(a.mesh(), b.mesh());
    let ka: Vec<_> = a.members().map(|m| m.knots).collect();
    let kb: Vec<_> = b.members().map(|m| m.knots).collect();
    assert_eq!(ka, kb);
    for m in a.members() {
        assert!((b.weight(&m.knots).unwrap() - m.weight).abs() <= 1e-12);
    }
}

#[test]
fn nested_only_with_matching_edge_multiplicity() {
    let b1 = LRBSpline::new(quarters([0, 2, 4, 6]), quarters([0, 2, 4, 6]), 1.0).unwrap();
    let b2 = LRBSpline::new(quarters([0, 2, 3, 4]), quarters([2, 3, 4, 5]), 1.0).unwrap();
    let b3 = LRBSpline::new(quarters([0, 0, 2, 3]), quarters([2, 3, 4, 5]), 1.0).unwrap();
    assert!(b1.support().contains_box(&b2.support()) && b2.support().contains_box(&b3.support()));
    assert!(is_nested(&b2, &b1));
    assert!(!is_nested(&b1, &b2));
    assert!(!is_nested(&b3, &b1));
    assert!(!is_nested(&b3, &b2));
    assert!(!is_nested(&b1, &b1));
}

#[test]
fn long_edge_shadow_counterexample_is_not_n2s() {
    let literal = GraderOptions { batched: false, along_long_edges: true };
    let set = replay_marks([1, 1], Variant::VerticalMajor, &LONG_EDGE_MARKS, literal);
    let r = verify::verify(&set, 300, 0);
    assert_eq!(r.n2s_predicates(), [false; 4]);
    let w = &r.nested_pairs.detail.witnesses;
    assert_eq!(w.len(), 1);
    assert_eq!(w[0].outer, [vec![q(1, 2), q(1, 1), q(3, 2)], vec![q(0, 0), q(1, 1), q(1, 0)]]);
    assert_eq!(w[0].inner, [vec![q(1, 1), q(5, 3), q(3, 2)], vec![q(0, 0), q(1, 2), q(1, 1)]]);
    assert!(r.support_counts.detail.max > 4);
}

#[test]
fn same_marks_with_default_grader_pass() {
    let set = replay_marks([1, 1], Variant::VerticalMajor, &LONG_EDGE_MARKS, GraderOptions::default());
    let r = verify::verify(&set, 300, 0);
    assert!(r.pass, "{}", serde_json::to_string_pretty(&r).unwrap());
}

#[test]
fn closest_first_halving_keeps_the_mesh_valid() {
    let f = two_oversized();
    let input = verify::verify(&f.input_set(), 200, 2);
    assert!(input.pass);
    let r = verify::verify(&f.graded(false), 500, 2);
    assert!(r.pass, "{}", serde_json::to_string_pretty(&r).unwrap());
}

#[test]
fn batched_halving_leaves_a_short_line() {
    let f = two_oversized();
    let set = f.graded(true);
    let fails = spanning_failures(set.mesh());
    assert_eq!(fails.len(), 1);
    let l = &fails[0].line;
    assert_eq!((l.direction, l.fixed, l.lo, l.hi), (Direction::Vertical, q(1, 3), q(1, 1), q(5, 3)));
    assert_eq!((fails[0].crossings, fails[0].required), (2, 3));
}

use lamkit::chords::Chord;
use lamkit::lamination::{canonical_diameter, canonical_of_rotational, check_invariance, Lamination, Violation};
use lamkit::lamsets::LamSet;

fn c(s: &str) -> Chord {
    s.parse().unwrap()
}

#[test]
fn removing_a_sibling_is_detected() {
    let mut lam = canonical_diameter(3).unwrap();
    assert!(lam.leaves.remove(&c("1/6-1/3")));
    let r = check_invariance(&lam);
    assert!(r.violations.iter().any(|v| matches!(v, Violation::Siblings(_))), "{}", r.to_text());
}

#[test]
fn removing_an_image_is_detected() {
    let mut lam = canonical_diameter(3).unwrap();
    assert!(lam.leaves.remove(&c("1/6-1/3")));
    let r = check_invariance(&lam);
    assert!(r.violations.iter().any(|v| matches!(v, Violation::MissingImage(_))));
}

#[test]
fn crossing_leaf_is_detected() {
    let mut lam = canonical_diameter(3).unwrap();
    lam.leaves.insert(c("1/4-3/4"));
    let r = check_invariance(&lam);
    assert!(matches!(r.violations.first(), Some(Violation::Crossing(..))));
}

#[test]
fn diagonal_inside_a_gap_is_detected() {
    // 1/8-3/8 is a period two leaf inside the gap above the diameter.
    let mut lam = canonical_diameter(3).unwrap();
    lam.leaves.insert(c("1/8-3/8"));
    let r = check_invariance(&lam);
    assert!(r.violations.iter().any(|v| matches!(v, Violation::EntersGap { .. })), "{}", r.to_text());
}

#[test]
fn diagonal_of_a_finite_gap_is_detected() {
    let g = LamSet::parse(3, "7/26,4/13,11/26,10/13,21/26,12/13").unwrap();
    let mut lam = canonical_of_rotational(&g, 2).unwrap();
    lam.leaves.insert(c("7/26-21/26"));
    let r = check_invariance(&lam);
    assert!(r.violations.iter().any(|v| matches!(v, Violation::EntersGap { .. })));
}

#[test]
fn non_rotational_polygon_breaks_hole_mapping() {
    // The cycle 7/80 -> 21/80 -> 63/80 -> 29/80 does not keep its circular order.
    let vs = ["7/80", "21/80", "29/80", "63/80"];
    let edges = (0..4).map(|i| Chord::new(vs[i].parse().unwrap(), vs[(i + 1) % 4].parse().unwrap()));
    let lam = Lamination::from_leaves(3, 1, "custom", edges);
    let r = check_invariance(&lam);
    assert!(r.violations.iter().any(|v| matches!(v, Violation::GapHole { .. })), "{}", r.to_text());
}

#[test]
fn canonical_constructions_pass() {
    for s in ["7/26,11/26,21/26", "1/26,3/26,9/26"] {
        let lam = canonical_of_rotational(&LamSet::parse(3, s).unwrap(), 4).unwrap();
        let r = check_invariance(&lam);
        assert!(r.is_ok(), "{s}: {}", r.to_text());
    }
}

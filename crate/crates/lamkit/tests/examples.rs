use lamkit::chords::Chord;
use lamkit::circle::Angle;
use lamkit::dyncore::{periodic_rotational_classes, separates, CoreSummary};
use lamkit::lamination::{
    attached_gaps, canonical_diameter, canonical_of_quadratic_gap, canonical_of_rotational, check_invariance,
    project_through_gap,
};
use lamkit::lamsets::LamSet;
use lamkit::quadgap::{build_gap, fg_a, fg_b};

fn a(s: &str) -> Angle {
    s.parse().unwrap()
}

fn set(s: &str) -> LamSet {
    LamSet::parse(3, s).unwrap()
}

#[test]
fn both_diameter_gaps_give_the_diameter_lamination() {
    let d = canonical_diameter(4).unwrap();
    for u in [fg_a(4), fg_b(4)] {
        assert_eq!(canonical_of_quadratic_gap(&u, 4).unwrap().leaves, d.leaves, "{u}");
    }
}

#[test]
fn attached_gap_structure() {
    let count = |s: &str| {
        let gs = attached_gaps(&set(s), 3).unwrap();
        (gs.len(), gs.iter().filter(|(_, deg)| *deg >= 2).count())
    };
    assert_eq!(count("7/26,4/13,11/26,10/13,21/26,12/13"), (6, 2));
    assert_eq!(count("7/26,11/26,21/26"), (3, 2));
    let gs = attached_gaps(&set("1/26,3/26,9/26"), 3).unwrap();
    assert_eq!(gs.len(), 3);
    assert_eq!(gs.iter().map(|(_, deg)| *deg).max(), Some(3));
}

#[test]
fn type_d_lamination_has_one_rotational_class() {
    let g = set("7/26,4/13,11/26,10/13,21/26,12/13");
    let lam = canonical_of_rotational(&g, 4).unwrap();
    let r = periodic_rotational_classes(&lam, 6);
    assert_eq!(r.summary, CoreSummary::SinglePoint);
    assert_eq!(r.rotational_classes.len(), 1);
    assert_eq!(r.rotational_classes[0].0, g);
}

#[test]
fn quadratic_gap_lamination_has_empty_core() {
    let u = build_gap(&"1/3-2/3".parse::<Chord>().unwrap(), 4).unwrap();
    let lam = canonical_of_quadratic_gap(&u, 4).unwrap();
    assert_eq!(periodic_rotational_classes(&lam, 6).summary, lamkit::dyncore::CoreSummary::EmptyCore);
}

#[test]
fn separation_in_canonical_laminations() {
    let diam = [a("0"), a("1/2")];
    assert!(separates(&diam, &[a("1/8")], &[a("5/8")]).unwrap());
    let g = [a("7/26"), a("11/26"), a("21/26")];
    let inside = [a("1/3"), a("2/3"), a("0")];
    for i in 0..3 {
        for j in i + 1..3 {
            assert!(separates(&g, &[inside[i].clone()], &[inside[j].clone()]).unwrap());
        }
    }
}

#[test]
fn projections() {
    assert!(project_through_gap(&fg_a(4), &canonical_diameter(4).unwrap()).unwrap().is_empty());
    let lam = canonical_of_rotational(&set("7/26,11/26,21/26"), 4).unwrap();
    let u = build_gap(&"37/234-193/234".parse::<Chord>().unwrap(), 4).unwrap();
    let p = project_through_gap(&u, &lam).unwrap();
    assert_eq!(p.d, 2);
    assert!(p.contains(&"3/7-5/7".parse().unwrap()));
    assert!(check_invariance(&p).is_ok());
}

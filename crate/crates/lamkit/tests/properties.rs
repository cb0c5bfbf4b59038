use std::collections::BTreeSet;

use lamkit::chords::{image, is_critical, linked, Chord};
use lamkit::circle::{arc_length, cyclic_order, preimages, sigma, Angle, Arc, Orientation};
use lamkit::dyncore::separates;
use lamkit::lamination::{
    canonical_diameter, canonical_of_quadratic_gap, canonical_of_rotational, check_invariance, clean, Lamination,
};
use lamkit::lamsets::{enumerate_rotational, LamSet};
use lamkit::quadgap::{build_gap, classify_critical, CriticalTag};
use lamkit::render::{geodesic, Geodesic};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn angle() -> impl Strategy<Value = Angle> {
    (1i64..500).prop_flat_map(|d| (0..d).prop_map(move |n| Angle::from_ratio(n, d)))
}

fn chord() -> impl Strategy<Value = Chord> {
    (angle(), angle()).prop_filter("degenerate", |(a, b)| a != b).prop_map(|(a, b)| Chord::new(a, b))
}

/// Critical chords `x-(x+1/3)` with `x` on a grid of small denominators.
fn critical() -> impl Strategy<Value = Chord> {
    (2i64..60).prop_flat_map(|d| {
        (0..d).prop_map(move |n| {
            let x = Angle::from_ratio(n, d);
            Chord::new(x.clone(), x.shift(&q(1, 3)))
        })
    })
}

fn recipe(i: usize, depth: usize) -> Lamination {
    let g = |s: &str| LamSet::parse(3, s).unwrap();
    match i {
        0 => canonical_diameter(depth).unwrap(),
        1 => canonical_of_quadratic_gap(&build_gap(&"1/3-2/3".parse().unwrap(), depth).unwrap(), depth).unwrap(),
        2 => canonical_of_quadratic_gap(&build_gap(&"93/100-79/300".parse().unwrap(), depth).unwrap(), depth).unwrap(),
        3 => canonical_of_rotational(&g("7/26,11/26,21/26"), depth).unwrap(),
        4 => canonical_of_rotational(&g("1/26,3/26,9/26"), depth).unwrap(),
        _ => canonical_of_rotational(&g("7/26,4/13,11/26,10/13,21/26,12/13"), depth).unwrap(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sigma_stays_on_circle(x in angle(), d in 2u32..5) {
        let y = sigma(d, &x);
        prop_assert!(*y.value() >= q(0, 1) && *y.value() < q(1, 1));
        let expected = lamkit::circle::frac(x.value() * BigRational::from_integer(d.into()));
        prop_assert_eq!(y.value(), &expected);
    }

    #[test]
    fn preimages_are_a_full_fibre(x in angle(), d in 2u32..5) {
        let ps = preimages(d, &x);
        prop_assert_eq!(ps.len(), d as usize);
        let distinct: BTreeSet<&Angle> = ps.iter().collect();
        prop_assert_eq!(distinct.len(), d as usize);
        for p in &ps {
            prop_assert_eq!(&sigma(d, p), &x);
        }
    }

    #[test]
    fn arcs_partition_the_circle(a in angle(), b in angle()) {
        prop_assume!(a != b);
        prop_assert_eq!(arc_length(&a, &b) + arc_length(&b, &a), q(1, 1));
        let arc = Arc::new(a.clone(), b.clone());
        prop_assert!(!arc.contains(&a) && arc.contains_closed(&a));
        prop_assert_eq!(arc.reverse().length(), arc_length(&b, &a));
    }

    #[test]
    fn cyclic_order_reverses(a in angle(), b in angle(), c in angle()) {
        let o1 = cyclic_order(&a, &b, &c);
        let o2 = cyclic_order(&a, &c, &b);
        match o1 {
            Orientation::Positive => prop_assert_eq!(o2, Orientation::Negative),
            Orientation::Negative => prop_assert_eq!(o2, Orientation::Positive),
            Orientation::Degenerate => prop_assert_eq!(o2, Orientation::Degenerate),
        }
    }

    #[test]
    fn chords_are_unordered(l in chord()) {
        let r = Chord::new(l.b.clone(), l.a.clone());
        prop_assert_eq!(&l, &r);
        let back: Chord = l.to_string().parse().unwrap();
        prop_assert_eq!(&back, &l);
    }

    #[test]
    fn linking_is_symmetric_and_irreflexive(l in chord(), m in chord()) {
        prop_assert_eq!(linked(&l, &m), linked(&m, &l));
        prop_assert!(!linked(&l, &l));
    }

    #[test]
    fn critical_chords_collapse(l in critical()) {
        prop_assert!(is_critical(3, &l).unwrap());
        prop_assert!(image(3, &l).is_degenerate());
    }

    #[test]
    fn periodic_type_majors_contain_the_critical_chord(l in critical()) {
        let cls = classify_critical(&l).unwrap();
        if cls.tag == CriticalTag::PeriodicType {
            let u = build_gap(&l, 3).unwrap();
            let hole = &u.arcs[0];
            prop_assert!(hole.contains_closed(&l.a) && hole.contains_closed(&l.b));
            prop_assert!(hole.length() > q(1, 3));
        }
    }

    #[test]
    fn separation_is_symmetric(vs in proptest::collection::btree_set(angle(), 2..6), x in angle(), y in angle()) {
        let g: Vec<Angle> = vs.into_iter().collect();
        let (a, b) = ([x], [y]);
        match (separates(&g, &a, &b), separates(&g, &b, &a)) {
            (Ok(s), Ok(t)) => prop_assert_eq!(s, t),
            (Err(_), Err(_)) => {}
            other => prop_assert!(false, "asymmetric errors {:?}", other),
        }
    }

    #[test]
    fn geodesics_rotate_with_the_chord(l in chord()) {
        let half = q(1, 2);
        let (g, h) = (geodesic(&l).unwrap(), geodesic(&l.shift(&half)).unwrap());
        match (g, h) {
            (Geodesic::Line { from, .. }, Geodesic::Line { from: f2, .. }) => {
                prop_assert!((from.0 + f2.0).abs() < 1e-9 && (from.1 + f2.1).abs() < 1e-9);
            }
            (Geodesic::Arc { center, radius, .. }, Geodesic::Arc { center: c2, radius: r2, .. }) => {
                prop_assert!((center.0 + c2.0).abs() < 1e-6 && (center.1 + c2.1).abs() < 1e-6);
                prop_assert!((radius - r2).abs() < 1e-6);
            }
            _ => prop_assert!(false, "kind changed"),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn canonical_leaves_grow_with_depth(i in 0usize..6, depth in 1usize..4) {
        let small = recipe(i, depth);
        let big = recipe(i, depth + 1);
        prop_assert!(small.leaves.is_subset(&big.leaves));
    }

    #[test]
    fn regeneration_is_unique(i in 0usize..6, depth in 1usize..4) {
        let l = recipe(i, depth);
        prop_assert_eq!(&recipe(i, depth).leaves, &l.leaves);
        let back = Lamination::from_text(&l.to_text()).unwrap();
        prop_assert_eq!(&back.leaves, &l.leaves);
        prop_assert_eq!(back.gaps.len(), l.gaps.len());
        prop_assert_eq!(&back.finite_gaps, &l.finite_gaps);
    }

    #[test]
    fn clean_is_idempotent(i in 0usize..6, depth in 1usize..4, drop in 0usize..1000) {
        let mut l = recipe(i, depth);
        let victim = l.leaves.iter().nth(drop % l.len()).cloned().unwrap();
        l.leaves.remove(&victim);
        let once = clean(&l).unwrap();
        let twice = clean(&once.core).unwrap();
        prop_assert_eq!(&twice.core.leaves, &once.core.leaves);
        prop_assert_eq!(twice.rounds(), 0);
    }

    #[test]
    fn regular_critical_laminations_are_invariant(l in critical()) {
        let cls = classify_critical(&l).unwrap();
        prop_assume!(cls.tag == CriticalTag::RegularCritical);
        let Ok(u) = build_gap(&l, 4) else { return Ok(()) };
        let Ok(lam) = canonical_of_quadratic_gap(&u, 4) else { return Ok(()) };
        let r = check_invariance(&lam);
        prop_assert!(r.is_ok(), "{}: {}", l, r.to_text());
    }

    #[test]
    fn enumerated_sets_rotate(p in 1i64..5, qq in 2i64..6, d in 2u32..4) {
        prop_assume!(p < qq && num_integer::gcd(p, qq) == 1);
        let rho = q(p, qq);
        for g in enumerate_rotational(d, &rho, d as usize - 1).unwrap() {
            let rep = g.classify_rotational();
            prop_assert!(rep.is_invariant && rep.is_rotational);
            prop_assert_eq!(rep.rotation_number.as_ref(), Some(&rho));
        }
    }
}

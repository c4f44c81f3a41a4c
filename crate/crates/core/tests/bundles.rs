mod common;

use ccc_core::bundle_sequences::*;
use ccc_core::intersection_calculus::self_intersections;
use ccc_core::surface_walks::{gcd, matrices_equivalent};
use ccc_core::twist_engine::twist_vertical;
use ccc_core::{DefaultField as F, Field};
use proptest::prelude::*;

#[test]
fn canonical_sequences_are_simple_bundles() {
    for n in 1..=2usize {
        for r in 1..=5usize {
            for code in 0..(11i64.pow(n as u32)) {
                let d: Vec<i64> = (0..n)
                    .map(|k| (code / 11i64.pow(k as u32)) % 11 - 5)
                    .collect();
                let Ok(m) = canonical_sequence(r, &d) else {
                    continue;
                };
                assert!(bdg_check(&m, BdgOptions::default()).passes(), "{m:?}");
                assert_eq!(self_intersections(&m).count, 0, "{m:?}");
                assert_eq!(geometric_representative(r, &d).unwrap().crossing_count(), 0);
            }
        }
    }
}

#[test]
fn literal_gap_rejects_the_worked_example() {
    let m = canonical_sequence(2, &[2, -1]).unwrap();
    let lit = BdgOptions {
        cond2: GapMode::Literal,
        ..Default::default()
    };
    assert!(bdg_check(&m, BdgOptions::default()).passes());
    assert!(!bdg_check(&m, lit).passes());
}

#[test]
fn uniqueness_for_small_ranks() {
    for n in 1..=2usize {
        for r in 1..=4usize {
            for code in 0..(r as i64).pow(n as u32) {
                let d: Vec<i64> = (0..n)
                    .map(|k| (code / (r as i64).pow(k as u32)) % r as i64)
                    .collect();
                if gcd(r as i64, d.iter().sum()) != 1 {
                    continue;
                }
                let c = enumerate_simple_candidates(n, r, &d).unwrap();
                assert_eq!(c.len(), 1, "{r} {d:?}");
                assert!(matrices_equivalent(
                    &c[0],
                    &canonical_sequence(r, &d).unwrap()
                ));
            }
        }
    }
}

#[test]
fn peeling_matches_the_homotopy_category() {
    let mut rng = common::rng(21);
    for _ in 0..6 {
        let (r, d) = loop {
            let (r, d) = common::coprime_degrees(&mut rng, 2, 3, 3);
            if r >= 2 {
                break (r, d);
            }
        };
        let m = canonical_sequence(r, &d).unwrap();
        let c = check_extension(&m, F::from_i64(3), F::from_i64(11), &mut rng).unwrap();
        assert!(c.ext_dim >= 1);
        assert!(c.middle_ok && c.quotient_ok, "{m:?} {c:?}");
    }
}

proptest! {
    #[test]
    fn canonical_has_the_requested_degrees(r in 1usize..8, d in proptest::collection::vec(-9i64..=9, 1..4)) {
        prop_assume!(gcd(r as i64, d.iter().sum()) == 1);
        let m = canonical_sequence(r, &d).unwrap();
        prop_assert_eq!(m.multidegree(), d.clone());
        for c in 0..d.len() {
            let mut col: Vec<i64> = (0..r).map(|j| m.entries[j * d.len() + c]).collect();
            col.sort();
            prop_assert_eq!(col, degree_multiset(r, d[c]));
        }
    }

    #[test]
    fn peeling_telescopes(r in 2usize..7, d in proptest::collection::vec(-6i64..=6, 1..4)) {
        prop_assume!(gcd(r as i64, d.iter().sum()) == 1);
        let m = canonical_sequence(r, &d).unwrap();
        let parts = peel_all(&m);
        prop_assert_eq!(parts.len(), r);
        let sum: Vec<i64> = (0..d.len()).map(|c| parts.iter().map(|p| p[c]).sum()).collect();
        prop_assert_eq!(sum, d);
    }

    #[test]
    fn vertical_twist_shifts_canonical(r in 1usize..6, d in proptest::collection::vec(-5i64..=5, 1..4), l in -3i64..=3) {
        prop_assume!(gcd(r as i64, d.iter().sum()) == 1);
        let i = (l.unsigned_abs() as usize) % d.len();
        let m = canonical_sequence(r, &d).unwrap();
        let mut e = d.clone();
        e[i] += l * r as i64;
        prop_assert!(matrices_equivalent(&twist_vertical(&m, i, l), &canonical_sequence(r, &e).unwrap()));
    }
}

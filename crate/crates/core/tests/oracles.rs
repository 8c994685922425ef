//! Library results checked against brute-force reference implementations,
//! plus frozen values for the worked examples.

mod common;

use common::*;
use pollard::bounds::{check_main, check_pollard, main_rhs};
use pollard::search::{enumerate_pairs, pair_count, DEFAULT_CATALOG};
use pollard::setops::{alpha, mu, period, sumset, translate};
use pollard::spectrum::spectrum_by_intersection;
use pollard::{compute_spectrum, Element, GSet, SubgroupLattice};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

const LATTICE_GROUPS: &[&str] = &[
    "Z1", "Z2", "Z3", "Z4", "Z2xZ2", "Z5", "Z6", "Z7", "Z8", "Z2xZ4", "Z2xZ2xZ2", "Z9", "Z3xZ3",
    "Z10", "Z11", "Z12", "Z2xZ6", "Z13", "Z14", "Z15", "Z16", "Z2xZ8", "Z4xZ4", "Z2xZ2xZ4",
    "Z2xZ2xZ2xZ2", "Z17", "Z18", "Z3xZ6", "Z19", "Z20", "Z2xZ10", "Z21", "Z22", "Z23", "Z24",
    "Z2xZ12", "Z2xZ2xZ6", "Z6xZ2", "Z3xZ2xZ2",
];

#[test]
fn subgroup_lattice_is_complete() {
    for lit in LATTICE_GROUPS {
        let g = group(lit);
        let oracle = oracle_for(&g);
        let expected: BTreeSet<u64> = oracle.subgroups().into_iter().collect();
        let lat = SubgroupLattice::new(&g).unwrap();
        let got: BTreeSet<u64> = lat.subgroups().iter().map(to_mask).collect();
        assert_eq!(got.len(), lat.len(), "{lit}: duplicate subgroups");
        assert_eq!(got, expected, "{lit}");
    }
}

#[test]
fn cosets_partition_the_group() {
    for lit in DEFAULT_CATALOG {
        let g = group(lit);
        let lat = SubgroupLattice::new(&g).unwrap();
        for (h, cosets) in lat.iter() {
            assert_eq!(cosets.len() * h.card(), g.order(), "{lit} {h}");
            let mut seen = 0u64;
            for c in cosets {
                assert_eq!(c.card(), h.card());
                assert_eq!(seen & to_mask(c), 0, "{lit}: overlapping cosets of {h}");
                seen |= to_mask(c);
                let x = c.first().unwrap();
                assert_eq!(*c, translate(h, Element(x)).unwrap());
            }
            assert_eq!(seen.count_ones() as usize, g.order());
        }
    }
}

#[test]
fn small_lattices_frozen() {
    let z6 = group("Z6");
    let lat = SubgroupLattice::new(&z6).unwrap();
    let subs: Vec<Vec<usize>> = lat.subgroups().iter().map(GSet::to_vec).collect();
    assert_eq!(subs, vec![vec![0, 1, 2, 3, 4, 5], vec![0, 2, 4], vec![0, 3], vec![0]]);
    assert_eq!(mu(&z6, &lat).unwrap(), 3);

    let v4 = group("Z2xZ2");
    let lat = SubgroupLattice::new(&v4).unwrap();
    assert_eq!(lat.len(), 5);
    assert_eq!(lat.subgroups().iter().filter(|h| h.card() == 2).count(), 3);
    assert_eq!(mu(&v4, &lat).unwrap(), 2);
}

#[test]
fn translation_orbits_on_z5() {
    // Every pair of 2-subsets of Z5 reduces, by translating each operand to
    // contain 0, to exactly one enumerated pair.
    let g = group("Z5");
    let enumerated: BTreeSet<(Vec<usize>, Vec<usize>)> = enumerate_pairs(&g, 2, 2)
        .unwrap()
        .map(|(a, b)| (a.to_vec(), b.to_vec()))
        .collect();
    assert_eq!(enumerated.len(), 16);
    assert_eq!(pair_count(5, 2, 2), 16);

    let oracle = oracle_for(&g);
    let normalize = |m: u64| {
        (0..5)
            .map(|z| oracle.translate(m, z))
            .filter(|t| t & 1 == 1)
            .min()
            .unwrap()
    };
    let mut reps = BTreeSet::new();
    for a in (0u64..32).filter(|m| m.count_ones() == 2) {
        for b in (0u64..32).filter(|m| m.count_ones() == 2) {
            // Representatives are the translates containing 0; every one of
            // them must be enumerated.
            for za in 0..5 {
                for zb in 0..5 {
                    let (ta, tb) = (oracle.translate(a, za), oracle.translate(b, zb));
                    if ta & 1 == 1 && tb & 1 == 1 {
                        let key = (oracle.members(ta), oracle.members(tb));
                        assert!(enumerated.contains(&key));
                    }
                }
            }
            reps.insert((normalize(a), normalize(b)));
        }
    }
    // Each pair of translation classes has two representatives containing 0
    // per operand, so the class count is 16 / 4.
    assert_eq!(reps.len(), 4);
}

#[test]
fn spectrum_and_alpha_match_oracle_on_catalog() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for lit in DEFAULT_CATALOG {
        let g = group(lit);
        let n = g.order();
        let oracle = oracle_for(&g);
        let subs = oracle.subgroups();
        let lat = SubgroupLattice::new(&g).unwrap();
        for _ in 0..200 {
            let a = 1 | (rng.random::<u64>() & ((1u64 << n) - 1));
            let b = rng.random::<u64>() & ((1u64 << n) - 1) | 1 << rng.random_range(0..n);
            let (sa, sb) = (from_mask(&g, a), from_mask(&g, b));

            let spec = compute_spectrum(&sa, &sb).unwrap();
            assert_eq!(spec.counts(), &oracle.r(a, b)[..], "{lit} {sa} {sb}");
            assert_eq!(
                spectrum_by_intersection(&sa, &sb).unwrap().counts(),
                spec.counts()
            );
            for t in 1..=sa.card().min(sb.card()) {
                assert_eq!(to_mask(&spec.n_t(t).unwrap()), oracle.n_t(a, b, t as u32));
                assert_eq!(spec.partial_sum(t).unwrap(), oracle.s_t(a, b, t as u32));
            }

            let sum = sumset(&sa, &sb).unwrap();
            assert_eq!(to_mask(&sum), oracle.sumset(a, b));
            assert_eq!(alpha(&sa, &sb, &lat).unwrap(), oracle.alpha(&subs, a, b));
            assert_eq!(to_mask(&period(&sum)), oracle.period(oracle.sumset(a, b)));
        }
    }
}

#[test]
fn main_rhs_matches_oracle_formula() {
    for ca in 1..12 {
        for cb in 1..=ca {
            for t in 1..=cb {
                for alpha in 1..=12 {
                    let o = Oracle::new(&[1]);
                    assert_eq!(main_rhs(ca, cb, t, alpha), o.main_rhs(ca, cb, t, alpha));
                }
            }
        }
    }
}

#[test]
fn worked_examples_frozen() {
    // Z9, A = B = {0,1,2}, t = 2: S_2 = 8 = rhs_main, alpha = 1.
    let g = group("Z9");
    let lat = SubgroupLattice::new(&g).unwrap();
    let a = set(&g, &[0, 1, 2]);
    let rep = check_main(&a, &a, 2, &lat).unwrap();
    assert_eq!((rep.lhs, rep.rhs_main, rep.alpha, rep.w), (8, Some(8), 1, 0));
    assert_eq!(compute_spectrum(&a, &a).unwrap().counts(), &[1, 2, 3, 2, 1, 0, 0, 0, 0]);
    let o = oracle_for(&g);
    assert_eq!(o.alpha(&o.subgroups(), to_mask(&a), to_mask(&a)), 1);
    assert_eq!(to_mask(&compute_spectrum(&a, &a).unwrap().n_t(2).unwrap()), 0b1110);

    let g = group("Z7");
    // Z7, A = B = {0,1,2}.
    let a = set(&g, &[0, 1, 2]);
    let spec = compute_spectrum(&a, &a).unwrap();
    assert_eq!(spec.counts(), &[1, 2, 3, 2, 1, 0, 0]);
    assert_eq!(spec.partial_sums(), vec![5, 8, 9]);
    let o = oracle_for(&g);
    for (t, want) in [(1, 5), (2, 8), (3, 9)] {
        let rep = check_pollard(&a, &a, t).unwrap();
        assert_eq!((rep.lhs, rep.rhs_pollard), (want, Some(want as i64)));
        assert_eq!(rep.lhs, o.s_t(to_mask(&a), to_mask(&a), t as u32));
    }
}

#[test]
fn translate_matches_oracle() {
    for lit in ["Z6", "Z2xZ4", "Z3xZ3"] {
        let g = group(lit);
        let o = oracle_for(&g);
        for m in [1u64, 0b1011, 0b110101] {
            let m = m & ((1 << g.order()) - 1);
            let s = from_mask(&g, m);
            for z in 0..g.order() {
                assert_eq!(to_mask(&translate(&s, Element(z)).unwrap()), o.translate(m, z));
            }
            let neg: u64 = o.members(m).into_iter().fold(0, |acc, x| acc | 1 << o.neg(x));
            assert_eq!(to_mask(&s.negate()), neg);
        }
    }
}

//! Exhaustive deterministic cross-checks between the closed-form
//! constructions, the general fold, and the brute-force oracle.

use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use multicut::cons::{admissible_subsets, cons_ideal, cons_multicut_ideal, count_generators};
use multicut::filtration::lcm_fold;
use multicut::hilbert::{hilbert_numerator, survivor, ProbabilityVector, SystemKind};
use multicut::kofn::{kofn_ideal, kofn_multicut_ideal};
use multicut::monomial::{MonomialIdeal, SquarefreeMonomial};
use multicut::oracle::{brute_force_survivor, naive_multicut_gens};

fn random_minimal_ideal(rng: &mut StdRng, n: usize, max_gens: usize) -> MonomialIdeal {
    let count = rng.gen_range(1..=max_gens);
    let gens: Vec<SquarefreeMonomial> = (0..count)
        .map(|_| {
            let support: Vec<usize> = (1..=n).filter(|_| rng.gen_bool(0.4)).collect();
            SquarefreeMonomial::new(n, &support).unwrap()
        })
        .collect();
    MonomialIdeal::minimalize(n, gens).unwrap()
}

#[test]
fn staircase_equals_general_fold_exhaustively() {
    let start = Instant::now();
    for k in 1..=3usize {
        for n in k..=8 {
            let base = kofn_ideal(k, n).unwrap();
            let r = base.num_generators();
            for l in 1..=r {
                let fast = kofn_multicut_ideal(k, n, l as u64).unwrap();
                let general = lcm_fold(&base, l).unwrap();
                assert!(
                    fast.equals(&general).unwrap(),
                    "k={k} n={n} l={l}: {} generators vs {}",
                    fast.num_generators(),
                    general.num_generators()
                );
            }
        }
    }
    println!("staircase sweep took {:?}", start.elapsed());
}

#[test]
fn gap_enumeration_equals_general_fold() {
    for k in 2..=3usize {
        for n in k..=14 {
            let base = cons_ideal(k, n).unwrap();
            let r = base.num_generators();
            for i in 1..=r {
                let fast = cons_multicut_ideal(k, n, i).unwrap();
                let general = lcm_fold(&base, i).unwrap();
                assert!(
                    fast.equals(&general).unwrap(),
                    "k={k} n={n} i={i}"
                );
            }
        }
    }
}

#[test]
fn gap_count_formula_matches_enumeration_exhaustively() {
    for k in 1..=5usize {
        for n in k..=25 {
            for i in 1..=(n - k + 1) {
                let counted = count_generators(k, n, i).unwrap();
                let enumerated = admissible_subsets(k, n, i).unwrap().count() as u128;
                assert_eq!(counted, enumerated, "k={k} n={n} i={i}");
            }
        }
    }
}

#[test]
fn admissible_monomials_are_pairwise_incomparable() {
    for k in 2..=4usize {
        for n in k..=14 {
            for i in 1..=(n - k + 1) {
                let monomials: Vec<SquarefreeMonomial> = admissible_subsets(k, n, i)
                    .unwrap()
                    .map(|s| s.monomial())
                    .collect();
                for (a, ma) in monomials.iter().enumerate() {
                    for (b, mb) in monomials.iter().enumerate() {
                        if a != b {
                            assert!(
                                !ma.divides(mb).unwrap(),
                                "k={k} n={n} i={i}: {ma} divides {mb}"
                            );
                        }
                    }
                }
            }
        }
    }
}

/// Explicit inclusion-exclusion over all nonempty generator subsets,
/// collected term by term; the reference for numerator cancellation.
fn inclusion_exclusion_terms(ideal: &MonomialIdeal) -> Vec<(u64, i128)> {
    let gens: Vec<u64> = ideal.generators().iter().map(|g| g.bits()).collect();
    let r = gens.len();
    let mut terms = std::collections::BTreeMap::new();
    for subset in 1u64..(1 << r) {
        let lcm = (0..r)
            .filter(|t| subset >> t & 1 == 1)
            .fold(0u64, |acc, t| acc | gens[t]);
        let sign: i128 = if subset.count_ones() % 2 == 1 { 1 } else { -1 };
        *terms.entry(lcm).or_insert(0) += sign;
    }
    terms.retain(|_, c| *c != 0);
    terms.into_iter().collect()
}

#[test]
fn numerator_matches_explicit_inclusion_exclusion() {
    let mut cases = vec![
        cons_ideal(2, 9).unwrap(),
        cons_ideal(3, 10).unwrap(),
        cons_ideal(2, 15).unwrap(),
        kofn_ideal(2, 6).unwrap(),
    ];
    let mut rng = StdRng::seed_from_u64(0x1dea);
    for _ in 0..30 {
        let n = rng.gen_range(2..=9);
        cases.push(random_minimal_ideal(&mut rng, n, 8));
    }
    for ideal in cases {
        let h = hilbert_numerator(&ideal).unwrap();
        let expected = inclusion_exclusion_terms(&ideal);
        let got: Vec<(u64, i128)> = h.terms().map(|(m, c)| (m.bits(), c)).collect();
        assert_eq!(got, expected, "ideal {ideal}");
    }
}

#[test]
fn fold_agrees_with_naive_on_random_ideals() {
    let mut rng = StdRng::seed_from_u64(0xf01d);
    for round in 0..100 {
        let n = rng.gen_range(2..=10);
        let max_gens = if round % 2 == 0 { 12 } else { 16 };
        let ideal = random_minimal_ideal(&mut rng, n, max_gens);
        for i in 1..=ideal.num_generators() {
            let pruned = lcm_fold(&ideal, i).unwrap();
            let naive = naive_multicut_gens(&ideal, i).unwrap();
            assert!(pruned.equals(&naive).unwrap(), "ideal {ideal} fold {i}");
        }
    }
}

#[test]
fn general_fold_reproduces_consecutive_5_of_20_level_counts() {
    let base = cons_ideal(5, 20).unwrap();
    let expected: [usize; 10] = [16, 70, 124, 151, 148, 126, 100, 79, 56, 34];
    for (idx, &want) in expected.iter().enumerate() {
        let level = lcm_fold(&base, idx + 1).unwrap();
        assert_eq!(level.num_generators(), want, "level {}", idx + 1);
    }
}

#[test]
fn first_survivor_value_matches_numerator_up_to_sixteen_components() {
    for ideal in [cons_ideal(2, 16).unwrap(), cons_ideal(3, 16).unwrap()] {
        let n = ideal.n();
        for p in [
            ProbabilityVector::iid(n, 0.3).unwrap(),
            ProbabilityVector::iid(n, 0.7).unwrap(),
        ] {
            let via_states = brute_force_survivor(&ideal, &p).unwrap().survivor.value(1);
            let via_numerator = hilbert_numerator(&ideal)
                .unwrap()
                .evaluate(&p)
                .unwrap();
            assert!(
                (via_states - via_numerator).abs() <= 1e-12,
                "{ideal}: {via_states} vs {via_numerator}"
            );
        }
    }
}

#[test]
fn threshold_bounds_envelope_for_non_identical_components() {
    for (j, n) in [(2usize, 6usize), (3, 7), (4, 8)] {
        let p = ProbabilityVector::new(
            (1..=n).map(|i| i as f64 / (n + 1) as f64).collect(),
        )
        .unwrap();
        let ideal = kofn_ideal(j, n).unwrap();
        let exact = brute_force_survivor(&ideal, &p).unwrap().survivor.value(1);
        for t in 0..=(n - j) {
            let (value, _) = multicut::kofn::kofn_bounds(j, n, &p, t).unwrap();
            if t % 2 == 0 {
                assert!(value >= exact - 1e-12, "j={j} n={n} t={t}");
            } else {
                assert!(value <= exact + 1e-12, "j={j} n={n} t={t}");
            }
        }
        let (full, _) = multicut::kofn::kofn_bounds(j, n, &p, n - j).unwrap();
        let via_terms = multicut::kofn::unreliability_poly_multigraded(j, n)
            .unwrap()
            .evaluate(&p)
            .unwrap();
        assert!((full - exact).abs() <= 1e-12);
        assert!((full - via_terms).abs() <= 1e-12);
    }
}

#[test]
fn survivor_agrees_with_state_space_on_small_systems() {
    let systems: Vec<(MonomialIdeal, Option<SystemKind>)> = vec![
        (kofn_ideal(2, 6).unwrap(), Some(SystemKind::KOutOfN { k: 2 })),
        (
            cons_ideal(2, 9).unwrap(),
            Some(SystemKind::ConsecutiveKOutOfN { k: 2 }),
        ),
        (cons_ideal(4, 9).unwrap(), None),
    ];
    for (ideal, kind) in systems {
        let n = ideal.n();
        let p = ProbabilityVector::new(
            (1..=n).map(|i| 0.05 + 0.9 * (i as f64 - 1.0) / (n as f64)).collect(),
        )
        .unwrap();
        let algebraic = survivor(&ideal, &p, kind).unwrap();
        let state_space = brute_force_survivor(&ideal, &p).unwrap();
        assert_eq!(algebraic.max_index(), state_space.survivor.max_index());
        for i in 0..=algebraic.max_index() {
            let delta = (algebraic.value(i) - state_space.survivor.value(i)).abs();
            assert!(delta <= 1e-12, "{ideal} F({i}) differs by {delta}");
        }
    }
}

//! Independent brute-force ground truth: exhaustive state-space probability
//! computation and unpruned multicut enumeration. Everything here is written
//! for transparency over speed and shares no code path with the engines it
//! cross-checks.

use std::collections::HashSet;

use crate::binomial::binomial;
use crate::error::{Error, Result};
use crate::hilbert::{ProbabilityVector, SurvivorSeries};
use crate::monomial::{minimalize_bits, MonomialIdeal};
use crate::numeric::CompensatedSum;

/// Largest component count for full state-space enumeration.
pub const MAX_STATE_VARS: usize = 24;

/// Largest subset count accepted by [`naive_multicut_gens`].
const SUBSET_LIMIT: u128 = 100_000_000;

/// Exhaustive state-space result.
#[derive(Clone, Debug)]
pub struct StateSpaceResult {
    /// Component count.
    pub n: usize,
    /// Number of minimal cuts.
    pub r: usize,
    /// Tail probabilities of the simultaneous-failure count.
    pub survivor: SurvivorSeries,
}

/// Survivor series by iterating every component state: each state is
/// weighted by its probability and contributes to `F(i)` for every `i` up to
/// the number of minimal cuts it realizes.
pub fn brute_force_survivor(
    ideal: &MonomialIdeal,
    p: &ProbabilityVector,
) -> Result<StateSpaceResult> {
    ideal.require_minimal()?;
    let n = ideal.n();
    if p.len() != n {
        return Err(Error::DimensionMismatch {
            left: n,
            right: p.len(),
        });
    }
    if n > MAX_STATE_VARS {
        return Err(Error::CapacityExceeded(format!(
            "state space of {n} components exceeds the enumeration limit {MAX_STATE_VARS}"
        )));
    }
    let gens = ideal.bits_vec();
    let r = gens.len();
    let mut by_count = vec![CompensatedSum::new(); r + 1];
    for state in 0u64..(1 << n) {
        let mut weight = 1.0;
        for (i, &pi) in p.values().iter().enumerate() {
            weight *= if state >> i & 1 == 1 { pi } else { 1.0 - pi };
        }
        let realized = gens.iter().filter(|&&g| g & state == g).count();
        by_count[realized].add(weight);
    }
    let mut total = CompensatedSum::new();
    for bucket in &by_count {
        total.add(bucket.value());
    }
    if (total.value() - 1.0).abs() > 1e-12 {
        return Err(Error::CrossCheckFailed(format!(
            "state weights sum to {}, expected 1",
            total.value()
        )));
    }
    let mut values = vec![0.0; r + 1];
    values[0] = 1.0;
    let mut tail = CompensatedSum::new();
    for i in (1..=r).rev() {
        tail.add(by_count[i].value());
        values[i] = tail.value();
    }
    Ok(StateSpaceResult {
        n,
        r,
        survivor: SurvivorSeries::new(values)?,
    })
}

/// Reference `i`-fold lcm-ideal computation: materializes the lcm of every
/// size-`i` generator subset, then minimalizes, with no pruning anywhere.
pub fn naive_multicut_gens(ideal: &MonomialIdeal, i: usize) -> Result<MonomialIdeal> {
    ideal.require_minimal()?;
    if i == 0 {
        return Err(Error::InvalidParameter(
            "fold level must be at least 1".to_string(),
        ));
    }
    let r = ideal.num_generators();
    if i > r {
        return MonomialIdeal::zero(ideal.n());
    }
    let subsets = binomial(r as i64, i as i64)?;
    if subsets > SUBSET_LIMIT {
        return Err(Error::CapacityExceeded(format!(
            "{subsets} subsets exceed the enumeration limit {SUBSET_LIMIT}"
        )));
    }
    let gens = ideal.bits_vec();
    let mut lcms: HashSet<u64> = HashSet::new();
    let mut indices: Vec<usize> = (0..i).collect();
    loop {
        lcms.insert(indices.iter().fold(0u64, |acc, &t| acc | gens[t]));
        // Advance the combination odometer.
        let mut pos = i;
        loop {
            if pos == 0 {
                return Ok(MonomialIdeal::from_minimal_bits(
                    ideal.n(),
                    minimalize_bits(lcms.into_iter().collect()),
                ));
            }
            pos -= 1;
            if indices[pos] != pos + r - i {
                break;
            }
        }
        indices[pos] += 1;
        for t in pos + 1..i {
            indices[t] = indices[t - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cons::cons_ideal;
    use crate::filtration::lcm_fold;
    use crate::kofn::kofn_ideal;
    use crate::monomial::SquarefreeMonomial;

    fn m(n: usize, support: &[usize]) -> SquarefreeMonomial {
        SquarefreeMonomial::new(n, support).unwrap()
    }

    #[test]
    fn single_component() {
        let ideal = MonomialIdeal::minimalize(1, vec![m(1, &[1])]).unwrap();
        let p = ProbabilityVector::new(vec![0.3]).unwrap();
        let result = brute_force_survivor(&ideal, &p).unwrap();
        assert_eq!(result.n, 1);
        assert_eq!(result.r, 1);
        assert!((result.survivor.value(1) - 0.3).abs() < 1e-15);
    }

    #[test]
    fn two_overlapping_cuts_by_hand() {
        // Failing sets {1,2}, {2,3}, {1,2,3} give F(1) = 3/8; only {1,2,3}
        // realizes both cuts, so F(2) = 1/8.
        let ideal =
            MonomialIdeal::minimalize(3, vec![m(3, &[1, 2]), m(3, &[2, 3])]).unwrap();
        let p = ProbabilityVector::iid(3, 0.5).unwrap();
        let result = brute_force_survivor(&ideal, &p).unwrap();
        assert!((result.survivor.value(1) - 0.375).abs() < 1e-15);
        assert!((result.survivor.value(2) - 0.125).abs() < 1e-15);
    }

    #[test]
    fn capacity_guard() {
        let ideal = cons_ideal(2, 25).unwrap();
        let p = ProbabilityVector::iid(25, 0.5).unwrap();
        assert!(matches!(
            brute_force_survivor(&ideal, &p),
            Err(Error::CapacityExceeded(_))
        ));
    }

    #[test]
    fn naive_gens_examples() {
        let cons = cons_ideal(2, 9).unwrap();
        assert_eq!(naive_multicut_gens(&cons, 4).unwrap().num_generators(), 26);

        let pairs = kofn_ideal(2, 8).unwrap();
        assert_eq!(naive_multicut_gens(&pairs, 2).unwrap().num_generators(), 56);

        let top = naive_multicut_gens(&cons, cons.num_generators()).unwrap();
        assert_eq!(top.num_generators(), 1);
        assert_eq!(top.generators()[0], cons.lcm_of_generators().unwrap());
    }

    #[test]
    fn naive_gens_agrees_with_fold() {
        for i in 1..=8usize {
            let cons = cons_ideal(2, 9).unwrap();
            let a = naive_multicut_gens(&cons, i).unwrap();
            let b = lcm_fold(&cons, i).unwrap();
            assert!(a.equals(&b).unwrap(), "level {i}");
        }
    }

    #[test]
    fn naive_gens_guards() {
        let ideal = cons_ideal(2, 9).unwrap();
        assert!(matches!(
            naive_multicut_gens(&ideal, 0),
            Err(Error::InvalidParameter(_))
        ));
        assert!(naive_multicut_gens(&ideal, 9).unwrap().is_zero());

        // C(39, 19) is far past the subset limit.
        let wide = cons_ideal(2, 40).unwrap();
        assert!(matches!(
            naive_multicut_gens(&wide, 19),
            Err(Error::CapacityExceeded(_))
        ));
    }
}

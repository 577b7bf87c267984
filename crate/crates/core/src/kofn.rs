//! Multicut structure of k-out-of-n:F systems.
//!
//! The failure ideal of a k-out-of-n:F system is generated by all k-subsets
//! of the component set. Its fold ideals are again of the same shape: the
//! `l`-fold lcm-ideal equals the failure ideal of the j-out-of-n:F system
//! where `j` is pinned by `C(j-1,k) < l <= C(j,k)`. Reliability polynomials
//! and truncation bounds then come from the closed-form graded Betti numbers
//! of those ideals, with no enumeration over the `C(C(n,k), l)` subsets.

use std::collections::BTreeMap;

use crate::binomial::binomial;
use crate::error::{Error, Result};
use crate::hilbert::{BoundDirection, ProbabilityVector, ReliabilityPolynomial};
use crate::monomial::{MonomialIdeal, MAX_VARS};
use crate::numeric::CompensatedSum;

/// Ideals are materialized only below this generator count.
const GENERATOR_LIMIT: u128 = 10_000_000;

fn check_kn(k: usize, n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "component count must be positive".to_string(),
        ));
    }
    if n > MAX_VARS {
        return Err(Error::CapacityExceeded(format!(
            "component count {n} exceeds the supported maximum {MAX_VARS}"
        )));
    }
    if k < 1 || k > n {
        return Err(Error::InvalidParameter(format!(
            "failure threshold {k} outside 1..={n}"
        )));
    }
    Ok(())
}

/// Failure ideal of the k-out-of-n:F system: all k-subsets of `{1..n}`.
pub fn kofn_ideal(k: usize, n: usize) -> Result<MonomialIdeal> {
    check_kn(k, n)?;
    let count = binomial(n as i64, k as i64)?;
    if count > GENERATOR_LIMIT {
        return Err(Error::CapacityExceeded(format!(
            "ideal would need {count} generators (limit {GENERATOR_LIMIT})"
        )));
    }
    let limit = 1u64 << n;
    let mut bits = Vec::with_capacity(count as usize);
    let mut mask = (1u64 << k) - 1;
    while mask < limit {
        bits.push(mask);
        // Gosper's hack: next word with the same popcount.
        let c = mask & mask.wrapping_neg();
        let r = mask + c;
        if r >= limit {
            break;
        }
        mask = (((r ^ mask) >> 2) / c) | r;
    }
    debug_assert_eq!(bits.len() as u128, count);
    Ok(MonomialIdeal::from_minimal_bits(n, bits))
}

/// Position of a simultaneous-failure count on the staircase: the effective
/// threshold `j` with `C(j-1,k) < l <= C(j,k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StaircaseLevel {
    pub k: usize,
    pub l: u64,
    pub j: usize,
}

/// The unique `j` with `C(j-1,k) < l <= C(j,k)` for `1 <= l <= C(n,k)`.
pub fn staircase_level(k: usize, n: usize, l: u64) -> Result<StaircaseLevel> {
    check_kn(k, n)?;
    let total = binomial(n as i64, k as i64)?;
    if l < 1 || (l as u128) > total {
        return Err(Error::InvalidParameter(format!(
            "multiplicity {l} outside 1..={total}"
        )));
    }
    let mut j = k;
    while binomial(j as i64, k as i64)? < l as u128 {
        j += 1;
    }
    Ok(StaircaseLevel { k, l, j })
}

/// Minimal `l`-multicut ideal of the k-out-of-n:F system, via the staircase
/// identity rather than subset enumeration.
pub fn kofn_multicut_ideal(k: usize, n: usize, l: u64) -> Result<MonomialIdeal> {
    let level = staircase_level(k, n, l)?;
    kofn_ideal(level.j, n)
}

/// Graded Betti numbers of the j-out-of-n failure ideal. Ranks are nonzero
/// only in degrees `d = a + j` for `0 <= a <= n - j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    j: usize,
    n: usize,
    entries: BTreeMap<(usize, usize), u128>,
}

impl BettiTable {
    pub fn j(&self) -> usize {
        self.j
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Rank at homological index `a` and total degree `d`; zero if absent.
    pub fn rank(&self, a: usize, d: usize) -> u128 {
        self.entries.get(&(a, d)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, u128)> + '_ {
        self.entries.iter().map(|(&(a, d), &r)| (a, d, r))
    }
}

/// Betti table of the j-out-of-n failure ideal:
/// `beta_{a, a+j} = C(n, j+a) * C(a+j-1, j-1)`.
pub fn betti_table(j: usize, n: usize) -> Result<BettiTable> {
    check_kn(j, n)?;
    let mut entries = BTreeMap::new();
    for a in 0..=(n - j) {
        let rank = binomial(n as i64, (j + a) as i64)?
            .checked_mul(binomial((a + j - 1) as i64, (j - 1) as i64)?)
            .ok_or(Error::Overflow("Betti rank"))?;
        entries.insert((a, a + j), rank);
    }
    Ok(BettiTable { j, n, entries })
}

/// Integer polynomial in one variable, stored as coefficients by degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnivariatePoly {
    coeffs: Vec<i128>,
}

impl UnivariatePoly {
    fn new(coeffs: Vec<i128>) -> Self {
        let mut coeffs = coeffs;
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// Coefficient of `p^d`.
    pub fn coefficient(&self, d: usize) -> i128 {
        self.coeffs.get(d).copied().unwrap_or(0)
    }

    /// Coefficients indexed by degree, trailing zeros trimmed.
    pub fn coefficients(&self) -> &[i128] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    /// Compensated Horner evaluation. The alternating coefficients cancel
    /// heavily near `p = 1`, so the rounding errors of every product and sum
    /// are carried in a correction term.
    pub fn evaluate(&self, p: f64) -> f64 {
        let mut result = 0.0f64;
        let mut correction = 0.0f64;
        for &c in self.coeffs.iter().rev() {
            let prod = result * p;
            let prod_err = result.mul_add(p, -prod);
            let c = c as f64;
            let sum = prod + c;
            let shifted = sum - prod;
            let sum_err = (prod - (sum - shifted)) + (c - shifted);
            result = sum;
            correction = correction.mul_add(p, prod_err + sum_err);
        }
        result + correction
    }
}

impl std::fmt::Display for UnivariatePoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (d, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if first {
                write!(f, "{c}")?;
                first = false;
            } else if c < 0 {
                write!(f, " - {}", -c)?;
            } else {
                write!(f, " + {c}")?;
            }
            if d > 0 {
                write!(f, "*p^{d}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Probability that at least `j` of `n` i.i.d. components have failed, as a
/// polynomial in the common failure probability:
/// `sum_a (-1)^a C(n, j+a) C(a+j-1, j-1) p^(j+a)`.
pub fn unreliability_poly_iid(j: usize, n: usize) -> Result<UnivariatePoly> {
    let table = betti_table(j, n)?;
    let mut coeffs = vec![0i128; n + 1];
    for a in 0..=(n - j) {
        let rank: i128 = table
            .rank(a, a + j)
            .try_into()
            .map_err(|_| Error::Overflow("polynomial coefficient"))?;
        coeffs[j + a] = if a % 2 == 0 { rank } else { -rank };
    }
    Ok(UnivariatePoly::new(coeffs))
}

/// Multigraded form of the same polynomial: coefficient
/// `(-1)^a C(a+j-1, j-1)` on every squarefree monomial of degree `j + a`.
/// Evaluating it at a probability vector gives the failure probability for
/// independent, not necessarily identical, components.
pub fn unreliability_poly_multigraded(j: usize, n: usize) -> Result<ReliabilityPolynomial> {
    check_kn(j, n)?;
    let mut terms: u128 = 0;
    for a in 0..=(n - j) {
        terms += binomial(n as i64, (j + a) as i64)?;
    }
    if terms > GENERATOR_LIMIT {
        return Err(Error::CapacityExceeded(format!(
            "polynomial would need {terms} terms (limit {GENERATOR_LIMIT})"
        )));
    }
    let mut poly = ReliabilityPolynomial::zero(n)?;
    let limit = 1u64 << n;
    for a in 0..=(n - j) {
        let mult: i128 = binomial((a + j - 1) as i64, (j - 1) as i64)?
            .try_into()
            .map_err(|_| Error::Overflow("polynomial coefficient"))?;
        let coeff = if a % 2 == 0 { mult } else { -mult };
        let d = j + a;
        let mut mask = (1u64 << d) - 1;
        while mask < limit {
            poly.add_term(mask, coeff)?;
            let c = mask & mask.wrapping_neg();
            let r = mask + c;
            if r >= limit {
                break;
            }
            mask = (((r ^ mask) >> 2) / c) | r;
        }
    }
    Ok(poly)
}

/// Truncation bound on the failure probability of the j-out-of-n:F system:
/// the partial sum of the alternating polynomial over `a = 0..=t`. Even `t`
/// overestimates, odd `t` underestimates, and `t = n - j` is exact.
///
/// `p` may be any probability vector of length `n`; the i.i.d. case is the
/// constant vector.
pub fn kofn_bounds(
    j: usize,
    n: usize,
    p: &ProbabilityVector,
    t: usize,
) -> Result<(f64, BoundDirection)> {
    check_kn(j, n)?;
    if p.len() != n {
        return Err(Error::DimensionMismatch {
            left: n,
            right: p.len(),
        });
    }
    if t > n - j {
        return Err(Error::InvalidParameter(format!(
            "truncation depth {t} outside 0..={}",
            n - j
        )));
    }
    // Elementary symmetric sums e_d(p): the sum over all degree-d squarefree
    // monomials evaluated at p.
    let mut e = vec![0.0f64; n + 1];
    e[0] = 1.0;
    for &pi in p.values() {
        for d in (1..=n).rev() {
            e[d] += pi * e[d - 1];
        }
    }
    let mut acc = CompensatedSum::new();
    for a in 0..=t {
        let mult = binomial((a + j - 1) as i64, (j - 1) as i64)? as f64;
        let term = mult * e[j + a];
        acc.add(if a % 2 == 0 { term } else { -term });
    }
    let direction = if t % 2 == 0 {
        BoundDirection::Upper
    } else {
        BoundDirection::Lower
    };
    Ok((acc.value(), direction))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filtration::lcm_fold;
    use crate::monomial::SquarefreeMonomial;

    fn m(n: usize, support: &[usize]) -> SquarefreeMonomial {
        SquarefreeMonomial::new(n, support).unwrap()
    }

    #[test]
    fn series_and_parallel_ideals() {
        let series = kofn_ideal(1, 3).unwrap();
        assert_eq!(
            series.generators(),
            &[m(3, &[1]), m(3, &[2]), m(3, &[3])]
        );
        let parallel = kofn_ideal(8, 8).unwrap();
        assert_eq!(parallel.generators(), &[m(8, &[1, 2, 3, 4, 5, 6, 7, 8])]);
    }

    #[test]
    fn pair_ideal_has_all_pairs() {
        let ideal = kofn_ideal(2, 8).unwrap();
        assert_eq!(ideal.num_generators(), 28);
        assert!(ideal.generators().iter().all(|g| g.degree() == 2));
        assert!(ideal.is_minimal());
    }

    #[test]
    fn parameter_errors() {
        assert!(matches!(kofn_ideal(0, 5), Err(Error::InvalidParameter(_))));
        assert!(matches!(kofn_ideal(6, 5), Err(Error::InvalidParameter(_))));
        assert!(matches!(
            kofn_ideal(2, 64),
            Err(Error::CapacityExceeded(_))
        ));
    }

    #[test]
    fn staircase_positions() {
        assert_eq!(staircase_level(2, 8, 1).unwrap().j, 2);
        assert_eq!(staircase_level(2, 8, 4).unwrap().j, 4);
        assert_eq!(staircase_level(2, 8, 28).unwrap().j, 8);
        assert!(matches!(
            staircase_level(2, 8, 0),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            staircase_level(2, 8, 29),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn staircase_brackets_hold() {
        for l in 1..=28u64 {
            let level = staircase_level(2, 8, l).unwrap();
            let below = binomial(level.j as i64 - 1, 2).unwrap();
            let at = binomial(level.j as i64, 2).unwrap();
            assert!(below < l as u128 && l as u128 <= at);
        }
    }

    #[test]
    fn multicut_ideal_via_staircase() {
        let seven = kofn_multicut_ideal(2, 8, 7).unwrap();
        assert_eq!(seven.num_generators(), 56);
        assert!(seven.generators().iter().all(|g| g.degree() == 5));

        let base = kofn_ideal(2, 8).unwrap();
        let two = kofn_multicut_ideal(2, 8, 2).unwrap();
        assert!(two.equals(&lcm_fold(&base, 2).unwrap()).unwrap());

        let one = kofn_multicut_ideal(3, 5, 1).unwrap();
        assert!(one.equals(&kofn_ideal(3, 5).unwrap()).unwrap());
    }

    #[test]
    fn betti_table_small_case() {
        let table = betti_table(2, 3).unwrap();
        assert_eq!(table.rank(0, 2), 3);
        assert_eq!(table.rank(1, 3), 2);
        assert_eq!(table.rank(0, 3), 0);
        assert_eq!(table.entries().count(), 2);
    }

    #[test]
    fn betti_rank_zero_counts_generators() {
        for n in 1..=10usize {
            for j in 1..=n {
                let table = betti_table(j, n).unwrap();
                assert_eq!(table.rank(0, j), binomial(n as i64, j as i64).unwrap());
            }
        }
    }

    #[test]
    fn betti_series_column() {
        let table = betti_table(1, 5).unwrap();
        for a in 0..=4usize {
            assert_eq!(table.rank(a, a + 1), binomial(5, (1 + a) as i64).unwrap());
        }
    }

    #[test]
    fn iid_polynomial_examples() {
        let all = unreliability_poly_iid(4, 4).unwrap();
        assert_eq!(all.coefficients(), &[0, 0, 0, 0, 1]);

        let two_of_three = unreliability_poly_iid(2, 3).unwrap();
        assert_eq!(two_of_three.coefficients(), &[0, 0, 3, -2]);
        assert!((two_of_three.evaluate(0.5) - 0.5).abs() < 1e-15);

        // At least one of n: 1 - (1-p)^n expanded.
        for n in 1..=8usize {
            let poly = unreliability_poly_iid(1, n).unwrap();
            for d in 1..=n {
                let expect = binomial(n as i64, d as i64).unwrap() as i128;
                let expect = if d % 2 == 1 { expect } else { -expect };
                assert_eq!(poly.coefficient(d), expect);
            }
            assert_eq!(poly.coefficient(0), 0);
        }
    }

    #[test]
    fn multigraded_small_cases() {
        let both = unreliability_poly_multigraded(2, 2).unwrap();
        assert_eq!(both.term_count(), 1);
        assert_eq!(both.coefficient_bits(0b11), 1);

        let either = unreliability_poly_multigraded(1, 2).unwrap();
        assert_eq!(either.coefficient_bits(0b01), 1);
        assert_eq!(either.coefficient_bits(0b10), 1);
        assert_eq!(either.coefficient_bits(0b11), -1);
    }

    #[test]
    fn multigraded_matches_iid_on_constant_vector() {
        let poly = unreliability_poly_multigraded(2, 3).unwrap();
        let iid = unreliability_poly_iid(2, 3).unwrap();
        for &p in &[0.1, 0.35, 0.5, 0.8] {
            let vector = ProbabilityVector::iid(3, p).unwrap();
            let via_terms = poly.evaluate(&vector).unwrap();
            assert!((via_terms - iid.evaluate(p)).abs() < 1e-12);
        }
    }

    #[test]
    fn bound_examples() {
        let p = ProbabilityVector::iid(3, 0.5).unwrap();
        let (upper, dir) = kofn_bounds(2, 3, &p, 0).unwrap();
        assert!((upper - 0.75).abs() < 1e-15);
        assert_eq!(dir, BoundDirection::Upper);

        let (exact, dir) = kofn_bounds(2, 3, &p, 1).unwrap();
        assert!((exact - 0.5).abs() < 1e-15);
        assert_eq!(dir, BoundDirection::Lower);

        assert!(matches!(
            kofn_bounds(2, 3, &p, 2),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn full_sum_matches_series_closed_form() {
        for n in 1..=10usize {
            let p = ProbabilityVector::iid(n, 0.3).unwrap();
            let (value, _) = kofn_bounds(1, n, &p, n - 1).unwrap();
            let exact = 1.0 - 0.7f64.powi(n as i32);
            assert!((value - exact).abs() < 1e-12, "n = {n}");
        }
    }

    #[test]
    fn monotone_in_threshold() {
        for j in 2..=7usize {
            let lo = unreliability_poly_iid(j, 8).unwrap();
            let hi = unreliability_poly_iid(j + 1, 8).unwrap();
            for step in 0..=20 {
                let p = step as f64 / 20.0;
                assert!(
                    lo.evaluate(p) >= hi.evaluate(p) - 1e-12,
                    "j = {j}, p = {p}"
                );
            }
        }
    }
}

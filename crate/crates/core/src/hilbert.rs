//! Hilbert-series numerators of squarefree ideals, failure probabilities,
//! survivor series and Bonferroni truncation bounds.
//!
//! The numerator of the multigraded Hilbert series of an ideal enumerates its
//! monomials with signs, so substituting the component failure probabilities
//! for the variables yields the probability of the union event: for a failure
//! ideal that is the unreliability of the system, and for the `i`-fold
//! lcm-ideal it is `prob{Y >= i}`, the probability of at least `i`
//! simultaneous minimal failures.
//!
//! Numerators are computed by the colon recursion
//! `H(<m_1..m_r>) = H(<m_1..m_{r-1}>) + x^{m_r} (1 - H(<m_1..m_{r-1}> : m_r))`
//! with the quotient re-minimalized at every step, never by expanding the
//! `2^r` inclusion-exclusion subsets.

use std::collections::{BTreeMap, HashMap};

use crate::binomial::binomial;
use crate::cons::cons_ideal;
use crate::cons::cons_multicut_ideal;
use crate::error::{Error, Result};
use crate::filtration::lcm_fold;
use crate::kofn::{kofn_ideal, staircase_level, unreliability_poly_multigraded};
use crate::monomial::{minimalize_bits, MonomialIdeal, SquarefreeMonomial};
use crate::numeric::CompensatedSum;

/// Result range tolerance for probability evaluation.
const EVAL_TOLERANCE: f64 = 1e-9;
/// Monotonicity tolerance for survivor series.
const MONOTONE_TOLERANCE: f64 = 1e-12;
/// Largest admissible term count for Bonferroni partial sums.
const BONFERRONI_TERM_LIMIT: u128 = 100_000_000;

/// Whether a truncation bound over- or under-estimates the exact value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundDirection {
    Upper,
    Lower,
}

impl std::fmt::Display for BoundDirection {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BoundDirection::Upper => write!(f, "upper"),
            BoundDirection::Lower => write!(f, "lower"),
        }
    }
}

/// Per-component failure probabilities.
#[derive(Clone, Debug, PartialEq)]
pub struct ProbabilityVector {
    p: Vec<f64>,
}

impl ProbabilityVector {
    pub fn new(p: Vec<f64>) -> Result<Self> {
        if p.is_empty() {
            return Err(Error::InvalidParameter(
                "probability vector must be nonempty".to_string(),
            ));
        }
        for (i, &v) in p.iter().enumerate() {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::InvalidParameter(format!(
                    "probability {v} at component {} outside [0, 1]",
                    i + 1
                )));
            }
        }
        Ok(Self { p })
    }

    /// Constant vector for i.i.d. components.
    pub fn iid(n: usize, p: f64) -> Result<Self> {
        Self::new(vec![p; n])
    }

    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        self.p.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.p
    }

    /// Failure probability of component `i`, 1-based.
    pub fn get(&self, i: usize) -> f64 {
        self.p[i - 1]
    }
}

/// Integer multilinear polynomial: a signed enumeration of squarefree
/// supports. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReliabilityPolynomial {
    n: u8,
    terms: BTreeMap<u64, i128>,
}

impl ReliabilityPolynomial {
    pub fn zero(n: usize) -> Result<Self> {
        SquarefreeMonomial::one(n)?;
        Ok(Self {
            n: n as u8,
            terms: BTreeMap::new(),
        })
    }

    /// The constant polynomial 1.
    pub fn one(n: usize) -> Result<Self> {
        let mut poly = Self::zero(n)?;
        poly.terms.insert(0, 1);
        Ok(poly)
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of the monomial with the given support.
    pub fn coefficient(&self, support: &SquarefreeMonomial) -> i128 {
        self.coefficient_bits(support.bits())
    }

    pub fn coefficient_bits(&self, bits: u64) -> i128 {
        self.terms.get(&bits).copied().unwrap_or(0)
    }

    /// Terms in canonical (ascending support word) order.
    pub fn terms(&self) -> impl Iterator<Item = (SquarefreeMonomial, i128)> + '_ {
        self.terms
            .iter()
            .map(|(&bits, &c)| (SquarefreeMonomial::from_bits(self.n(), bits), c))
    }

    pub(crate) fn add_term(&mut self, bits: u64, delta: i128) -> Result<()> {
        debug_assert_eq!(bits >> self.n, 0);
        let entry = self.terms.entry(bits).or_insert(0);
        *entry = entry
            .checked_add(delta)
            .ok_or(Error::Overflow("polynomial coefficient"))?;
        if *entry == 0 {
            self.terms.remove(&bits);
        }
        Ok(())
    }

    /// Substitutes the failure probabilities for the variables. The result of
    /// a valid numerator is a probability; values outside `[0, 1]` beyond a
    /// small tolerance are reported as a cross-check failure rather than
    /// clamped.
    pub fn evaluate(&self, p: &ProbabilityVector) -> Result<f64> {
        if p.len() != self.n() {
            return Err(Error::DimensionMismatch {
                left: self.n(),
                right: p.len(),
            });
        }
        let mut acc = CompensatedSum::new();
        for (&bits, &c) in &self.terms {
            let mut prod = c as f64;
            let mut rest = bits;
            while rest != 0 {
                prod *= p.values()[rest.trailing_zeros() as usize];
                rest &= rest - 1;
            }
            acc.add(prod);
        }
        let value = acc.value();
        if !(-EVAL_TOLERANCE..=1.0 + EVAL_TOLERANCE).contains(&value) {
            return Err(Error::CrossCheckFailed(format!(
                "numerator evaluated to {value}, outside [0, 1]"
            )));
        }
        Ok(value)
    }
}

impl std::fmt::Display for ReliabilityPolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (t, (m, c)) in self.terms().enumerate() {
            if t == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else if c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.unsigned_abs();
            if mag != 1 || m.is_one() {
                write!(f, "{mag}")?;
            }
            if !m.is_one() {
                write!(f, "{m}")?;
            }
        }
        Ok(())
    }
}

struct NumeratorComputer {
    n: usize,
    memo: HashMap<Vec<u64>, BTreeMap<u64, i128>>,
}

impl NumeratorComputer {
    fn numerator(&mut self, gens: &[u64]) -> Result<BTreeMap<u64, i128>> {
        if gens.is_empty() {
            return Ok(BTreeMap::new());
        }
        if gens == [0] {
            return Ok(BTreeMap::from([(0, 1)]));
        }
        if let Some(hit) = self.memo.get(gens) {
            return Ok(hit.clone());
        }
        let (&pivot, rest) = gens.split_last().unwrap();
        let mut acc = self.numerator(rest)?;
        add_term(&mut acc, pivot, 1)?;
        let quotient = minimalize_bits(rest.iter().map(|&g| g & !pivot).collect());
        for (bits, c) in self.numerator(&quotient)? {
            debug_assert_eq!(bits & pivot, 0);
            add_term(
                &mut acc,
                bits | pivot,
                c.checked_neg().ok_or(Error::Overflow("polynomial coefficient"))?,
            )?;
        }
        self.memo.insert(gens.to_vec(), acc.clone());
        Ok(acc)
    }
}

fn add_term(map: &mut BTreeMap<u64, i128>, bits: u64, delta: i128) -> Result<()> {
    let entry = map.entry(bits).or_insert(0);
    *entry = entry
        .checked_add(delta)
        .ok_or(Error::Overflow("polynomial coefficient"))?;
    if *entry == 0 {
        map.remove(&bits);
    }
    Ok(())
}

/// Numerator of the multigraded Hilbert series of a minimal squarefree
/// ideal: the fully cancelled signed enumeration of its monomial supports.
pub fn hilbert_numerator(ideal: &MonomialIdeal) -> Result<ReliabilityPolynomial> {
    ideal.require_minimal()?;
    let mut computer = NumeratorComputer {
        n: ideal.n(),
        memo: HashMap::new(),
    };
    let terms = computer.numerator(&ideal.bits_vec())?;
    Ok(ReliabilityPolynomial {
        n: computer.n as u8,
        terms,
    })
}

/// Tail distribution of the simultaneous-failure count: `F(i) = prob{Y >= i}`
/// for `i = 0..=r`, with `F(i) = 0` beyond the stored range.
#[derive(Clone, Debug, PartialEq)]
pub struct SurvivorSeries {
    values: Vec<f64>,
}

impl SurvivorSeries {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.first() != Some(&1.0) {
            return Err(Error::CrossCheckFailed(
                "survivor series must start at F(0) = 1".to_string(),
            ));
        }
        for (i, w) in values.windows(2).enumerate() {
            if w[1] > w[0] + MONOTONE_TOLERANCE {
                return Err(Error::CrossCheckFailed(format!(
                    "survivor series increases at {}: {} -> {}",
                    i,
                    w[0],
                    w[1]
                )));
            }
        }
        if let Some(&last) = values.last() {
            if last < -EVAL_TOLERANCE {
                return Err(Error::CrossCheckFailed(format!(
                    "survivor series ends below zero: {last}"
                )));
            }
        }
        Ok(Self { values })
    }

    /// Largest stored index `r`.
    pub fn max_index(&self) -> usize {
        self.values.len() - 1
    }

    /// `F(i)`; zero beyond the stored range.
    pub fn value(&self, i: usize) -> f64 {
        self.values.get(i).copied().unwrap_or(0.0)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// Specialized multicut constructions usable as a fast path in [`survivor`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SystemKind {
    /// k-out-of-n:F system with the given threshold.
    KOutOfN { k: usize },
    /// Consecutive k-out-of-n:F system with the given window width.
    ConsecutiveKOutOfN { k: usize },
}

/// Survivor series of a system with minimal failure ideal `ideal`:
/// `F(i)` is the evaluation of the Hilbert numerator of the `i`-fold
/// lcm-ideal at `p`. A system kind routes each level through its closed
/// form (the staircase numerator for k-out-of-n systems, the gap
/// enumeration for consecutive ones); without a kind the levels come from
/// the general fold. Both routes produce the identical polynomial, so the
/// series agree exactly.
pub fn survivor(
    ideal: &MonomialIdeal,
    p: &ProbabilityVector,
    kind: Option<SystemKind>,
) -> Result<SurvivorSeries> {
    ideal.require_minimal()?;
    let n = ideal.n();
    if p.len() != n {
        return Err(Error::DimensionMismatch {
            left: n,
            right: p.len(),
        });
    }
    if let Some(kind) = kind {
        let expected = match kind {
            SystemKind::KOutOfN { k } => kofn_ideal(k, n)?,
            SystemKind::ConsecutiveKOutOfN { k } => cons_ideal(k, n)?,
        };
        if ideal != &expected {
            return Err(Error::InvalidParameter(
                "system kind does not match the supplied failure ideal".to_string(),
            ));
        }
    }
    let r = ideal.num_generators();
    let mut values = Vec::with_capacity(r + 1);
    values.push(1.0);
    // Staircase systems repeat the same level ideal across whole intervals
    // of `i`; reusing the previous value there changes nothing (identical
    // polynomial, identical evaluation) and avoids rebuilding it.
    let mut last_threshold: Option<(usize, f64)> = None;
    let mut last_level: Option<(MonomialIdeal, f64)> = None;
    for i in 1..=r {
        let value = match kind {
            Some(SystemKind::KOutOfN { k }) => {
                let j = staircase_level(k, n, i as u64)?.j;
                match last_threshold {
                    Some((prev_j, v)) if prev_j == j => v,
                    _ => {
                        let v = unreliability_poly_multigraded(j, n)?.evaluate(p)?;
                        last_threshold = Some((j, v));
                        v
                    }
                }
            }
            Some(SystemKind::ConsecutiveKOutOfN { k }) => {
                hilbert_numerator(&cons_multicut_ideal(k, n, i)?)?.evaluate(p)?
            }
            None => {
                let level = lcm_fold(ideal, i)?;
                match &last_level {
                    Some((prev, v)) if *prev == level => *v,
                    _ => {
                        let v = hilbert_numerator(&level)?.evaluate(p)?;
                        last_level = Some((level, v));
                        v
                    }
                }
            }
        };
        values.push(value);
    }
    SurvivorSeries::new(values)
}

/// Partial inclusion-exclusion sums over the generators of `ideal`:
/// entry `d-1` holds `sum_{j=1}^{d} (-1)^{j+1} sum_{|sigma|=j} prod p` for
/// `d = 1..=depth`.
pub fn bonferroni_partial_sums(
    ideal: &MonomialIdeal,
    p: &ProbabilityVector,
    depth: usize,
) -> Result<Vec<f64>> {
    ideal.require_minimal()?;
    if p.len() != ideal.n() {
        return Err(Error::DimensionMismatch {
            left: ideal.n(),
            right: p.len(),
        });
    }
    let r = ideal.num_generators();
    if depth < 1 || depth > r {
        return Err(Error::InvalidParameter(format!(
            "truncation depth {depth} outside 1..={r}"
        )));
    }
    let mut terms: u128 = 0;
    for j in 1..=depth {
        terms += binomial(r as i64, j as i64)?;
    }
    if terms > BONFERRONI_TERM_LIMIT {
        return Err(Error::CapacityExceeded(format!(
            "truncated inclusion-exclusion needs {terms} terms (limit {BONFERRONI_TERM_LIMIT})"
        )));
    }
    let mut walker = SubsetWalker {
        gens: ideal.bits_vec(),
        p,
        depth,
        by_size: vec![CompensatedSum::new(); depth + 1],
    };
    walker.walk(0, 0, 1.0, 0);
    let mut out = Vec::with_capacity(depth);
    let mut acc = CompensatedSum::new();
    for (j, sum) in walker.by_size.iter().enumerate().skip(1) {
        let term = sum.value();
        acc.add(if j % 2 == 1 { term } else { -term });
        out.push(acc.value());
    }
    Ok(out)
}

struct SubsetWalker<'a> {
    gens: Vec<u64>,
    p: &'a ProbabilityVector,
    depth: usize,
    by_size: Vec<CompensatedSum>,
}

impl SubsetWalker<'_> {
    /// Accumulates the lcm probability of every generator subset extending
    /// the current one, bucketed by subset size.
    fn walk(&mut self, start: usize, bits: u64, prod: f64, size: usize) {
        for t in start..self.gens.len() {
            let joined = bits | self.gens[t];
            let mut added = joined & !bits;
            let mut next_prod = prod;
            while added != 0 {
                next_prod *= self.p.values()[added.trailing_zeros() as usize];
                added &= added - 1;
            }
            self.by_size[size + 1].add(next_prod);
            if size + 1 < self.depth {
                self.walk(t + 1, joined, next_prod, size + 1);
            }
        }
    }
}

/// Bonferroni bound at truncation depth `d`: upper for odd `d`, lower for
/// even `d`, exact at `d = r`.
pub fn bonferroni(
    ideal: &MonomialIdeal,
    p: &ProbabilityVector,
    depth: usize,
) -> Result<(f64, BoundDirection)> {
    let partials = bonferroni_partial_sums(ideal, p, depth)?;
    let direction = if depth % 2 == 1 {
        BoundDirection::Upper
    } else {
        BoundDirection::Lower
    };
    Ok((partials[depth - 1], direction))
}

/// Point masses `prob{Y = i} = F(i) - F(i+1)` for `i = 0..=r`. Masses must
/// be nonnegative within tolerance and sum to 1.
pub fn distribution(series: &SurvivorSeries) -> Result<Vec<f64>> {
    let r = series.max_index();
    let mut masses = Vec::with_capacity(r + 1);
    let mut total = CompensatedSum::new();
    for i in 0..=r {
        let mass = series.value(i) - series.value(i + 1);
        if mass < -EVAL_TOLERANCE {
            return Err(Error::CrossCheckFailed(format!(
                "negative mass {mass} at {i}"
            )));
        }
        total.add(mass);
        masses.push(mass);
    }
    if (total.value() - 1.0).abs() > EVAL_TOLERANCE {
        return Err(Error::CrossCheckFailed(format!(
            "distribution sums to {}, expected 1",
            total.value()
        )));
    }
    Ok(masses)
}

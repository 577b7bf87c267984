//! Multicut structure of consecutive k-out-of-n:F systems.
//!
//! The failure ideal of a consecutive k-out-of-n:F system is generated by the
//! `n - k + 1` windows of `k` consecutive components. A subset of those
//! window generators contributes a minimal `i`-multicut exactly when, between
//! consecutive chosen windows, it never skips `1..k-1` windows: every gap is
//! absent or of size at least `k`. That gap rule drives both the streaming
//! enumerator ([`admissible_subsets`]) and the closed-form generator count
//! ([`count_generators`]), so no filtering over `C(n-k+1, i)` subsets ever
//! happens.

use crate::binomial::binomial;
use crate::error::{Error, Result};
use crate::monomial::{MonomialIdeal, SquarefreeMonomial, MAX_VARS};

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

fn window_bits(k: usize, start: usize) -> u64 {
    ((1u64 << k) - 1) << (start - 1)
}

/// Failure ideal of the consecutive k-out-of-n:F system: generator `t` has
/// support `{t, …, t+k-1}`, for `t = 1..=n-k+1`.
pub fn cons_ideal(k: usize, n: usize) -> Result<MonomialIdeal> {
    check_kn(k, n)?;
    let bits = (1..=n - k + 1).map(|t| window_bits(k, t)).collect();
    Ok(MonomialIdeal::from_minimal_bits(n, bits))
}

/// A maximal run of consecutive window indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Block {
    pub start: usize,
    pub size: usize,
}

/// Block structure of a sorted index set: maximal consecutive runs and the
/// gap sizes between successive runs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockDecomposition {
    blocks: Vec<Block>,
    gaps: Vec<usize>,
}

impl BlockDecomposition {
    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn gaps(&self) -> &[usize] {
        &self.gaps
    }

    /// Size of the smallest gap; `None` when the set is a single block.
    pub fn smallest_gap(&self) -> Option<usize> {
        self.gaps.iter().copied().min()
    }

    /// The index set the decomposition came from.
    pub fn elements(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for b in &self.blocks {
            out.extend(b.start..b.start + b.size);
        }
        out
    }
}

/// A subset of the window-generator indices `{1, …, n-k+1}` of a consecutive
/// k-out-of-n:F system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSubset {
    k: usize,
    n: usize,
    elements: Vec<usize>,
}

impl GeneratorSubset {
    pub fn new(k: usize, n: usize, elements: Vec<usize>) -> Result<Self> {
        check_kn(k, n)?;
        if elements.is_empty() {
            return Err(Error::InvalidParameter(
                "generator subset must be nonempty".to_string(),
            ));
        }
        if !elements.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::InvalidParameter(
                "generator subset must be strictly increasing".to_string(),
            ));
        }
        let limit = n - k + 1;
        let last = *elements.last().unwrap();
        if elements[0] < 1 || last > limit {
            return Err(Error::InvalidParameter(format!(
                "generator indices must lie in 1..={limit}"
            )));
        }
        Ok(Self { k, n, elements })
    }

    fn from_valid(k: usize, n: usize, elements: Vec<usize>) -> Self {
        Self { k, n, elements }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn block_decomposition(&self) -> BlockDecomposition {
        let mut blocks = Vec::new();
        let mut gaps = Vec::new();
        let mut start = self.elements[0];
        let mut size = 1;
        for w in self.elements.windows(2) {
            if w[1] == w[0] + 1 {
                size += 1;
            } else {
                blocks.push(Block { start, size });
                gaps.push(w[1] - w[0] - 1);
                start = w[1];
                size = 1;
            }
        }
        blocks.push(Block { start, size });
        BlockDecomposition { blocks, gaps }
    }

    /// True iff every gap is of size at least `k` (no forbidden small gaps).
    pub fn is_admissible(&self) -> bool {
        self.elements
            .windows(2)
            .all(|w| w[1] - w[0] == 1 || w[1] - w[0] > self.k)
    }

    /// Degree of the corresponding multicut monomial: each block of `s`
    /// consecutive windows contributes `s + k - 1` components.
    pub fn degree(&self) -> usize {
        self.block_decomposition()
            .blocks()
            .iter()
            .map(|b| b.size + self.k - 1)
            .sum()
    }

    /// The multicut monomial: union of the chosen window supports.
    pub fn monomial(&self) -> SquarefreeMonomial {
        let bits = self
            .elements
            .iter()
            .fold(0u64, |acc, &t| acc | window_bits(self.k, t));
        SquarefreeMonomial::from_bits(self.n, bits)
    }
}

/// Streaming enumerator over the admissible `i`-element window subsets, in
/// lexicographic order of their element lists.
pub struct AdmissibleSubsets {
    k: usize,
    n: usize,
    limit: usize,
    next_seq: Option<Vec<usize>>,
}

impl AdmissibleSubsets {
    fn advance(&mut self) {
        let seq = match self.next_seq.as_mut() {
            Some(seq) => seq,
            None => return,
        };
        let count = seq.len();
        for t in (0..count).rev() {
            // Successive elements may differ by 1 (same block) or by more
            // than k (gap of size >= k); the next admissible value at
            // position t skips the forbidden differences.
            let cand = if t == 0 {
                seq[0] + 1
            } else if seq[t] - seq[t - 1] == 1 {
                seq[t - 1] + self.k + 1
            } else {
                seq[t] + 1
            };
            if cand + (count - 1 - t) <= self.limit {
                seq[t] = cand;
                for u in t + 1..count {
                    seq[u] = seq[u - 1] + 1;
                }
                return;
            }
        }
        self.next_seq = None;
    }
}

impl Iterator for AdmissibleSubsets {
    type Item = GeneratorSubset;

    fn next(&mut self) -> Option<GeneratorSubset> {
        let seq = self.next_seq.clone()?;
        let out = GeneratorSubset::from_valid(self.k, self.n, seq);
        self.advance();
        Some(out)
    }
}

/// All `i`-element subsets of the window indices whose gaps are admissible
/// (absent or of size at least `k`), in lexicographic order.
pub fn admissible_subsets(k: usize, n: usize, i: usize) -> Result<AdmissibleSubsets> {
    check_kn(k, n)?;
    let limit = n - k + 1;
    if i < 1 || i > limit {
        return Err(Error::InvalidParameter(format!(
            "multiplicity {i} outside 1..={limit}"
        )));
    }
    Ok(AdmissibleSubsets {
        k,
        n,
        limit,
        next_seq: Some((1..=i).collect()),
    })
}

/// Minimal `i`-multicut ideal of the consecutive k-out-of-n:F system. The
/// admissible subsets already give the minimal generating set, so the result
/// is flagged minimal without a reduction pass.
pub fn cons_multicut_ideal(k: usize, n: usize, i: usize) -> Result<MonomialIdeal> {
    let mut bits: Vec<u64> = admissible_subsets(k, n, i)?
        .map(|s| s.monomial().bits())
        .collect();
    bits.sort_unstable();
    debug_assert!(bits.windows(2).all(|w| w[0] < w[1]));
    Ok(MonomialIdeal::from_minimal_bits(n, bits))
}

/// Number of minimal `i`-multicuts of the consecutive k-out-of-n:F system,
/// by the closed-form gap count rather than enumeration:
/// `N = sum_m (n-k-i+2-m) sum_a C(i-1, i-1-a) C(m-(k-1)a-1, a-1) + (n-k-i+2)`.
pub fn count_generators(k: usize, n: usize, i: usize) -> Result<u128> {
    check_kn(k, n)?;
    let limit = n - k + 1;
    if i < 1 || i > limit {
        return Err(Error::InvalidParameter(format!(
            "multiplicity {i} outside 1..={limit}"
        )));
    }
    let outer_top = (n as i64) - (k as i64) - (i as i64) + 1;
    let mut total = (outer_top + 1) as u128;
    for m in 1..=outer_top.max(0) {
        let mut inner: u128 = 0;
        for a in 1..i as i64 {
            let ways = binomial(i as i64 - 1, i as i64 - 1 - a)?;
            let compositions = binomial(m - (k as i64 - 1) * a - 1, a - 1)?;
            inner = inner
                .checked_add(
                    ways.checked_mul(compositions)
                        .ok_or(Error::Overflow("generator count"))?,
                )
                .ok_or(Error::Overflow("generator count"))?;
        }
        let weight = (outer_top + 1 - m) as u128;
        total = total
            .checked_add(
                weight
                    .checked_mul(inner)
                    .ok_or(Error::Overflow("generator count"))?,
            )
            .ok_or(Error::Overflow("generator count"))?;
    }
    Ok(total)
}

//! The descending chain of ideals generated by lcms of `i` distinct minimal
//! generators, for `i = 1..r`.
//!
//! [`lcm_fold`] streams the size-`i` subsets of the generator list in
//! colexicographic order and keeps a running minimal set: a candidate lcm
//! that is already divisible by a kept generator is dropped on the spot, and
//! inserting a candidate evicts any kept generator it divides. Subtrees whose
//! partial lcm is already covered are never expanded, and partial states that
//! were fully expanded once are not revisited, so memory and time track the
//! output rather than the raw subset count.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::monomial::MonomialIdeal;

/// Running set of pairwise-incomparable support words.
struct MinimalSet {
    items: Vec<u64>,
}

impl MinimalSet {
    fn new() -> Self {
        Self { items: Vec::new() }
    }

    /// True iff some kept word divides `cand`.
    fn covers(&self, cand: u64) -> bool {
        self.items.iter().any(|&m| m & cand == m)
    }

    fn insert(&mut self, cand: u64) {
        if self.covers(cand) {
            return;
        }
        self.items.retain(|&m| m & cand != cand);
        self.items.push(cand);
    }
}

struct FoldState<'a> {
    gens: &'a [u64],
    kept: MinimalSet,
    visited: HashSet<(u32, u32, u64)>,
}

impl FoldState<'_> {
    /// Expand every completion that picks `need` more generators with
    /// indices below `bound`, accumulating into the running minimal set.
    fn expand(&mut self, bound: usize, need: usize, acc: u64) {
        if need == 0 {
            self.kept.insert(acc);
            return;
        }
        if bound < need || self.kept.covers(acc) {
            return;
        }
        if !self.visited.insert((bound as u32, need as u32, acc)) {
            return;
        }
        for top in (need - 1)..bound {
            self.expand(top, need - 1, acc | self.gens[top]);
        }
    }
}

/// The ideal generated by lcms of `fold` distinct minimal generators of `I`.
///
/// Requires a minimal generating set; `fold > r` yields the zero ideal.
pub fn lcm_fold(ideal: &MonomialIdeal, fold: usize) -> Result<MonomialIdeal> {
    ideal.require_minimal()?;
    if fold == 0 {
        return Err(Error::InvalidParameter(
            "fold level must be at least 1".to_string(),
        ));
    }
    let r = ideal.num_generators();
    if fold > r {
        return MonomialIdeal::zero(ideal.n());
    }
    let gens = ideal.bits_vec();
    let mut state = FoldState {
        gens: &gens,
        kept: MinimalSet::new(),
        visited: HashSet::new(),
    };
    state.expand(r, fold, 0);
    let mut bits = state.kept.items;
    bits.sort_unstable();
    Ok(MonomialIdeal::from_minimal_bits(ideal.n(), bits))
}

/// The full lcm-filtration `I = I_1 ⊇ I_2 ⊇ … ⊇ I_r` of a minimal ideal.
#[derive(Clone, Debug)]
pub struct LcmFiltration {
    base: MonomialIdeal,
    levels: Vec<MonomialIdeal>,
}

impl LcmFiltration {
    pub fn base(&self) -> &MonomialIdeal {
        &self.base
    }

    /// Number of levels, equal to the number of base generators.
    pub fn num_levels(&self) -> usize {
        self.levels.len()
    }

    /// Level `i`, 1-based; `None` outside `1..=r`.
    pub fn level(&self, i: usize) -> Option<&MonomialIdeal> {
        if i == 0 {
            None
        } else {
            self.levels.get(i - 1)
        }
    }

    pub fn levels(&self) -> &[MonomialIdeal] {
        &self.levels
    }
}

/// Computes every level of the lcm-filtration of `ideal`.
pub fn filtration(ideal: &MonomialIdeal) -> Result<LcmFiltration> {
    ideal.require_minimal()?;
    let r = ideal.num_generators();
    if r == 0 {
        return Err(Error::InvalidParameter(
            "filtration of the zero ideal is undefined".to_string(),
        ));
    }
    let levels = (1..=r)
        .map(|i| lcm_fold(ideal, i))
        .collect::<Result<Vec<_>>>()?;
    Ok(LcmFiltration {
        base: ideal.clone(),
        levels,
    })
}

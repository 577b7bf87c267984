//! Squarefree monomials and monomial ideals over a fixed variable set.
//!
//! A squarefree monomial is identified with its support, a subset of
//! `{1, …, n}` stored as a single bit word. In the reliability reading, a
//! monomial is a component state (which components have failed) and an ideal
//! generated by minimal cuts collects every failure state of a coherent
//! system. Generators are kept in a canonical order (ascending support word)
//! so that equality tests and printed output are deterministic.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported variable count; supports fit in a single `u64` word.
pub const MAX_VARS: usize = 63;

fn check_var_count(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "variable count must be positive".to_string(),
        ));
    }
    if n > MAX_VARS {
        return Err(Error::CapacityExceeded(format!(
            "variable count {n} exceeds the supported maximum {MAX_VARS}"
        )));
    }
    Ok(())
}

fn check_same_n(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::DimensionMismatch { left: a, right: b });
    }
    Ok(())
}

/// A squarefree monomial over variables `x1..xn`, stored as its support set.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SquarefreeMonomial {
    n: u8,
    bits: u64,
}

impl SquarefreeMonomial {
    /// Monomial with the given support, indices 1-based. Duplicate indices
    /// are harmless (set semantics).
    pub fn new(n: usize, support: &[usize]) -> Result<Self> {
        let mut m = Self::one(n)?;
        for &i in support {
            if i == 0 || i > n {
                return Err(Error::InvalidParameter(format!(
                    "variable index {i} outside 1..={n}"
                )));
            }
            m.bits |= 1 << (i - 1);
        }
        Ok(m)
    }

    /// The monomial 1 (empty support).
    pub fn one(n: usize) -> Result<Self> {
        check_var_count(n)?;
        Ok(Self { n: n as u8, bits: 0 })
    }

    pub(crate) fn from_bits(n: usize, bits: u64) -> Self {
        debug_assert!(n >= 1 && n <= MAX_VARS);
        debug_assert_eq!(bits >> n, 0);
        Self { n: n as u8, bits }
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    /// Support as a bit word: bit `i-1` set means variable `i` occurs.
    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn degree(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_one(&self) -> bool {
        self.bits == 0
    }

    /// Ascending 1-based indices of the support.
    pub fn support(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.degree());
        let mut bits = self.bits;
        while bits != 0 {
            out.push(bits.trailing_zeros() as usize + 1);
            bits &= bits - 1;
        }
        out
    }

    pub fn contains(&self, var: usize) -> bool {
        var >= 1 && var <= self.n() && self.bits >> (var - 1) & 1 == 1
    }

    /// Least common multiple: union of supports.
    pub fn lcm(&self, other: &Self) -> Result<Self> {
        check_same_n(self.n(), other.n())?;
        Ok(Self {
            n: self.n,
            bits: self.bits | other.bits,
        })
    }

    /// True iff `self` divides `other`, i.e. the support is contained.
    pub fn divides(&self, other: &Self) -> Result<bool> {
        check_same_n(self.n(), other.n())?;
        Ok(self.bits & other.bits == self.bits)
    }

    /// Support difference; used by colon quotients.
    pub(crate) fn without(&self, other: &Self) -> Self {
        Self {
            n: self.n,
            bits: self.bits & !other.bits,
        }
    }
}

impl fmt::Display for SquarefreeMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        for i in self.support() {
            write!(f, "x{i}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for SquarefreeMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Drops every word that is divisible by another word in the list and
/// returns the survivors sorted ascending.
pub(crate) fn minimalize_bits(mut gens: Vec<u64>) -> Vec<u64> {
    gens.sort_unstable_by_key(|g| (g.count_ones(), *g));
    let mut kept: Vec<u64> = Vec::new();
    'outer: for &g in &gens {
        for &m in &kept {
            if m & g == m {
                continue 'outer;
            }
        }
        kept.push(g);
    }
    kept.sort_unstable();
    kept
}

/// A finitely generated squarefree monomial ideal.
///
/// Generators are stored sorted by ascending support word with duplicates
/// removed. The `minimal` flag records whether the generator list is known
/// to be a minimal generating set; operations that rely on minimality check
/// it instead of silently recomputing.
#[derive(Clone)]
pub struct MonomialIdeal {
    n: u8,
    generators: Vec<SquarefreeMonomial>,
    minimal: bool,
}

impl PartialEq for MonomialIdeal {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.generators == other.generators
    }
}

impl Eq for MonomialIdeal {}

impl std::hash::Hash for MonomialIdeal {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.generators.hash(state);
    }
}

impl MonomialIdeal {
    /// The zero ideal (no generators).
    pub fn zero(n: usize) -> Result<Self> {
        check_var_count(n)?;
        Ok(Self {
            n: n as u8,
            generators: Vec::new(),
            minimal: true,
        })
    }

    /// The unit ideal, generated by the monomial 1.
    pub fn unit(n: usize) -> Result<Self> {
        check_var_count(n)?;
        Ok(Self {
            n: n as u8,
            generators: vec![SquarefreeMonomial::one(n)?],
            minimal: true,
        })
    }

    /// Ideal with the given generators, deduplicated and canonically sorted.
    /// The result is not flagged minimal unless that is trivially true.
    pub fn new(n: usize, generators: Vec<SquarefreeMonomial>) -> Result<Self> {
        check_var_count(n)?;
        let mut gens = generators;
        for g in &gens {
            check_same_n(n, g.n())?;
        }
        gens.sort_unstable_by_key(|g| g.bits());
        gens.dedup();
        let minimal = gens.len() <= 1;
        Ok(Self {
            n: n as u8,
            generators: gens,
            minimal,
        })
    }

    /// Minimal generating set of the ideal generated by `gens`: a generator
    /// survives iff no other distinct generator divides it. An empty input
    /// yields the zero ideal.
    pub fn minimalize<I>(n: usize, gens: I) -> Result<Self>
    where
        I: IntoIterator<Item = SquarefreeMonomial>,
    {
        check_var_count(n)?;
        let mut bits = Vec::new();
        for g in gens {
            check_same_n(n, g.n())?;
            bits.push(g.bits());
        }
        Ok(Self::from_minimal_bits(n, minimalize_bits(bits)))
    }

    pub(crate) fn from_minimal_bits(n: usize, bits: Vec<u64>) -> Self {
        debug_assert!(bits.windows(2).all(|w| w[0] < w[1]));
        Self {
            n: n as u8,
            generators: bits
                .into_iter()
                .map(|b| SquarefreeMonomial::from_bits(n, b))
                .collect(),
            minimal: true,
        }
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn generators(&self) -> &[SquarefreeMonomial] {
        &self.generators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn is_minimal(&self) -> bool {
        self.minimal
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.generators.len() == 1 && self.generators[0].is_one()
    }

    pub(crate) fn bits_vec(&self) -> Vec<u64> {
        self.generators.iter().map(|g| g.bits()).collect()
    }

    pub(crate) fn require_minimal(&self) -> Result<()> {
        if self.minimal {
            Ok(())
        } else {
            Err(Error::NotMinimal)
        }
    }

    /// Colon quotient `(I : m)`, returned with a minimal generating set.
    pub fn colon(&self, m: &SquarefreeMonomial) -> Result<MonomialIdeal> {
        check_same_n(self.n(), m.n())?;
        let bits = self
            .generators
            .iter()
            .map(|g| g.without(m).bits())
            .collect();
        Ok(Self::from_minimal_bits(self.n(), minimalize_bits(bits)))
    }

    /// Mathematical equality of ideals: minimal generating sets coincide.
    pub fn equals(&self, other: &MonomialIdeal) -> Result<bool> {
        check_same_n(self.n(), other.n())?;
        let a = if self.minimal {
            self.generators.clone()
        } else {
            Self::minimalize(self.n(), self.generators.iter().copied())?.generators
        };
        let b = if other.minimal {
            other.generators.clone()
        } else {
            Self::minimalize(other.n(), other.generators.iter().copied())?.generators
        };
        Ok(a == b)
    }

    /// Membership test for a component state: true iff some generator
    /// divides `state`, i.e. the state is a failure state of the ideal.
    pub fn contains_state(&self, state: &SquarefreeMonomial) -> Result<bool> {
        check_same_n(self.n(), state.n())?;
        let s = state.bits();
        Ok(self.generators.iter().any(|g| g.bits() & s == g.bits()))
    }

    /// Lcm of all generators; `None` for the zero ideal.
    pub fn lcm_of_generators(&self) -> Option<SquarefreeMonomial> {
        if self.generators.is_empty() {
            return None;
        }
        let bits = self.generators.iter().fold(0u64, |acc, g| acc | g.bits());
        Some(SquarefreeMonomial::from_bits(self.n(), bits))
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "<0>");
        }
        write!(f, "<")?;
        for (t, g) in self.generators.iter().enumerate() {
            if t > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ">")
    }
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

//! Resolution of the command-line system selection into ideals, counts and
//! fast-path dispatch.

use std::cell::OnceCell;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use multicut::binomial::binomial;
use multicut::cons::{cons_ideal, cons_multicut_ideal, count_generators};
use multicut::error::Error;
use multicut::filtration::lcm_fold;
use multicut::hilbert::{ProbabilityVector, SystemKind};
use multicut::kofn::{kofn_ideal, kofn_multicut_ideal, staircase_level};
use multicut::monomial::{MonomialIdeal, SquarefreeMonomial};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    KOfN,
    Cons,
    Custom,
}

/// Cuts file: component count plus one index list per minimal cut.
#[derive(Debug, Deserialize)]
struct CutsFile {
    n: usize,
    cuts: Vec<Vec<usize>>,
}

pub struct ResolvedSystem {
    pub kind: Kind,
    pub k: usize,
    pub n: usize,
    pub probabilities: Option<ProbabilityVector>,
    pub force_general: bool,
    custom_cuts: Option<Vec<Vec<usize>>>,
    base: OnceCell<MonomialIdeal>,
}

impl ResolvedSystem {
    pub fn kofn(k: usize, n: usize) -> Self {
        Self {
            kind: Kind::KOfN,
            k,
            n,
            probabilities: None,
            force_general: false,
            custom_cuts: None,
            base: OnceCell::new(),
        }
    }

    pub fn cons(k: usize, n: usize) -> Self {
        Self {
            kind: Kind::Cons,
            k,
            n,
            probabilities: None,
            force_general: false,
            custom_cuts: None,
            base: OnceCell::new(),
        }
    }

    pub fn custom(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            CliError::Usage(format!("cannot read {}: {e}", path.display()))
        })?;
        let file: CutsFile = serde_json::from_str(&text).map_err(|e| {
            CliError::Usage(format!("cannot parse {}: {e}", path.display()))
        })?;
        for cut in &file.cuts {
            if cut.is_empty() {
                return Err(CliError::Usage(format!(
                    "{}: cuts must be nonempty index lists",
                    path.display()
                )));
            }
        }
        Ok(Self {
            kind: Kind::Custom,
            k: 0,
            n: file.n,
            probabilities: None,
            force_general: false,
            custom_cuts: Some(file.cuts),
            base: OnceCell::new(),
        })
    }

    /// The minimal failure ideal, built on first use.
    pub fn base(&self) -> Result<&MonomialIdeal, CliError> {
        if let Some(ideal) = self.base.get() {
            return Ok(ideal);
        }
        let ideal = match self.kind {
            Kind::KOfN => kofn_ideal(self.k, self.n)?,
            Kind::Cons => cons_ideal(self.k, self.n)?,
            Kind::Custom => {
                let cuts = self.custom_cuts.as_ref().expect("custom cuts");
                let gens = cuts
                    .iter()
                    .map(|cut| SquarefreeMonomial::new(self.n, cut))
                    .collect::<Result<Vec<_>, Error>>()?;
                MonomialIdeal::minimalize(self.n, gens)?
            }
        };
        Ok(self.base.get_or_init(|| ideal))
    }

    /// Number of minimal cuts, without materializing the base ideal when a
    /// closed form exists.
    pub fn num_cuts(&self) -> Result<u128, CliError> {
        match self.kind {
            Kind::KOfN => Ok(binomial(self.n as i64, self.k as i64)?),
            Kind::Cons => Ok((self.n - self.k + 1) as u128),
            Kind::Custom => Ok(self.base()?.num_generators() as u128),
        }
    }

    /// Minimal `i`-multicut ideal; the zero ideal beyond the top level.
    pub fn level_ideal(&self, i: u64) -> Result<MonomialIdeal, CliError> {
        if i == 0 {
            return Err(CliError::Usage(
                "multiplicity must be at least 1".to_string(),
            ));
        }
        if i > self.num_cuts()? as u64 {
            return Ok(MonomialIdeal::zero(self.n)?);
        }
        let ideal = match (self.kind, self.force_general) {
            (Kind::KOfN, false) => kofn_multicut_ideal(self.k, self.n, i)?,
            (Kind::Cons, false) => cons_multicut_ideal(self.k, self.n, i as usize)?,
            _ => lcm_fold(self.base()?, i as usize)?,
        };
        Ok(ideal)
    }

    /// Number of minimal `i`-multicuts, via the closed forms where available.
    pub fn level_count(&self, i: u64) -> Result<u128, CliError> {
        if i == 0 {
            return Err(CliError::Usage(
                "multiplicity must be at least 1".to_string(),
            ));
        }
        if i > self.num_cuts()? as u64 {
            return Ok(0);
        }
        match (self.kind, self.force_general) {
            (Kind::KOfN, false) => {
                let j = staircase_level(self.k, self.n, i)?.j;
                Ok(binomial(self.n as i64, j as i64)?)
            }
            (Kind::Cons, false) => Ok(count_generators(self.k, self.n, i as usize)?),
            _ => Ok(self.level_ideal(i)?.num_generators() as u128),
        }
    }

    /// Fast-path tag for the survivor computation.
    pub fn survivor_kind(&self) -> Option<SystemKind> {
        if self.force_general {
            return None;
        }
        match self.kind {
            Kind::KOfN => Some(SystemKind::KOutOfN { k: self.k }),
            Kind::Cons => Some(SystemKind::ConsecutiveKOutOfN { k: self.k }),
            Kind::Custom => None,
        }
    }

    pub fn require_probabilities(&self) -> Result<&ProbabilityVector, CliError> {
        self.probabilities.as_ref().ok_or_else(|| {
            CliError::Usage("this command needs -p or -P".to_string())
        })
    }
}

/// Builds a resolved system from raw flag values.
#[allow(clippy::too_many_arguments)]
pub fn resolve(
    kofn: bool,
    cons: bool,
    custom: Option<&PathBuf>,
    k: Option<usize>,
    n: Option<usize>,
    p: Option<f64>,
    probs: Option<&str>,
    force_general: bool,
) -> Result<ResolvedSystem, CliError> {
    let mut system = match (kofn, cons, custom) {
        (true, false, None) => {
            let (k, n) = require_kn(k, n)?;
            ResolvedSystem::kofn(k, n)
        }
        (false, true, None) => {
            let (k, n) = require_kn(k, n)?;
            ResolvedSystem::cons(k, n)
        }
        (false, false, Some(path)) => ResolvedSystem::custom(path)?,
        _ => {
            return Err(CliError::Usage(
                "exactly one of --kofn, --cons or --custom FILE is required".to_string(),
            ))
        }
    };
    system.force_general = force_general;
    system.probabilities = match (p, probs) {
        (Some(value), None) => Some(ProbabilityVector::iid(system.n, value)?),
        (None, Some(list)) => {
            let values = list
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse::<f64>()
                        .map_err(|e| CliError::Usage(format!("bad probability {s:?}: {e}")))
                })
                .collect::<Result<Vec<f64>, CliError>>()?;
            if values.len() != system.n {
                return Err(CliError::Usage(format!(
                    "-P lists {} probabilities for {} components",
                    values.len(),
                    system.n
                )));
            }
            Some(ProbabilityVector::new(values)?)
        }
        (None, None) => None,
        (Some(_), Some(_)) => {
            return Err(CliError::Usage(
                "-p and -P are mutually exclusive".to_string(),
            ))
        }
    };
    Ok(system)
}

fn require_kn(k: Option<usize>, n: Option<usize>) -> Result<(usize, usize), CliError> {
    match (k, n) {
        (Some(k), Some(n)) => Ok((k, n)),
        _ => Err(CliError::Usage(
            "--kofn and --cons require both -k and -n".to_string(),
        )),
    }
}

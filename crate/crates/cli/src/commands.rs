//! The table builders behind each subcommand.

use std::time::Instant;

use multicut::hilbert::{
    bonferroni_partial_sums, hilbert_numerator, survivor, BoundDirection,
};
use multicut::kofn::{kofn_bounds, staircase_level, unreliability_poly_iid};
use multicut::oracle::naive_multicut_gens;

use crate::output::{Cell, Table};
use crate::system::{Kind, ResolvedSystem};
use crate::CliError;

/// Largest accepted table length.
const ROW_LIMIT: u64 = 10_000_000;

fn check_rows(imax: u64) -> Result<(), CliError> {
    if imax > ROW_LIMIT {
        return Err(CliError::Library(multicut::Error::CapacityExceeded(
            format!("{imax} rows exceed the table limit {ROW_LIMIT}"),
        )));
    }
    Ok(())
}

/// One row per minimal `i`-multicut: sorted component indices and degree.
pub fn cmd_gens(system: &ResolvedSystem, i: u64) -> Result<Table, CliError> {
    let ideal = system.level_ideal(i)?;
    let mut table = Table::new("gens", vec!["index", "components", "degree"]);
    for (row, g) in ideal.generators().iter().enumerate() {
        let components = g
            .support()
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(" ");
        table.push_row(vec![
            Cell::UInt(row as u128 + 1),
            Cell::Text(components),
            Cell::UInt(g.degree() as u128),
        ]);
    }
    Ok(table)
}

/// Multicut counts against the raw subset counts, one row per multiplicity.
pub fn cmd_count(system: &ResolvedSystem, imax: Option<u64>) -> Result<Table, CliError> {
    let r = system.num_cuts()?;
    let imax = imax.unwrap_or(r.min(u64::MAX as u128) as u64);
    check_rows(imax)?;
    let mut table = Table::new("count", vec!["i", "binomial", "generators"]);
    for i in 1..=imax {
        let subsets = multicut::binomial::binomial(r as i64, i as i64)?;
        table.push_row(vec![
            Cell::UInt(i as u128),
            Cell::UInt(subsets),
            Cell::UInt(system.level_count(i)?),
        ]);
    }
    Ok(table)
}

/// Survivor series rows `(i, F(i))` for `i = 0..=imax`.
pub fn cmd_survivor(system: &ResolvedSystem, imax: Option<u64>) -> Result<Table, CliError> {
    let p = system.require_probabilities()?;
    let series = survivor(system.base()?, p, system.survivor_kind())?;
    let imax = imax.unwrap_or(series.max_index() as u64);
    check_rows(imax)?;
    let mut table = Table::new("survivor", vec!["i", "F"]);
    for i in 0..=imax {
        table.push_row(vec![
            Cell::UInt(i as u128),
            Cell::Float(series.value(i as usize)),
        ]);
    }
    Ok(table)
}

/// Probability grid `start:end:step`, endpoints inclusive.
pub struct Grid {
    start: f64,
    end: f64,
    step: f64,
}

impl Grid {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 3 {
            return Err(CliError::Usage(format!(
                "grid {text:?} is not of the form start:end:step"
            )));
        }
        let nums: Vec<f64> = parts
            .iter()
            .map(|s| {
                s.parse::<f64>()
                    .map_err(|e| CliError::Usage(format!("bad grid value {s:?}: {e}")))
            })
            .collect::<Result<_, _>>()?;
        let (start, end, step) = (nums[0], nums[1], nums[2]);
        if step <= 0.0 || end < start || !(0.0..=1.0).contains(&start) || end > 1.0 {
            return Err(CliError::Usage(format!(
                "grid {text:?} must satisfy 0 <= start <= end <= 1 with step > 0"
            )));
        }
        Ok(Self { start, end, step })
    }

    pub fn points(&self) -> Vec<f64> {
        let mut out = Vec::new();
        let mut idx = 0u64;
        loop {
            let p = self.start + idx as f64 * self.step;
            if p > self.end + self.step * 1e-9 {
                break;
            }
            out.push(p.min(1.0));
            idx += 1;
        }
        out
    }
}

/// Samples of the probability of at least `i` simultaneous failures over an
/// i.i.d. probability grid.
pub fn cmd_unrel(system: &ResolvedSystem, i: u64, grid: &Grid) -> Result<Table, CliError> {
    let mut table = Table::new("unrel", vec!["p", "f"]);
    if system.kind == Kind::KOfN && !system.force_general {
        if i == 0 || i > system.num_cuts()? as u64 {
            return Err(CliError::Usage(format!(
                "multiplicity {i} outside 1..={}",
                system.num_cuts()?
            )));
        }
        let j = staircase_level(system.k, system.n, i)?.j;
        let poly = unreliability_poly_iid(j, system.n)?;
        for p in grid.points() {
            table.push_row(vec![Cell::Float(p), Cell::Float(poly.evaluate(p))]);
        }
        return Ok(table);
    }
    let numerator = hilbert_numerator(&system.level_ideal(i)?)?;
    for p in grid.points() {
        let vector = multicut::hilbert::ProbabilityVector::iid(system.n, p)?;
        table.push_row(vec![Cell::Float(p), Cell::Float(numerator.evaluate(&vector)?)]);
    }
    Ok(table)
}

fn direction_text(direction: BoundDirection) -> Cell {
    Cell::Text(direction.to_string())
}

/// Truncation bounds on `prob{Y >= i}` by increasing depth, with the exact
/// value alongside. For k-out-of-n systems the closed-form alternating-sum
/// truncations are appended as `method = betti` rows indexed by `t`.
pub fn cmd_bounds(
    system: &ResolvedSystem,
    i: u64,
    depth: Option<usize>,
) -> Result<Table, CliError> {
    let p = system.require_probabilities()?;
    let ideal = system.level_ideal(i)?;
    let r = ideal.num_generators();
    if r == 0 {
        return Err(CliError::Usage(format!(
            "no minimal {i}-multicuts to bound"
        )));
    }
    let depth = depth.unwrap_or(r);
    let exact = hilbert_numerator(&ideal)?.evaluate(p)?;
    let mut table = Table::new("bounds", vec!["method", "d", "value", "direction", "exact"]);
    let partials = bonferroni_partial_sums(&ideal, p, depth)?;
    for (idx, &value) in partials.iter().enumerate() {
        let d = idx + 1;
        let direction = if d % 2 == 1 {
            BoundDirection::Upper
        } else {
            BoundDirection::Lower
        };
        table.push_row(vec![
            Cell::Text("bonferroni".to_string()),
            Cell::UInt(d as u128),
            Cell::Float(value),
            direction_text(direction),
            Cell::Float(exact),
        ]);
    }
    if system.kind == Kind::KOfN && !system.force_general {
        let j = staircase_level(system.k, system.n, i)?.j;
        for t in 0..=(system.n - j) {
            let (value, direction) = kofn_bounds(j, system.n, p, t)?;
            table.push_row(vec![
                Cell::Text("betti".to_string()),
                Cell::UInt(t as u128),
                Cell::Float(value),
                direction_text(direction),
                Cell::Float(exact),
            ]);
        }
    }
    Ok(table)
}

/// Wall-time comparison of the unpruned subset enumeration against the
/// specialized construction, level by level. Generator counts from the two
/// methods must agree or the command fails.
pub fn cmd_bench(system: &ResolvedSystem, imax: Option<u64>) -> Result<Table, CliError> {
    let r = system.num_cuts()?;
    let imax = imax.unwrap_or(r.min(u64::MAX as u128) as u64);
    check_rows(imax)?;
    let base = system.base()?;
    let mut table = Table::new("bench", vec!["i", "count", "t_naive_s", "t_formula_s"]);
    for i in 1..=imax {
        let naive_start = Instant::now();
        let naive = naive_multicut_gens(base, i as usize)?;
        let t_naive = naive_start.elapsed().as_secs_f64();

        let formula_start = Instant::now();
        let specialized = system.level_ideal(i)?;
        let t_formula = formula_start.elapsed().as_secs_f64();

        if naive.num_generators() != specialized.num_generators()
            || !naive.equals(&specialized)?
        {
            return Err(CliError::Library(
                multicut::Error::CrossCheckFailed(format!(
                    "level {i}: naive method found {} generators, specialized {}",
                    naive.num_generators(),
                    specialized.num_generators()
                )),
            ));
        }
        table.push_row(vec![
            Cell::UInt(i as u128),
            Cell::UInt(naive.num_generators() as u128),
            Cell::Float(t_naive),
            Cell::Float(t_formula),
        ]);
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_parsing() {
        let grid = Grid::parse("0:1:0.25").unwrap();
        assert_eq!(grid.points(), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        let single = Grid::parse("0.5:0.5:0.1").unwrap();
        assert_eq!(single.points(), vec![0.5]);
        assert!(Grid::parse("0:1").is_err());
        assert!(Grid::parse("0:1:0").is_err());
        assert!(Grid::parse("0.5:0.2:0.1").is_err());
        assert!(Grid::parse("0:1.5:0.1").is_err());
    }

    #[test]
    fn grid_endpoint_is_included_despite_rounding() {
        let grid = Grid::parse("0:1:0.05").unwrap();
        let points = grid.points();
        assert_eq!(points.len(), 21);
        assert_eq!(*points.last().unwrap(), 1.0);
    }
}

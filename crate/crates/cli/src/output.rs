//! CSV writers. Every file starts with a header row.

use std::path::{Path, PathBuf};

use evobandit_core::{RegretCurve, TrialOutcome};

use crate::CliResult;

fn writer(path: &Path) -> CliResult<csv::Writer<std::fs::File>> {
    Ok(csv::Writer::from_path(path)?)
}

/// `round, M, mean_cum_regret_per_member, stderr` for each curve in turn.
pub fn write_regret(path: &Path, curves: &[RegretCurve]) -> CliResult<PathBuf> {
    let mut w = writer(path)?;
    w.write_record(["round", "M", "mean_cum_regret_per_member", "stderr"])?;
    for curve in curves {
        for (t, (mean, se)) in curve.mean.iter().zip(&curve.stderr).enumerate() {
            w.write_record([
                (t + 1).to_string(),
                curve.population_size.to_string(),
                mean.to_string(),
                se.to_string(),
            ])?;
        }
    }
    w.flush()?;
    Ok(path.to_path_buf())
}

/// `round, trial, mean_fitness`, with the fitness measured under the hidden weights.
pub fn write_fitness(path: &Path, outcomes: &[TrialOutcome]) -> CliResult<PathBuf> {
    let mut w = writer(path)?;
    w.write_record(["round", "trial", "mean_fitness"])?;
    for o in outcomes {
        for r in &o.trajectory.rounds {
            w.write_record([
                r.round.to_string(),
                o.index.to_string(),
                r.mean_fitness.to_string(),
            ])?;
        }
    }
    w.flush()?;
    Ok(path.to_path_buf())
}

/// `round, member_index, bit_0 .. bit_{d-1}` for every recorded snapshot.
pub fn write_snapshots(path: &Path, outcome: &TrialOutcome, dim: usize) -> CliResult<PathBuf> {
    let mut w = writer(path)?;
    let mut header = vec!["round".to_string(), "member_index".to_string()];
    header.extend((0..dim).map(|i| format!("bit_{i}")));
    w.write_record(&header)?;
    for snap in &outcome.trajectory.snapshots {
        for (k, x) in snap.population.iter().enumerate() {
            let mut row = vec![snap.round.to_string(), k.to_string()];
            row.extend(x.bits().iter().map(|b| b.to_string()));
            w.write_record(&row)?;
        }
    }
    w.flush()?;
    Ok(path.to_path_buf())
}

/// Per-arm comparison rows:
/// `arm, trial, round, evaluations, mean_fitness, fraction_of_optimum`.
pub fn write_fitness_vs_evaluations(
    path: &Path,
    arms: &[(String, Vec<TrialOutcome>)],
) -> CliResult<PathBuf> {
    let mut w = writer(path)?;
    w.write_record([
        "arm",
        "trial",
        "round",
        "evaluations",
        "mean_fitness",
        "fraction_of_optimum",
    ])?;
    for (label, outcomes) in arms {
        for o in outcomes {
            let opt = o.trajectory.optimum;
            for r in &o.trajectory.rounds {
                let fraction = fraction_of_optimum(r.mean_fitness, opt);
                w.write_record([
                    label.clone(),
                    o.index.to_string(),
                    r.round.to_string(),
                    r.n_evals.to_string(),
                    r.mean_fitness.to_string(),
                    fraction.to_string(),
                ])?;
            }
        }
    }
    w.flush()?;
    Ok(path.to_path_buf())
}

/// Mean fitness as a fraction of the optimum. When every weight is negative
/// the optimum is 0, and only the optimum itself counts as reaching it.
pub fn fraction_of_optimum(mean_fitness: f64, optimum: f64) -> f64 {
    if optimum > 0.0 {
        mean_fitness / optimum
    } else if mean_fitness >= optimum {
        1.0
    } else {
        f64::NEG_INFINITY
    }
}

/// One row of the comparison summary.
#[derive(Debug, Clone, PartialEq)]
pub struct ArmSummary {
    pub arm: String,
    pub n_trials: usize,
    /// Trials whose mean fitness reached 90% of the optimum.
    pub reached: usize,
    /// Median evaluations to 90%; a trial that never gets there counts as infinite.
    pub median_evaluations: f64,
    pub mean_final_fraction: f64,
}

pub fn write_summary(path: &Path, rows: &[ArmSummary]) -> CliResult<PathBuf> {
    let mut w = writer(path)?;
    w.write_record([
        "arm",
        "n_trials",
        "reached_90",
        "median_evaluations_to_90",
        "mean_final_fraction_of_optimum",
    ])?;
    for r in rows {
        w.write_record([
            r.arm.clone(),
            r.n_trials.to_string(),
            r.reached.to_string(),
            r.median_evaluations.to_string(),
            r.mean_final_fraction.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(path.to_path_buf())
}

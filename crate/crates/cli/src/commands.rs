//! The `run` and `compare` commands.

use std::path::{Path, PathBuf};

use evobandit_core::{run_trials, Algorithm, RegretCurve, TrialOutcome};

use crate::config::Settings;
use crate::manifest::RunManifest;
use crate::output::{
    fraction_of_optimum, write_fitness, write_fitness_vs_evaluations, write_regret,
    write_snapshots, write_summary, ArmSummary,
};
use crate::{CliError, CliResult};

/// Runs every population size of the sweep. A single size writes straight
/// into `out`; a sweep writes one `M{m}/` directory per size plus a combined
/// `regret.csv` at the top. Each directory gets its own manifest.
pub fn cmd_run(settings: &Settings, master_seed: u64) -> CliResult<Vec<PathBuf>> {
    let out = &settings.output_dir;
    std::fs::create_dir_all(out)?;
    let sweep = settings.population_sizes.len() > 1;
    let mut curves = Vec::new();
    let mut written = Vec::new();
    for &m in &settings.population_sizes {
        let experiment = settings.experiment_for(m);
        let outcomes = run_trials(&experiment, settings.n_trials, master_seed)?;
        let curve = RegretCurve::from_outcomes(m, &outcomes)?;
        let dir = if sweep {
            out.join(format!("M{m}"))
        } else {
            out.clone()
        };
        std::fs::create_dir_all(&dir)?;

        let single = Settings {
            population_sizes: vec![m],
            experiment: experiment.clone(),
            output_dir: dir.clone(),
            ..settings.clone()
        };
        let mut manifest = RunManifest::new(
            "run",
            master_seed,
            settings.n_trials,
            vec![experiment.clone()],
            single.to_toml(master_seed),
        );
        manifest.outputs.push(write_regret(
            &dir.join("regret.csv"),
            std::slice::from_ref(&curve),
        )?);
        manifest
            .outputs
            .push(write_fitness(&dir.join("fitness.csv"), &outcomes)?);
        if experiment.snapshot_every > 0 {
            manifest.outputs.push(write_snapshots(
                &dir.join("snapshots.csv"),
                &outcomes[0],
                experiment.dim,
            )?);
        }
        written.extend(manifest.outputs.iter().cloned());
        written.push(manifest.write(&dir)?);
        curves.push(curve);
    }
    if sweep {
        let mut manifest = RunManifest::new(
            "run",
            master_seed,
            settings.n_trials,
            settings
                .population_sizes
                .iter()
                .map(|&m| settings.experiment_for(m))
                .collect(),
            settings.to_toml(master_seed),
        );
        manifest
            .outputs
            .push(write_regret(&out.join("regret.csv"), &curves)?);
        written.extend(manifest.outputs.iter().cloned());
        written.push(manifest.write(out)?);
    }
    Ok(written)
}

/// Median of evaluations-to-target, with unreached trials ordered last as
/// infinity.
pub fn median_evaluations(values: &[Option<usize>]) -> f64 {
    let mut v: Vec<f64> = values
        .iter()
        .map(|x| x.map_or(f64::INFINITY, |n| n as f64))
        .collect();
    if v.is_empty() {
        return f64::INFINITY;
    }
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        (v[n / 2 - 1] + v[n / 2]) / 2.0
    }
}

pub fn summarize(arm: &str, outcomes: &[TrialOutcome]) -> ArmSummary {
    let evals: Vec<Option<usize>> = outcomes
        .iter()
        .map(|o| o.trajectory.evaluations_to_reach(0.9))
        .collect();
    let finals: Vec<f64> = outcomes
        .iter()
        .map(|o| {
            let last = o.trajectory.final_mean_fitness().unwrap_or(0.0);
            fraction_of_optimum(last, o.trajectory.optimum)
        })
        .collect();
    ArmSummary {
        arm: arm.to_string(),
        n_trials: outcomes.len(),
        reached: evals.iter().filter(|e| e.is_some()).count(),
        median_evaluations: median_evaluations(&evals),
        mean_final_fraction: finals.iter().sum::<f64>() / finals.len().max(1) as f64,
    }
}

/// Runs every arm on the same master seed, so trial k of each arm sees the
/// same hidden weights.
pub fn cmd_compare(settings: &Settings, master_seed: u64) -> CliResult<Vec<ArmSummary>> {
    if settings.population_sizes.len() != 1 {
        return Err(CliError::Config(
            "compare takes a single M, not a sweep".into(),
        ));
    }
    let has = |alg| settings.arms.iter().any(|a| a.config.algorithm == alg);
    if !has(Algorithm::Tsde) || !has(Algorithm::BasicDe) {
        return Err(CliError::Config(
            "compare needs `arms` with at least one tsde arm and one basic-de arm".into(),
        ));
    }
    let out = &settings.output_dir;
    std::fs::create_dir_all(out)?;
    let mut results = Vec::new();
    for arm in &settings.arms {
        results.push((
            arm.spec.clone(),
            run_trials(&arm.config, settings.n_trials, master_seed)?,
        ));
    }
    let summary: Vec<ArmSummary> = results
        .iter()
        .map(|(label, o)| summarize(label, o))
        .collect();

    let mut manifest = RunManifest::new(
        "compare",
        master_seed,
        settings.n_trials,
        settings.arms.iter().map(|a| a.config.clone()).collect(),
        settings.to_toml(master_seed),
    );
    manifest.outputs.push(write_fitness_vs_evaluations(
        &out.join("fitness-vs-evaluations.csv"),
        &results,
    )?);
    manifest
        .outputs
        .push(write_summary(&out.join("summary.csv"), &summary)?);
    manifest.write(out)?;
    Ok(summary)
}

pub fn print_summary(rows: &[ArmSummary]) {
    let width = rows.iter().map(|r| r.arm.len()).max().unwrap_or(3).max(3);
    println!(
        "{:<width$}  {:>8}  {:>12}  {:>14}",
        "arm", "reached", "median evals", "final fraction"
    );
    for r in rows {
        println!(
            "{:<width$}  {:>8}  {:>12}  {:>14.4}",
            r.arm,
            format!("{}/{}", r.reached, r.n_trials),
            r.median_evaluations,
            r.mean_final_fraction
        );
    }
}

/// Reads and parses a config file, prefixing errors with its path.
pub fn load_settings(path: Option<&Path>) -> CliResult<Settings> {
    let Some(path) = path else {
        return Ok(Settings::default());
    };
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    crate::config::parse_config(&text).map_err(|e| match e {
        CliError::Config(msg) => CliError::Config(format!("{}: {msg}", path.display())),
        other => other,
    })
}

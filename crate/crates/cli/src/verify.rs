//! Self-check suite behind `evobandit verify`.
//!
//! Hard checks compare production code against the brute-force oracles and
//! against the distributional laws of the operators. Report-only checks print
//! their numbers but never change the exit code.

use evobandit_core::oracle::{
    ascent_lower_bounds, dense_inverse, dense_ridge, exact_crossover_selection_mean,
};
use evobandit_core::{
    crossover_selection, directed_mutation, directed_targets, favored_ratio, fitness,
    noisy_evaluate, population_fitness, run_trials, suboptimality_gap, Algorithm, ExperimentConfig,
    MotifVector, MutationSchedule, Observation, Population, PosteriorState, PriorSpec,
    RandomStream, ScheduleKind, UtilityParams,
};
use rayon::prelude::*;

use crate::CliResult;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Level {
    Fast,
    Full,
}

struct Budget {
    instances: usize,
    selection_samples: usize,
    datasets: usize,
    posterior_draws: usize,
    mutation_calls: usize,
    ratio_trials: usize,
}

impl Level {
    fn budget(self) -> Budget {
        match self {
            Level::Fast => Budget {
                instances: 40,
                selection_samples: 20_000,
                datasets: 100,
                posterior_draws: 20_000,
                mutation_calls: 2_000,
                ratio_trials: 200,
            },
            Level::Full => Budget {
                instances: 200,
                selection_samples: 100_000,
                datasets: 1_000,
                posterior_draws: 100_000,
                mutation_calls: 20_000,
                ratio_trials: 1_000,
            },
        }
    }
}

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: &'static str,
    /// Report-only checks never fail the run.
    pub hard: bool,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    fn hard(name: &'static str, passed: bool, detail: String) -> Self {
        Self {
            name,
            hard: true,
            passed,
            detail,
        }
    }

    fn report(name: &'static str, detail: String) -> Self {
        Self {
            name,
            hard: false,
            passed: true,
            detail,
        }
    }
}

fn gaussian_theta(d: usize, rng: &mut RandomStream) -> UtilityParams {
    UtilityParams::new((0..d).map(|_| rng.gaussian()).collect()).expect("finite draws")
}

fn random_bits(d: usize, rng: &mut RandomStream) -> MotifVector {
    MotifVector::from_bools((0..d).map(|_| rng.coin())).expect("d >= 1")
}

/// M members, all distinct when `distinct` is set (requires M <= 2^d).
fn random_population(d: usize, m: usize, distinct: bool, rng: &mut RandomStream) -> Population {
    let mut members: Vec<MotifVector> = Vec::with_capacity(m);
    while members.len() < m {
        let x = random_bits(d, rng);
        if !distinct || !members.contains(&x) {
            members.push(x);
        }
    }
    Population::new(members).expect("nonempty, equal dimensions")
}

/// Small instances: d <= 8, M <= min(6, 2^d), theta ~ N(0, I).
fn instance(seed: u64, k: u64, distinct: bool) -> (UtilityParams, Population) {
    let mut rng = RandomStream::derive(seed, k);
    let d = 1 + rng.index(8);
    let m = 1 + rng.index(6.min(1 << d));
    let theta = gaussian_theta(d, &mut rng);
    let s = random_population(d, m, distinct, &mut rng);
    (theta, s)
}

fn mean_and_se(v: &[f64]) -> (f64, f64) {
    let n = v.len() as f64;
    let mean = v.iter().sum::<f64>() / n;
    let var = v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// |observed - expected| within 3 standard errors, with a little absolute
/// slack for samples whose spread is pure rounding.
fn within_3se(observed: f64, expected: f64, se: f64) -> bool {
    (observed - expected).abs() <= 3.0 * se + 1e-9 * expected.abs().max(1.0)
}

fn relative_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

/// Monte Carlo selection against the exact oracle, plus the halved ascent
/// bound checked on the Monte Carlo gain itself.
fn selection_checks(seed: u64, b: &Budget) -> Vec<CheckResult> {
    let rows: Vec<(bool, bool)> = (0..b.instances as u64)
        .into_par_iter()
        .map(|k| {
            let (theta, s) = instance(seed, k, true);
            let exact = exact_crossover_selection_mean(&theta, &s).expect("small instance");
            let (norm, var) = ascent_lower_bounds(&theta, &s).expect("small instance");
            let mut rng = RandomStream::derive(seed ^ 0x005e_1ec7, k);
            let mut values = Vec::with_capacity(b.selection_samples + s.size());
            while values.len() < b.selection_samples {
                let next = crossover_selection(&theta, &s, &mut rng).expect("selection terminates");
                values.extend(
                    next.iter()
                        .map(|z| fitness(&theta, z).expect("same dimension")),
                );
            }
            values.truncate(b.selection_samples);
            let (mean, se) = mean_and_se(&values);
            let agrees = within_3se(mean, exact.expected_accepted_fitness, se);
            let gain = mean - population_fitness(&theta, &s).expect("nonempty");
            let ascends = gain + 3.0 * se + 1e-9 >= 0.5 * norm.max(var);
            (agrees, ascends)
        })
        .collect();
    let n = rows.len();
    let agree = rows.iter().filter(|r| r.0).count();
    let ascend = rows.iter().filter(|r| r.1).count();
    let need = (0.975 * n as f64).ceil() as usize;
    vec![
        CheckResult::hard(
            "selection matches exact oracle",
            agree >= need,
            format!("{agree}/{n} within 3 SE (need {need})"),
        ),
        CheckResult::hard(
            "sampled selection ascends",
            ascend >= need,
            format!("{ascend}/{n} reach half the ascent bound within 3 SE (need {need})"),
        ),
    ]
}

/// Exact gains against the halved bounds. The bounds are claims about sets
/// of sequences; populations with repeated members are reported separately.
fn exact_bound_checks(seed: u64, b: &Budget) -> Vec<CheckResult> {
    let n = 5 * b.instances;
    let scan = |distinct: bool| {
        let mut halved = 0;
        let mut full = 0;
        let mut contraction = 0;
        for k in 0..n as u64 {
            let (theta, s) = instance(seed ^ 0xa5, k, distinct);
            let gain = exact_crossover_selection_mean(&theta, &s)
                .expect("small instance")
                .expected_accepted_fitness
                - population_fitness(&theta, &s).expect("nonempty");
            let (norm, var) = ascent_lower_bounds(&theta, &s).expect("small instance");
            let bound = norm.max(var);
            if gain < 0.5 * bound - 1e-12 {
                halved += 1;
            }
            if gain < bound - 1e-12 {
                full += 1;
            }
            let min_p = favored_ratio(&theta, &s)
                .expect("nonempty")
                .into_iter()
                .fold(1.0, f64::min);
            let eta = min_p / (2.0 * theta.dim() as f64).sqrt();
            if gain < 0.5 * eta * suboptimality_gap(&theta, &s).expect("nonempty") - 1e-12 {
                contraction += 1;
            }
        }
        (halved, full, contraction)
    };
    let (halved, full, contraction) = scan(true);
    let (rep_halved, _, rep_contraction) = scan(false);

    let theta = UtilityParams::new(vec![1.0, 1.0]).expect("finite");
    let s = Population::from_rows(&[&[0, 0], &[1, 1]]).expect("valid rows");
    let worked = exact_crossover_selection_mean(&theta, &s).expect("small instance");
    let worked_ok = (worked.expected_accepted_fitness - 8.0 / 7.0).abs() <= 1e-12
        && (worked.acceptance_probability - 7.0 / 8.0).abs() <= 1e-12;
    vec![
        CheckResult::hard(
            "exact ascent, halved constant",
            halved == 0 && worked_ok,
            format!("{halved}/{n} violations; worked instance gain 1/7 and acceptance 7/8: {worked_ok}"),
        ),
        CheckResult::hard(
            "exact contraction, halved constant",
            contraction == 0,
            format!("{contraction}/{n} violations"),
        ),
        CheckResult::report("ascent, full constant", format!("{full}/{n} instances below the bound")),
        CheckResult::report(
            "halved bounds, repeated members",
            format!("ascent {rep_halved}/{n}, contraction {rep_contraction}/{n} instances below the bound"),
        ),
    ]
}

fn posterior_checks(seed: u64, b: &Budget) -> Vec<CheckResult> {
    let mut rng = RandomStream::new(seed ^ 0xba7e5);
    let mut agree = 0;
    for _ in 0..b.datasets {
        let d = 1 + rng.index(10);
        let n = rng.index(201);
        let prior =
            PriorSpec::new(0.2 + 3.0 * rng.uniform(), 0.3 + 2.0 * rng.uniform()).expect("positive");
        let truth = gaussian_theta(d, &mut rng);
        let data: Vec<Observation> = (0..n)
            .map(|_| {
                let x = random_bits(d, &mut rng);
                let u =
                    noisy_evaluate(&truth, &x, prior.sigma(), &mut rng).expect("same dimension");
                Observation::new(x, u).expect("finite")
            })
            .collect();
        let mut state = PosteriorState::new(d, prior).expect("valid prior");
        state.ingest(&data).expect("consistent data");
        let (mean, precision) = dense_ridge(&data, d, prior).expect("consistent data");
        let ours = state.mean().expect("positive definite");
        let mean_ok = ours
            .weights()
            .iter()
            .zip(mean.weights())
            .all(|(a, b)| relative_close(*a, *b, 1e-8));
        let prec_ok = state
            .precision()
            .iter()
            .zip(precision.iter().flatten())
            .all(|(a, b)| relative_close(*a, *b, 1e-8));
        agree += usize::from(mean_ok && prec_ok);
    }

    let d = 3;
    let truth = gaussian_theta(d, &mut rng);
    let data: Vec<Observation> = (0..12)
        .map(|_| {
            let x = random_bits(d, &mut rng);
            let u = noisy_evaluate(&truth, &x, 1.0, &mut rng).expect("same dimension");
            Observation::new(x, u).expect("finite")
        })
        .collect();
    let mut state = PosteriorState::new(d, PriorSpec::default()).expect("valid prior");
    state.ingest(&data).expect("consistent data");
    let (_, precision) = dense_ridge(&data, d, PriorSpec::default()).expect("consistent data");
    let cov = dense_inverse(&precision).expect("invertible");
    let mean = state.mean().expect("positive definite").weights().to_vec();
    let draws: Vec<Vec<f64>> = (0..b.posterior_draws)
        .map(|_| {
            state
                .sample(&mut rng)
                .expect("positive definite")
                .weights()
                .to_vec()
        })
        .collect();
    let n = draws.len() as f64;
    let mut cov_ok = true;
    for i in 0..d {
        let (m, se) = mean_and_se(&draws.iter().map(|v| v[i]).collect::<Vec<_>>());
        cov_ok &= within_3se(m, mean[i], se);
        for j in 0..d {
            let emp = draws
                .iter()
                .map(|v| (v[i] - mean[i]) * (v[j] - mean[j]))
                .sum::<f64>()
                / n;
            let se = ((cov[i][i] * cov[j][j] + cov[i][j] * cov[i][j]) / n).sqrt();
            cov_ok &= within_3se(emp, cov[i][j], se);
        }
    }
    vec![
        CheckResult::hard(
            "posterior matches dense ridge",
            agree == b.datasets,
            format!("{agree}/{} datasets agree to 1e-8", b.datasets),
        ),
        CheckResult::hard(
            "posterior samples",
            cov_ok,
            format!(
                "mean and covariance of {} draws within 3 SE",
                b.posterior_draws
            ),
        ),
    ]
}

fn mutation_checks(seed: u64, b: &Budget) -> Vec<CheckResult> {
    let mut rng = RandomStream::new(seed ^ 0xd1_4ec7);
    let mu = 0.8;
    let d = 10;
    let theta = gaussian_theta(d, &mut rng);
    let s = random_population(d, 40, false, &mut rng);
    let p0 = favored_ratio(&theta, &s).expect("nonempty");
    let targets = directed_targets(&theta, &s).expect("same dimension");
    let mut sums = (0..d)
        .map(|_| Vec::with_capacity(b.mutation_calls))
        .collect::<Vec<_>>();
    for _ in 0..b.mutation_calls {
        let next = directed_mutation(&theta, &s, mu, &mut rng).expect("valid rate");
        for (acc, p) in sums
            .iter_mut()
            .zip(favored_ratio(&theta, &next).expect("nonempty"))
        {
            acc.push(p);
        }
    }
    let law_ok = (0..d).all(|i| {
        let expected = if targets.contains(i) {
            p0[i] + (0.5 - p0[i]) * mu
        } else {
            p0[i]
        };
        let (m, se) = mean_and_se(&sums[i]);
        within_3se(m, expected, se)
    });

    let m = (32.0 * (10.0 * d as f64).ln() / (mu * mu)).ceil() as usize;
    let mut hits = 0;
    for _ in 0..b.ratio_trials {
        let theta = gaussian_theta(d, &mut rng);
        let worst = MotifVector::from_bools((0..d).map(|i| !theta.favors_one(i))).expect("d >= 1");
        let s = Population::uniform_copies(worst, m).expect("m >= 1");
        let next = directed_mutation(&theta, &s, mu, &mut rng).expect("valid rate");
        let min_p = favored_ratio(&theta, &next)
            .expect("nonempty")
            .into_iter()
            .fold(1.0, f64::min);
        hits += usize::from(min_p >= mu / 4.0);
    }
    vec![
        CheckResult::hard(
            "directed mutation law",
            law_ok,
            format!(
                "{} of {d} sites targeted; every site within 3 SE",
                targets.sites().len()
            ),
        ),
        CheckResult::hard(
            "favored ratio floor",
            hits as f64 >= 0.9 * b.ratio_trials as f64,
            format!(
                "min p >= mu/4 in {hits}/{} trials at M = {m}",
                b.ratio_trials
            ),
        ),
    ]
}

fn driver_checks(seed: u64) -> CliResult<Vec<CheckResult>> {
    let base = ExperimentConfig {
        dim: 6,
        population_size: 8,
        rounds: 15,
        ..ExperimentConfig::default()
    };
    let baseline = ExperimentConfig {
        algorithm: Algorithm::BasicDe,
        schedule: MutationSchedule::new(ScheduleKind::InverseSqrt, 1.0)?,
        ..base.clone()
    };
    let guided = run_trials(&base, 8, seed)?;
    let plain = run_trials(&baseline, 8, seed)?;
    let mut accounting = true;
    for (outcomes, exact) in [(&guided, true), (&plain, false)] {
        for o in outcomes.iter() {
            let rounds = &o.trajectory.rounds;
            accounting &= rounds.iter().all(|r| r.inst_regret >= -1e-12);
            let mut cum = 0.0;
            for r in rounds {
                cum += r.inst_regret;
                accounting &= relative_close(cum, r.cum_regret, 1e-9);
            }
            let evals = rounds.last().map_or(0, |r| r.n_evals);
            let floor = base.population_size * base.rounds;
            accounting &= if exact {
                evals == floor
            } else {
                evals >= floor
            };
        }
    }
    let deterministic =
        run_trials(&base, 8, seed)? == guided && run_trials(&baseline, 8, seed)? == plain;
    Ok(vec![
        CheckResult::hard(
            "regret accounting",
            accounting,
            "nonnegative regret, running sums, evaluation counts".into(),
        ),
        CheckResult::hard(
            "determinism",
            deterministic,
            "repeat runs are identical".into(),
        ),
    ])
}

pub fn run_checks(level: Level, seed: u64) -> CliResult<Vec<CheckResult>> {
    let b = level.budget();
    let mut results = selection_checks(seed, &b);
    results.extend(exact_bound_checks(seed, &b));
    results.extend(posterior_checks(seed, &b));
    results.extend(mutation_checks(seed, &b));
    results.extend(driver_checks(seed)?);
    Ok(results)
}

pub fn print_table(results: &[CheckResult]) {
    let width = results.iter().map(|r| r.name.len()).max().unwrap_or(5);
    for r in results {
        let status = match (r.hard, r.passed) {
            (false, _) => "REPORT",
            (true, true) => "PASS",
            (true, false) => "FAIL",
        };
        println!("{status:<6}  {:<width$}  {}", r.name, r.detail);
    }
}

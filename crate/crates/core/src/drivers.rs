//! Experiment drivers: the Thompson-sampling guided loop, the model-free
//! baseline, and Bayesian regret estimation over prior draws.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bayes::{noisy_evaluate, sample_prior_theta, Observation, PosteriorState};
use crate::error::{EvoError, Result};
use crate::evolution::DEFAULT_ATTEMPTS_PER_MEMBER;
use crate::evolution::{
    crossover_selection, directed_mutation, mutate, recombine, MutationTargets,
};
use crate::motif::{MotifVector, Population};
use crate::rng::RandomStream;
use crate::utility::{
    dot, favored_ratio, optimum_value, population_fitness, PriorSpec, UtilityParams,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    Tsde,
    BasicDe,
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::Tsde => "tsde",
            Algorithm::BasicDe => "basic-de",
        })
    }
}

impl FromStr for Algorithm {
    type Err = EvoError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tsde" => Ok(Algorithm::Tsde),
            "basic-de" => Ok(Algorithm::BasicDe),
            other => Err(EvoError::InvalidConfig(format!(
                "unknown algorithm {other:?} (expected tsde or basic-de)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScheduleKind {
    Constant,
    InverseSqrt,
    Inverse,
    Zero,
}

impl fmt::Display for ScheduleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScheduleKind::Constant => "constant",
            ScheduleKind::InverseSqrt => "inverse-sqrt",
            ScheduleKind::Inverse => "inverse",
            ScheduleKind::Zero => "zero",
        })
    }
}

impl FromStr for ScheduleKind {
    type Err = EvoError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "constant" => Ok(ScheduleKind::Constant),
            "inverse-sqrt" => Ok(ScheduleKind::InverseSqrt),
            "inverse" => Ok(ScheduleKind::Inverse),
            "zero" => Ok(ScheduleKind::Zero),
            other => Err(EvoError::InvalidConfig(format!(
                "unknown schedule {other:?} (expected constant, inverse-sqrt, inverse or zero)"
            ))),
        }
    }
}

/// Mutation rate per round for the baseline: `clamp(c * g(t), 0, 1)` with
/// `g(t)` one of `1`, `1/sqrt(t)`, `1/t`, `0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MutationSchedule {
    pub kind: ScheduleKind,
    pub c: f64,
}

impl MutationSchedule {
    pub fn new(kind: ScheduleKind, c: f64) -> Result<Self> {
        if !(c.is_finite() && c >= 0.0) {
            return Err(EvoError::InvalidConfig(format!(
                "schedule scale c must be finite and >= 0 (got {c})"
            )));
        }
        Ok(Self { kind, c })
    }

    /// Rate at round `t >= 1`.
    pub fn rate(&self, t: usize) -> f64 {
        let t = t.max(1) as f64;
        let g = match self.kind {
            ScheduleKind::Constant => 1.0,
            ScheduleKind::InverseSqrt => 1.0 / t.sqrt(),
            ScheduleKind::Inverse => 1.0 / t,
            ScheduleKind::Zero => 0.0,
        };
        (self.c * g).clamp(0.0, 1.0)
    }
}

impl Default for MutationSchedule {
    fn default() -> Self {
        Self {
            kind: ScheduleKind::Constant,
            c: 0.8,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InitialPopulation {
    #[default]
    Zeros,
    /// Every bit an independent fair coin.
    Uniform,
}

impl fmt::Display for InitialPopulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InitialPopulation::Zeros => "zeros",
            InitialPopulation::Uniform => "uniform",
        })
    }
}

impl FromStr for InitialPopulation {
    type Err = EvoError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "zeros" => Ok(InitialPopulation::Zeros),
            "uniform" => Ok(InitialPopulation::Uniform),
            other => Err(EvoError::InvalidConfig(format!(
                "unknown initial population {other:?} (expected zeros or uniform)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub dim: usize,
    pub population_size: usize,
    pub rounds: usize,
    /// Directed mutation rate used by the guided loop.
    pub mu: f64,
    pub prior: PriorSpec,
    pub seed: u64,
    pub algorithm: Algorithm,
    /// Mutation schedule of the baseline; ignored by the guided loop.
    pub schedule: MutationSchedule,
    /// Record the population every this many rounds; 0 disables snapshots.
    pub snapshot_every: usize,
    pub init: InitialPopulation,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            dim: 10,
            population_size: 20,
            rounds: 100,
            mu: 0.8,
            prior: PriorSpec::default(),
            seed: 0,
            algorithm: Algorithm::Tsde,
            schedule: MutationSchedule::default(),
            snapshot_every: 0,
            init: InitialPopulation::Zeros,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(EvoError::InvalidConfig(msg));
        if self.dim == 0 {
            return fail("d must be >= 1".into());
        }
        if self.population_size == 0 {
            return fail("M must be >= 1".into());
        }
        if self.rounds == 0 {
            return fail("T must be >= 1".into());
        }
        if !(self.mu > 0.0 && self.mu <= 1.0) {
            return fail(format!("mu must lie in (0, 1] (got {})", self.mu));
        }
        PriorSpec::new(self.prior.lambda(), self.prior.sigma())?;
        MutationSchedule::new(self.schedule.kind, self.schedule.c)?;
        Ok(())
    }

    /// Population at round 0; draws from `rng` only for the uniform variant.
    pub fn initial_population(&self, rng: &mut RandomStream) -> Result<Population> {
        match self.init {
            InitialPopulation::Zeros => Population::zeros(self.dim, self.population_size),
            InitialPopulation::Uniform => {
                let members = (0..self.population_size)
                    .map(|_| MotifVector::from_bools((0..self.dim).map(|_| rng.coin())))
                    .collect::<Result<Vec<_>>>()?;
                Population::new(members)
            }
        }
    }
}

/// The measurement side of an experiment. It owns the hidden weights; the
/// algorithms only see noisy evaluations, and every evaluation is charged
/// `F* - f(x)` of regret.
#[derive(Debug)]
pub struct Environment {
    theta_star: UtilityParams,
    sigma: f64,
    optimum: f64,
    pending_regret: f64,
    n_evals: usize,
}

impl Environment {
    pub fn new(theta_star: UtilityParams, sigma: f64) -> Result<Self> {
        if !(sigma.is_finite() && sigma > 0.0) {
            return Err(EvoError::InvalidPrior {
                lambda: f64::NAN,
                sigma,
            });
        }
        let optimum = optimum_value(&theta_star);
        Ok(Self {
            theta_star,
            sigma,
            optimum,
            pending_regret: 0.0,
            n_evals: 0,
        })
    }

    pub fn dim(&self) -> usize {
        self.theta_star.dim()
    }

    pub fn optimum(&self) -> f64 {
        self.optimum
    }

    pub fn n_evals(&self) -> usize {
        self.n_evals
    }

    pub fn evaluate(&mut self, x: &MotifVector, rng: &mut RandomStream) -> Result<f64> {
        let u = noisy_evaluate(&self.theta_star, x, self.sigma, rng)?;
        self.pending_regret += self.optimum - dot(&self.theta_star, x);
        self.n_evals += 1;
        Ok(u)
    }

    /// True mean fitness, for reporting only.
    fn mean_fitness(&self, s: &Population) -> Result<f64> {
        population_fitness(&self.theta_star, s)
    }

    fn take_regret(&mut self) -> f64 {
        std::mem::take(&mut self.pending_regret)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RoundRecord {
    pub round: usize,
    pub mean_fitness: f64,
    pub inst_regret: f64,
    pub cum_regret: f64,
    pub n_evals: usize,
    /// Smallest favored ratio of the mutated population under the sampled
    /// weights; only the guided loop reports it.
    pub min_favored_ratio: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Snapshot {
    pub round: usize,
    pub population: Population,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialTrajectory {
    pub optimum: f64,
    pub rounds: Vec<RoundRecord>,
    pub snapshots: Vec<Snapshot>,
}

impl TrialTrajectory {
    fn new(optimum: f64) -> Self {
        Self {
            optimum,
            rounds: Vec::new(),
            snapshots: Vec::new(),
        }
    }

    fn record(
        &mut self,
        env: &mut Environment,
        s: &Population,
        min_favored_ratio: Option<f64>,
        snapshot_every: usize,
    ) -> Result<()> {
        let round = self.rounds.len() + 1;
        let inst_regret = env.take_regret();
        let cum_regret = self.rounds.last().map_or(0.0, |r| r.cum_regret) + inst_regret;
        self.rounds.push(RoundRecord {
            round,
            mean_fitness: env.mean_fitness(s)?,
            inst_regret,
            cum_regret,
            n_evals: env.n_evals(),
            min_favored_ratio,
        });
        if snapshot_every > 0 && round.is_multiple_of(snapshot_every) {
            self.snapshots.push(Snapshot {
                round,
                population: s.clone(),
            });
        }
        Ok(())
    }

    pub fn final_mean_fitness(&self) -> Option<f64> {
        self.rounds.last().map(|r| r.mean_fitness)
    }

    /// Evaluations spent when mean fitness first reaches `fraction * F*`.
    pub fn evaluations_to_reach(&self, fraction: f64) -> Option<usize> {
        let target = fraction * self.optimum;
        self.rounds
            .iter()
            .find(|r| r.mean_fitness >= target)
            .map(|r| r.n_evals)
    }
}

/// Step-by-step state of one guided run.
#[derive(Debug)]
pub struct TsdeRun {
    config: ExperimentConfig,
    env: Environment,
    posterior: PosteriorState,
    population: Population,
    trajectory: TrialTrajectory,
}

impl TsdeRun {
    pub fn new(
        config: &ExperimentConfig,
        theta_star: UtilityParams,
        rng: &mut RandomStream,
    ) -> Result<Self> {
        config.validate()?;
        if theta_star.dim() != config.dim {
            return Err(EvoError::DimensionMismatch {
                expected: config.dim,
                found: theta_star.dim(),
            });
        }
        let env = Environment::new(theta_star, config.prior.sigma())?;
        Ok(Self {
            posterior: PosteriorState::new(config.dim, config.prior)?,
            population: config.initial_population(rng)?,
            trajectory: TrialTrajectory::new(env.optimum()),
            config: config.clone(),
            env,
        })
    }

    /// Retains every observation in the posterior so it can be audited.
    pub fn with_history(mut self) -> Self {
        self.posterior = self.posterior.with_history();
        self
    }

    pub fn posterior(&self) -> &PosteriorState {
        &self.posterior
    }

    pub fn population(&self) -> &Population {
        &self.population
    }

    pub fn rounds_done(&self) -> usize {
        self.trajectory.rounds.len()
    }

    /// Sample weights, mutate, select, then evaluate and ingest the new population.
    pub fn step(&mut self, rng: &mut RandomStream) -> Result<()> {
        let sampled = self.posterior.sample(rng)?;
        let mutated = directed_mutation(&sampled, &self.population, self.config.mu, rng)?;
        let min_ratio = favored_ratio(&sampled, &mutated)?
            .into_iter()
            .fold(f64::INFINITY, f64::min);
        self.population = crossover_selection(&sampled, &mutated, rng)?;

        let batch = self
            .population
            .iter()
            .map(|x| Observation::new(x.clone(), self.env.evaluate(x, rng)?))
            .collect::<Result<Vec<_>>>()?;
        self.posterior.ingest(&batch)?;

        self.trajectory.record(
            &mut self.env,
            &self.population,
            Some(min_ratio),
            self.config.snapshot_every,
        )
    }

    pub fn finish(self) -> TrialTrajectory {
        self.trajectory
    }
}

/// Runs the guided loop for `config.rounds` rounds from the configured initial population.
pub fn run_tsde(
    config: &ExperimentConfig,
    theta_star: &UtilityParams,
    rng: &mut RandomStream,
) -> Result<TrialTrajectory> {
    let mut run = TsdeRun::new(config, theta_star.clone(), rng)?;
    for _ in 0..config.rounds {
        run.step(rng)?;
    }
    Ok(run.finish())
}

/// Model-free baseline: uniform mutation at the scheduled rate, then
/// crossover-then-selection decided by noisy measurements. Parents are measured
/// once per round and the value is reused across pairings; every candidate
/// child is measured once. All measurements count as evaluations.
pub fn run_basic_de(
    config: &ExperimentConfig,
    theta_star: &UtilityParams,
    rng: &mut RandomStream,
) -> Result<TrialTrajectory> {
    config.validate()?;
    if theta_star.dim() != config.dim {
        return Err(EvoError::DimensionMismatch {
            expected: config.dim,
            found: theta_star.dim(),
        });
    }
    let mut env = Environment::new(theta_star.clone(), config.prior.sigma())?;
    let mut trajectory = TrialTrajectory::new(env.optimum());
    let mut population = config.initial_population(rng)?;
    let all_sites = MutationTargets::all(config.dim);
    let m = config.population_size;
    let max_attempts = DEFAULT_ATTEMPTS_PER_MEMBER * m;

    for t in 1..=config.rounds {
        let rate = config.schedule.rate(t);
        if rate > 0.0 {
            let members = population
                .iter()
                .map(|x| mutate(x, &all_sites, rate, rng))
                .collect::<Result<Vec<_>>>()?;
            population = Population::new(members)?;
        }

        let parents = population.members();
        let measured = parents
            .iter()
            .map(|x| env.evaluate(x, rng))
            .collect::<Result<Vec<_>>>()?;
        let mut children = Vec::with_capacity(m);
        let mut attempts = 0;
        while children.len() < m {
            if attempts == max_attempts {
                return Err(EvoError::AttemptBudgetExceeded(max_attempts));
            }
            attempts += 1;
            let i = rng.index(m);
            let j = rng.index(m);
            let z = recombine(&parents[i], &parents[j], rng)?;
            let uz = env.evaluate(&z, rng)?;
            if uz >= (measured[i] + measured[j]) / 2.0 {
                children.push(z);
            }
        }
        population = Population::new(children)?;
        trajectory.record(&mut env, &population, None, config.snapshot_every)?;
    }
    Ok(trajectory)
}

pub fn run_trial(
    config: &ExperimentConfig,
    theta_star: &UtilityParams,
    rng: &mut RandomStream,
) -> Result<TrialTrajectory> {
    match config.algorithm {
        Algorithm::Tsde => run_tsde(config, theta_star, rng),
        Algorithm::BasicDe => run_basic_de(config, theta_star, rng),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialOutcome {
    pub index: u64,
    pub theta_star: UtilityParams,
    pub trajectory: TrialTrajectory,
}

/// Trial `index` under `master_seed`: draws the hidden weights from the prior on
/// the derived stream, then runs the configured algorithm on the same stream.
pub fn run_seeded_trial(
    config: &ExperimentConfig,
    master_seed: u64,
    index: u64,
) -> Result<TrialOutcome> {
    let mut rng = RandomStream::derive(master_seed, index);
    let theta_star = sample_prior_theta(config.dim, config.prior, &mut rng)?;
    let trajectory = run_trial(config, &theta_star, &mut rng)?;
    Ok(TrialOutcome {
        index,
        theta_star,
        trajectory,
    })
}

/// Independent trials, run in parallel on the current rayon pool and returned in index order.
pub fn run_trials(
    config: &ExperimentConfig,
    n_trials: usize,
    master_seed: u64,
) -> Result<Vec<TrialOutcome>> {
    config.validate()?;
    if n_trials == 0 {
        return Err(EvoError::InvalidConfig("n_trials must be >= 1".into()));
    }
    (0..n_trials as u64)
        .into_par_iter()
        .map(|k| run_seeded_trial(config, master_seed, k))
        .collect()
}

/// Per-round mean and standard error of `cum_regret / M` across trials.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegretCurve {
    pub population_size: usize,
    pub n_trials: usize,
    pub mean: Vec<f64>,
    pub stderr: Vec<f64>,
}

impl RegretCurve {
    pub fn from_outcomes(population_size: usize, outcomes: &[TrialOutcome]) -> Result<Self> {
        let first = outcomes
            .first()
            .ok_or_else(|| EvoError::InvalidConfig("cannot average zero trials".into()))?;
        let rounds = first.trajectory.rounds.len();
        let n = outcomes.len() as f64;
        let m = population_size as f64;
        let mut mean = Vec::with_capacity(rounds);
        let mut stderr = Vec::with_capacity(rounds);
        for t in 0..rounds {
            let values: Vec<f64> = outcomes
                .iter()
                .map(|o| o.trajectory.rounds[t].cum_regret / m)
                .collect();
            let mu = values.iter().sum::<f64>() / n;
            let se = if values.len() > 1 {
                let var = values.iter().map(|v| (v - mu).powi(2)).sum::<f64>() / (n - 1.0);
                (var / n).sqrt()
            } else {
                0.0
            };
            mean.push(mu);
            stderr.push(se);
        }
        Ok(Self {
            population_size,
            n_trials: outcomes.len(),
            mean,
            stderr,
        })
    }

    /// Mean at round `t` (1-based).
    pub fn at(&self, t: usize) -> f64 {
        self.mean[t - 1]
    }
}

pub fn estimate_bayes_regret(
    config: &ExperimentConfig,
    n_trials: usize,
    master_seed: u64,
) -> Result<RegretCurve> {
    let outcomes = run_trials(config, n_trials, master_seed)?;
    RegretCurve::from_outcomes(config.population_size, &outcomes)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_config() -> ExperimentConfig {
        ExperimentConfig {
            dim: 4,
            population_size: 6,
            rounds: 8,
            ..ExperimentConfig::default()
        }
    }

    #[test]
    fn schedule_rates() {
        let s = MutationSchedule::new(ScheduleKind::InverseSqrt, 2.0).unwrap();
        assert_eq!(s.rate(1), 1.0);
        assert!((s.rate(16) - 0.5).abs() < 1e-15);
        let s = MutationSchedule::new(ScheduleKind::Inverse, 1.0).unwrap();
        assert_eq!(s.rate(4), 0.25);
        assert_eq!(
            MutationSchedule::new(ScheduleKind::Zero, 5.0)
                .unwrap()
                .rate(1),
            0.0
        );
        assert_eq!(
            MutationSchedule::new(ScheduleKind::Constant, 0.3)
                .unwrap()
                .rate(99),
            0.3
        );
        assert!(MutationSchedule::new(ScheduleKind::Constant, -1.0).is_err());
    }

    #[test]
    fn enum_names_round_trip() {
        for a in [Algorithm::Tsde, Algorithm::BasicDe] {
            assert_eq!(a.to_string().parse::<Algorithm>().unwrap(), a);
        }
        for k in [
            ScheduleKind::Constant,
            ScheduleKind::InverseSqrt,
            ScheduleKind::Inverse,
            ScheduleKind::Zero,
        ] {
            assert_eq!(k.to_string().parse::<ScheduleKind>().unwrap(), k);
        }
        assert!("uniform".parse::<Algorithm>().is_err());
    }

    #[test]
    fn config_validation() {
        let mut c = small_config();
        assert!(c.validate().is_ok());
        c.mu = 0.0;
        assert!(c.validate().is_err());
        let c = ExperimentConfig {
            rounds: 0,
            ..small_config()
        };
        assert!(c.validate().is_err());
        let c = ExperimentConfig {
            population_size: 0,
            ..small_config()
        };
        assert!(c.validate().is_err());
    }

    #[test]
    fn tsde_bookkeeping() {
        let config = small_config();
        let theta = UtilityParams::new(vec![0.5, -1.0, 1.5, 0.2]).unwrap();
        let traj = run_tsde(&config, &theta, &mut RandomStream::new(1)).unwrap();
        assert_eq!(traj.rounds.len(), 8);
        let mut running = 0.0;
        for (k, r) in traj.rounds.iter().enumerate() {
            assert_eq!(r.round, k + 1);
            assert_eq!(r.n_evals, 6 * (k + 1));
            assert!(r.inst_regret >= 0.0);
            running += r.inst_regret;
            assert_eq!(r.cum_regret, running);
            assert!(r.min_favored_ratio.is_some());
        }
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let theta = UtilityParams::new(vec![1.0; 3]).unwrap();
        let mut rng = RandomStream::new(0);
        assert!(run_tsde(&small_config(), &theta, &mut rng).is_err());
        assert!(run_basic_de(&small_config(), &theta, &mut rng).is_err());
    }

    #[test]
    fn snapshots_follow_interval() {
        let config = ExperimentConfig {
            snapshot_every: 3,
            ..small_config()
        };
        let theta = UtilityParams::new(vec![1.0; 4]).unwrap();
        let traj = run_tsde(&config, &theta, &mut RandomStream::new(5)).unwrap();
        let rounds: Vec<usize> = traj.snapshots.iter().map(|s| s.round).collect();
        assert_eq!(rounds, vec![3, 6]);
        assert!(traj.snapshots.iter().all(|s| s.population.size() == 6));
    }

    #[test]
    fn zero_schedule_from_zeros_never_moves() {
        let config = ExperimentConfig {
            algorithm: Algorithm::BasicDe,
            schedule: MutationSchedule::new(ScheduleKind::Zero, 1.0).unwrap(),
            ..small_config()
        };
        let theta = UtilityParams::new(vec![1.0, 2.0, -0.5, 0.3]).unwrap();
        let traj = run_basic_de(&config, &theta, &mut RandomStream::new(8)).unwrap();
        assert!(traj.rounds.iter().all(|r| r.mean_fitness == 0.0));
        assert!(traj.rounds.iter().all(|r| r.min_favored_ratio.is_none()));
        // each round measures M parents plus at least M children
        assert!(traj.rounds.last().unwrap().n_evals >= 2 * 6 * 8);
    }

    #[test]
    fn evaluations_to_reach_threshold() {
        let mut traj = TrialTrajectory::new(10.0);
        for (k, f) in [2.0, 8.5, 9.5, 9.9].into_iter().enumerate() {
            traj.rounds.push(RoundRecord {
                round: k + 1,
                mean_fitness: f,
                inst_regret: 0.0,
                cum_regret: 0.0,
                n_evals: 5 * (k + 1),
                min_favored_ratio: None,
            });
        }
        assert_eq!(traj.evaluations_to_reach(0.9), Some(15));
        assert_eq!(traj.evaluations_to_reach(0.995), None);
    }

    #[test]
    fn single_trial_estimate_matches_direct_run() {
        let config = small_config();
        let curve = estimate_bayes_regret(&config, 1, 77).unwrap();
        let mut rng = RandomStream::derive(77, 0);
        let theta = sample_prior_theta(config.dim, config.prior, &mut rng).unwrap();
        let traj = run_tsde(&config, &theta, &mut rng).unwrap();
        let expected: Vec<f64> = traj.rounds.iter().map(|r| r.cum_regret / 6.0).collect();
        assert_eq!(curve.mean, expected);
        assert!(curve.stderr.iter().all(|&s| s == 0.0));
    }
}

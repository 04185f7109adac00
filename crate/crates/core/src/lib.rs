//! Thompson-sampling guided directed evolution over binary motif vectors.
//!
//! A population of bit vectors evolves under mutation, uniform crossover and
//! parent-average selection. The selection and mutation steps are steered by a
//! weight vector drawn from a Gaussian posterior over an unknown linear
//! utility; the posterior is refit each round from noisy measurements of the
//! new population.
//!
//! - [`motif`] and [`utility`]: bit vectors, populations, linear utilities and
//!   the statistics built on them.
//! - [`evolution`]: mutation, recombination, crossover-then-selection and
//!   directed mutation.
//! - [`bayes`]: conjugate posterior, Thompson draws and noisy measurements.
//! - [`drivers`]: the guided loop, the model-free baseline and regret estimation.
//! - [`oracle`]: brute-force references used by the tests and the verifier.

pub mod bayes;
pub mod drivers;
pub mod error;
pub mod evolution;
pub mod motif;
pub mod oracle;
pub mod rng;
pub mod utility;

pub use bayes::{noisy_evaluate, sample_prior_theta, Observation, PosteriorState};
pub use drivers::{
    estimate_bayes_regret, run_basic_de, run_seeded_trial, run_trial, run_trials, run_tsde,
    Algorithm, ExperimentConfig, InitialPopulation, MutationSchedule, RegretCurve, RoundRecord,
    ScheduleKind, Snapshot, TrialOutcome, TrialTrajectory, TsdeRun,
};
pub use error::{EvoError, Result};
pub use evolution::{
    crossover_selection, crossover_selection_with_budget, directed_mutation, directed_targets,
    mutate, recombine, MutationTargets,
};
pub use motif::{MotifVector, Population};
pub use rng::RandomStream;
pub use utility::{
    favored_ratio, fitness, optimum_point, optimum_value, population_fitness, site_variance,
    suboptimality_gap, suboptimality_gap_by_ratio, PriorSpec, UtilityParams,
};

//! Experiment config files.
//!
//! A config is a flat TOML table. Every key is optional and unknown keys are
//! rejected. Semantic errors are reported with the line of the offending key.
//!
//! ```toml
//! d = 10
//! M = [10, 20, 40]   # a single integer or a sweep
//! T = 100
//! mu = 0.8
//! lambda = 1.0
//! sigma = 1.0
//! seed = 7
//! algorithm = "tsde"          # or "basic-de"
//! schedule = "constant"       # baseline only: constant | inverse-sqrt | inverse | zero
//! c = 0.8                     # baseline schedule scale, defaults to mu
//! init = "zeros"              # or "uniform"
//! snapshot_every = 0
//! n_trials = 100
//! output_dir = "out"
//! arms = ["tsde", "basic-de schedule=inverse c=1.0"]   # compare only
//! ```

use std::ops::Range;
use std::path::PathBuf;

use evobandit_core::{
    Algorithm, ExperimentConfig, InitialPopulation, MutationSchedule, PriorSpec, ScheduleKind,
};
use serde::{Deserialize, Serialize};
use toml::Spanned;

use crate::arms::{parse_arm, Arm};
use crate::CliError;

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(untagged)]
enum OneOrMany {
    One(usize),
    Many(Vec<usize>),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    d: Option<Spanned<usize>>,
    #[serde(rename = "M")]
    m: Option<Spanned<OneOrMany>>,
    #[serde(rename = "T")]
    t: Option<Spanned<usize>>,
    mu: Option<Spanned<f64>>,
    lambda: Option<Spanned<f64>>,
    sigma: Option<Spanned<f64>>,
    seed: Option<u64>,
    algorithm: Option<Spanned<String>>,
    schedule: Option<Spanned<String>>,
    c: Option<Spanned<f64>>,
    init: Option<Spanned<String>>,
    snapshot_every: Option<usize>,
    n_trials: Option<Spanned<usize>>,
    output_dir: Option<PathBuf>,
    arms: Option<Vec<Spanned<String>>>,
}

/// Fully resolved settings for one invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct Settings {
    /// Base experiment; `population_size` holds the first entry of the sweep.
    pub experiment: ExperimentConfig,
    pub population_sizes: Vec<usize>,
    pub n_trials: usize,
    /// Seed given in the file, if any. Command-line and environment handling
    /// decide the final master seed.
    pub seed: Option<u64>,
    pub output_dir: PathBuf,
    pub arms: Vec<Arm>,
}

impl Default for Settings {
    fn default() -> Self {
        let experiment = ExperimentConfig::default();
        Self {
            population_sizes: vec![experiment.population_size],
            experiment,
            n_trials: 1,
            seed: None,
            output_dir: PathBuf::from("out"),
            arms: Vec::new(),
        }
    }
}

impl Settings {
    /// The experiment for one entry of the population sweep.
    pub fn experiment_for(&self, m: usize) -> ExperimentConfig {
        ExperimentConfig {
            population_size: m,
            ..self.experiment.clone()
        }
    }

    /// The settings rendered back into config syntax, with the given master
    /// seed. Parsing the result reproduces these settings.
    pub fn to_toml(&self, master_seed: u64) -> String {
        let e = &self.experiment;
        let m = if self.population_sizes.len() == 1 {
            OneOrMany::One(self.population_sizes[0])
        } else {
            OneOrMany::Many(self.population_sizes.clone())
        };
        let resolved = ResolvedFile {
            d: e.dim,
            m,
            t: e.rounds,
            mu: e.mu,
            lambda: e.prior.lambda(),
            sigma: e.prior.sigma(),
            seed: master_seed,
            algorithm: e.algorithm.to_string(),
            schedule: e.schedule.kind.to_string(),
            c: e.schedule.c,
            init: e.init.to_string(),
            snapshot_every: e.snapshot_every,
            n_trials: self.n_trials,
            output_dir: self.output_dir.clone(),
            arms: self.arms.iter().map(|a| a.spec.clone()).collect(),
        };
        toml::to_string(&resolved).expect("plain data always serializes")
    }
}

#[derive(Serialize)]
struct ResolvedFile {
    d: usize,
    #[serde(rename = "M")]
    m: OneOrMany,
    #[serde(rename = "T")]
    t: usize,
    mu: f64,
    lambda: f64,
    sigma: f64,
    seed: u64,
    algorithm: String,
    schedule: String,
    c: f64,
    init: String,
    snapshot_every: usize,
    n_trials: usize,
    output_dir: PathBuf,
    arms: Vec<String>,
}

/// Maps byte offsets to 1-based line numbers for error messages.
struct Lines<'a>(&'a str);

impl Lines<'_> {
    fn at(&self, span: Range<usize>) -> usize {
        let end = span.start.min(self.0.len());
        self.0[..end].bytes().filter(|&b| b == b'\n').count() + 1
    }

    fn error<T>(&self, span: Range<usize>, msg: impl std::fmt::Display) -> Result<T, CliError> {
        Err(CliError::Config(format!("line {}: {msg}", self.at(span))))
    }
}

/// Parses and validates config text.
pub fn parse_config(text: &str) -> Result<Settings, CliError> {
    let raw: RawConfig = toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
    let lines = Lines(text);
    let mut settings = Settings::default();
    let e = &mut settings.experiment;

    if let Some(d) = raw.d {
        if *d.get_ref() == 0 {
            return lines.error(d.span(), "d must be >= 1");
        }
        e.dim = d.into_inner();
    }
    if let Some(m) = raw.m {
        let span = m.span();
        let sizes = match m.into_inner() {
            OneOrMany::One(v) => vec![v],
            OneOrMany::Many(v) => v,
        };
        if sizes.is_empty() {
            return lines.error(span, "M must list at least one population size");
        }
        if sizes.contains(&0) {
            return lines.error(span, "every M must be >= 1");
        }
        e.population_size = sizes[0];
        settings.population_sizes = sizes;
    }
    if let Some(t) = raw.t {
        if *t.get_ref() == 0 {
            return lines.error(t.span(), "T must be >= 1");
        }
        e.rounds = t.into_inner();
    }
    if let Some(mu) = raw.mu {
        let v = *mu.get_ref();
        if !(v > 0.0 && v <= 1.0) {
            return lines.error(mu.span(), format!("mu must lie in (0, 1] (got {v})"));
        }
        e.mu = v;
    }

    for (name, value) in [("lambda", &raw.lambda), ("sigma", &raw.sigma)] {
        if let Some(v) = value {
            if !(v.get_ref().is_finite() && *v.get_ref() > 0.0) {
                return lines.error(v.span(), format!("{name} must be positive and finite"));
            }
        }
    }
    let lambda = raw.lambda.map_or(1.0, |s| s.into_inner());
    let sigma = raw.sigma.map_or(1.0, |s| s.into_inner());
    e.prior = PriorSpec::new(lambda, sigma).map_err(|err| CliError::Config(err.to_string()))?;

    if let Some(a) = raw.algorithm {
        e.algorithm = match a.get_ref().parse::<Algorithm>() {
            Ok(v) => v,
            Err(err) => return lines.error(a.span(), err),
        };
    }
    let kind = match raw.schedule {
        Some(s) => match s.get_ref().parse::<ScheduleKind>() {
            Ok(v) => v,
            Err(err) => return lines.error(s.span(), err),
        },
        None => ScheduleKind::Constant,
    };
    let c_span = raw.c.as_ref().map(|s| s.span()).unwrap_or(0..0);
    let c = raw.c.map_or(e.mu, |s| s.into_inner());
    e.schedule = match MutationSchedule::new(kind, c) {
        Ok(s) => s,
        Err(err) => return lines.error(c_span, err),
    };
    if let Some(i) = raw.init {
        e.init = match i.get_ref().parse::<InitialPopulation>() {
            Ok(v) => v,
            Err(err) => return lines.error(i.span(), err),
        };
    }
    if let Some(every) = raw.snapshot_every {
        e.snapshot_every = every;
    }
    if let Some(n) = raw.n_trials {
        if *n.get_ref() == 0 {
            return lines.error(n.span(), "n_trials must be >= 1");
        }
        settings.n_trials = n.into_inner();
    }
    settings.seed = raw.seed;
    if let Some(dir) = raw.output_dir {
        settings.output_dir = dir;
    }
    for spec in raw.arms.unwrap_or_default() {
        match parse_arm(spec.get_ref(), &settings.experiment) {
            Ok(arm) => settings.arms.push(arm),
            Err(err) => return lines.error(spec.span(), err),
        }
    }
    Ok(settings)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_text_gives_defaults() {
        assert_eq!(parse_config("").unwrap(), Settings::default());
    }

    #[test]
    fn sweep_and_scalars() {
        let s = parse_config("d = 12\nM = [10, 20]\nT = 5\nmu = 0.5\nn_trials = 3\n").unwrap();
        assert_eq!(s.experiment.dim, 12);
        assert_eq!(s.population_sizes, vec![10, 20]);
        assert_eq!(s.experiment.population_size, 10);
        assert_eq!(s.experiment.rounds, 5);
        assert_eq!(s.n_trials, 3);
        assert_eq!(s.experiment.schedule.c, 0.5, "c follows mu when unset");
    }

    #[test]
    fn unknown_key_is_rejected_with_line() {
        let err = parse_config("d = 3\nbogus = 1\n").unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().contains("line 2"), "{err}");
    }

    #[test]
    fn semantic_errors_carry_line_numbers() {
        for (text, line) in [
            ("d = 3\n\nmu = 1.5\n", "line 3"),
            ("T = 0\n", "line 1"),
            ("d = 2\nM = []\n", "line 2"),
            ("algorithm = \"sgd\"\n", "line 1"),
            ("d = 2\nlambda = -1.0\n", "line 2"),
            ("lambda = 2.0\nsigma = 0.0\n", "line 2"),
            ("arms = [\n  \"tsde\",\n  \"basic-de c=-2\",\n]\n", "line 3"),
        ] {
            let err = parse_config(text).unwrap_err();
            assert!(err.to_string().contains(line), "{text:?}: {err}");
        }
    }

    #[test]
    fn rendered_settings_parse_back() {
        let text = "d = 6\nM = [3, 4]\nT = 7\nalgorithm = \"basic-de\"\nschedule = \"inverse\"\nc = 1.0\ninit = \"uniform\"\nsnapshot_every = 2\narms = [\"tsde mu=0.5\"]\n";
        let s = parse_config(text).unwrap();
        let back = parse_config(&s.to_toml(42)).unwrap();
        assert_eq!(back.seed, Some(42));
        assert_eq!(Settings { seed: None, ..back }, s);
    }
}

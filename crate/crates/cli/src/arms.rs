//! Arms of a comparison, written as an algorithm name followed by
//! `key=value` overrides, e.g. `basic-de schedule=inverse c=1.0 init=uniform`.

use evobandit_core::{
    Algorithm, ExperimentConfig, InitialPopulation, MutationSchedule, ScheduleKind,
};

#[derive(Debug, Clone, PartialEq)]
pub struct Arm {
    /// The arm as written, with whitespace normalized; used as its label.
    pub spec: String,
    pub config: ExperimentConfig,
}

/// Parses one arm on top of `base`. Recognized keys: `mu`, `schedule`, `c`
/// and `init`. A baseline arm that names a schedule but no `c` keeps the
/// base scale.
pub fn parse_arm(text: &str, base: &ExperimentConfig) -> Result<Arm, String> {
    let mut words = text.split_whitespace();
    let algorithm: Algorithm = words
        .next()
        .ok_or_else(|| "empty arm".to_string())?
        .parse()
        .map_err(|e: evobandit_core::EvoError| e.to_string())?;
    let mut config = ExperimentConfig {
        algorithm,
        ..base.clone()
    };
    let mut kind = config.schedule.kind;
    let mut c = config.schedule.c;
    let mut seen = Vec::new();
    for word in words {
        let (key, value) = word
            .split_once('=')
            .ok_or_else(|| format!("expected key=value, found {word:?}"))?;
        if seen.contains(&key) {
            return Err(format!("key {key:?} given twice"));
        }
        seen.push(key);
        let number = || {
            value
                .parse::<f64>()
                .map_err(|_| format!("{key} expects a number, found {value:?}"))
        };
        match key {
            "mu" => config.mu = number()?,
            "c" => c = number()?,
            "schedule" => kind = value.parse::<ScheduleKind>().map_err(|e| e.to_string())?,
            "init" => {
                config.init = value
                    .parse::<InitialPopulation>()
                    .map_err(|e| e.to_string())?
            }
            other => return Err(format!("unknown arm key {other:?}")),
        }
    }
    if algorithm == Algorithm::Tsde && (seen.contains(&"schedule") || seen.contains(&"c")) {
        return Err("schedule and c apply to basic-de arms only".into());
    }
    config.schedule = MutationSchedule::new(kind, c).map_err(|e| e.to_string())?;
    config.validate().map_err(|e| e.to_string())?;
    Ok(Arm {
        spec: text.split_whitespace().collect::<Vec<_>>().join(" "),
        config,
    })
}

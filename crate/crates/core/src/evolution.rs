//! Mutation, recombination, crossover-then-selection and directed mutation.

use crate::error::{EvoError, Result};
use crate::motif::{MotifVector, Population};
use crate::rng::RandomStream;
use crate::utility::{dot, UtilityParams};

/// Attempts allowed per output member before selection is declared broken.
pub const DEFAULT_ATTEMPTS_PER_MEMBER: usize = 1000;

/// Mean of a uniformly random bit, the per-site reference level for directed mutation.
const UNIFORM_BIT_MEAN: f64 = 0.5;

/// Sites eligible for mutation (0-based, sorted, unique).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MutationTargets {
    sites: Vec<usize>,
}

impl MutationTargets {
    pub fn new(mut sites: Vec<usize>, dim: usize) -> Result<Self> {
        sites.sort_unstable();
        for pair in sites.windows(2) {
            if pair[0] == pair[1] {
                return Err(EvoError::DuplicateSite(pair[0]));
            }
        }
        if let Some(&index) = sites.iter().find(|&&i| i >= dim) {
            return Err(EvoError::InvalidSite { index, dim });
        }
        Ok(Self { sites })
    }

    pub fn all(dim: usize) -> Self {
        Self {
            sites: (0..dim).collect(),
        }
    }

    pub fn none() -> Self {
        Self::default()
    }

    pub fn sites(&self) -> &[usize] {
        &self.sites
    }

    pub fn is_empty(&self) -> bool {
        self.sites.is_empty()
    }

    pub fn contains(&self, site: usize) -> bool {
        self.sites.binary_search(&site).is_ok()
    }
}

fn check_rate(mu: f64) -> Result<()> {
    if mu > 0.0 && mu <= 1.0 {
        Ok(())
    } else {
        Err(EvoError::InvalidMutationRate(mu))
    }
}

/// Resamples each targeted site uniformly with probability `mu`; other sites are untouched.
pub fn mutate(
    x: &MotifVector,
    targets: &MutationTargets,
    mu: f64,
    rng: &mut RandomStream,
) -> Result<MotifVector> {
    check_rate(mu)?;
    if let Some(&index) = targets.sites().last() {
        if index >= x.dim() {
            return Err(EvoError::InvalidSite {
                index,
                dim: x.dim(),
            });
        }
    }
    let mut out = x.clone();
    for &site in targets.sites() {
        if rng.bernoulli(mu) {
            out.set(site, rng.coin());
        }
    }
    Ok(out)
}

/// Uniform crossover: every site comes from `x` or `y` with probability 1/2 each.
pub fn recombine(x: &MotifVector, y: &MotifVector, rng: &mut RandomStream) -> Result<MotifVector> {
    if x.dim() != y.dim() {
        return Err(EvoError::DimensionMismatch {
            expected: x.dim(),
            found: y.dim(),
        });
    }
    Ok(recombine_unchecked(x, y, rng))
}

fn recombine_unchecked(x: &MotifVector, y: &MotifVector, rng: &mut RandomStream) -> MotifVector {
    let mut z = x.clone();
    for site in 0..x.dim() {
        // Both branches draw a coin so the stream advances identically for any parents.
        let take_y = rng.coin();
        if take_y {
            z.set(site, y.is_set(site));
        }
    }
    z
}

/// Crossover-then-selection with the default attempt budget (`1000 * |S|`).
pub fn crossover_selection(
    theta: &UtilityParams,
    s: &Population,
    rng: &mut RandomStream,
) -> Result<Population> {
    crossover_selection_with_budget(theta, s, rng, DEFAULT_ATTEMPTS_PER_MEMBER * s.size())
}

/// Fills a new population of `|S|` children. Each attempt draws an ordered parent
/// pair uniformly with replacement, recombines them, and keeps the child only if
/// `f(z) >= (f(x) + f(y)) / 2`. Identical parents always pass, so the loop ends
/// with probability one; running out of `max_attempts` signals a broken comparison.
pub fn crossover_selection_with_budget(
    theta: &UtilityParams,
    s: &Population,
    rng: &mut RandomStream,
    max_attempts: usize,
) -> Result<Population> {
    if theta.dim() != s.dim() {
        return Err(EvoError::DimensionMismatch {
            expected: theta.dim(),
            found: s.dim(),
        });
    }
    let members = s.members();
    let scores: Vec<f64> = members.iter().map(|x| dot(theta, x)).collect();
    let mut children = Vec::with_capacity(members.len());
    let mut attempts = 0;
    while children.len() < members.len() {
        if attempts == max_attempts {
            return Err(EvoError::AttemptBudgetExceeded(max_attempts));
        }
        attempts += 1;
        let i = rng.index(members.len());
        let j = rng.index(members.len());
        let z = recombine_unchecked(&members[i], &members[j], rng);
        let threshold = (scores[i] + scores[j]) / 2.0;
        let fz = dot(theta, &z);
        if fz >= threshold {
            debug_assert!(dot(theta, &z) >= (scores[i] + scores[j]) / 2.0);
            children.push(z);
        }
    }
    Population::new(children)
}

/// Sites where the population's mean per-site score `theta_i * mean(x_i)` does not
/// exceed that of a uniform random bit, `theta_i / 2`.
pub fn directed_targets(theta: &UtilityParams, s: &Population) -> Result<MutationTargets> {
    if theta.dim() != s.dim() {
        return Err(EvoError::DimensionMismatch {
            expected: theta.dim(),
            found: s.dim(),
        });
    }
    let sites = s
        .ones_fraction()
        .into_iter()
        .zip(theta.weights())
        .enumerate()
        .filter(|(_, (q, &w))| w * q <= w * UNIFORM_BIT_MEAN)
        .map(|(i, _)| i)
        .collect();
    Ok(MutationTargets { sites })
}

/// Mutates every member independently, restricted to [`directed_targets`] of the input.
pub fn directed_mutation(
    theta: &UtilityParams,
    s: &Population,
    mu: f64,
    rng: &mut RandomStream,
) -> Result<Population> {
    check_rate(mu)?;
    let targets = directed_targets(theta, s)?;
    let members = s
        .iter()
        .map(|x| mutate(x, &targets, mu, rng))
        .collect::<Result<Vec<_>>>()?;
    Population::new(members)
}

//! Linear utilities over motif vectors and the population statistics built on them.
//!
//! A weight vector `theta` scores `x` by `<theta, x>`. Sites with `theta_i >= 0`
//! favor the bit value 1 (including `theta_i == 0`), all other sites favor 0;
//! every routine here and in the evolution operators breaks that tie the same way.

use serde::{Deserialize, Serialize};

use crate::error::{EvoError, Result};
use crate::motif::{MotifVector, Population};

/// Per-site utility weights.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UtilityParams {
    theta: Vec<f64>,
}

impl UtilityParams {
    pub fn new(theta: Vec<f64>) -> Result<Self> {
        if theta.is_empty() {
            return Err(EvoError::ZeroDimension);
        }
        if let Some(&v) = theta.iter().find(|v| !v.is_finite()) {
            return Err(EvoError::NonFinite {
                what: "utility weights",
                value: v,
            });
        }
        Ok(Self { theta })
    }

    pub fn dim(&self) -> usize {
        self.theta.len()
    }

    pub fn weights(&self) -> &[f64] {
        &self.theta
    }

    /// Whether site `i` rewards a 1 bit.
    pub fn favors_one(&self, i: usize) -> bool {
        self.theta[i] >= 0.0
    }

    fn check_dim(&self, found: usize) -> Result<()> {
        if found == self.dim() {
            Ok(())
        } else {
            Err(EvoError::DimensionMismatch {
                expected: self.dim(),
                found,
            })
        }
    }
}

/// Gaussian prior precision scale and known observation noise.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PriorSpec {
    lambda: f64,
    sigma: f64,
}

impl PriorSpec {
    pub fn new(lambda: f64, sigma: f64) -> Result<Self> {
        let ok = |v: f64| v.is_finite() && v > 0.0;
        if ok(lambda) && ok(sigma) {
            Ok(Self { lambda, sigma })
        } else {
            Err(EvoError::InvalidPrior { lambda, sigma })
        }
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }
}

impl Default for PriorSpec {
    fn default() -> Self {
        Self {
            lambda: 1.0,
            sigma: 1.0,
        }
    }
}

pub fn fitness(theta: &UtilityParams, x: &MotifVector) -> Result<f64> {
    theta.check_dim(x.dim())?;
    Ok(dot(theta, x))
}

// Caller has already checked dimensions.
pub(crate) fn dot(theta: &UtilityParams, x: &MotifVector) -> f64 {
    theta
        .weights()
        .iter()
        .zip(x.bits())
        .map(|(&w, &b)| w * f64::from(b))
        .sum()
}

/// Mean fitness over the members of `s`, duplicates included.
pub fn population_fitness(theta: &UtilityParams, s: &Population) -> Result<f64> {
    theta.check_dim(s.dim())?;
    let total: f64 = s.iter().map(|x| dot(theta, x)).sum();
    Ok(total / s.size() as f64)
}

/// `max_x <theta, x>` over the cube, i.e. the sum of the positive weights.
pub fn optimum_value(theta: &UtilityParams) -> f64 {
    theta.weights().iter().map(|&w| w.max(0.0)).sum()
}

pub fn optimum_point(theta: &UtilityParams) -> MotifVector {
    MotifVector::from_bools((0..theta.dim()).map(|i| theta.favors_one(i)))
        .expect("theta has at least one site")
}

/// Fraction of members carrying the favored bit at each site.
pub fn favored_ratio(theta: &UtilityParams, s: &Population) -> Result<Vec<f64>> {
    theta.check_dim(s.dim())?;
    Ok(s.ones_fraction()
        .into_iter()
        .enumerate()
        .map(|(i, q)| if theta.favors_one(i) { q } else { 1.0 - q })
        .collect())
}

/// Per-site variance of `x_i` for `x` drawn uniformly from `s` (divide-by-M convention).
pub fn site_variance(s: &Population) -> Vec<f64> {
    s.ones_fraction()
        .into_iter()
        .map(|q| q * (1.0 - q))
        .collect()
}

/// `F* - F(S)`, computed from the two fitness values.
pub fn suboptimality_gap(theta: &UtilityParams, s: &Population) -> Result<f64> {
    Ok(optimum_value(theta) - population_fitness(theta, s)?)
}

/// `sum_i |theta_i| (1 - p_i(S))`, the same gap written through favored ratios.
pub fn suboptimality_gap_by_ratio(theta: &UtilityParams, s: &Population) -> Result<f64> {
    let p = favored_ratio(theta, s)?;
    Ok(theta
        .weights()
        .iter()
        .zip(p)
        .map(|(w, p)| w.abs() * (1.0 - p))
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn theta(v: &[f64]) -> UtilityParams {
        UtilityParams::new(v.to_vec()).unwrap()
    }

    fn mv(bits: &[u8]) -> MotifVector {
        MotifVector::from_bits(bits).unwrap()
    }

    #[test]
    fn fitness_examples() {
        assert_eq!(
            fitness(&theta(&[1.0, -2.0, 3.0]), &mv(&[1, 1, 1])).unwrap(),
            2.0
        );
        assert_eq!(fitness(&theta(&[1.5, -2.0]), &mv(&[0, 0])).unwrap(), 0.0);
        assert_eq!(fitness(&theta(&[0.5, 0.5]), &mv(&[1, 0])).unwrap(), 0.5);
        assert!(matches!(
            fitness(&theta(&[1.0]), &mv(&[1, 0])),
            Err(EvoError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn population_fitness_examples() {
        let s = Population::from_rows(&[&[0, 0], &[1, 1]]).unwrap();
        assert_eq!(population_fitness(&theta(&[1.0, 1.0]), &s).unwrap(), 1.0);
        let s = Population::from_rows(&[&[1, 1], &[1, 0]]).unwrap();
        assert_eq!(population_fitness(&theta(&[1.0, -1.0]), &s).unwrap(), 0.5);
        let t = theta(&[0.3, -1.2, 2.0]);
        let x = mv(&[1, 0, 1]);
        let s = Population::uniform_copies(x.clone(), 5).unwrap();
        assert!((population_fitness(&t, &s).unwrap() - fitness(&t, &x).unwrap()).abs() < 1e-15);
    }

    #[test]
    fn optimum_examples() {
        let t = theta(&[1.0, -2.0, 3.0]);
        assert_eq!(optimum_value(&t), 4.0);
        assert_eq!(optimum_point(&t), mv(&[1, 0, 1]));
        assert_eq!(optimum_value(&theta(&[-1.0, -0.5])), 0.0);
        assert_eq!(optimum_point(&theta(&[0.0, 0.0])), mv(&[1, 1]));
    }

    #[test]
    fn favored_ratio_examples() {
        let s = Population::from_rows(&[&[1, 0], &[0, 0]]).unwrap();
        assert_eq!(
            favored_ratio(&theta(&[1.0, -1.0]), &s).unwrap(),
            vec![0.5, 1.0]
        );
        // zero weight takes the theta >= 0 branch
        assert_eq!(
            favored_ratio(&theta(&[0.0, -1.0]), &s).unwrap(),
            vec![0.5, 1.0]
        );
        let t = theta(&[0.2, -0.7, 0.0]);
        let s = Population::uniform_copies(optimum_point(&t), 4).unwrap();
        assert_eq!(favored_ratio(&t, &s).unwrap(), vec![1.0; 3]);
    }

    #[test]
    fn site_variance_examples() {
        let s = Population::from_rows(&[&[1, 0], &[0, 0]]).unwrap();
        assert_eq!(site_variance(&s), vec![0.25, 0.0]);
        let s = Population::uniform_copies(mv(&[1, 0, 1]), 3).unwrap();
        assert_eq!(site_variance(&s), vec![0.0; 3]);
    }

    #[test]
    fn gap_examples() {
        let t = theta(&[1.0, 1.0]);
        let s = Population::from_rows(&[&[0, 0]]).unwrap();
        assert_eq!(suboptimality_gap(&t, &s).unwrap(), 2.0);
        assert_eq!(suboptimality_gap_by_ratio(&t, &s).unwrap(), 2.0);
        let t = theta(&[0.4, -3.0, 0.0]);
        let s = Population::uniform_copies(optimum_point(&t), 2).unwrap();
        assert_eq!(suboptimality_gap(&t, &s).unwrap(), 0.0);
    }

    #[test]
    fn prior_rejects_nonpositive() {
        assert!(PriorSpec::new(0.0, 1.0).is_err());
        assert!(PriorSpec::new(1.0, -1.0).is_err());
        assert!(PriorSpec::new(f64::NAN, 1.0).is_err());
        assert!(PriorSpec::new(2.0, 0.5).is_ok());
    }
}

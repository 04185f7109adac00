//! Conjugate Gaussian inference for the linear utility weights.
//!
//! The state keeps sufficient statistics instead of the raw design matrix:
//! `precision = lambda * I + sigma^-2 * sum x x^T` and
//! `xu_accum = sigma^-2 * sum u * x`. The posterior is
//! `N(precision^-1 * xu_accum, precision^-1)`.

use nalgebra::{Cholesky, DMatrix, DVector, Dyn};

use crate::error::{EvoError, Result};
use crate::motif::MotifVector;
use crate::rng::RandomStream;
use crate::utility::{dot, PriorSpec, UtilityParams};

/// A motif vector with its measured utility.
#[derive(Debug, Clone, PartialEq)]
pub struct Observation {
    pub x: MotifVector,
    pub u: f64,
}

impl Observation {
    pub fn new(x: MotifVector, u: f64) -> Result<Self> {
        if !u.is_finite() {
            return Err(EvoError::NonFinite {
                what: "observation",
                value: u,
            });
        }
        Ok(Self { x, u })
    }
}

#[derive(Debug, Clone)]
pub struct PosteriorState {
    dim: usize,
    prior: PriorSpec,
    precision: DMatrix<f64>,
    xu_accum: DVector<f64>,
    n_obs: usize,
    history: Option<Vec<Observation>>,
}

impl PosteriorState {
    /// The prior `N(0, lambda^-1 I)` over `dim` weights.
    pub fn new(dim: usize, prior: PriorSpec) -> Result<Self> {
        if dim == 0 {
            return Err(EvoError::ZeroDimension);
        }
        // Re-validate in case the prior was built by deserialization.
        let prior = PriorSpec::new(prior.lambda(), prior.sigma())?;
        Ok(Self {
            dim,
            prior,
            precision: DMatrix::identity(dim, dim) * prior.lambda(),
            xu_accum: DVector::zeros(dim),
            n_obs: 0,
            history: None,
        })
    }

    /// Keeps every ingested observation for later auditing.
    pub fn with_history(mut self) -> Self {
        self.history.get_or_insert_with(Vec::new);
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn prior(&self) -> PriorSpec {
        self.prior
    }

    pub fn precision(&self) -> &DMatrix<f64> {
        &self.precision
    }

    pub fn xu_accum(&self) -> &DVector<f64> {
        &self.xu_accum
    }

    pub fn n_obs(&self) -> usize {
        self.n_obs
    }

    pub fn history(&self) -> Option<&[Observation]> {
        self.history.as_deref()
    }

    /// Folds a batch into the sufficient statistics. The whole batch is checked
    /// before anything is applied.
    pub fn ingest(&mut self, batch: &[Observation]) -> Result<()> {
        if let Some(bad) = batch.iter().find(|o| o.x.dim() != self.dim) {
            return Err(EvoError::DimensionMismatch {
                expected: self.dim,
                found: bad.x.dim(),
            });
        }
        let inv_var = 1.0 / (self.prior.sigma() * self.prior.sigma());
        for obs in batch {
            let active: Vec<usize> = (0..self.dim).filter(|&i| obs.x.is_set(i)).collect();
            for &i in &active {
                for &j in &active {
                    self.precision[(i, j)] += inv_var;
                }
                self.xu_accum[i] += inv_var * obs.u;
            }
        }
        self.n_obs += batch.len();
        if let Some(h) = self.history.as_mut() {
            h.extend_from_slice(batch);
        }
        Ok(())
    }

    fn factor(&self) -> Result<Cholesky<f64, Dyn>> {
        Cholesky::new(self.precision.clone()).ok_or(EvoError::NotPositiveDefinite)
    }

    fn mean_vector(&self, chol: &Cholesky<f64, Dyn>) -> DVector<f64> {
        chol.solve(&self.xu_accum)
    }

    /// Posterior mean, by a Cholesky solve of `precision * theta = xu_accum`.
    pub fn mean(&self) -> Result<UtilityParams> {
        let chol = self.factor()?;
        UtilityParams::new(self.mean_vector(&chol).iter().copied().collect())
    }

    /// One Thompson draw `mean + L^-T g`, where `precision = L L^T` and `g ~ N(0, I)`,
    /// so the draw has covariance `precision^-1`.
    pub fn sample(&self, rng: &mut RandomStream) -> Result<UtilityParams> {
        let chol = self.factor()?;
        let mean = self.mean_vector(&chol);
        let g = DVector::from_fn(self.dim, |_, _| rng.gaussian());
        let offset = chol
            .l()
            .transpose()
            .solve_upper_triangular(&g)
            .ok_or(EvoError::NotPositiveDefinite)?;
        UtilityParams::new((mean + offset).iter().copied().collect())
    }
}

/// One noisy measurement `<theta*, x> + sigma * g`.
pub fn noisy_evaluate(
    theta_star: &UtilityParams,
    x: &MotifVector,
    sigma: f64,
    rng: &mut RandomStream,
) -> Result<f64> {
    if theta_star.dim() != x.dim() {
        return Err(EvoError::DimensionMismatch {
            expected: theta_star.dim(),
            found: x.dim(),
        });
    }
    if !(sigma.is_finite() && sigma > 0.0) {
        return Err(EvoError::InvalidPrior {
            lambda: f64::NAN,
            sigma,
        });
    }
    Ok(dot(theta_star, x) + sigma * rng.gaussian())
}

/// i.i.d. `N(0, 1/lambda)` weights.
pub fn sample_prior_theta(
    dim: usize,
    prior: PriorSpec,
    rng: &mut RandomStream,
) -> Result<UtilityParams> {
    let scale = 1.0 / prior.lambda().sqrt();
    UtilityParams::new((0..dim).map(|_| scale * rng.gaussian()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn obs(bits: &[u8], u: f64) -> Observation {
        Observation::new(MotifVector::from_bits(bits).unwrap(), u).unwrap()
    }

    #[test]
    fn fresh_state_is_the_prior() {
        let s = PosteriorState::new(3, PriorSpec::new(1.0, 1.0).unwrap()).unwrap();
        assert_eq!(s.precision(), &DMatrix::identity(3, 3));
        assert_eq!(s.mean().unwrap().weights(), &[0.0, 0.0, 0.0]);
        assert_eq!(s.n_obs(), 0);
    }

    #[test]
    fn single_observation_closed_form() {
        let mut s = PosteriorState::new(2, PriorSpec::default()).unwrap();
        s.ingest(&[obs(&[1, 0], 1.0)]).unwrap();
        assert_eq!(
            s.precision(),
            &DMatrix::from_row_slice(2, 2, &[2.0, 0.0, 0.0, 1.0])
        );
        let m = s.mean().unwrap();
        assert!((m.weights()[0] - 0.5).abs() < 1e-15);
        assert_eq!(m.weights()[1], 0.0);
    }

    #[test]
    fn empty_batch_is_a_no_op() {
        let mut s = PosteriorState::new(2, PriorSpec::default()).unwrap();
        s.ingest(&[obs(&[1, 1], 0.3)]).unwrap();
        let before = s.clone();
        s.ingest(&[]).unwrap();
        assert_eq!(s.precision(), before.precision());
        assert_eq!(s.xu_accum(), before.xu_accum());
        assert_eq!(s.n_obs(), before.n_obs());
    }

    #[test]
    fn ingest_rejects_wrong_dimension_atomically() {
        let mut s = PosteriorState::new(2, PriorSpec::default()).unwrap();
        let err = s.ingest(&[obs(&[1, 1], 1.0), obs(&[1, 0, 1], 1.0)]);
        assert!(matches!(err, Err(EvoError::DimensionMismatch { .. })));
        assert_eq!(s.n_obs(), 0);
    }

    #[test]
    fn repeated_observation_shrinks_toward_zero() {
        // Unregularized least squares on x = (1, 0), u = 2 gives theta_0 = 2.
        let mut s = PosteriorState::new(2, PriorSpec::default()).unwrap();
        s.ingest(&vec![obs(&[1, 0], 2.0); 5]).unwrap();
        let m = s.mean().unwrap().weights()[0];
        assert!(m > 0.0 && m < 2.0);
        assert!((m - 10.0 / 6.0).abs() < 1e-12);
    }

    #[test]
    fn invalid_inputs() {
        assert!(PosteriorState::new(0, PriorSpec::default()).is_err());
        assert!(Observation::new(MotifVector::zeros(1).unwrap(), f64::INFINITY).is_err());
        let t = UtilityParams::new(vec![1.0]).unwrap();
        let x = MotifVector::ones(1).unwrap();
        let mut rng = RandomStream::new(0);
        assert!(noisy_evaluate(&t, &x, 0.0, &mut rng).is_err());
        let y = MotifVector::ones(2).unwrap();
        assert!(noisy_evaluate(&t, &y, 1.0, &mut rng).is_err());
    }

    #[test]
    fn tiny_noise_matches_fitness() {
        let t = UtilityParams::new(vec![0.7, -1.1, 2.5]).unwrap();
        let x = MotifVector::from_bits(&[1, 1, 1]).unwrap();
        let mut rng = RandomStream::new(4);
        let u = noisy_evaluate(&t, &x, 1e-9, &mut rng).unwrap();
        assert!((u - 2.1).abs() < 1e-6);
    }

    #[test]
    fn sampling_is_seeded() {
        let mut s = PosteriorState::new(3, PriorSpec::default()).unwrap();
        s.ingest(&[obs(&[1, 0, 1], 0.4), obs(&[0, 1, 1], -0.2)])
            .unwrap();
        let a = s.sample(&mut RandomStream::new(21)).unwrap();
        let b = s.sample(&mut RandomStream::new(21)).unwrap();
        assert_eq!(a, b);
    }
}

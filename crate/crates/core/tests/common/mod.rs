#![allow(dead_code)]

use evobandit_core::{MotifVector, Population, RandomStream, UtilityParams};

/// Sample mean and standard error of the mean.
pub fn mean_and_se(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

pub fn sample_variance(values: &[f64]) -> f64 {
    let (mean, _) = mean_and_se(values);
    values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (values.len() as f64 - 1.0)
}

/// `|estimate - expected| <= 3 se`.
pub fn within_3se(estimate: f64, expected: f64, se: f64) -> bool {
    (estimate - expected).abs() <= 3.0 * se
}

pub fn gaussian_theta(d: usize, rng: &mut RandomStream) -> UtilityParams {
    UtilityParams::new((0..d).map(|_| rng.gaussian()).collect()).unwrap()
}

/// Members with independent fair-coin bits; duplicates allowed.
pub fn random_population(d: usize, m: usize, rng: &mut RandomStream) -> Population {
    Population::new(
        (0..m)
            .map(|_| MotifVector::from_bools((0..d).map(|_| rng.coin())).unwrap())
            .collect(),
    )
    .unwrap()
}

/// Members drawn without replacement from the cube; requires `m <= 2^d`.
pub fn distinct_population(d: usize, m: usize, rng: &mut RandomStream) -> Population {
    assert!(m <= 1 << d);
    let mut members: Vec<MotifVector> = Vec::with_capacity(m);
    while members.len() < m {
        let x = MotifVector::from_bools((0..d).map(|_| rng.coin())).unwrap();
        if !members.contains(&x) {
            members.push(x);
        }
    }
    Population::new(members).unwrap()
}

pub fn relative_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

/// `||a - b|| <= tol * max(||a||, ||b||, 1e-300)`.
pub fn vec_relative_close(a: &[f64], b: &[f64], tol: f64) -> bool {
    let diff: f64 = a
        .iter()
        .zip(b)
        .map(|(x, y)| (x - y).powi(2))
        .sum::<f64>()
        .sqrt();
    let na: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let nb: f64 = b.iter().map(|x| x * x).sum::<f64>().sqrt();
    diff <= tol * na.max(nb).max(1e-300)
}

/// Like [`within_3se`], plus float-summation slack for degenerate (zero-variance) cases.
pub fn agrees_3se(estimate: f64, expected: f64, se: f64) -> bool {
    (estimate - expected).abs() <= 3.0 * se + 1e-9 * expected.abs().max(1.0)
}

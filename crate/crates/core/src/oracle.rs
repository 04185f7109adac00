//! Brute-force reference computations.
//!
//! Everything here enumerates or solves directly with naive loops and shares no
//! code with the production routines beyond the data types. Tests and the
//! `verify` command compare production output against these.

// Explicit index loops keep the linear algebra readable next to the math.
#![allow(clippy::needless_range_loop)]

use crate::bayes::Observation;
use crate::error::{EvoError, Result};
use crate::motif::{MotifVector, Population};
use crate::utility::{PriorSpec, UtilityParams};

pub const MAX_SELECTION_DIM: usize = 14;
pub const MAX_SELECTION_POPULATION: usize = 12;
pub const MAX_EXHAUSTIVE_DIM: usize = 20;

fn score(theta: &[f64], bits: &[u8]) -> f64 {
    let mut total = 0.0;
    for i in 0..theta.len() {
        if bits[i] == 1 {
            total += theta[i];
        }
    }
    total
}

/// Acceptance behavior of one ordered parent pair.
#[derive(Debug, Clone, PartialEq)]
pub struct PairBreakdown {
    pub first: usize,
    pub second: usize,
    /// Probability that a child of this pair passes selection.
    pub acceptance_probability: f64,
    /// Mean fitness of a child of this pair given that it passed.
    pub accepted_mean: f64,
}

/// Exact law of one accepted child under resample-on-reject selection.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactSelectionStats {
    pub expected_accepted_fitness: f64,
    pub acceptance_probability: f64,
    pub pairs: Vec<PairBreakdown>,
}

/// Enumerates every ordered parent pair (weight `1/M^2`) and every crossover
/// outcome over the sites where the parents differ (weight `2^-k`), and returns
/// `E[f(z) 1{accept}] / P(accept)`.
pub fn exact_crossover_selection_mean(
    theta: &UtilityParams,
    s: &Population,
) -> Result<ExactSelectionStats> {
    let d = theta.dim();
    let m = s.size();
    if s.dim() != d {
        return Err(EvoError::DimensionMismatch {
            expected: d,
            found: s.dim(),
        });
    }
    if d > MAX_SELECTION_DIM || m > MAX_SELECTION_POPULATION {
        return Err(EvoError::TooLarge(format!(
            "selection oracle supports d <= {MAX_SELECTION_DIM}, M <= {MAX_SELECTION_POPULATION} (got d={d}, M={m})"
        )));
    }
    let w = theta.weights();
    let members = s.members();
    let pair_weight = 1.0 / (m * m) as f64;

    let mut accepted_mass = 0.0;
    let mut accepted_fitness_mass = 0.0;
    let mut pairs = Vec::with_capacity(m * m);
    for a in 0..m {
        for b in 0..m {
            let x = members[a].bits();
            let y = members[b].bits();
            let fx = score(w, x);
            let fy = score(w, y);
            let threshold = (fx + fy) / 2.0;
            let differing: Vec<usize> = (0..d).filter(|&i| x[i] != y[i]).collect();
            let outcomes = 1usize << differing.len();
            let outcome_weight = 1.0 / outcomes as f64;

            let mut pass = 0.0;
            let mut pass_fitness = 0.0;
            let mut child = x.to_vec();
            for mask in 0..outcomes {
                for (k, &site) in differing.iter().enumerate() {
                    child[site] = if mask >> k & 1 == 1 { y[site] } else { x[site] };
                }
                let fz = score(w, &child);
                if fz >= threshold {
                    pass += outcome_weight;
                    pass_fitness += outcome_weight * fz;
                }
            }
            accepted_mass += pair_weight * pass;
            accepted_fitness_mass += pair_weight * pass_fitness;
            pairs.push(PairBreakdown {
                first: a,
                second: b,
                acceptance_probability: pass,
                accepted_mean: if pass > 0.0 {
                    pass_fitness / pass
                } else {
                    f64::NAN
                },
            });
        }
    }
    Ok(ExactSelectionStats {
        expected_accepted_fitness: accepted_fitness_mass / accepted_mass,
        acceptance_probability: accepted_mass,
        pairs,
    })
}

/// Scans all of `{0,1}^d`. Among maximizers the lexicographically largest wins,
/// which sets every zero-weight site to 1.
pub fn exhaustive_optimum(theta: &UtilityParams) -> Result<(f64, MotifVector)> {
    let d = theta.dim();
    if d > MAX_EXHAUSTIVE_DIM {
        return Err(EvoError::TooLarge(format!(
            "exhaustive optimum supports d <= {MAX_EXHAUSTIVE_DIM} (got {d})"
        )));
    }
    let w = theta.weights();
    let mut bits = vec![0u8; d];
    let mut best_value = f64::NEG_INFINITY;
    let mut best = bits.clone();
    for code in 0u64..(1u64 << d) {
        // Site 0 is the most significant bit so that counting up is lexicographic order.
        for (i, b) in bits.iter_mut().enumerate() {
            *b = (code >> (d - 1 - i) & 1) as u8;
        }
        let v = score(w, &bits);
        if v >= best_value {
            best_value = v;
            best.copy_from_slice(&bits);
        }
    }
    Ok((best_value, MotifVector::from_bits(&best)?))
}

/// Ridge posterior from materialized `Phi` and `U`:
/// returns `((Phi^T Phi + sigma^2 lambda I)^-1 Phi^T U, sigma^-2 Phi^T Phi + lambda I)`.
pub fn dense_ridge(
    data: &[Observation],
    d: usize,
    prior: PriorSpec,
) -> Result<(UtilityParams, Vec<Vec<f64>>)> {
    if d == 0 {
        return Err(EvoError::ZeroDimension);
    }
    if let Some(bad) = data.iter().find(|o| o.x.dim() != d) {
        return Err(EvoError::DimensionMismatch {
            expected: d,
            found: bad.x.dim(),
        });
    }
    let phi: Vec<Vec<f64>> = data
        .iter()
        .map(|o| o.x.bits().iter().map(|&b| f64::from(b)).collect())
        .collect();
    let u: Vec<f64> = data.iter().map(|o| o.u).collect();

    let mut gram = vec![vec![0.0; d]; d];
    for row in &phi {
        for i in 0..d {
            for j in 0..d {
                gram[i][j] += row[i] * row[j];
            }
        }
    }
    let mut rhs = vec![0.0; d];
    for (row, &ui) in phi.iter().zip(&u) {
        for i in 0..d {
            rhs[i] += row[i] * ui;
        }
    }

    let (lambda, sigma) = (prior.lambda(), prior.sigma());
    let s2 = sigma * sigma;
    let mut system = gram.clone();
    for (i, row) in system.iter_mut().enumerate() {
        row[i] += s2 * lambda;
    }
    let mean = gauss_solve(system, rhs)?;

    let mut precision = gram;
    for (i, row) in precision.iter_mut().enumerate() {
        for v in row.iter_mut() {
            *v /= s2;
        }
        row[i] += lambda;
    }
    Ok((UtilityParams::new(mean)?, precision))
}

/// Gaussian elimination with partial pivoting.
fn gauss_solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Result<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .expect("nonempty range");
        if a[pivot][col].abs() < 1e-300 {
            return Err(EvoError::NotPositiveDefinite);
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..n {
            let factor = a[row][col] / a[col][col];
            if factor == 0.0 {
                continue;
            }
            for k in col..n {
                a[row][k] -= factor * a[col][k];
            }
            b[row] -= factor * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let tail: f64 = (row + 1..n).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - tail) / a[row][row];
    }
    Ok(x)
}

/// Inverse of a small dense matrix by Gauss-Jordan elimination.
pub fn dense_inverse(a: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    let n = a.len();
    let mut columns = vec![vec![0.0; n]; n];
    for (j, column) in columns.iter_mut().enumerate() {
        let mut e = vec![0.0; n];
        e[j] = 1.0;
        *column = gauss_solve(a.to_vec(), e)?;
    }
    Ok((0..n)
        .map(|i| (0..n).map(|j| columns[j][i]).collect())
        .collect())
}

/// The two ascent lower bounds for one round of crossover-then-selection:
/// `E_{x,y}[ ||theta . (x - y)|| ] / (2 sqrt 2)` over ordered pairs drawn with
/// replacement, and `(1 / sqrt(2d)) sum_i |theta_i| Var_i(S)`. The first always
/// dominates the second.
pub fn ascent_lower_bounds(theta: &UtilityParams, s: &Population) -> Result<(f64, f64)> {
    let d = theta.dim();
    if s.dim() != d {
        return Err(EvoError::DimensionMismatch {
            expected: d,
            found: s.dim(),
        });
    }
    let w = theta.weights();
    let members = s.members();
    let m = members.len();

    let mut norm_sum = 0.0;
    for x in members {
        for y in members {
            let mut sq = 0.0;
            for i in 0..d {
                let diff = w[i] * (f64::from(x.get(i)) - f64::from(y.get(i)));
                sq += diff * diff;
            }
            norm_sum += sq.sqrt();
        }
    }
    let expected_norm = norm_sum / (m * m) as f64;

    let mut weighted_variance = 0.0;
    for i in 0..d {
        let ones = members.iter().filter(|x| x.get(i) == 1).count() as f64;
        let q = ones / m as f64;
        weighted_variance += w[i].abs() * q * (1.0 - q);
    }
    Ok((
        expected_norm / (2.0 * 2f64.sqrt()),
        weighted_variance / (2.0 * d as f64).sqrt(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn theta(v: &[f64]) -> UtilityParams {
        UtilityParams::new(v.to_vec()).unwrap()
    }

    #[test]
    fn worked_selection_instance() {
        let s = Population::from_rows(&[&[0, 0], &[1, 1]]).unwrap();
        let stats = exact_crossover_selection_mean(&theta(&[1.0, 1.0]), &s).unwrap();
        assert!((stats.expected_accepted_fitness - 8.0 / 7.0).abs() < 1e-12);
        assert!((stats.acceptance_probability - 7.0 / 8.0).abs() < 1e-12);
        let mixed = &stats.pairs[1];
        assert_eq!((mixed.first, mixed.second), (0, 1));
        assert!((mixed.acceptance_probability - 0.75).abs() < 1e-15);
        assert!((mixed.accepted_mean - 4.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn constant_population_selection() {
        let t = theta(&[0.2, -0.9, 1.4]);
        let s = Population::uniform_copies(MotifVector::from_bits(&[1, 1, 0]).unwrap(), 4).unwrap();
        let stats = exact_crossover_selection_mean(&t, &s).unwrap();
        assert_eq!(stats.acceptance_probability, 1.0);
        assert!((stats.expected_accepted_fitness - (0.2 - 0.9)).abs() < 1e-15);
        assert_eq!(ascent_lower_bounds(&t, &s).unwrap(), (0.0, 0.0));
    }

    #[test]
    fn selection_oracle_size_limits() {
        let t = UtilityParams::new(vec![1.0; 15]).unwrap();
        let s = Population::zeros(15, 2).unwrap();
        assert!(matches!(
            exact_crossover_selection_mean(&t, &s),
            Err(EvoError::TooLarge(_))
        ));
        let t = theta(&[1.0]);
        let s = Population::zeros(1, 13).unwrap();
        assert!(exact_crossover_selection_mean(&t, &s).is_err());
    }

    #[test]
    fn exhaustive_optimum_examples() {
        let (v, x) = exhaustive_optimum(&theta(&[1.0, -2.0, 3.0])).unwrap();
        assert_eq!(v, 4.0);
        assert_eq!(x.bits(), &[1, 0, 1]);
        let (v, x) = exhaustive_optimum(&theta(&[0.0, 0.0, 0.0])).unwrap();
        assert_eq!(v, 0.0);
        assert_eq!(x.bits(), &[1, 1, 1]);
        assert!(exhaustive_optimum(&UtilityParams::new(vec![1.0; 21]).unwrap()).is_err());
    }

    #[test]
    fn dense_ridge_examples() {
        let prior = PriorSpec::new(3.0, 2.0).unwrap();
        let (mean, precision) = dense_ridge(&[], 2, prior).unwrap();
        assert_eq!(mean.weights(), &[0.0, 0.0]);
        assert_eq!(precision, vec![vec![3.0, 0.0], vec![0.0, 3.0]]);

        let data = [Observation::new(MotifVector::from_bits(&[1, 0]).unwrap(), 1.0).unwrap()];
        let (mean, precision) = dense_ridge(&data, 2, PriorSpec::default()).unwrap();
        assert!((mean.weights()[0] - 0.5).abs() < 1e-15);
        assert_eq!(mean.weights()[1], 0.0);
        assert_eq!(precision, vec![vec![2.0, 0.0], vec![0.0, 1.0]]);
    }

    #[test]
    fn dense_inverse_of_diagonal() {
        let inv = dense_inverse(&[vec![2.0, 0.0], vec![0.0, 4.0]]).unwrap();
        assert_eq!(inv, vec![vec![0.5, 0.0], vec![0.0, 0.25]]);
    }

    #[test]
    fn ascent_bounds_worked_instance() {
        let s = Population::from_rows(&[&[0, 0], &[1, 1]]).unwrap();
        let (first, second) = ascent_lower_bounds(&theta(&[1.0, 1.0]), &s).unwrap();
        assert!((first - 0.25).abs() < 1e-12);
        assert!((second - 0.25).abs() < 1e-12);
    }
}

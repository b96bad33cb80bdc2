//! Closed-form ridge regression of labels on fixed features, and the
//! identity tying its minimum to the LDA trace objective.

use crate::dataset::one_hot;
use crate::error::{Error, Result};
use crate::linalg::{solve_spd, DenseMatrix};
use crate::scatter::{label_whiten, trace_ratio};

#[derive(Debug, Clone, PartialEq)]
pub struct RegressionSolution {
    /// `r × c`.
    pub weights: DenseMatrix,
    pub bias: Vec<f64>,
    /// `‖FᵀW + 1bᵀ − Y‖² + μ‖W‖²` at the optimum.
    pub objective: f64,
}

/// `‖FᵀW + 1bᵀ − Y‖² + μ‖W‖²` for arbitrary `(W, b)`.
pub fn regression_objective(
    features: &DenseMatrix,
    targets: &DenseMatrix,
    weights: &DenseMatrix,
    bias: &[f64],
    mu: f64,
) -> f64 {
    let mut fit = features.t_matmul(weights);
    for i in 0..fit.rows() {
        fit.row_mut(i)
            .iter_mut()
            .zip(bias)
            .for_each(|(v, b)| *v += b);
    }
    fit.sub(targets).frobenius_norm_sq() + mu * weights.frobenius_norm_sq()
}

/// Minimizes the ridge objective over `W` (r × c) and an unpenalized bias:
/// `W* = (FHFᵀ + μI)⁻¹ FHY`, `b* = mean(Y) − W*ᵀ mean(F)`.
pub fn closed_form_regression(
    features: &DenseMatrix,
    targets: &DenseMatrix,
    mu: f64,
) -> Result<RegressionSolution> {
    if features.cols() != targets.rows() {
        return Err(Error::Dimension(format!(
            "{} feature columns but {} target rows",
            features.cols(),
            targets.rows()
        )));
    }
    if !(mu >= 0.0) || !mu.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "mu must be finite and non-negative, got {mu}"
        )));
    }
    let centered = features.center_rows();
    let gram = centered.matmul_t(&centered).symmetrize().add_diagonal(mu);
    let rhs = centered.matmul(targets);
    let weights = solve_spd(&gram, &rhs).map_err(|e| match e {
        Error::NotPositiveDefinite { pivot, value } => Error::Singular(format!(
            "FHFᵀ + μI is singular (pivot {pivot} = {value:e}); use mu > 0"
        )),
        other => other,
    })?;
    let feature_means = features.row_means();
    let bias: Vec<f64> = targets
        .column_means()
        .iter()
        .enumerate()
        .map(|(k, m)| {
            m - (0..weights.rows())
                .map(|j| weights[(j, k)] * feature_means[j])
                .sum::<f64>()
        })
        .collect();
    let objective = regression_objective(features, targets, &weights, &bias, mu);
    Ok(RegressionSolution {
        weights,
        bias,
        objective,
    })
}

/// `|J*(Ỹ) + Tr((S_t+μI)⁻¹S_b) − Tr(ỸᵀHỸ)|` for features `F` (r × n),
/// where `J*` is the ridge minimum against the whitened labels and
/// `S_b = FHỸỸᵀHFᵀ`. The sum of the first two terms is constant in `F`.
pub fn regression_trace_residual(
    features: &DenseMatrix,
    labels: &[usize],
    class_count: usize,
    mu: f64,
) -> Result<f64> {
    if !(mu > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "mu must be positive, got {mu}"
        )));
    }
    if labels.len() != features.cols() {
        return Err(Error::Dimension(format!(
            "{} feature columns but {} labels",
            features.cols(),
            labels.len()
        )));
    }
    let parts = objective_split(features, labels, class_count, mu)?;
    Ok((parts.regression_min + parts.trace - parts.constant).abs())
}

/// The three terms of the regression/trace identity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ObjectiveSplit {
    /// `J*(Ỹ)`.
    pub regression_min: f64,
    /// `Tr((S_t+μI)⁻¹S_b)`.
    pub trace: f64,
    /// `Tr(ỸᵀHỸ)`.
    pub constant: f64,
}

pub fn objective_split(
    features: &DenseMatrix,
    labels: &[usize],
    class_count: usize,
    mu: f64,
) -> Result<ObjectiveSplit> {
    let whitened = label_whiten(&one_hot(labels, class_count))?;
    let solution = closed_form_regression(features, &whitened, mu)?;
    let centered = features.center_rows();
    let s_t = centered.matmul_t(&centered).symmetrize();
    let fhy = centered.matmul(&whitened);
    let s_b = fhy.matmul_t(&fhy).symmetrize();
    let trace = trace_ratio(&s_t, &s_b, mu)?;
    let constant = whitened.transpose().center_rows().frobenius_norm_sq();
    Ok(ObjectiveSplit {
        regression_min: solution.objective,
        trace,
        constant,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded_rng;
    use rand::Rng;

    fn random_instance(seed: u64, r: usize, n: usize, c: usize) -> (DenseMatrix, Vec<usize>) {
        let mut rng = seeded_rng(seed);
        let labels: Vec<usize> = (0..n)
            .map(|i| if i < c { i } else { rng.random_range(0..c) })
            .collect();
        let f = DenseMatrix::from_fn(r, n, |i, j| {
            (labels[j] as f64 * (i as f64 + 1.0)).sin() + rng.random_range(-1.0..1.0)
        });
        (f, labels)
    }

    #[test]
    fn zero_features_predict_column_means() {
        let y = one_hot(&[0, 1, 1, 2, 1], 3);
        let sol = closed_form_regression(&DenseMatrix::zeros(2, 5), &y, 0.1).unwrap();
        assert_eq!(sol.weights, DenseMatrix::zeros(2, 3));
        assert_eq!(sol.bias, y.column_means());
        // n × Σ column variances
        let expected: f64 = [1.0, 3.0, 1.0]
            .iter()
            .map(|k: &f64| 5.0 * (k / 5.0) * (1.0 - k / 5.0))
            .sum();
        assert!((sol.objective - expected).abs() < 1e-12);
    }

    #[test]
    fn interpolation_reaches_zero() {
        let f = DenseMatrix::from_rows(&[[1.0, 2.0, 3.0, 4.0], [0.5, -1.0, 2.0, 0.0]]).unwrap();
        let w = DenseMatrix::from_rows(&[[1.0, -2.0], [0.5, 3.0]]).unwrap();
        let mut y = f.t_matmul(&w);
        for i in 0..4 {
            y.row_mut(i)[0] += 0.25;
        }
        let sol = closed_form_regression(&f, &y, 0.0).unwrap();
        assert!(sol.objective < 1e-20, "{}", sol.objective);
        assert!(sol.weights.relative_diff(&w) < 1e-10);
    }

    #[test]
    fn singular_without_ridge() {
        let f = DenseMatrix::from_rows(&[[1.0, 1.0, 1.0], [2.0, 2.0, 2.0]]).unwrap();
        let y = one_hot(&[0, 1, 0], 2);
        assert!(matches!(
            closed_form_regression(&f, &y, 0.0),
            Err(Error::Singular(_))
        ));
        assert!(closed_form_regression(&f, &y, 1e-3).is_ok());
        assert!(closed_form_regression(&f, &one_hot(&[0, 1], 2), 1e-3).is_err());
    }

    #[test]
    fn optimum_beats_random_probes() {
        let (f, labels) = random_instance(1, 4, 30, 3);
        let y = one_hot(&labels, 3);
        let mu = 0.3;
        let sol = closed_form_regression(&f, &y, mu).unwrap();
        let mut rng = seeded_rng(2);
        for scale in [1.0, 0.1, 0.01] {
            for _ in 0..34 {
                let w = sol.weights.map(|v| v + scale * rng.random_range(-1.0..1.0));
                let b: Vec<f64> = sol
                    .bias
                    .iter()
                    .map(|v| v + scale * rng.random_range(-1.0..1.0))
                    .collect();
                assert!(sol.objective <= regression_objective(&f, &y, &w, &b, mu));
            }
        }
    }

    #[test]
    fn identity_holds_on_random_instances() {
        for seed in 0..100u64 {
            let mut rng = seeded_rng(1000 + seed);
            let c = rng.random_range(2..=10);
            let r = rng.random_range(1..=16);
            let n = rng.random_range(c + 1..=200);
            let (f, labels) = random_instance(seed, r, n, c);
            let res = regression_trace_residual(&f, &labels, c, 0.0005).unwrap();
            assert!(res <= 1e-8, "seed {seed}: {res}");
        }
    }

    #[test]
    fn identity_degenerate_cases() {
        let (_, labels) = random_instance(3, 3, 20, 4);
        assert!(
            regression_trace_residual(&DenseMatrix::zeros(3, 20), &labels, 4, 0.0005).unwrap()
                <= 1e-12
        );
        let (f, _) = random_instance(4, 3, 20, 1);
        let split = objective_split(&f, &[0; 20], 1, 0.0005).unwrap();
        assert!(split.trace.abs() < 1e-12);
        assert!(regression_trace_residual(&f, &[0; 20], 1, 0.0005).unwrap() <= 1e-12);
        assert!(regression_trace_residual(&f, &[0; 20], 1, 0.0).is_err());
    }

    #[test]
    fn perturbing_features_trades_regression_for_trace() {
        let (f, labels) = random_instance(5, 6, 80, 4);
        let mu = 0.0005;
        let base = objective_split(&f, &labels, 4, mu).unwrap();
        let mut rng = seeded_rng(6);
        for _ in 0..10 {
            let g = f.map(|v| v + 0.3 * rng.random_range(-1.0..1.0));
            let moved = objective_split(&g, &labels, 4, mu).unwrap();
            let d_reg = moved.regression_min - base.regression_min;
            let d_trace = moved.trace - base.trace;
            assert!((d_reg + d_trace).abs() <= 1e-8, "{d_reg} vs {d_trace}");
            assert_eq!(moved.constant, base.constant);
        }
    }
}

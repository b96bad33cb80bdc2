//! Within-, between- and total-class scatter matrices.
//!
//! Two independent routes are provided: per-class sums over items
//! ([`scatter_direct`]) and products with `n × n` indicator matrices
//! ([`scatter_matrixform`]). The latter is quadratic in the item count and
//! meant for cross-checking on small sets.

use crate::dataset::{count_classes, one_hot, LabeledDataset};
use crate::error::{Error, Result};
use crate::linalg::{solve_spd, sym_inv_sqrt, DenseMatrix};

/// Default ridge added to the total scatter before inversion.
pub const DEFAULT_MU: f64 = 0.0005;

#[derive(Debug, Clone, PartialEq)]
pub struct ScatterSet {
    pub s_w: DenseMatrix,
    pub s_b: DenseMatrix,
    pub s_t: DenseMatrix,
    pub mu: f64,
}

impl ScatterSet {
    /// `max|S_t − S_w − S_b|` relative to `‖S_t‖_max`.
    pub fn additivity_residual(&self) -> f64 {
        self.s_t.relative_diff(&self.s_w.add(&self.s_b))
    }

    /// Largest entrywise gap between corresponding matrices of two scatter
    /// sets, relative to the larger `‖S_t‖_max`. `S_w` and `S_b` are both
    /// bounded by `S_t`, so this stays meaningful when `S_b` vanishes.
    pub fn max_relative_diff(&self, other: &ScatterSet) -> f64 {
        let scale = self.s_t.max_abs().max(other.s_t.max_abs());
        let gap = [
            (&self.s_w, &other.s_w),
            (&self.s_b, &other.s_b),
            (&self.s_t, &other.s_t),
        ]
        .iter()
        .map(|(a, b)| a.sub(b).max_abs())
        .fold(0.0, f64::max);
        if scale == 0.0 {
            gap
        } else {
            gap / scale
        }
    }
}

fn check_mu(mu: f64) -> Result<()> {
    if !(mu >= 0.0) || !mu.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "mu must be finite and non-negative, got {mu}"
        )));
    }
    Ok(())
}

fn check_labels(x: &DenseMatrix, labels: &[usize], class_count: usize) -> Result<Vec<usize>> {
    if labels.len() != x.cols() {
        return Err(Error::Dimension(format!(
            "{} items but {} labels",
            x.cols(),
            labels.len()
        )));
    }
    let sizes = count_classes(labels, class_count)?;
    if let Some(empty) = sizes.iter().position(|&s| s == 0) {
        return Err(Error::InvalidDataset(format!("class {empty} has no items")));
    }
    Ok(sizes)
}

/// Per-class means as columns (d × c).
pub fn class_means(x: &DenseMatrix, labels: &[usize], class_count: usize) -> Result<DenseMatrix> {
    let sizes = check_labels(x, labels, class_count)?;
    let mut means = DenseMatrix::zeros(x.rows(), class_count);
    for i in 0..x.rows() {
        let row = x.row(i);
        let out = means.row_mut(i);
        for (v, &l) in row.iter().zip(labels) {
            out[l] += v;
        }
        for (o, &s) in out.iter_mut().zip(&sizes) {
            *o /= s as f64;
        }
    }
    Ok(means)
}

/// Scatter matrices from per-class sums:
/// `S_w = Σ_i Σ_{x∈i} (x − x̄_i)(x − x̄_i)ᵀ`, `S_b = Σ_i n_i (x̄_i − x̄)(x̄_i − x̄)ᵀ`,
/// and `S_t = S_w + S_b`.
pub fn scatter_direct(data: &LabeledDataset, mu: f64) -> Result<ScatterSet> {
    check_mu(mu)?;
    let x = data.features();
    let labels = data.labels();
    let c = data.class_count();
    let sizes = data.class_sizes();
    let means = class_means(x, labels, c)?;
    let global = x.row_means();
    let d = x.rows();

    let mut within_centered = x.clone();
    for i in 0..d {
        let m = means.row(i).to_vec();
        for (v, &l) in within_centered.row_mut(i).iter_mut().zip(labels) {
            *v -= m[l];
        }
    }
    let s_w = within_centered.matmul_t(&within_centered).symmetrize();

    let mut s_b = DenseMatrix::zeros(d, d);
    for k in 0..c {
        let diff: Vec<f64> = (0..d).map(|i| means[(i, k)] - global[i]).collect();
        let w = sizes[k] as f64;
        for i in 0..d {
            let row = s_b.row_mut(i);
            for j in 0..d {
                row[j] += w * diff[i] * diff[j];
            }
        }
    }

    let s_t = s_w.add(&s_b);
    Ok(ScatterSet { s_w, s_b, s_t, mu })
}

/// `Aᵗ = 11ᵀ/n`, `Aʷ` (1/n_c within each class block) and the centering
/// matrix `H = I − Aᵗ`.
#[derive(Debug, Clone)]
pub struct IndicatorMatrices {
    pub total: DenseMatrix,
    pub within: DenseMatrix,
    pub centering: DenseMatrix,
}

pub fn indicator_matrices(labels: &[usize], class_count: usize) -> Result<IndicatorMatrices> {
    let n = labels.len();
    if n == 0 {
        return Err(Error::InvalidDataset("no items".into()));
    }
    let sizes = count_classes(labels, class_count)?;
    if let Some(empty) = sizes.iter().position(|&s| s == 0) {
        return Err(Error::InvalidDataset(format!("class {empty} has no items")));
    }
    let total = DenseMatrix::from_fn(n, n, |_, _| 1.0 / n as f64);
    let within = DenseMatrix::from_fn(n, n, |i, j| {
        if labels[i] == labels[j] {
            1.0 / sizes[labels[i]] as f64
        } else {
            0.0
        }
    });
    let centering = DenseMatrix::identity(n).sub(&total);
    Ok(IndicatorMatrices {
        total,
        within,
        centering,
    })
}

/// Scatter matrices through the indicator-matrix products:
/// `S_w = X(I−Aʷ)(I−Aʷ)ᵀXᵀ`, `S_t = X(I−Aᵗ)(I−Aᵗ)ᵀXᵀ`,
/// `S_b = XHY(YᵀY)⁻¹YᵀHXᵀ`.
pub fn scatter_matrixform(
    x: &DenseMatrix,
    labels: &[usize],
    class_count: usize,
    mu: f64,
) -> Result<ScatterSet> {
    check_mu(mu)?;
    let sizes = check_labels(x, labels, class_count)?;
    let ind = indicator_matrices(labels, class_count)?;
    let n = labels.len();
    let eye = DenseMatrix::identity(n);

    let within_proj = x.matmul(&eye.sub(&ind.within));
    let s_w = within_proj.matmul_t(&within_proj).symmetrize();
    let total_proj = x.matmul(&eye.sub(&ind.total));
    let s_t = total_proj.matmul_t(&total_proj).symmetrize();

    let xhy = x
        .matmul(&ind.centering)
        .matmul(&one_hot(labels, class_count));
    let mut scaled = xhy.clone();
    for i in 0..scaled.rows() {
        for (v, &s) in scaled.row_mut(i).iter_mut().zip(&sizes) {
            *v /= s as f64;
        }
    }
    let s_b = scaled.matmul_t(&xhy).symmetrize();
    Ok(ScatterSet { s_w, s_b, s_t, mu })
}

/// The three successive forms of the between-class scatter:
/// `X(Aʷ−Aᵗ)Xᵀ`, `XHAʷHXᵀ` and `XHY(YᵀY)⁻¹YᵀHXᵀ`.
pub fn between_chain(
    x: &DenseMatrix,
    labels: &[usize],
    class_count: usize,
) -> Result<[DenseMatrix; 3]> {
    let sizes = check_labels(x, labels, class_count)?;
    let ind = indicator_matrices(labels, class_count)?;
    let diff_form = x.matmul(&ind.within.sub(&ind.total)).matmul_t(x);
    let xh = x.matmul(&ind.centering);
    let centered_form = xh.matmul(&ind.within).matmul_t(&xh);
    let y = one_hot(labels, class_count);
    let inv_counts =
        DenseMatrix::from_diag(&sizes.iter().map(|&s| 1.0 / s as f64).collect::<Vec<_>>());
    let xhy = xh.matmul(&y);
    let label_form = xhy.matmul(&inv_counts).matmul_t(&xhy);
    Ok([diff_form, centered_form, label_form])
}

/// Between-class scatter with the plain one-hot labels, `XHYYᵀHXᵀ`, which
/// weights each class by `n_i²` instead of `n_i`.
pub fn plain_label_between(
    x: &DenseMatrix,
    labels: &[usize],
    class_count: usize,
) -> Result<DenseMatrix> {
    check_labels(x, labels, class_count)?;
    let xhy = x.center_rows().matmul(&one_hot(labels, class_count));
    Ok(xhy.matmul_t(&xhy).symmetrize())
}

/// `Ỹ = Y(YᵀY)^(-1/2)`: each one-hot column scaled by `n_j^(-1/2)`.
pub fn label_whiten(y: &DenseMatrix) -> Result<DenseMatrix> {
    let mut counts = vec![0.0f64; y.cols()];
    for i in 0..y.rows() {
        let row = y.row(i);
        if row.iter().any(|&v| v != 0.0 && v != 1.0) || row.iter().sum::<f64>() != 1.0 {
            return Err(Error::InvalidParameter(format!(
                "label row {i} is not one-hot"
            )));
        }
        for (c, v) in counts.iter_mut().zip(row) {
            *c += v;
        }
    }
    if let Some(empty) = counts.iter().position(|&c| c == 0.0) {
        return Err(Error::Singular(format!(
            "YᵀY is singular: class {empty} is empty"
        )));
    }
    let scale: Vec<f64> = counts.iter().map(|c| 1.0 / c.sqrt()).collect();
    let mut out = y.clone();
    for i in 0..out.rows() {
        for (v, s) in out.row_mut(i).iter_mut().zip(&scale) {
            *v *= s;
        }
    }
    Ok(out)
}

/// `Tr((S_t + μI)⁻¹ S_b)`.
pub fn trace_ratio(s_t: &DenseMatrix, s_b: &DenseMatrix, mu: f64) -> Result<f64> {
    check_mu(mu)?;
    let regularized = s_t.add_diagonal(mu);
    let solved = solve_spd(&regularized, s_b).map_err(|e| match e {
        Error::NotPositiveDefinite { pivot, value } => Error::Singular(format!(
            "S_t + μI is not positive definite (pivot {pivot} = {value:e}); increase mu"
        )),
        other => other,
    })?;
    Ok(solved.trace())
}

/// The regularized LDA trace objective `Tr((S_t + μI)⁻¹ S_b)`.
pub fn lda_trace(scatters: &ScatterSet) -> Result<f64> {
    trace_ratio(&scatters.s_t, &scatters.s_b, scatters.mu)
}

#[derive(Debug, Clone, PartialEq)]
pub struct FrobeniusForm {
    pub total: f64,
    pub per_class: Vec<f64>,
}

/// The trace objective written as `‖(S_t+μI)^(-1/2) X H L‖_F²` for
/// `L = Y` (per-class weight `n_i²`) or `L = Ỹ` (weight `n_i`), together
/// with its per-class decomposition `w_i ‖(S_t+μI)^(-1/2)(x̄_i − x̄)‖²`.
pub fn frobenius_form(
    x: &DenseMatrix,
    labels: &[usize],
    class_count: usize,
    mu: f64,
    use_whitened: bool,
) -> Result<FrobeniusForm> {
    check_mu(mu)?;
    let sizes = check_labels(x, labels, class_count)?;
    let xh = x.center_rows();
    let s_t = xh.matmul_t(&xh).symmetrize();
    let whitener = sym_inv_sqrt(&s_t.add_diagonal(mu)).map_err(|e| match e {
        Error::NotPositiveDefinite { .. } => {
            Error::Singular("S_t + μI is not positive definite; increase mu".into())
        }
        other => other,
    })?;

    let y = one_hot(labels, class_count);
    let targets = if use_whitened { label_whiten(&y)? } else { y };
    let total = whitener.matmul(&xh).matmul(&targets).frobenius_norm_sq();

    let means = class_means(x, labels, class_count)?;
    let global = x.row_means();
    let mut offsets = means.clone();
    for i in 0..offsets.rows() {
        offsets.row_mut(i).iter_mut().for_each(|v| *v -= global[i]);
    }
    let projected = whitener.matmul(&offsets);
    let per_class = (0..class_count)
        .map(|k| {
            let n = sizes[k] as f64;
            let weight = if use_whitened { n } else { n * n };
            let norm_sq: f64 = projected.column(k).iter().map(|v| v * v).sum();
            weight * norm_sq
        })
        .collect();
    Ok(FrobeniusForm { total, per_class })
}

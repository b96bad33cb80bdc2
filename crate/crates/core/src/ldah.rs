//! Linear LDA hashing: top generalized eigenvectors of `(S_w + μI, S_b)`,
//! a linear projection, and per-bit thresholds.

use serde::{Deserialize, Serialize};

use crate::codes::{sign_quantize, BinaryCodes};
use crate::dataset::LabeledDataset;
use crate::error::{Error, Result};
use crate::linalg::{
    backward_substitute_transposed, cholesky, forward_substitute, sym_eig, DenseMatrix,
};
use crate::scatter::scatter_direct;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearHashModel {
    /// `d × r`; columns are generalized eigenvectors normalized so that
    /// `wᵀ(S_w + μI)w = 1`.
    pub projection: DenseMatrix,
    /// Added to the projected value before taking the sign.
    pub thresholds: Vec<f64>,
    /// Generalized eigenvalues of the retained columns, descending.
    pub eigenvalues: Vec<f64>,
    pub mu: f64,
}

impl LinearHashModel {
    pub fn input_dim(&self) -> usize {
        self.projection.rows()
    }

    pub fn code_bits(&self) -> usize {
        self.projection.cols()
    }

    /// `WᵀX` (r × n), before thresholds.
    pub fn project(&self, x: &DenseMatrix) -> Result<DenseMatrix> {
        if x.rows() != self.input_dim() {
            return Err(Error::Dimension(format!(
                "model expects {} input dimensions, data has {}",
                self.input_dim(),
                x.rows()
            )));
        }
        Ok(self.projection.t_matmul(x))
    }
}

/// Generalized eigenpairs of `S_b w = λ (S_w + μI) w`, descending, via
/// Cholesky whitening `C = L⁻¹ S_b L⁻ᵀ`.
pub fn generalized_eigen(
    s_w: &DenseMatrix,
    s_b: &DenseMatrix,
    mu: f64,
) -> Result<(Vec<f64>, DenseMatrix)> {
    let l = cholesky(&s_w.add_diagonal(mu))?;
    let mut z = s_b.clone();
    forward_substitute(&l, &mut z);
    let mut c = z.transpose();
    forward_substitute(&l, &mut c);
    let eig = sym_eig(&c.symmetrize())?;
    let mut w = eig.eigenvectors;
    backward_substitute_transposed(&l, &mut w);
    Ok((eig.eigenvalues, w))
}

/// Fits a `bits`-bit linear LDA hash on the training set.
///
/// Thresholds are `t_j = −median_j`, where `median_j` is the element at
/// sorted position `⌊n/2⌋` of the projected training values, so each bit is
/// `+1` on at most `⌈n/2⌉` distinct training values.
pub fn fit_ldah(train: &LabeledDataset, bits: usize, mu: f64) -> Result<LinearHashModel> {
    let d = train.dim();
    if bits == 0 || bits > d {
        return Err(Error::Dimension(format!(
            "code length must be in 1..={d} for {d}-dimensional input, got {bits}"
        )));
    }
    if !(mu > 0.0) || !mu.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "mu must be positive for LDA hashing, got {mu}"
        )));
    }
    let scatters = scatter_direct(train, mu)?;
    if train.class_count() < 2 {
        log::warn!("single-class training set: between-class scatter is zero");
    }
    let (values, vectors) = generalized_eigen(&scatters.s_w, &scatters.s_b, mu)?;
    let projection = vectors.leading_columns(bits);
    let eigenvalues = values[..bits].to_vec();

    let projected = projection.t_matmul(train.features());
    let thresholds = (0..bits).map(|j| -median_upper(projected.row(j))).collect();
    Ok(LinearHashModel {
        projection,
        thresholds,
        eigenvalues,
        mu,
    })
}

fn median_upper(values: &[f64]) -> f64 {
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    sorted[sorted.len() / 2]
}

/// `sign(WᵀX + t)` with zero mapped to `+1`.
pub fn encode_linear(model: &LinearHashModel, x: &DenseMatrix) -> Result<BinaryCodes> {
    let mut values = model.project(x)?;
    for (j, t) in model.thresholds.iter().enumerate() {
        values.row_mut(j).iter_mut().for_each(|v| *v += t);
    }
    sign_quantize(&values)
}

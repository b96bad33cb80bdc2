//! Signed random projections: the data-independent baseline.

use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::codes::{sign_quantize, BinaryCodes};
use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;
use crate::rng::seeded_rng;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LshModel {
    /// `d × r`, standard normal entries.
    pub projection: DenseMatrix,
    pub seed: u64,
}

/// Draws the `d × r` Gaussian projection in row-major order from `seed`.
pub fn fit_lsh(d: usize, r: usize, seed: u64) -> Result<LshModel> {
    if d == 0 || r == 0 {
        return Err(Error::InvalidParameter(format!(
            "input dimension and code length must be positive, got d={d}, r={r}"
        )));
    }
    let mut rng = seeded_rng(seed);
    let projection = DenseMatrix::from_fn(d, r, |_, _| StandardNormal.sample(&mut rng));
    Ok(LshModel { projection, seed })
}

pub fn encode_lsh(model: &LshModel, x: &DenseMatrix) -> Result<BinaryCodes> {
    if x.rows() != model.projection.rows() {
        return Err(Error::Dimension(format!(
            "model expects {} input dimensions, data has {}",
            model.projection.rows(),
            x.rows()
        )));
    }
    sign_quantize(&model.projection.t_matmul(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn deterministic_per_seed() {
        assert_eq!(fit_lsh(5, 7, 3).unwrap(), fit_lsh(5, 7, 3).unwrap());
        assert_ne!(
            fit_lsh(5, 7, 3).unwrap().projection,
            fit_lsh(5, 7, 4).unwrap().projection
        );
        assert!(fit_lsh(0, 3, 1).is_err());
        assert!(fit_lsh(3, 0, 1).is_err());
    }

    #[test]
    fn entries_have_zero_mean() {
        let model = fit_lsh(100, 128, 11).unwrap();
        let mean = model.projection.as_slice().iter().sum::<f64>() / (100.0 * 128.0);
        assert!(mean.abs() < 0.05, "mean {mean}");
    }

    #[test]
    fn zero_input_maps_to_all_ones() {
        let model = fit_lsh(4, 9, 1).unwrap();
        let codes = encode_lsh(&model, &DenseMatrix::zeros(4, 3)).unwrap();
        for i in 0..3 {
            assert!(codes.signs(i).iter().all(|&s| s == 1));
        }
    }

    #[test]
    fn positive_scaling_does_not_change_codes() {
        let model = fit_lsh(6, 16, 2).unwrap();
        let x = DenseMatrix::from_fn(6, 5, |i, j| ((i * 7 + j * 3) % 5) as f64 - 2.0);
        let a = encode_lsh(&model, &x).unwrap();
        let b = encode_lsh(&model, &x.scale(2.0)).unwrap();
        assert_eq!(a.words(), b.words());
        assert!(encode_lsh(&model, &DenseMatrix::zeros(5, 1)).is_err());
    }

    #[test]
    fn orthogonal_pairs_collide_half_the_time() {
        // Per-bit agreement for vectors at angle θ is 1 − θ/π; θ = π/2 here.
        let d = 8;
        let pairs = 10_000;
        let mut rng = seeded_rng(99);
        let mut agree = 0usize;
        for p in 0..pairs {
            let u: Vec<f64> = (0..d).map(|_| rng.random_range(-1.0..1.0)).collect();
            let mut v: Vec<f64> = (0..d).map(|_| rng.random_range(-1.0..1.0)).collect();
            let uu: f64 = u.iter().map(|a| a * a).sum();
            let uv: f64 = u.iter().zip(&v).map(|(a, b)| a * b).sum();
            v.iter_mut().zip(&u).for_each(|(b, a)| *b -= uv / uu * a);
            let x = DenseMatrix::from_fn(d, 2, |i, j| if j == 0 { u[i] } else { v[i] });
            let model = fit_lsh(d, 1, p as u64).unwrap();
            let codes = encode_lsh(&model, &x).unwrap();
            if codes.bit(0, 0) == codes.bit(1, 0) {
                agree += 1;
            }
        }
        let rate = agree as f64 / pairs as f64;
        assert!((rate - 0.5).abs() <= 0.03, "agreement {rate}");
    }
}

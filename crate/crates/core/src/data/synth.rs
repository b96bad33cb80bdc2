use std::f64::consts::TAU;

use rand::Rng;
use rand_distr::StandardNormal;

use crate::dataset::LabeledDataset;
use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;
use crate::rng::seeded_rng;

/// `classes` isotropic unit-variance Gaussian blobs in `dim` dimensions whose
/// means lie uniformly on the sphere of radius `separation`. Items are
/// stored class by class.
pub fn gen_gaussian_clusters(
    seed: u64,
    classes: usize,
    per_class: usize,
    dim: usize,
    separation: f64,
) -> Result<LabeledDataset> {
    if classes < 2 {
        return Err(Error::InvalidParameter(format!(
            "need at least 2 classes, got {classes}"
        )));
    }
    if dim < 2 {
        return Err(Error::InvalidParameter(format!(
            "need at least 2 dimensions, got {dim}"
        )));
    }
    if per_class < 1 {
        return Err(Error::InvalidParameter("per_class must be ≥ 1".into()));
    }
    if !(separation > 0.0) || !separation.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "separation must be positive, got {separation}"
        )));
    }
    let mut rng = seeded_rng(seed);
    let mut means = Vec::with_capacity(classes);
    for _ in 0..classes {
        let dir = loop {
            let v: Vec<f64> = (0..dim).map(|_| rng.sample(StandardNormal)).collect();
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm > 1e-12 {
                break v
                    .into_iter()
                    .map(|x| x * separation / norm)
                    .collect::<Vec<_>>();
            }
        };
        means.push(dir);
    }
    let n = classes * per_class;
    let mut x = DenseMatrix::zeros(dim, n);
    let mut labels = Vec::with_capacity(n);
    for (k, mean) in means.iter().enumerate() {
        for i in 0..per_class {
            let col = k * per_class + i;
            for (r, m) in mean.iter().enumerate() {
                let noise: f64 = rng.sample(StandardNormal);
                x[(r, col)] = m + noise;
            }
            labels.push(k);
        }
    }
    LabeledDataset::new(x, labels, classes)
}

/// Two concentric rings in the plane: class 0 at radius 1, class 1 at
/// radius 3, with Gaussian radial noise of standard deviation `noise`.
pub fn gen_rings(seed: u64, per_class: usize, noise: f64) -> Result<LabeledDataset> {
    if !(noise >= 0.0) || !noise.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "noise must be ≥ 0, got {noise}"
        )));
    }
    if per_class < 1 {
        return Err(Error::InvalidParameter("per_class must be ≥ 1".into()));
    }
    let mut rng = seeded_rng(seed);
    let n = 2 * per_class;
    let mut x = DenseMatrix::zeros(2, n);
    let mut labels = Vec::with_capacity(n);
    for (k, radius) in [1.0, 3.0].into_iter().enumerate() {
        for i in 0..per_class {
            let col = k * per_class + i;
            let angle: f64 = rng.random_range(0.0..TAU);
            let jitter: f64 = rng.sample(StandardNormal);
            let r = radius + noise * jitter;
            x[(0, col)] = r * angle.cos();
            x[(1, col)] = r * angle.sin();
            labels.push(k);
        }
    }
    LabeledDataset::new(x, labels, 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_rejects_bad_parameters() {
        assert!(gen_gaussian_clusters(1, 3, 5, 4, 0.0).is_err());
        assert!(gen_gaussian_clusters(1, 1, 5, 4, 1.0).is_err());
        assert!(gen_gaussian_clusters(1, 3, 5, 1, 1.0).is_err());
    }

    #[test]
    fn gaussian_is_deterministic() {
        let a = gen_gaussian_clusters(9, 4, 10, 6, 5.0).unwrap();
        let b = gen_gaussian_clusters(9, 4, 10, 6, 5.0).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, gen_gaussian_clusters(10, 4, 10, 6, 5.0).unwrap());
        assert_eq!(a.class_sizes(), vec![10; 4]);
        assert_eq!(a.dim(), 6);
    }

    #[test]
    fn gaussian_means_sit_near_the_sphere() {
        let ds = gen_gaussian_clusters(3, 3, 2000, 4, 10.0).unwrap();
        let means = crate::scatter::class_means(ds.features(), ds.labels(), 3).unwrap();
        for k in 0..3 {
            let norm = means.column(k).iter().map(|v| v * v).sum::<f64>().sqrt();
            assert!((norm - 10.0).abs() < 0.2, "mean norm {norm}");
        }
    }

    #[test]
    fn noiseless_rings_have_exact_radii() {
        let ds = gen_rings(4, 50, 0.0).unwrap();
        for j in 0..ds.len() {
            let c = ds.features().column(j);
            let norm = c[0].hypot(c[1]);
            let expect = if ds.labels()[j] == 0 { 1.0 } else { 3.0 };
            assert!((norm - expect).abs() <= 4.0 * f64::EPSILON * expect);
        }
    }

    #[test]
    fn rings_are_deterministic() {
        assert_eq!(
            gen_rings(5, 20, 0.1).unwrap(),
            gen_rings(5, 20, 0.1).unwrap()
        );
        assert!(gen_rings(5, 20, -0.1).is_err());
    }
}

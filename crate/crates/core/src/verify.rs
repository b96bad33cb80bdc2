//! Randomized certification of the algebraic identities the methods rest on.
//!
//! Each family draws `trials` seeded instances and records the largest
//! residual; a family passes when that residual is within its tolerance.

use std::io::Write;

use rand::Rng;

use crate::dataset::{one_hot, LabeledDataset};
use crate::error::Result;
use crate::linalg::DenseMatrix;
use crate::net::{gradient_check, regression_trace_residual, DeepHashModel, NetworkConfig};
use crate::rng::{seeded_rng, SeededRng};
use crate::scatter::{
    between_chain, frobenius_form, lda_trace, plain_label_between, scatter_direct,
    scatter_matrixform, trace_ratio, ScatterSet, DEFAULT_MU,
};

pub const SCATTER_TOL: f64 = 1e-9;
pub const REGRESSION_TOL: f64 = 1e-8;
pub const GRADIENT_TOL: f64 = 1e-4;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Negative control: perturb the direct between-class scatter before
    /// comparing, so the scatter families must fail.
    pub corrupt_between: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FamilyResult {
    pub name: &'static str,
    pub max_residual: f64,
    pub tolerance: f64,
}

impl FamilyResult {
    pub fn passed(&self) -> bool {
        self.max_residual <= self.tolerance
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub seed: u64,
    pub trials: usize,
    pub families: Vec<FamilyResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.families.iter().all(FamilyResult::passed)
    }

    pub fn write_to<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "seed={} trials={}", self.seed, self.trials)?;
        for f in &self.families {
            writeln!(
                w,
                "{:<22} max_residual={:.3e} tolerance={:.0e} {}",
                f.name,
                f.max_residual,
                f.tolerance,
                if f.passed() { "ok" } else { "FAIL" }
            )?;
        }
        Ok(())
    }
}

/// Random labeled set with deliberately unequal class sizes.
pub fn random_instance(
    rng: &mut SeededRng,
    max_n: usize,
    max_d: usize,
    max_c: usize,
) -> LabeledDataset {
    let c = rng.random_range(1..=max_c);
    let d = rng.random_range(1..=max_d);
    let n = rng.random_range((c + 1).max(2)..=max_n.max(c + 1));
    let weights: Vec<f64> = (0..c).map(|_| rng.random_range(0.2..3.0)).collect();
    let total: f64 = weights.iter().sum();
    let labels: Vec<usize> = (0..n)
        .map(|i| {
            if i < c {
                return i;
            }
            let mut u = rng.random_range(0.0..total);
            for (k, w) in weights.iter().enumerate() {
                if u < *w {
                    return k;
                }
                u -= w;
            }
            c - 1
        })
        .collect();
    let centres: Vec<f64> = (0..c * d).map(|_| rng.random_range(-4.0..4.0)).collect();
    let x = DenseMatrix::from_fn(d, n, |i, j| {
        centres[labels[j] * d + i] + rng.random_range(-1.0..1.0)
    });
    LabeledDataset::new(x, labels, c).expect("every class seeded with one item")
}

fn corrupt(s: &mut ScatterSet) {
    let bump = 1e-3 * s.s_b.max_abs().max(1.0);
    let mut data = s.s_b.as_slice().to_vec();
    data[0] += bump;
    s.s_b = DenseMatrix::new(s.s_b.rows(), s.s_b.cols(), data).expect("finite");
}

/// Runs the six identity families over `trials` random instances.
pub fn run_identity_suite(
    seed: u64,
    trials: usize,
    options: VerifyOptions,
) -> Result<VerifyReport> {
    let mut rng = seeded_rng(seed);
    let mut forms = 0.0f64;
    let mut additivity = 0.0f64;
    let mut chain = 0.0f64;
    let mut frobenius = 0.0f64;
    let mut regression = 0.0f64;
    let mut gradient = 0.0f64;

    for _ in 0..trials {
        let ds = random_instance(&mut rng, 60, 8, 6);
        let (x, labels, c) = (ds.features(), ds.labels(), ds.class_count());

        let mut direct = scatter_direct(&ds, DEFAULT_MU)?;
        if options.corrupt_between {
            corrupt(&mut direct);
        }
        let matrix = scatter_matrixform(x, labels, c, DEFAULT_MU)?;
        forms = forms.max(direct.max_relative_diff(&matrix));
        additivity = additivity
            .max(direct.additivity_residual())
            .max(matrix.additivity_residual());

        let [a, b, y_form] = between_chain(x, labels, c)?;
        // relative to ‖S_t‖, which bounds S_b even when the classes coincide
        let scale = matrix.s_t.max_abs().max(f64::MIN_POSITIVE);
        chain = chain
            .max(a.sub(&b).max_abs() / scale)
            .max(b.sub(&y_form).max_abs() / scale)
            .max(y_form.sub(&matrix.s_b).max_abs() / scale);

        let whitened = frobenius_form(x, labels, c, DEFAULT_MU, true)?;
        let plain = frobenius_form(x, labels, c, DEFAULT_MU, false)?;
        let trace = lda_trace(&direct)?;
        let plain_trace =
            trace_ratio(&direct.s_t, &plain_label_between(x, labels, c)?, DEFAULT_MU)?;
        // floor of 1 so single-class instances, where every term is rounding
        // noise around zero, compare absolutely
        let rel = |a: f64, b: f64| (a - b).abs() / a.abs().max(b.abs()).max(1.0);
        frobenius = frobenius
            .max(rel(whitened.total, trace))
            .max(rel(plain.total, plain_trace))
            .max(rel(whitened.per_class.iter().sum(), whitened.total));
        for ((p, w), n) in plain
            .per_class
            .iter()
            .zip(&whitened.per_class)
            .zip(ds.class_sizes())
        {
            frobenius = frobenius.max(rel(*p, n as f64 * w));
        }

        let r = rng.random_range(1..=16);
        let n = rng.random_range(c + 1..=200);
        let feat_labels: Vec<usize> = (0..n)
            .map(|i| if i < c { i } else { rng.random_range(0..c) })
            .collect();
        let f = DenseMatrix::from_fn(r, n, |_, _| rng.random_range(-2.0..2.0));
        regression = regression.max(regression_trace_residual(&f, &feat_labels, c, DEFAULT_MU)?);

        gradient = gradient.max(random_gradient_check(&mut rng)?);
    }

    let family = |name, max_residual, tolerance| FamilyResult {
        name,
        max_residual,
        tolerance,
    };
    Ok(VerifyReport {
        seed,
        trials,
        families: vec![
            family("scatter_forms", forms, SCATTER_TOL),
            family("total_additivity", additivity, SCATTER_TOL),
            family("between_chain", chain, SCATTER_TOL),
            family("frobenius_forms", frobenius, SCATTER_TOL),
            family("regression_identity", regression, REGRESSION_TOL),
            family("gradient_check", gradient, GRADIENT_TOL),
        ],
    })
}

/// Finite-difference check on a tiny random network (d=3, h=4, r=2, c=2,
/// m=5) with every parameter moved off its initial value.
pub fn random_gradient_check(rng: &mut SeededRng) -> Result<f64> {
    let (d, h, r, c, m) = (3, 4, 2, 2, 5);
    let mut cfg = NetworkConfig::new(d, r);
    cfg.hidden_dims = vec![h];
    cfg.seed = rng.random();
    cfg.mu = rng.random_range(0.0..0.1);
    cfg.nu = rng.random_range(0.0..0.1);
    let mut model = DeepHashModel::initialize(&cfg, c)?;
    for s in model.params.slices_mut() {
        s.iter_mut().for_each(|v| *v += rng.random_range(-0.3..0.3));
    }
    model
        .params
        .alpha
        .iter_mut()
        .for_each(|a| *a = rng.random_range(0.5..2.0));
    let x = DenseMatrix::from_fn(d, m, |_, _| rng.random_range(-1.0..1.0));
    let labels: Vec<usize> = (0..m)
        .map(|i| if i < c { i } else { rng.random_range(0..c) })
        .collect();
    gradient_check(&model, &x, &one_hot(&labels, c), 1e-5)
}

//! Deep LDA hashing: a ReLU feed-forward network whose last layer is an
//! adaptive tanh `B = tanh(α ⊙ z)`, trained against a ridge-regularized
//! least-squares regression of the labels on the hash activations.

mod regression;
mod train;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::codes::{sign_quantize, BinaryCodes};
use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;
use crate::rng::{seeded_rng, SeededRng};
use crate::scatter::DEFAULT_MU;

pub use regression::{
    closed_form_regression, objective_split, regression_objective, regression_trace_residual,
    ObjectiveSplit, RegressionSolution,
};
pub use train::{train, EpochRecord, TrainHistory};

/// Lower bound enforced on every α after each optimizer step.
pub const ALPHA_MIN: f64 = 0.1;
pub const DEFAULT_NU: f64 = 0.001;

/// Regression targets used by the surrogate loss.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LabelMode {
    /// One-hot rows of `Y`.
    #[default]
    PlainY,
    /// Rows of `Y(YᵀY)^(-1/2)`, class sizes taken from the whole training set.
    WhitenedY,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetworkConfig {
    pub input_dim: usize,
    #[serde(default = "default_hidden")]
    pub hidden_dims: Vec<usize>,
    pub code_bits: usize,
    #[serde(default = "default_mu")]
    pub mu: f64,
    #[serde(default = "default_nu")]
    pub nu: f64,
    #[serde(default = "default_learning_rate")]
    pub learning_rate: f64,
    #[serde(default = "default_momentum")]
    pub momentum: f64,
    #[serde(default = "default_batch_size")]
    pub batch_size: usize,
    #[serde(default = "default_epochs")]
    pub epochs: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub label_mode: LabelMode,
    /// Only α and the regression layer are updated when set.
    #[serde(default)]
    pub freeze_features: bool,
    /// Record the training-set MAP after every epoch (slow on large sets).
    #[serde(default)]
    pub track_train_map: bool,
}

fn default_hidden() -> Vec<usize> {
    vec![256]
}
fn default_mu() -> f64 {
    DEFAULT_MU
}
fn default_nu() -> f64 {
    DEFAULT_NU
}
fn default_learning_rate() -> f64 {
    0.01
}
fn default_momentum() -> f64 {
    0.9
}
fn default_batch_size() -> usize {
    64
}
fn default_epochs() -> usize {
    100
}

impl NetworkConfig {
    /// Defaults for everything except the shape.
    pub fn new(input_dim: usize, code_bits: usize) -> Self {
        Self {
            input_dim,
            hidden_dims: default_hidden(),
            code_bits,
            mu: DEFAULT_MU,
            nu: DEFAULT_NU,
            learning_rate: default_learning_rate(),
            momentum: default_momentum(),
            batch_size: default_batch_size(),
            epochs: default_epochs(),
            seed: 0,
            label_mode: LabelMode::PlainY,
            freeze_features: false,
            track_train_map: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        if self.input_dim == 0 {
            return bad("input_dim must be positive".into());
        }
        if self.code_bits == 0 {
            return bad("code_bits must be positive".into());
        }
        if self.hidden_dims.contains(&0) {
            return bad("hidden_dims entries must be positive".into());
        }
        for (name, v) in [
            ("mu", self.mu),
            ("nu", self.nu),
            ("learning_rate", self.learning_rate),
        ] {
            if !(v >= 0.0) || !v.is_finite() {
                return bad(format!("{name} must be finite and non-negative, got {v}"));
            }
        }
        if !(0.0..1.0).contains(&self.momentum) {
            return bad(format!("momentum must be in [0, 1), got {}", self.momentum));
        }
        if self.batch_size < 2 {
            return bad(format!(
                "batch_size must be at least 2, got {}",
                self.batch_size
            ));
        }
        Ok(())
    }
}

/// Affine map `W a + b` with `W` stored as `out × in`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DenseLayer {
    pub weights: DenseMatrix,
    pub bias: Vec<f64>,
}

impl DenseLayer {
    fn xavier(fan_in: usize, fan_out: usize, rng: &mut SeededRng) -> Self {
        let limit = (6.0 / (fan_in + fan_out) as f64).sqrt();
        Self {
            weights: DenseMatrix::from_fn(fan_out, fan_in, |_, _| rng.random_range(-limit..limit)),
            bias: vec![0.0; fan_out],
        }
    }

    fn zeros_like(&self) -> Self {
        Self {
            weights: DenseMatrix::zeros(self.weights.rows(), self.weights.cols()),
            bias: vec![0.0; self.bias.len()],
        }
    }

    fn apply(&self, input: &DenseMatrix) -> DenseMatrix {
        let mut out = self.weights.matmul(input);
        for (i, b) in self.bias.iter().enumerate() {
            out.row_mut(i).iter_mut().for_each(|v| *v += b);
        }
        out
    }
}

/// Every trainable tensor. Gradients and optimizer state share this shape.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Parameters {
    pub hidden: Vec<DenseLayer>,
    pub hash: DenseLayer,
    /// Per-bit tanh scale.
    pub alpha: Vec<f64>,
    /// `r × c` regression weights.
    pub w_reg: DenseMatrix,
    pub b_reg: Vec<f64>,
}

impl Parameters {
    pub fn zeros_like(&self) -> Self {
        Self {
            hidden: self.hidden.iter().map(DenseLayer::zeros_like).collect(),
            hash: self.hash.zeros_like(),
            alpha: vec![0.0; self.alpha.len()],
            w_reg: DenseMatrix::zeros(self.w_reg.rows(), self.w_reg.cols()),
            b_reg: vec![0.0; self.b_reg.len()],
        }
    }

    /// Flat views in a fixed order: hidden layers, hash layer, α, then the
    /// regression weights and bias.
    pub fn slices(&self) -> Vec<&[f64]> {
        let mut out = Vec::with_capacity(2 * self.hidden.len() + 5);
        for layer in self.hidden.iter().chain(std::iter::once(&self.hash)) {
            out.push(layer.weights.as_slice());
            out.push(&layer.bias[..]);
        }
        out.push(&self.alpha[..]);
        out.push(self.w_reg.as_slice());
        out.push(&self.b_reg[..]);
        out
    }

    pub fn slices_mut(&mut self) -> Vec<&mut [f64]> {
        let mut out = Vec::with_capacity(2 * self.hidden.len() + 5);
        for layer in self
            .hidden
            .iter_mut()
            .chain(std::iter::once(&mut self.hash))
        {
            out.push(layer.weights.as_mut_slice());
            out.push(&mut layer.bias[..]);
        }
        out.push(&mut self.alpha[..]);
        out.push(self.w_reg.as_mut_slice());
        out.push(&mut self.b_reg[..]);
        out
    }

    /// Number of leading slices that belong to the feature layers.
    pub fn feature_slice_count(&self) -> usize {
        2 * (self.hidden.len() + 1)
    }

    pub fn all_finite(&self) -> bool {
        self.slices()
            .iter()
            .all(|s| s.iter().all(|v| v.is_finite()))
    }
}

pub type Gradients = Parameters;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeepHashModel {
    pub params: Parameters,
    pub mu: f64,
    pub nu: f64,
}

/// Intermediate values of one forward pass over a batch of `m` items.
#[derive(Debug, Clone)]
pub struct Forward {
    /// Post-ReLU output of each hidden layer.
    pub hidden: Vec<DenseMatrix>,
    /// Hash-layer pre-activations (r × m).
    pub z: DenseMatrix,
    /// `tanh(α ⊙ z)` (r × m).
    pub activations: DenseMatrix,
    /// `BᵀW_reg + 1b_regᵀ` (m × c).
    pub output: DenseMatrix,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct LossParts {
    pub data: f64,
    pub ridge: f64,
    pub atanh: f64,
}

impl LossParts {
    pub fn total(&self) -> f64 {
        self.data + self.ridge + self.atanh
    }
}

fn ensure_finite(m: &DenseMatrix, what: impl FnOnce() -> String) -> Result<()> {
    if m.all_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite(what()))
    }
}

impl DeepHashModel {
    /// Xavier-uniform weights, zero biases, α = 1, drawn from `config.seed`.
    pub fn initialize(config: &NetworkConfig, class_count: usize) -> Result<Self> {
        Self::initialize_with(config, class_count, &mut seeded_rng(config.seed))
    }

    pub(crate) fn initialize_with(
        config: &NetworkConfig,
        class_count: usize,
        rng: &mut SeededRng,
    ) -> Result<Self> {
        config.validate()?;
        if class_count == 0 {
            return Err(Error::InvalidParameter(
                "class count must be positive".into(),
            ));
        }
        let mut fan_in = config.input_dim;
        let mut hidden = Vec::with_capacity(config.hidden_dims.len());
        for &width in &config.hidden_dims {
            hidden.push(DenseLayer::xavier(fan_in, width, rng));
            fan_in = width;
        }
        let hash = DenseLayer::xavier(fan_in, config.code_bits, rng);
        let reg = DenseLayer::xavier(config.code_bits, class_count, rng);
        Ok(Self {
            params: Parameters {
                hidden,
                hash,
                alpha: vec![1.0; config.code_bits],
                // stored r × c
                w_reg: reg.weights.transpose(),
                b_reg: reg.bias,
            },
            mu: config.mu,
            nu: config.nu,
        })
    }

    pub fn input_dim(&self) -> usize {
        self.params
            .hidden
            .first()
            .unwrap_or(&self.params.hash)
            .weights
            .cols()
    }

    pub fn code_bits(&self) -> usize {
        self.params.alpha.len()
    }

    pub fn class_count(&self) -> usize {
        self.params.w_reg.cols()
    }

    fn check_input(&self, x: &DenseMatrix) -> Result<()> {
        if x.rows() != self.input_dim() {
            return Err(Error::Dimension(format!(
                "model expects {} input dimensions, data has {}",
                self.input_dim(),
                x.rows()
            )));
        }
        Ok(())
    }

    fn feature_pass(&self, x: &DenseMatrix) -> Result<(Vec<DenseMatrix>, DenseMatrix)> {
        self.check_input(x)?;
        let mut hidden = Vec::with_capacity(self.params.hidden.len());
        for (k, layer) in self.params.hidden.iter().enumerate() {
            let input = hidden.last().unwrap_or(x);
            let pre = layer.apply(input);
            ensure_finite(&pre, || format!("hidden layer {}", k + 1))?;
            let out = pre.map(|v| v.max(0.0));
            hidden.push(out);
        }
        let z = self.params.hash.apply(hidden.last().unwrap_or(x));
        ensure_finite(&z, || "hash layer".into())?;
        Ok((hidden, z))
    }

    /// Hash-layer pre-activations `z` (r × n).
    pub fn pre_activations(&self, x: &DenseMatrix) -> Result<DenseMatrix> {
        Ok(self.feature_pass(x)?.1)
    }

    pub fn forward(&self, x: &DenseMatrix) -> Result<Forward> {
        let (hidden, z) = self.feature_pass(x)?;
        let mut activations = z.clone();
        for (j, &a) in self.params.alpha.iter().enumerate() {
            activations
                .row_mut(j)
                .iter_mut()
                .for_each(|v| *v = (a * *v).tanh());
        }
        let mut output = activations.t_matmul(&self.params.w_reg);
        for i in 0..output.rows() {
            output
                .row_mut(i)
                .iter_mut()
                .zip(&self.params.b_reg)
                .for_each(|(v, b)| *v += b);
        }
        ensure_finite(&output, || "regression output".into())?;
        Ok(Forward {
            hidden,
            z,
            activations,
            output,
        })
    }

    fn check_targets(&self, x: &DenseMatrix, y: &DenseMatrix) -> Result<()> {
        if y.rows() != x.cols() || y.cols() != self.class_count() {
            return Err(Error::Dimension(format!(
                "targets are {}×{}, expected {}×{}",
                y.rows(),
                y.cols(),
                x.cols(),
                self.class_count()
            )));
        }
        Ok(())
    }

    fn parts_from(&self, fwd: &Forward, y: &DenseMatrix) -> LossParts {
        let m = y.rows() as f64;
        LossParts {
            data: fwd.output.sub(y).frobenius_norm_sq() / m,
            ridge: self.mu * self.params.w_reg.frobenius_norm_sq(),
            atanh: self.nu * self.params.alpha.iter().map(|a| a.powi(-2)).sum::<f64>(),
        }
    }

    /// Loss on a batch `x` (d × m) with targets `y` (m × c).
    pub fn loss(&self, x: &DenseMatrix, y: &DenseMatrix) -> Result<LossParts> {
        self.check_targets(x, y)?;
        let fwd = self.forward(x)?;
        Ok(self.parts_from(&fwd, y))
    }

    /// Loss and exact gradients of its total with respect to every parameter.
    pub fn backward(&self, x: &DenseMatrix, y: &DenseMatrix) -> Result<(LossParts, Gradients)> {
        self.check_targets(x, y)?;
        let fwd = self.forward(x)?;
        let parts = self.parts_from(&fwd, y);
        let p = &self.params;
        let m = x.cols() as f64;

        let d_out = fwd.output.sub(y).scale(2.0 / m);
        let w_reg = fwd
            .activations
            .matmul(&d_out)
            .add(&p.w_reg.scale(2.0 * self.mu));
        let b_reg = d_out.column_means().iter().map(|v| v * m).collect();
        let d_b = p.w_reg.matmul_t(&d_out);

        let mut d_z = d_b;
        let mut alpha = vec![0.0; p.alpha.len()];
        for (j, &a) in p.alpha.iter().enumerate() {
            let mut acc = 0.0;
            let b_row = fwd.activations.row(j);
            let z_row = fwd.z.row(j);
            for ((g, &b), &z) in d_z.row_mut(j).iter_mut().zip(b_row).zip(z_row) {
                let slope = 1.0 - b * b;
                acc += *g * z * slope;
                *g *= a * slope;
            }
            alpha[j] = acc - 2.0 * self.nu * a.powi(-3);
        }

        let mut hidden_grads = vec![None; p.hidden.len()];
        let mut upstream = d_z;
        let hash_input = fwd.hidden.last().unwrap_or(x);
        let hash = DenseLayer {
            weights: upstream.matmul_t(hash_input),
            bias: row_sums(&upstream),
        };
        let mut layer_weights = &p.hash.weights;
        for k in (0..p.hidden.len()).rev() {
            let mut d_pre = layer_weights.t_matmul(&upstream);
            let out = &fwd.hidden[k];
            d_pre
                .as_mut_slice()
                .iter_mut()
                .zip(out.as_slice())
                .for_each(|(g, &o)| {
                    if o <= 0.0 {
                        *g = 0.0
                    }
                });
            let input = if k == 0 { x } else { &fwd.hidden[k - 1] };
            hidden_grads[k] = Some(DenseLayer {
                weights: d_pre.matmul_t(input),
                bias: row_sums(&d_pre),
            });
            layer_weights = &p.hidden[k].weights;
            upstream = d_pre;
        }

        let grads = Gradients {
            hidden: hidden_grads
                .into_iter()
                .map(|g| g.expect("filled above"))
                .collect(),
            hash,
            alpha,
            w_reg,
            b_reg,
        };
        Ok((parts, grads))
    }
}

fn row_sums(m: &DenseMatrix) -> Vec<f64> {
    (0..m.rows()).map(|i| m.row(i).iter().sum()).collect()
}

/// Bits are the signs of the hash-layer pre-activations, which equal the
/// signs of `tanh(α ⊙ z)` for positive α. Zero maps to `+1`.
pub fn encode_deep(model: &DeepHashModel, x: &DenseMatrix) -> Result<BinaryCodes> {
    sign_quantize(&model.pre_activations(x)?)
}

/// Largest per-coordinate gap between the analytic gradient and a central
/// finite difference of the total loss, relative to `max(1, |analytic|)`.
pub fn gradient_check(
    model: &DeepHashModel,
    x: &DenseMatrix,
    y: &DenseMatrix,
    step: f64,
) -> Result<f64> {
    let (_, grads) = model.backward(x, y)?;
    let analytic: Vec<Vec<f64>> = grads.slices().iter().map(|s| s.to_vec()).collect();
    let mut probe = model.clone();
    let mut worst = 0.0f64;
    for (s, expected) in analytic.iter().enumerate() {
        for (k, &a) in expected.iter().enumerate() {
            let orig = probe.params.slices()[s][k];
            probe.params.slices_mut()[s][k] = orig + step;
            let up = probe.loss(x, y)?.total();
            probe.params.slices_mut()[s][k] = orig - step;
            let down = probe.loss(x, y)?.total();
            probe.params.slices_mut()[s][k] = orig;
            let numeric = (up - down) / (2.0 * step);
            worst = worst.max((numeric - a).abs() / a.abs().max(1.0));
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::one_hot;

    fn tiny(seed: u64, d: usize, h: usize, r: usize, c: usize) -> DeepHashModel {
        let mut cfg = NetworkConfig::new(d, r);
        cfg.hidden_dims = vec![h];
        cfg.seed = seed;
        cfg.mu = 0.05;
        cfg.nu = 0.01;
        let mut model = DeepHashModel::initialize(&cfg, c).unwrap();
        let mut rng = seeded_rng(seed ^ 0xabc);
        // move biases and α off their special initial values
        for s in model.params.slices_mut() {
            for v in s.iter_mut() {
                *v += rng.random_range(-0.3..0.3);
            }
        }
        model
            .params
            .alpha
            .iter_mut()
            .for_each(|a| *a = a.abs() + 0.5);
        model
    }

    fn batch(seed: u64, d: usize, m: usize, c: usize) -> (DenseMatrix, DenseMatrix) {
        let mut rng = seeded_rng(seed);
        let x = DenseMatrix::from_fn(d, m, |_, _| rng.random_range(-1.0..1.0));
        let labels: Vec<usize> = (0..m).map(|i| i % c).collect();
        (x, one_hot(&labels, c))
    }

    fn linear_model(d: usize) -> DeepHashModel {
        DeepHashModel {
            params: Parameters {
                hidden: vec![],
                hash: DenseLayer {
                    weights: DenseMatrix::identity(d),
                    bias: vec![0.0; d],
                },
                alpha: vec![1.0; d],
                w_reg: DenseMatrix::zeros(d, 2),
                b_reg: vec![0.0; 2],
            },
            mu: 0.0,
            nu: 0.0,
        }
    }

    #[test]
    fn identity_layer_gives_tanh_of_input() {
        let model = linear_model(3);
        let x = DenseMatrix::from_rows(&[[0.2, -1.0], [0.0, 3.0], [-0.5, 0.7]]).unwrap();
        let fwd = model.forward(&x).unwrap();
        for i in 0..3 {
            for j in 0..2 {
                assert_eq!(fwd.activations[(i, j)], x[(i, j)].tanh());
            }
        }
        assert_eq!(fwd.activations[(1, 0)], 0.0);
    }

    #[test]
    fn large_alpha_saturates() {
        let mut model = linear_model(1);
        model.params.alpha = vec![50.0];
        let fwd = model
            .forward(&DenseMatrix::from_rows(&[[0.5]]).unwrap())
            .unwrap();
        assert!((fwd.activations[(0, 0)] - 1.0).abs() <= 1e-8);
    }

    #[test]
    fn loss_parts() {
        let mut model = linear_model(2);
        let x = DenseMatrix::from_rows(&[[0.3, -0.2, 0.9], [0.1, 0.4, -0.6]]).unwrap();
        let y = one_hot(&[0, 1, 1], 2);
        // mean predictor: data term equals the summed column variances of Y
        model.params.b_reg = y.column_means();
        let parts = model.loss(&x, &y).unwrap();
        let var = 2.0 * (1.0 / 3.0) * (2.0 / 3.0);
        assert!((parts.data - var).abs() < 1e-15);
        assert_eq!(parts.total(), parts.data);

        // perfect fit
        let fwd = model.forward(&x).unwrap();
        let parts = model.loss(&x, &fwd.output).unwrap();
        assert_eq!(parts.total(), 0.0);

        model.nu = 0.001;
        let r = model.code_bits() as f64;
        assert!((model.loss(&x, &y).unwrap().atanh - 0.001 * r).abs() < 1e-18);
        assert!(model.loss(&x, &one_hot(&[0, 1], 2)).is_err());
        assert!(model.loss(&DenseMatrix::zeros(3, 3), &y).is_err());
    }

    #[test]
    fn zero_input_kills_data_path() {
        let mut model = tiny(3, 3, 4, 2, 2);
        for layer in model
            .params
            .hidden
            .iter_mut()
            .chain(std::iter::once(&mut model.params.hash))
        {
            layer.bias.iter_mut().for_each(|b| *b = 0.0);
        }
        let (x, y) = (DenseMatrix::zeros(3, 5), one_hot(&[0, 1, 0, 1, 1], 2));
        let (_, g) = model.backward(&x, &y).unwrap();
        assert!(g.hidden[0].weights.as_slice().iter().all(|&v| v == 0.0));
        assert!(g.hash.weights.as_slice().iter().all(|&v| v == 0.0));
        for (ga, a) in g.alpha.iter().zip(&model.params.alpha) {
            assert!((ga + 2.0 * model.nu * a.powi(-3)).abs() < 1e-15);
        }
    }

    #[test]
    fn regression_gradient_at_zero_weights() {
        let mut model = tiny(4, 3, 4, 2, 2);
        model.params.w_reg = DenseMatrix::zeros(2, 2);
        let (x, y) = batch(5, 3, 5, 2);
        let (_, g) = model.backward(&x, &y).unwrap();
        let fwd = model.forward(&x).unwrap();
        let m = 5.0;
        let mut resid = y.scale(-1.0);
        for i in 0..resid.rows() {
            for (v, b) in resid.row_mut(i).iter_mut().zip(&model.params.b_reg) {
                *v += b;
            }
        }
        let expected = fwd.activations.matmul(&resid).scale(2.0 / m);
        assert!(g.w_reg.relative_diff(&expected) < 1e-14);
    }

    #[test]
    fn gradients_match_finite_differences() {
        for seed in 0..5 {
            let model = tiny(seed, 3, 4, 2, 2);
            let (x, y) = batch(seed + 100, 3, 5, 2);
            let err = gradient_check(&model, &x, &y, 1e-5).unwrap();
            assert!(err <= 1e-4, "seed {seed}: {err}");
        }
    }

    #[test]
    fn gradients_match_with_two_hidden_layers() {
        let mut cfg = NetworkConfig::new(4, 3);
        cfg.hidden_dims = vec![5, 3];
        cfg.mu = 0.01;
        cfg.nu = 0.02;
        let model = DeepHashModel::initialize(&cfg, 3).unwrap();
        let (x, y) = batch(9, 4, 6, 3);
        assert!(gradient_check(&model, &x, &y, 1e-5).unwrap() <= 1e-4);
    }

    #[test]
    fn codes_follow_pre_activation_signs() {
        let mut model = linear_model(2);
        let x = DenseMatrix::from_rows(&[[0.3, 0.0], [-0.7, 0.0]]).unwrap();
        let codes = encode_deep(&model, &x).unwrap();
        assert_eq!(codes.signs(0), vec![1, -1]);
        assert_eq!(codes.signs(1), vec![1, 1]);
        model.params.alpha = vec![7.5, 0.2];
        assert_eq!(encode_deep(&model, &x).unwrap(), codes);
        assert!(encode_deep(&model, &DenseMatrix::zeros(3, 1)).is_err());
    }

    #[test]
    fn initialization_is_seeded() {
        let cfg = NetworkConfig::new(6, 4);
        let a = DeepHashModel::initialize(&cfg, 3).unwrap();
        assert_eq!(a, DeepHashModel::initialize(&cfg, 3).unwrap());
        let mut other = cfg.clone();
        other.seed = 1;
        assert_ne!(a, DeepHashModel::initialize(&other, 3).unwrap());
        assert!(a.params.alpha.iter().all(|&v| v == 1.0));
        assert_eq!(a.params.w_reg.shape(), (4, 3));
        let limit = (6.0f64 / (6.0 + 256.0)).sqrt();
        assert!(a.params.hidden[0].weights.max_abs() <= limit);
    }

    #[test]
    fn config_validation() {
        let mut cfg = NetworkConfig::new(3, 2);
        assert!(cfg.validate().is_ok());
        cfg.batch_size = 1;
        assert!(cfg.validate().is_err());
        cfg.batch_size = 8;
        cfg.nu = -1.0;
        assert!(cfg.validate().is_err());
        cfg.nu = 0.0;
        cfg.momentum = 1.0;
        assert!(cfg.validate().is_err());
    }
}

//! Experiment configuration.
//!
//! Relative paths inside a config file are resolved against the directory
//! that contains the file.

use std::fs;
use std::path::{Path, PathBuf};

use dldah::net::{LabelMode, NetworkConfig, DEFAULT_NU};
use dldah::scatter::DEFAULT_MU;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

pub const CONFIG_FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub format_version: u32,
    #[serde(default)]
    pub seed: u64,
    pub data: DataSource,
    pub split: SplitSection,
    pub model: ModelSection,
    #[serde(default)]
    pub eval: EvalSection,
    pub output_dir: PathBuf,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bench: Option<BenchSection>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "snake_case", deny_unknown_fields)]
pub enum DataSource {
    Gaussian {
        classes: usize,
        per_class: usize,
        dim: usize,
        separation: f64,
    },
    Rings {
        per_class: usize,
        noise: f64,
    },
    Csv {
        path: PathBuf,
    },
    Idx {
        images: PathBuf,
        labels: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SplitSection {
    pub queries_per_class: usize,
    pub train_per_class: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum ModelSection {
    Ldah {
        bits: usize,
        #[serde(default = "default_mu")]
        mu: f64,
    },
    Dldah {
        bits: usize,
        #[serde(flatten)]
        params: DldahParams,
    },
    Lsh {
        bits: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DldahParams {
    #[serde(default = "default_hidden")]
    pub hidden_dims: Vec<usize>,
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
    pub label_mode: LabelMode,
}

impl Default for DldahParams {
    fn default() -> Self {
        Self {
            hidden_dims: default_hidden(),
            mu: default_mu(),
            nu: default_nu(),
            learning_rate: default_learning_rate(),
            momentum: default_momentum(),
            batch_size: default_batch_size(),
            epochs: default_epochs(),
            label_mode: LabelMode::PlainY,
        }
    }
}

impl DldahParams {
    pub fn network_config(&self, input_dim: usize, bits: usize, seed: u64) -> NetworkConfig {
        NetworkConfig {
            input_dim,
            hidden_dims: self.hidden_dims.clone(),
            code_bits: bits,
            mu: self.mu,
            nu: self.nu,
            learning_rate: self.learning_rate,
            momentum: self.momentum,
            batch_size: self.batch_size,
            epochs: self.epochs,
            seed,
            label_mode: self.label_mode,
            freeze_features: false,
            track_train_map: false,
        }
    }
}

fn default_mu() -> f64 {
    DEFAULT_MU
}
fn default_nu() -> f64 {
    DEFAULT_NU
}
fn default_hidden() -> Vec<usize> {
    NetworkConfig::new(1, 1).hidden_dims
}
fn default_learning_rate() -> f64 {
    NetworkConfig::new(1, 1).learning_rate
}
fn default_momentum() -> f64 {
    NetworkConfig::new(1, 1).momentum
}
fn default_batch_size() -> usize {
    NetworkConfig::new(1, 1).batch_size
}
fn default_epochs() -> usize {
    NetworkConfig::new(1, 1).epochs
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvalSection {
    #[serde(default = "default_radius")]
    pub radius: u32,
}

impl Default for EvalSection {
    fn default() -> Self {
        Self {
            radius: default_radius(),
        }
    }
}

fn default_radius() -> u32 {
    dldah::eval::DEFAULT_RADIUS
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Lsh,
    Ldah,
    Dldah,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Lsh => "lsh",
            Method::Ldah => "ldah",
            Method::Dldah => "dldah",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BenchSection {
    pub methods: Vec<Method>,
}

impl ModelSection {
    pub fn bits(&self) -> usize {
        match self {
            ModelSection::Ldah { bits, .. }
            | ModelSection::Dldah { bits, .. }
            | ModelSection::Lsh { bits } => *bits,
        }
    }

    pub fn method(&self) -> Method {
        match self {
            ModelSection::Ldah { .. } => Method::Ldah,
            ModelSection::Dldah { .. } => Method::Dldah,
            ModelSection::Lsh { .. } => Method::Lsh,
        }
    }

    /// The same model type at a different code length.
    pub fn with_bits(&self, bits: usize) -> Self {
        let mut out = self.clone();
        match &mut out {
            ModelSection::Ldah { bits: b, .. }
            | ModelSection::Dldah { bits: b, .. }
            | ModelSection::Lsh { bits: b } => *b = bits,
        }
        out
    }

    /// Section for `method`, taking parameters from `self` when the type
    /// matches and defaults otherwise.
    pub fn for_method(&self, method: Method, bits: usize) -> Self {
        if self.method() == method {
            return self.with_bits(bits);
        }
        match method {
            Method::Ldah => ModelSection::Ldah {
                bits,
                mu: DEFAULT_MU,
            },
            Method::Dldah => ModelSection::Dldah {
                bits,
                params: DldahParams::default(),
            },
            Method::Lsh => ModelSection::Lsh { bits },
        }
    }
}

fn positive(field: &str, v: usize) -> CliResult<()> {
    if v == 0 {
        return Err(CliError::config(field, "must be positive"));
    }
    Ok(())
}

fn finite_nonneg(field: &str, v: f64) -> CliResult<()> {
    if !(v >= 0.0) || !v.is_finite() {
        return Err(CliError::config(
            field,
            format!("must be finite and non-negative, got {v}"),
        ));
    }
    Ok(())
}

impl ExperimentConfig {
    pub fn from_json(text: &str, origin: &str) -> CliResult<Self> {
        let config: Self = serde_json::from_str(text).map_err(|source| CliError::Json {
            path: origin.to_string(),
            source,
        })?;
        config.validate()?;
        Ok(config)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes") + "\n"
    }

    /// Reads and validates a config; returns it with the directory used to
    /// resolve relative paths.
    pub fn load(path: &Path) -> CliResult<(Self, PathBuf)> {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let config = Self::from_json(&text, &path.display().to_string())?;
        let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Ok((config, base))
    }

    pub fn validate(&self) -> CliResult<()> {
        if self.format_version != CONFIG_FORMAT_VERSION {
            return Err(CliError::config(
                "format_version",
                format!(
                    "unsupported version {}, expected {CONFIG_FORMAT_VERSION}",
                    self.format_version
                ),
            ));
        }
        match &self.data {
            DataSource::Gaussian {
                classes,
                per_class,
                dim,
                separation,
            } => {
                positive("data.classes", *classes)?;
                positive("data.per_class", *per_class)?;
                positive("data.dim", *dim)?;
                finite_nonneg("data.separation", *separation)?;
            }
            DataSource::Rings { per_class, noise } => {
                positive("data.per_class", *per_class)?;
                finite_nonneg("data.noise", *noise)?;
            }
            DataSource::Csv { path } => {
                if path.as_os_str().is_empty() {
                    return Err(CliError::config("data.path", "is empty"));
                }
            }
            DataSource::Idx { images, labels } => {
                if images.as_os_str().is_empty() {
                    return Err(CliError::config("data.images", "is empty"));
                }
                if labels.as_os_str().is_empty() {
                    return Err(CliError::config("data.labels", "is empty"));
                }
            }
        }
        positive("split.queries_per_class", self.split.queries_per_class)?;
        positive("split.train_per_class", self.split.train_per_class)?;
        positive("model.bits", self.model.bits())?;
        match &self.model {
            ModelSection::Ldah { mu, .. } => {
                if !(*mu > 0.0) || !mu.is_finite() {
                    return Err(CliError::config(
                        "model.mu",
                        format!("must be positive, got {mu}"),
                    ));
                }
            }
            ModelSection::Dldah { params, .. } => {
                finite_nonneg("model.mu", params.mu)?;
                finite_nonneg("model.nu", params.nu)?;
                finite_nonneg("model.learning_rate", params.learning_rate)?;
                if !(0.0..1.0).contains(&params.momentum) {
                    return Err(CliError::config("model.momentum", "must be in [0, 1)"));
                }
                if params.batch_size < 2 {
                    return Err(CliError::config("model.batch_size", "must be at least 2"));
                }
                if params.hidden_dims.contains(&0) {
                    return Err(CliError::config(
                        "model.hidden_dims",
                        "entries must be positive",
                    ));
                }
            }
            ModelSection::Lsh { .. } => {}
        }
        if self.output_dir.as_os_str().is_empty() {
            return Err(CliError::config("output_dir", "is empty"));
        }
        if let Some(bench) = &self.bench {
            if bench.methods.is_empty() {
                return Err(CliError::config("bench.methods", "is empty"));
            }
        }
        Ok(())
    }
}

pub fn resolve(base: &Path, path: &Path) -> PathBuf {
    if path.is_absolute() {
        path.to_path_buf()
    } else {
        base.join(path)
    }
}

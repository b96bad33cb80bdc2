//! Versioned JSON model files shared by every hashing method.

use std::fs;
use std::path::Path;

use dldah::codes::BinaryCodes;
use dldah::ldah::{encode_linear, LinearHashModel};
use dldah::lsh::{encode_lsh, LshModel};
use dldah::net::{encode_deep, DeepHashModel};
use dldah::DenseMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

pub const MODEL_FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum HashModel {
    Ldah(LinearHashModel),
    Dldah(DeepHashModel),
    Lsh(LshModel),
}

impl HashModel {
    pub fn input_dim(&self) -> usize {
        match self {
            HashModel::Ldah(m) => m.input_dim(),
            HashModel::Dldah(m) => m.input_dim(),
            HashModel::Lsh(m) => m.projection.rows(),
        }
    }

    pub fn code_bits(&self) -> usize {
        match self {
            HashModel::Ldah(m) => m.code_bits(),
            HashModel::Dldah(m) => m.code_bits(),
            HashModel::Lsh(m) => m.projection.cols(),
        }
    }

    /// Codes for the columns of `x`, tagged with `ids`.
    pub fn encode(&self, x: &DenseMatrix, ids: &[u64]) -> CliResult<BinaryCodes> {
        let codes = match self {
            HashModel::Ldah(m) => encode_linear(m, x)?,
            HashModel::Dldah(m) => encode_deep(m, x)?,
            HashModel::Lsh(m) => encode_lsh(m, x)?,
        };
        Ok(codes.with_ids(ids.to_vec())?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelFile {
    pub format_version: u32,
    pub model: HashModel,
}

impl ModelFile {
    pub fn new(model: HashModel) -> Self {
        Self {
            format_version: MODEL_FORMAT_VERSION,
            model,
        }
    }

    /// Compact JSON; floats are written in their shortest exact form.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("model serializes") + "\n"
    }

    pub fn save(&self, path: &Path) -> CliResult<()> {
        fs::write(path, self.to_json()).map_err(|e| CliError::io(path, e))
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let file: Self = serde_json::from_str(&text).map_err(|source| CliError::Json {
            path: path.display().to_string(),
            source,
        })?;
        if file.format_version != MODEL_FORMAT_VERSION {
            return Err(CliError::config(
                "format_version",
                format!(
                    "model file version {} is not supported (expected {MODEL_FORMAT_VERSION})",
                    file.format_version
                ),
            ));
        }
        Ok(file)
    }
}

//! LDA hashing and deep LDA hashing.
//!
//! The crate covers the full retrieval pipeline: scatter matrices and the
//! trace objective, the linear eigen-based hash, a small feed-forward
//! network trained against a least-squares surrogate of the same objective,
//! a random-projection baseline, packed binary codes with Hamming ranking,
//! and the MAP / hash-lookup metrics.

pub mod codes;
pub mod data;
pub mod dataset;
pub mod error;
pub mod eval;
pub mod ldah;
pub mod linalg;
pub mod lsh;
pub mod net;
pub mod rng;
pub mod scatter;
pub mod verify;

pub use codes::{hamming, sign_quantize, BinaryCodes, HammingIndex};
pub use dataset::LabeledDataset;
pub use error::{Error, Result};
pub use eval::{evaluate, EvalReport};
pub use ldah::{encode_linear, fit_ldah, LinearHashModel};
pub use linalg::DenseMatrix;
pub use lsh::{encode_lsh, fit_lsh, LshModel};
pub use net::{encode_deep, train, DeepHashModel, LabelMode, NetworkConfig, TrainHistory};

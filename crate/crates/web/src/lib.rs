//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Three operations are exposed: a linear-vs-deep hashing comparison on two
//! concentric rings, the adaptive tanh curve, and the per-class weighting of
//! the between-class objective under plain and whitened labels.

use dldah::codes::{BinaryCodes, HammingIndex};
use dldah::data::{gen_gaussian_clusters, gen_rings, split_protocol, SplitResult, SplitSpec};
use dldah::eval::evaluate;
use dldah::ldah::{encode_linear, fit_ldah};
use dldah::net::{encode_deep, train, NetworkConfig};
use dldah::scatter::{frobenius_form, DEFAULT_MU};
use dldah::{DenseMatrix, LabeledDataset};
use wasm_bindgen::prelude::*;

fn js_err(e: dldah::Error) -> JsError {
    JsError::new(&e.to_string())
}

/// Two rings (inner class 0, outer class 1) with a query/gallery split.
#[wasm_bindgen]
pub struct RingsDemo {
    data: LabeledDataset,
    split: SplitResult,
}

/// Result of hashing the rings with one method.
#[wasm_bindgen]
pub struct RingsResult {
    map: f64,
    bits: usize,
    grid: Vec<u8>,
}

#[wasm_bindgen]
impl RingsResult {
    #[wasm_bindgen(getter)]
    pub fn map(&self) -> f64 {
        self.map
    }

    #[wasm_bindgen(getter)]
    pub fn bits(&self) -> usize {
        self.bits
    }

    /// Predicted class per grid cell, row-major, from the nearest gallery
    /// code in Hamming distance.
    #[wasm_bindgen(getter)]
    pub fn grid(&self) -> Vec<u8> {
        self.grid.clone()
    }
}

/// Half-width of the square the grid covers.
pub const GRID_EXTENT: f64 = 4.0;

fn grid_points(resolution: usize) -> DenseMatrix {
    let step = 2.0 * GRID_EXTENT / resolution as f64;
    DenseMatrix::from_fn(2, resolution * resolution, |axis, k| {
        let (row, col) = (k / resolution, k % resolution);
        if axis == 0 {
            -GRID_EXTENT + (col as f64 + 0.5) * step
        } else {
            GRID_EXTENT - (row as f64 + 0.5) * step
        }
    })
}

#[wasm_bindgen]
impl RingsDemo {
    #[wasm_bindgen(constructor)]
    pub fn new(seed: u32, per_class: usize, noise: f64) -> Result<RingsDemo, JsError> {
        let data = gen_rings(seed as u64, per_class, noise).map_err(js_err)?;
        let queries = (per_class / 5).max(1);
        let spec = SplitSpec {
            queries_per_class: queries,
            train_per_class: per_class - queries,
            seed: seed as u64,
        };
        let split = split_protocol(&data, &spec).map_err(js_err)?;
        Ok(RingsDemo { data, split })
    }

    /// `x0, y0, x1, y1, …` for every point.
    pub fn points(&self) -> Vec<f64> {
        let x = self.data.features();
        (0..self.data.len())
            .flat_map(|j| [x[(0, j)], x[(1, j)]])
            .collect()
    }

    pub fn labels(&self) -> Vec<u8> {
        self.data.labels().iter().map(|&l| l as u8).collect()
    }

    /// Linear LDA hashing; the code length is capped at the input dimension.
    pub fn run_ldah(&self, resolution: usize) -> Result<RingsResult, JsError> {
        let bits = 2;
        let model = fit_ldah(&self.split.train, bits, DEFAULT_MU).map_err(js_err)?;
        self.score(bits, resolution, |x| encode_linear(&model, x))
    }

    pub fn run_dldah(
        &self,
        bits: usize,
        epochs: usize,
        resolution: usize,
    ) -> Result<RingsResult, JsError> {
        let mut cfg = NetworkConfig::new(2, bits);
        cfg.hidden_dims = vec![64];
        cfg.epochs = epochs;
        let (model, _) = train(&self.split.train, &cfg).map_err(js_err)?;
        self.score(bits, resolution, |x| encode_deep(&model, x))
    }

    fn score(
        &self,
        bits: usize,
        resolution: usize,
        encode: impl Fn(&DenseMatrix) -> dldah::Result<BinaryCodes>,
    ) -> Result<RingsResult, JsError> {
        let gallery = encode(self.split.gallery.features()).map_err(js_err)?;
        let queries = encode(self.split.query.features()).map_err(js_err)?;
        let index = HammingIndex::new(gallery);
        let report = evaluate(
            &index,
            &queries,
            self.split.query.labels(),
            self.split.gallery.labels(),
            2,
        )
        .map_err(js_err)?;
        let cells = encode(&grid_points(resolution)).map_err(js_err)?;
        let gallery_labels = self.split.gallery.labels();
        let grid = (0..cells.len())
            .map(|k| {
                let ranked = index.ranked_positions(cells.code(k)).expect("same width");
                gallery_labels[ranked[0].1] as u8
            })
            .collect();
        Ok(RingsResult {
            map: report.map,
            bits,
            grid,
        })
    }
}

/// `tanh(α z)` sampled at `samples` evenly spaced points of `[-range, range]`.
#[wasm_bindgen]
pub fn atanh_curve(alpha: f64, range: f64, samples: usize) -> Vec<f64> {
    let samples = samples.max(2);
    (0..samples)
        .map(|i| {
            let z = -range + 2.0 * range * i as f64 / (samples - 1) as f64;
            (alpha * z).tanh()
        })
        .collect()
}

/// The scale regularizer `ν α⁻²` for one bit.
#[wasm_bindgen]
pub fn atanh_penalty(alpha: f64, nu: f64) -> f64 {
    nu / (alpha * alpha)
}

/// Between-class objective on two Gaussian classes of the given sizes:
/// `[plain total, whitened total, plain per class (2), whitened per class (2)]`.
#[wasm_bindgen]
pub fn class_weighting(
    small: usize,
    large: usize,
    separation: f64,
    seed: u32,
) -> Result<Vec<f64>, JsError> {
    if small == 0 || large == 0 {
        return Err(JsError::new("class sizes must be positive"));
    }
    let per_class = small.max(large);
    let full = gen_gaussian_clusters(seed as u64, 2, per_class, 2, separation).map_err(js_err)?;
    let (mut seen, mut keep) = ([0usize; 2], Vec::new());
    for (i, &l) in full.labels().iter().enumerate() {
        let cap = if l == 0 { small } else { large };
        if seen[l] < cap {
            seen[l] += 1;
            keep.push(i);
        }
    }
    let ds = full.subset(&keep).map_err(js_err)?;
    let plain = frobenius_form(ds.features(), ds.labels(), 2, DEFAULT_MU, false).map_err(js_err)?;
    let white = frobenius_form(ds.features(), ds.labels(), 2, DEFAULT_MU, true).map_err(js_err)?;
    let mut out = vec![plain.total, white.total];
    out.extend(plain.per_class);
    out.extend(white.per_class);
    Ok(out)
}

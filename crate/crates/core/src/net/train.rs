use std::io::Write;

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use super::{DeepHashModel, Gradients, LabelMode, LossParts, NetworkConfig, ALPHA_MIN};
use crate::codes::HammingIndex;
use crate::dataset::LabeledDataset;
use crate::error::{Error, Result};
use crate::eval::evaluate;
use crate::linalg::DenseMatrix;
use crate::rng::seeded_rng;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpochRecord {
    /// 1-based.
    pub epoch: usize,
    pub total: f64,
    pub data: f64,
    pub ridge: f64,
    pub atanh: f64,
    pub mean_abs_alpha: f64,
    pub train_map: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct TrainHistory {
    pub epochs: Vec<EpochRecord>,
}

impl TrainHistory {
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "epoch,total,data,ridge,atanh,mean_abs_alpha,train_map")?;
        for r in &self.epochs {
            let map = r.train_map.map(|m| m.to_string()).unwrap_or_default();
            writeln!(
                w,
                "{},{},{},{},{},{},{}",
                r.epoch, r.total, r.data, r.ridge, r.atanh, r.mean_abs_alpha, map
            )?;
        }
        Ok(())
    }
}

fn targets(data: &LabeledDataset, mode: LabelMode) -> DenseMatrix {
    let y = data.one_hot();
    match mode {
        LabelMode::PlainY => y,
        LabelMode::WhitenedY => {
            let sizes = data.class_sizes();
            let mut out = y;
            for (i, &l) in data.labels().iter().enumerate() {
                out.row_mut(i)[l] = 1.0 / (sizes[l] as f64).sqrt();
            }
            out
        }
    }
}

fn training_map(model: &DeepHashModel, data: &LabeledDataset) -> Result<f64> {
    let codes = super::encode_deep(model, data.features())?;
    let index = HammingIndex::new(codes.clone());
    Ok(evaluate(&index, &codes, data.labels(), data.labels(), 0)?.map)
}

/// Mini-batch SGD with momentum on the surrogate loss.
///
/// The generator seeded from `config.seed` first initializes the model and
/// then draws one shuffle per epoch; the last partial batch is kept. α is
/// clamped to `ALPHA_MIN` after every step.
pub fn train(
    data: &LabeledDataset,
    config: &NetworkConfig,
) -> Result<(DeepHashModel, TrainHistory)> {
    config.validate()?;
    if data.dim() != config.input_dim {
        return Err(Error::Dimension(format!(
            "config input_dim is {}, data has {} dimensions",
            config.input_dim,
            data.dim()
        )));
    }
    let mut rng = seeded_rng(config.seed);
    let mut model = DeepHashModel::initialize_with(config, data.class_count(), &mut rng)?;
    let y = targets(data, config.label_mode);
    let n = data.len();
    let mut order: Vec<usize> = (0..n).collect();
    let mut velocity: Gradients = model.params.zeros_like();
    let skip = if config.freeze_features {
        model.params.feature_slice_count()
    } else {
        0
    };
    let mut history = TrainHistory::default();

    for epoch in 1..=config.epochs {
        let diverged = || Error::Divergence {
            epoch,
            last_finite: (epoch > 1).then(|| epoch - 1),
        };
        order.shuffle(&mut rng);
        let mut sums = LossParts::default();
        let mut batches = 0usize;
        for chunk in order.chunks(config.batch_size) {
            let xb = data.features().select_columns(chunk);
            let yb = y.select_rows(chunk);
            let (parts, grads) = match model.backward(&xb, &yb) {
                Ok(v) => v,
                Err(Error::NonFinite(_)) => return Err(diverged()),
                Err(e) => return Err(e),
            };
            if !parts.total().is_finite() {
                return Err(diverged());
            }
            sums.data += parts.data * chunk.len() as f64;
            sums.ridge += parts.ridge;
            sums.atanh += parts.atanh;
            batches += 1;

            let g = grads.slices();
            for ((p, v), g) in model
                .params
                .slices_mut()
                .into_iter()
                .zip(velocity.slices_mut())
                .zip(g)
                .skip(skip)
            {
                for ((p, v), g) in p.iter_mut().zip(v.iter_mut()).zip(g) {
                    *v = config.momentum * *v - config.learning_rate * g;
                    *p += *v;
                }
            }
            model
                .params
                .alpha
                .iter_mut()
                .for_each(|a| *a = a.max(ALPHA_MIN));
        }
        if !model.params.all_finite() {
            return Err(diverged());
        }
        let record = EpochRecord {
            epoch,
            data: sums.data / n as f64,
            ridge: sums.ridge / batches as f64,
            atanh: sums.atanh / batches as f64,
            total: 0.0,
            mean_abs_alpha: model.params.alpha.iter().map(|a| a.abs()).sum::<f64>()
                / model.params.alpha.len() as f64,
            train_map: if config.track_train_map {
                Some(training_map(&model, data)?)
            } else {
                None
            },
        };
        let record = EpochRecord {
            total: record.data + record.ridge + record.atanh,
            ..record
        };
        log::debug!(
            "epoch {epoch}: total {:.6} data {:.6} mean|α| {:.4}",
            record.total,
            record.data,
            record.mean_abs_alpha
        );
        history.epochs.push(record);
    }
    Ok((model, history))
}

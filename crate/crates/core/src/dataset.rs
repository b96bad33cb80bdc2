use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;

/// Feature matrix (`d` rows, one column per item) with a class label per item.
///
/// Every class in `0..class_count` has at least one member and there are at
/// least two items. `ids` are stable source identifiers that survive splits
/// and are carried into binary code files.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledDataset {
    features: DenseMatrix,
    labels: Vec<usize>,
    class_count: usize,
    ids: Vec<u64>,
}

impl LabeledDataset {
    pub fn new(features: DenseMatrix, labels: Vec<usize>, class_count: usize) -> Result<Self> {
        let ids = (0..labels.len() as u64).collect();
        Self::with_ids(features, labels, class_count, ids)
    }

    pub fn with_ids(
        features: DenseMatrix,
        labels: Vec<usize>,
        class_count: usize,
        ids: Vec<u64>,
    ) -> Result<Self> {
        let n = features.cols();
        if labels.len() != n {
            return Err(Error::InvalidDataset(format!(
                "{n} feature columns but {} labels",
                labels.len()
            )));
        }
        if ids.len() != n {
            return Err(Error::InvalidDataset(format!(
                "{n} feature columns but {} ids",
                ids.len()
            )));
        }
        if n < 2 {
            return Err(Error::InvalidDataset(format!(
                "need at least 2 items, got {n}"
            )));
        }
        if class_count == 0 {
            return Err(Error::InvalidDataset("class count is zero".into()));
        }
        let sizes = count_classes(&labels, class_count)?;
        if let Some(empty) = sizes.iter().position(|&s| s == 0) {
            return Err(Error::InvalidDataset(format!("class {empty} has no items")));
        }
        Ok(Self {
            features,
            labels,
            class_count,
            ids,
        })
    }

    pub fn features(&self) -> &DenseMatrix {
        &self.features
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn ids(&self) -> &[u64] {
        &self.ids
    }

    pub fn class_count(&self) -> usize {
        self.class_count
    }

    pub fn dim(&self) -> usize {
        self.features.rows()
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        count_classes(&self.labels, self.class_count).expect("labels validated on construction")
    }

    /// One-hot label matrix `Y` (n × c).
    pub fn one_hot(&self) -> DenseMatrix {
        one_hot(&self.labels, self.class_count)
    }

    /// Items at the given positions, keeping their ids. Fails if the subset
    /// leaves a class empty.
    pub fn subset(&self, positions: &[usize]) -> Result<Self> {
        if positions.is_empty() {
            return Err(Error::InvalidDataset("empty subset".into()));
        }
        Self::with_ids(
            self.features.select_columns(positions),
            positions.iter().map(|&p| self.labels[p]).collect(),
            self.class_count,
            positions.iter().map(|&p| self.ids[p]).collect(),
        )
    }
}

pub(crate) fn count_classes(labels: &[usize], class_count: usize) -> Result<Vec<usize>> {
    let mut sizes = vec![0usize; class_count];
    for (i, &l) in labels.iter().enumerate() {
        if l >= class_count {
            return Err(Error::InvalidDataset(format!(
                "item {i} has label {l} outside 0..{class_count}"
            )));
        }
        sizes[l] += 1;
    }
    Ok(sizes)
}

/// `n × c` indicator matrix with a single 1 per row.
pub fn one_hot(labels: &[usize], class_count: usize) -> DenseMatrix {
    let mut y = DenseMatrix::zeros(labels.len(), class_count);
    for (i, &l) in labels.iter().enumerate() {
        y[(i, l)] = 1.0;
    }
    y
}

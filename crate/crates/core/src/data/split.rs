use std::io::Write;

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::dataset::LabeledDataset;
use crate::error::{Error, Result};
use crate::rng::seeded_rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitSpec {
    pub queries_per_class: usize,
    pub train_per_class: usize,
    #[serde(default)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplitRole {
    Query,
    /// Training item; also part of the gallery.
    Train,
    Gallery,
}

impl SplitRole {
    pub fn as_str(self) -> &'static str {
        match self {
            SplitRole::Query => "query",
            SplitRole::Train => "train",
            SplitRole::Gallery => "gallery",
        }
    }
}

/// Train, query and gallery subsets. Each subset keeps the source ids, so
/// `train.ids()` etc. map back to the source dataset.
#[derive(Debug, Clone)]
pub struct SplitResult {
    pub train: LabeledDataset,
    pub query: LabeledDataset,
    pub gallery: LabeledDataset,
    /// Role of every source item, in source order.
    pub roles: Vec<SplitRole>,
}

impl SplitResult {
    /// `source_id,role` rows; `train` items are gallery members too.
    pub fn write_manifest<W: Write>(&self, source: &LabeledDataset, mut w: W) -> Result<()> {
        writeln!(w, "source_id,role")?;
        for (id, role) in source.ids().iter().zip(&self.roles) {
            writeln!(w, "{id},{}", role.as_str())?;
        }
        Ok(())
    }
}

/// Per class, a seeded shuffle sends the first `queries_per_class` items to
/// the query set and the next `train_per_class` to the training set. The
/// gallery is every non-query item. All subsets keep source order.
pub fn split_protocol(data: &LabeledDataset, spec: &SplitSpec) -> Result<SplitResult> {
    if spec.queries_per_class == 0 || spec.train_per_class == 0 {
        return Err(Error::InvalidParameter(
            "queries_per_class and train_per_class must both be ≥ 1".into(),
        ));
    }
    let required = spec.queries_per_class + spec.train_per_class;
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); data.class_count()];
    for (pos, &l) in data.labels().iter().enumerate() {
        members[l].push(pos);
    }
    for (class, m) in members.iter().enumerate() {
        if m.len() < required {
            return Err(Error::Capacity {
                class,
                required,
                available: m.len(),
            });
        }
    }

    let mut rng = seeded_rng(spec.seed);
    let mut roles = vec![SplitRole::Gallery; data.len()];
    for m in members.iter_mut() {
        m.shuffle(&mut rng);
        for &p in &m[..spec.queries_per_class] {
            roles[p] = SplitRole::Query;
        }
        for &p in &m[spec.queries_per_class..required] {
            roles[p] = SplitRole::Train;
        }
    }

    let select = |keep: fn(SplitRole) -> bool| -> Vec<usize> {
        roles
            .iter()
            .enumerate()
            .filter(|(_, &r)| keep(r))
            .map(|(p, _)| p)
            .collect()
    };
    let query = data.subset(&select(|r| r == SplitRole::Query))?;
    let train = data.subset(&select(|r| r == SplitRole::Train))?;
    let gallery = data.subset(&select(|r| r != SplitRole::Query))?;
    Ok(SplitResult {
        train,
        query,
        gallery,
        roles,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::DenseMatrix;
    use proptest::prelude::*;
    use std::collections::HashSet;

    fn dataset(sizes: &[usize]) -> LabeledDataset {
        let labels: Vec<usize> = sizes
            .iter()
            .enumerate()
            .flat_map(|(k, &s)| std::iter::repeat(k).take(s))
            .collect();
        let n = labels.len();
        let x = DenseMatrix::from_fn(1, n, |_, j| j as f64);
        let ids = (0..n as u64).map(|i| 1000 + i).collect();
        LabeledDataset::with_ids(x, labels, sizes.len(), ids).unwrap()
    }

    #[test]
    fn infeasible_spec_names_class() {
        let ds = dataset(&[10, 6]);
        let spec = SplitSpec {
            queries_per_class: 3,
            train_per_class: 4,
            seed: 0,
        };
        match split_protocol(&ds, &spec) {
            Err(Error::Capacity {
                class,
                required,
                available,
            }) => {
                assert_eq!((class, required, available), (1, 7, 6));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn counts_and_determinism() {
        let ds = dataset(&[20, 30, 25]);
        let spec = SplitSpec {
            queries_per_class: 4,
            train_per_class: 10,
            seed: 17,
        };
        let a = split_protocol(&ds, &spec).unwrap();
        assert_eq!(a.query.len(), 12);
        assert_eq!(a.train.len(), 30);
        assert_eq!(a.gallery.len(), 75 - 12);
        let b = split_protocol(&ds, &spec).unwrap();
        assert_eq!(a.query.ids(), b.query.ids());
        assert_eq!(a.train.ids(), b.train.ids());
        let mut manifest = Vec::new();
        a.write_manifest(&ds, &mut manifest).unwrap();
        let text = String::from_utf8(manifest).unwrap();
        assert_eq!(text.lines().count(), 76);
        assert_eq!(text.matches(",query").count(), 12);
    }

    proptest! {
        #[test]
        fn partition_laws(sizes in prop::collection::vec(2usize..30, 1..5), q in 1usize..3, t in 1usize..3, seed in any::<u64>()) {
            prop_assume!(sizes.iter().all(|&s| s >= q + t) && sizes.len() * q.min(t) >= 2);
            let ds = dataset(&sizes);
            let split = split_protocol(&ds, &SplitSpec { queries_per_class: q, train_per_class: t, seed }).unwrap();
            let query: HashSet<u64> = split.query.ids().iter().copied().collect();
            let gallery: HashSet<u64> = split.gallery.ids().iter().copied().collect();
            let train: HashSet<u64> = split.train.ids().iter().copied().collect();
            prop_assert!(query.is_disjoint(&gallery));
            prop_assert!(train.is_subset(&gallery));
            prop_assert_eq!(query.len() + gallery.len(), ds.len());
            prop_assert_eq!(query.len(), q * sizes.len());
            prop_assert_eq!(train.len(), t * sizes.len());
            for (j, id) in split.query.ids().iter().enumerate() {
                let src = (id - 1000) as usize;
                prop_assert_eq!(split.query.labels()[j], ds.labels()[src]);
            }
        }
    }
}

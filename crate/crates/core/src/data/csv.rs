use std::collections::{BTreeMap, BTreeSet};
use std::fs::File;
use std::io::Write;
use std::path::Path;

use crate::dataset::LabeledDataset;
use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;

/// A feature table read from CSV.
///
/// Labels in the file may be any non-negative integers; they are compacted
/// to `0..c` in ascending order and `label_values[k]` is the file label of
/// class `k`.
#[derive(Debug, Clone)]
pub struct CsvDataset {
    pub dataset: LabeledDataset,
    pub label_values: Vec<u64>,
}

/// Raw rows of a feature CSV: features as columns, file labels and ids.
#[derive(Debug, Clone)]
pub struct CsvTable {
    pub features: DenseMatrix,
    pub labels: Vec<u64>,
    pub ids: Vec<u64>,
}

/// Reads `label,f0,...,f{d-1}` rows (header required). An optional leading
/// `id` column supplies item ids; otherwise ids are the row indices.
pub fn read_csv_table(path: impl AsRef<Path>) -> Result<CsvTable> {
    let mut reader = ::csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .trim(::csv::Trim::All)
        .from_path(path)?;
    let header = reader.headers()?.clone();
    if header.is_empty() || (header.len() == 1 && header[0].is_empty()) {
        return Err(Error::CsvEmpty);
    }
    let has_id = header.get(0) == Some("id");
    let label_col = usize::from(has_id);
    if header.get(label_col) != Some("label") {
        return Err(Error::CsvFormat {
            line: 1,
            message: "header must start with `label` (or `id,label`)".into(),
        });
    }
    let dim = header.len().saturating_sub(label_col + 1);
    if dim == 0 {
        return Err(Error::CsvFormat {
            line: 1,
            message: "no feature columns".into(),
        });
    }

    let mut values = Vec::new();
    let mut labels = Vec::new();
    let mut ids = Vec::new();
    for record in reader.records() {
        let record = record?;
        let line = record.position().map(|p| p.line()).unwrap_or(0);
        if record.len() != header.len() {
            return Err(Error::CsvRagged {
                line,
                expected: header.len(),
                found: record.len(),
            });
        }
        let parse_int = |field: usize| -> Result<u64> {
            record[field]
                .parse::<u64>()
                .map_err(|_| Error::CsvNonNumeric {
                    line,
                    field,
                    value: record[field].to_string(),
                })
        };
        if has_id {
            ids.push(parse_int(0)?);
        }
        labels.push(parse_int(label_col)?);
        for field in (label_col + 1)..record.len() {
            let v: f64 = record[field].parse().map_err(|_| Error::CsvNonNumeric {
                line,
                field,
                value: record[field].to_string(),
            })?;
            if !v.is_finite() {
                return Err(Error::CsvNonNumeric {
                    line,
                    field,
                    value: record[field].to_string(),
                });
            }
            values.push(v);
        }
    }
    let n = labels.len();
    if n == 0 {
        return Err(Error::CsvEmpty);
    }
    if !has_id {
        ids = (0..n as u64).collect();
    }
    // Rows are items; features are stored with items as columns.
    let features = DenseMatrix::new(n, dim, values)?.transpose();
    Ok(CsvTable {
        features,
        labels,
        ids,
    })
}

/// [`read_csv_table`] followed by label compaction into a labeled dataset.
pub fn load_csv_features(path: impl AsRef<Path>) -> Result<CsvDataset> {
    let table = read_csv_table(path)?;
    let compact: BTreeMap<u64, usize> = table
        .labels
        .iter()
        .copied()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .enumerate()
        .map(|(k, v)| (v, k))
        .collect();
    let label_values: Vec<u64> = compact.keys().copied().collect();
    let labels = table.labels.iter().map(|l| compact[l]).collect();
    let dataset = LabeledDataset::with_ids(table.features, labels, label_values.len(), table.ids)?;
    Ok(CsvDataset {
        dataset,
        label_values,
    })
}

/// Writes a dataset in the format read by [`load_csv_features`], with an
/// `id` column. Floats use the shortest representation that round-trips.
pub fn write_csv_features(
    path: impl AsRef<Path>,
    data: &LabeledDataset,
    label_values: Option<&[u64]>,
) -> Result<()> {
    let mut w = std::io::BufWriter::new(File::create(path)?);
    let d = data.dim();
    write!(w, "id,label")?;
    for j in 0..d {
        write!(w, ",f{j}")?;
    }
    writeln!(w)?;
    let x = data.features();
    for (item, (&label, &id)) in data.labels().iter().zip(data.ids()).enumerate() {
        let label = label_values.map_or(label as u64, |lv| lv[label]);
        write!(w, "{id},{label}")?;
        for j in 0..d {
            write!(w, ",{:?}", x[(j, item)])?;
        }
        writeln!(w)?;
    }
    w.flush()?;
    Ok(())
}

use std::collections::HashMap;
use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use dldah::codes::{BinaryCodes, HammingIndex};
use dldah::data::{
    gen_gaussian_clusters, gen_rings, load_csv_features, load_idx, read_csv_table, split_protocol,
    write_csv_features, SplitResult, SplitSpec,
};
use dldah::eval::{evaluate, EvalReport};
use dldah::ldah::fit_ldah;
use dldah::lsh::fit_lsh;
use dldah::net::{train, TrainHistory};
use dldah::verify::{run_identity_suite, VerifyOptions, VerifyReport};
use dldah::LabeledDataset;

use crate::config::{resolve, DataSource, ExperimentConfig, Method, ModelSection};
use crate::error::{CliError, CliResult};
use crate::model_file::{HashModel, ModelFile};

/// A loaded data source with the file label of every class.
pub struct LoadedData {
    pub dataset: LabeledDataset,
    pub label_values: Vec<u64>,
}

pub fn load_source(source: &DataSource, base: &Path, seed: u64) -> CliResult<LoadedData> {
    let dataset = match source {
        DataSource::Gaussian {
            classes,
            per_class,
            dim,
            separation,
        } => gen_gaussian_clusters(seed, *classes, *per_class, *dim, *separation)?,
        DataSource::Rings { per_class, noise } => gen_rings(seed, *per_class, *noise)?,
        DataSource::Csv { path } => {
            let path = resolve(base, path);
            if !path.exists() {
                return Err(CliError::config(
                    "data.path",
                    format!("{} does not exist", path.display()),
                ));
            }
            let loaded = load_csv_features(&path)?;
            return Ok(LoadedData {
                dataset: loaded.dataset,
                label_values: loaded.label_values,
            });
        }
        DataSource::Idx { images, labels } => {
            let images = resolve(base, images);
            let labels = resolve(base, labels);
            for (field, p) in [("data.images", &images), ("data.labels", &labels)] {
                if !p.exists() {
                    return Err(CliError::config(
                        field,
                        format!("{} does not exist", p.display()),
                    ));
                }
            }
            load_idx(&images, &labels)?
        }
    };
    let label_values = (0..dataset.class_count() as u64).collect();
    Ok(LoadedData {
        dataset,
        label_values,
    })
}

fn create_dir(path: &Path) -> CliResult<()> {
    fs::create_dir_all(path).map_err(|e| CliError::io(path, e))
}

fn create_file(path: &Path) -> CliResult<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| CliError::io(path, e))
}

fn finish(mut w: BufWriter<File>, path: &Path) -> CliResult<()> {
    w.flush().map_err(|e| CliError::io(path, e))
}

fn split_of(config: &ExperimentConfig, data: &LabeledDataset) -> CliResult<SplitResult> {
    let spec = SplitSpec {
        queries_per_class: config.split.queries_per_class,
        train_per_class: config.split.train_per_class,
        seed: config.seed,
    };
    Ok(split_protocol(data, &spec)?)
}

/// `item_id,label` for every item, with file label values.
fn write_labels(path: &Path, data: &LabeledDataset, label_values: &[u64]) -> CliResult<()> {
    let mut w = create_file(path)?;
    let io = |e| CliError::io(path, e);
    writeln!(w, "item_id,label").map_err(io)?;
    for (&id, &l) in data.ids().iter().zip(data.labels()) {
        writeln!(w, "{id},{}", label_values[l]).map_err(io)?;
    }
    finish(w, path)
}

#[derive(Debug)]
pub struct SynthOutputs {
    pub output_dir: PathBuf,
    pub items: usize,
}

/// Materializes the configured source and its split as CSV files:
/// `data.csv`, `train.csv`, `query.csv`, `gallery.csv`, `split.csv` and
/// `labels.csv`.
pub fn run_synth(config_path: &Path) -> CliResult<SynthOutputs> {
    let (config, base) = ExperimentConfig::load(config_path)?;
    let loaded = load_source(&config.data, &base, config.seed)?;
    let split = split_of(&config, &loaded.dataset)?;
    let out = resolve(&base, &config.output_dir);
    create_dir(&out)?;
    let lv = Some(&loaded.label_values[..]);
    write_csv_features(out.join("data.csv"), &loaded.dataset, lv)?;
    write_csv_features(out.join("train.csv"), &split.train, lv)?;
    write_csv_features(out.join("query.csv"), &split.query, lv)?;
    write_csv_features(out.join("gallery.csv"), &split.gallery, lv)?;
    let manifest = out.join("split.csv");
    let mut w = create_file(&manifest)?;
    split.write_manifest(&loaded.dataset, &mut w)?;
    finish(w, &manifest)?;
    write_labels(
        &out.join("labels.csv"),
        &loaded.dataset,
        &loaded.label_values,
    )?;
    Ok(SynthOutputs {
        output_dir: out,
        items: loaded.dataset.len(),
    })
}

/// Fits one model on the training split.
pub fn fit_model(
    section: &ModelSection,
    train_set: &LabeledDataset,
    seed: u64,
) -> CliResult<(HashModel, Option<TrainHistory>)> {
    let d = train_set.dim();
    match section {
        ModelSection::Ldah { bits, mu } => {
            if *bits > d {
                return Err(CliError::config(
                    "model.bits",
                    format!("linear hashing yields at most {d} bits for {d}-dimensional data, got {bits}"),
                ));
            }
            Ok((HashModel::Ldah(fit_ldah(train_set, *bits, *mu)?), None))
        }
        ModelSection::Dldah { bits, params } => {
            let cfg = params.network_config(d, *bits, seed);
            let (model, history) = train(train_set, &cfg)?;
            Ok((HashModel::Dldah(model), Some(history)))
        }
        ModelSection::Lsh { bits } => Ok((HashModel::Lsh(fit_lsh(d, *bits, seed)?), None)),
    }
}

fn write_history(path: &Path, history: &TrainHistory) -> CliResult<()> {
    let mut w = create_file(path)?;
    history.write_csv(&mut w)?;
    finish(w, path)
}

#[derive(Debug)]
pub struct TrainOutputs {
    pub model_path: PathBuf,
    pub history_path: Option<PathBuf>,
    pub code_bits: usize,
}

/// Fits the configured model and writes `model.json` (and `history.csv`
/// for the deep model) into the output directory.
pub fn run_train(config_path: &Path) -> CliResult<TrainOutputs> {
    let (config, base) = ExperimentConfig::load(config_path)?;
    let loaded = load_source(&config.data, &base, config.seed)?;
    let split = split_of(&config, &loaded.dataset)?;
    let out = resolve(&base, &config.output_dir);
    create_dir(&out)?;
    let (model, history) = fit_model(&config.model, &split.train, config.seed)?;
    let model_path = out.join("model.json");
    let code_bits = model.code_bits();
    ModelFile::new(model).save(&model_path)?;
    let history_path = match history {
        Some(h) => {
            let p = out.join("history.csv");
            write_history(&p, &h)?;
            Some(p)
        }
        None => None,
    };
    Ok(TrainOutputs {
        model_path,
        history_path,
        code_bits,
    })
}

/// Encodes every row of a feature CSV and writes a codes file.
pub fn run_encode(model_path: &Path, data_path: &Path, out_path: &Path) -> CliResult<BinaryCodes> {
    let file = ModelFile::load(model_path)?;
    let table = read_csv_table(data_path)?;
    let d = file.model.input_dim();
    if table.features.rows() != d {
        return Err(dldah::Error::Dimension(format!(
            "model expects {d} input dimensions, {} has {}",
            data_path.display(),
            table.features.rows()
        ))
        .into());
    }
    let codes = file.model.encode(&table.features, &table.ids)?;
    codes.save(out_path)?;
    Ok(codes)
}

/// `item_id,label` rows.
pub fn read_label_map(path: &Path) -> CliResult<HashMap<u64, u64>> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h.trim() == "item_id,label" => {}
        _ => {
            return Err(CliError::Labels(format!(
                "{}: header must be `item_id,label`",
                path.display()
            )))
        }
    }
    let mut map = HashMap::new();
    for (i, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let mut parts = line.split(',').map(str::trim);
        let parsed = match (parts.next(), parts.next(), parts.next()) {
            (Some(a), Some(b), None) => a.parse::<u64>().ok().zip(b.parse::<u64>().ok()),
            _ => None,
        };
        let (id, label) = parsed.ok_or_else(|| {
            CliError::Labels(format!(
                "{} line {}: expected `item_id,label`",
                path.display(),
                i + 1
            ))
        })?;
        if map.insert(id, label).is_some() {
            return Err(CliError::Labels(format!(
                "{}: item {id} listed twice",
                path.display()
            )));
        }
    }
    Ok(map)
}

fn labels_for(codes: &BinaryCodes, map: &HashMap<u64, u64>, what: &str) -> CliResult<Vec<usize>> {
    codes
        .ids()
        .iter()
        .map(|id| {
            map.get(id)
                .map(|&l| l as usize)
                .ok_or_else(|| CliError::Labels(format!("{what} item {id} has no label")))
        })
        .collect()
}

fn write_report(report: &EvalReport, out_dir: &Path) -> CliResult<()> {
    create_dir(out_dir)?;
    let summary = out_dir.join("summary.txt");
    let mut w = create_file(&summary)?;
    report.write_summary(&mut w)?;
    finish(w, &summary)?;
    let per_query = out_dir.join("per_query.csv");
    let mut w = create_file(&per_query)?;
    report.write_per_query_csv(&mut w)?;
    finish(w, &per_query)
}

/// Evaluates query codes against gallery codes and writes `summary.txt`
/// and `per_query.csv` into `out_dir`.
pub fn run_eval(
    gallery_path: &Path,
    queries_path: &Path,
    labels_path: &Path,
    radius: u32,
    out_dir: &Path,
) -> CliResult<EvalReport> {
    let gallery = BinaryCodes::load(gallery_path)?;
    let queries = BinaryCodes::load(queries_path)?;
    if gallery.bits() != queries.bits() {
        return Err(dldah::Error::Dimension(format!(
            "gallery codes have {} bits, query codes have {}",
            gallery.bits(),
            queries.bits()
        ))
        .into());
    }
    let map = read_label_map(labels_path)?;
    let gallery_labels = labels_for(&gallery, &map, "gallery")?;
    let query_labels = labels_for(&queries, &map, "query")?;
    let report = evaluate(
        &HammingIndex::new(gallery),
        &queries,
        &query_labels,
        &gallery_labels,
        radius,
    )?;
    write_report(&report, out_dir)?;
    Ok(report)
}

/// Runs the identity suite; fails with a numeric exit status when any
/// family exceeds its tolerance.
pub fn run_verify(seed: u64, trials: usize, corrupt_between: bool) -> CliResult<VerifyReport> {
    if trials == 0 {
        return Err(CliError::config("trials", "must be at least 1"));
    }
    Ok(run_identity_suite(
        seed,
        trials,
        VerifyOptions { corrupt_between },
    )?)
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchCell {
    pub method: Method,
    pub requested_bits: usize,
    pub code_bits: usize,
    pub report: EvalReport,
}

/// For every method and code length: fit on the training split, encode the
/// gallery and queries, evaluate. Artifacts go to
/// `output_dir/bench/<method>-<bits>/`; the MAP table goes to
/// `output_dir/bench.csv` and the hash-lookup precision table to
/// `output_dir/bench_precision.csv`.
pub fn run_bench(config_path: &Path, bits: &[usize]) -> CliResult<Vec<BenchCell>> {
    if bits.is_empty() || bits.contains(&0) {
        return Err(CliError::config(
            "bits",
            "must be a non-empty list of positive code lengths",
        ));
    }
    let (config, base) = ExperimentConfig::load(config_path)?;
    let methods = match &config.bench {
        Some(b) => b.methods.clone(),
        None => vec![Method::Lsh, Method::Ldah, Method::Dldah],
    };
    let loaded = load_source(&config.data, &base, config.seed)?;
    let split = split_of(&config, &loaded.dataset)?;
    let out = resolve(&base, &config.output_dir);
    let d = split.train.dim();

    let mut cells = Vec::new();
    for &method in &methods {
        for &r in bits {
            let mut section = config.model.for_method(method, r);
            if method == Method::Ldah && r > d {
                log::warn!("ldah: {r} bits requested but the data has {d} dimensions; using {d}");
                section = section.with_bits(d);
            }
            let (model, history) = fit_model(&section, &split.train, config.seed)?;
            let dir = out.join("bench").join(format!("{}-{r}", method.as_str()));
            create_dir(&dir)?;
            let gallery = model.encode(split.gallery.features(), split.gallery.ids())?;
            let queries = model.encode(split.query.features(), split.query.ids())?;
            gallery.save(dir.join("gallery.codes"))?;
            queries.save(dir.join("query.codes"))?;
            let code_bits = model.code_bits();
            ModelFile::new(model).save(&dir.join("model.json"))?;
            if let Some(h) = history {
                write_history(&dir.join("history.csv"), &h)?;
            }
            let report = evaluate(
                &HammingIndex::new(gallery),
                &queries,
                split.query.labels(),
                split.gallery.labels(),
                config.eval.radius,
            )?;
            write_report(&report, &dir)?;
            log::info!("{} r={r}: map {:.4}", method.as_str(), report.map);
            cells.push(BenchCell {
                method,
                requested_bits: r,
                code_bits,
                report,
            });
        }
    }
    write_table(&out.join("bench.csv"), &methods, bits, &cells, |r| r.map)?;
    write_table(
        &out.join("bench_precision.csv"),
        &methods,
        bits,
        &cells,
        |r| r.mean_precision,
    )?;
    Ok(cells)
}

/// Methods as rows, code lengths as columns.
fn write_table(
    path: &Path,
    methods: &[Method],
    bits: &[usize],
    cells: &[BenchCell],
    value: fn(&EvalReport) -> f64,
) -> CliResult<()> {
    let mut w = create_file(path)?;
    let io = |e| CliError::io(path, e);
    write!(w, "method").map_err(io)?;
    for r in bits {
        write!(w, ",{r}").map_err(io)?;
    }
    writeln!(w).map_err(io)?;
    for &m in methods {
        write!(w, "{}", m.as_str()).map_err(io)?;
        for &r in bits {
            let cell = cells
                .iter()
                .find(|c| c.method == m && c.requested_bits == r)
                .expect("every cell was computed");
            write!(w, ",{}", value(&cell.report)).map_err(io)?;
        }
        writeln!(w).map_err(io)?;
    }
    finish(w, path)
}

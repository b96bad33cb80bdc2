use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use dldah::codes::BinaryCodes;
use dldah::data::read_csv_table;
use dldah::net::{DeepHashModel, NetworkConfig};
use dldah_cli::{HashModel, ModelFile};

fn dldah(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dldah"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = dldah(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn write_config(dir: &Path, name: &str, model: &str, output_dir: &str) -> PathBuf {
    let path = dir.join(name);
    let text = format!(
        r#"{{
  "format_version": 1,
  "seed": 3,
  "data": {{"source": "gaussian", "classes": 10, "per_class": 30, "dim": 16, "separation": 4.0}},
  "split": {{"queries_per_class": 5, "train_per_class": 20}},
  "model": {model},
  "output_dir": "{output_dir}"
}}"#
    );
    fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn ldah_train_writes_one_threshold_per_bit() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "c.json",
        r#"{"type": "ldah", "bits": 16}"#,
        "out",
    );
    ok(&["train", "--config", s(&cfg)]);
    let file = ModelFile::load(&dir.path().join("out/model.json")).unwrap();
    match file.model {
        HashModel::Ldah(m) => assert_eq!(m.thresholds.len(), 16),
        other => panic!("{other:?}"),
    }
    assert!(!dir.path().join("out/history.csv").exists());
}

#[test]
fn zero_epoch_training_saves_initialization() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "c.json",
        r#"{"type": "dldah", "bits": 8, "epochs": 0, "hidden_dims": [12]}"#,
        "out",
    );
    ok(&["train", "--config", s(&cfg)]);
    let saved = fs::read_to_string(dir.path().join("out/model.json")).unwrap();
    let mut net = NetworkConfig::new(16, 8);
    net.hidden_dims = vec![12];
    net.seed = 3;
    let init = DeepHashModel::initialize(&net, 10).unwrap();
    assert_eq!(saved, ModelFile::new(HashModel::Dldah(init)).to_json());
    let history = fs::read_to_string(dir.path().join("out/history.csv")).unwrap();
    assert_eq!(history.lines().count(), 1);
}

#[test]
fn repeated_training_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let model = r#"{"type": "dldah", "bits": 8, "epochs": 3, "hidden_dims": [16]}"#;
    let a = write_config(dir.path(), "a.json", model, "a");
    let b = write_config(dir.path(), "b.json", model, "b");
    ok(&["train", "--config", s(&a)]);
    ok(&["train", "--config", s(&b)]);
    for f in ["model.json", "history.csv"] {
        assert_eq!(
            fs::read(dir.path().join("a").join(f)).unwrap(),
            fs::read(dir.path().join("b").join(f)).unwrap(),
            "{f}"
        );
    }
}

#[test]
fn synth_encode_eval_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "c.json",
        r#"{"type": "ldah", "bits": 9}"#,
        "out",
    );
    ok(&["synth", "--config", s(&cfg)]);
    ok(&["train", "--config", s(&cfg)]);
    let out = dir.path().join("out");
    for f in [
        "data.csv",
        "train.csv",
        "query.csv",
        "gallery.csv",
        "split.csv",
        "labels.csv",
    ] {
        assert!(out.join(f).exists(), "{f}");
    }
    let model = out.join("model.json");
    let gallery = out.join("gallery.codes");
    let queries = out.join("query.codes");
    ok(&[
        "encode",
        "--model",
        s(&model),
        "--data",
        s(&out.join("gallery.csv")),
        "--out",
        s(&gallery),
    ]);
    ok(&[
        "encode",
        "--model",
        s(&model),
        "--data",
        s(&out.join("query.csv")),
        "--out",
        s(&queries),
    ]);

    // decode matches a direct in-process encoding, ids included
    let file = ModelFile::load(&model).unwrap();
    let table = read_csv_table(out.join("gallery.csv")).unwrap();
    let expected = file.model.encode(&table.features, &table.ids).unwrap();
    assert_eq!(BinaryCodes::load(&gallery).unwrap(), expected);

    let report_dir = out.join("eval");
    let stdout = ok(&[
        "eval",
        "--gallery",
        s(&gallery),
        "--queries",
        s(&queries),
        "--labels",
        s(&out.join("labels.csv")),
        "--radius",
        "2",
        "--out",
        s(&report_dir),
    ]);
    assert!(stdout.starts_with("map="));
    let per_query = fs::read_to_string(report_dir.join("per_query.csv")).unwrap();
    assert_eq!(per_query.lines().count(), 1 + 50);
    let summary = fs::read_to_string(report_dir.join("summary.txt")).unwrap();
    assert!(summary.contains("radius=2\n"));
    assert!(summary.contains("evaluated_queries=50\n"));
}

#[test]
fn encode_rejects_bad_inputs() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "c.json", r#"{"type": "lsh", "bits": 8}"#, "out");
    ok(&["train", "--config", s(&cfg)]);
    let model = dir.path().join("out/model.json");

    let wrong = dir.path().join("wrong.csv");
    fs::write(&wrong, "label,a,b\n0,1.0,2.0\n").unwrap();
    let out = dldah(&[
        "encode",
        "--model",
        s(&model),
        "--data",
        s(&wrong),
        "--out",
        s(&dir.path().join("x.codes")),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("expects 16 input dimensions"));

    let empty = dir.path().join("empty.csv");
    fs::write(&empty, "label,a\n").unwrap();
    let out = dldah(&[
        "encode",
        "--model",
        s(&model),
        "--data",
        s(&empty),
        "--out",
        s(&dir.path().join("y.codes")),
    ]);
    assert_eq!(out.status.code(), Some(1));

    // a single item is fine
    let one = dir.path().join("one.csv");
    let row: Vec<String> = (0..16).map(|i| format!("{}.5", i)).collect();
    fs::write(
        &one,
        format!(
            "id,label,{}\n7,0,{}\n",
            (0..16)
                .map(|i| format!("f{i}"))
                .collect::<Vec<_>>()
                .join(","),
            row.join(",")
        ),
    )
    .unwrap();
    let codes_path = dir.path().join("one.codes");
    ok(&[
        "encode",
        "--model",
        s(&model),
        "--data",
        s(&one),
        "--out",
        s(&codes_path),
    ]);
    assert_eq!(BinaryCodes::load(&codes_path).unwrap().ids(), &[7]);
}

fn codes_file(dir: &Path, name: &str, rows: &[&str], ids: Vec<u64>) -> PathBuf {
    let signs: Vec<Vec<i8>> = rows
        .iter()
        .map(|r| r.chars().map(|c| if c == '1' { 1 } else { -1 }).collect())
        .collect();
    let path = dir.join(name);
    BinaryCodes::from_signs(&signs, ids)
        .unwrap()
        .save(&path)
        .unwrap();
    path
}

fn summary_value(text: &str, key: &str) -> f64 {
    text.lines()
        .find_map(|l| l.strip_prefix(&format!("{key}=")))
        .unwrap()
        .parse()
        .unwrap()
}

#[test]
fn eval_fixtures() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let labels = d.join("labels.csv");
    fs::write(
        &labels,
        "item_id,label\n0,0\n1,0\n2,1\n3,1\n10,1\n11,1\n12,0\n20,1\n",
    )
    .unwrap();

    // full-radius retrieval: every relevant item is inside the ball
    let g = codes_file(
        d,
        "g.codes",
        &["0000", "0001", "1110", "1111"],
        vec![0, 1, 2, 3],
    );
    let text = ok(&[
        "eval",
        "--gallery",
        s(&g),
        "--queries",
        s(&g),
        "--labels",
        s(&labels),
        "--radius",
        "4",
        "--out",
        s(&d.join("full")),
    ]);
    assert_eq!(summary_value(&text, "mean_recall_at_radius"), 1.0);

    // radius 0 with no exact match
    let q = codes_file(d, "q.codes", &["0011"], vec![2]);
    let text = ok(&[
        "eval",
        "--gallery",
        s(&g),
        "--queries",
        s(&q),
        "--labels",
        s(&labels),
        "--radius",
        "0",
        "--out",
        s(&d.join("r0")),
    ]);
    assert_eq!(summary_value(&text, "mean_precision_at_radius"), 0.0);

    // shared toy fixture: AP 5/6, precision = recall = F = 1/2
    let g = codes_file(d, "toy_g.codes", &["100", "111", "110"], vec![10, 11, 12]);
    let q = codes_file(d, "toy_q.codes", &["000"], vec![20]);
    let text = ok(&[
        "eval",
        "--gallery",
        s(&g),
        "--queries",
        s(&q),
        "--labels",
        s(&labels),
        "--out",
        s(&d.join("toy")),
    ]);
    assert!((summary_value(&text, "map") - 5.0 / 6.0).abs() < 1e-15);
    assert_eq!(summary_value(&text, "mean_precision_at_radius"), 0.5);
    assert_eq!(summary_value(&text, "mean_recall_at_radius"), 0.5);
    assert_eq!(summary_value(&text, "mean_f_measure_at_radius"), 0.5);

    // width mismatch and missing labels are validation errors
    let out = dldah(&[
        "eval",
        "--gallery",
        s(&g),
        "--queries",
        s(&d.join("q.codes")),
        "--labels",
        s(&labels),
        "--out",
        s(&d.join("bad")),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let partial = d.join("partial.csv");
    fs::write(&partial, "item_id,label\n10,1\n").unwrap();
    let out = dldah(&[
        "eval",
        "--gallery",
        s(&g),
        "--queries",
        s(&q),
        "--labels",
        s(&partial),
        "--out",
        s(&d.join("bad2")),
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_reports_six_families_and_catches_corruption() {
    let text = ok(&["verify", "--seed", "4", "--trials", "1"]);
    assert_eq!(
        text.lines().filter(|l| l.contains("max_residual=")).count(),
        6
    );
    assert!(!text.contains("FAIL"));
    let out = dldah(&["verify", "--seed", "4", "--trials", "1", "--corrupt-sb"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(dldah(&["verify", "--trials", "0"]).status.code(), Some(1));
}

#[test]
fn invalid_config_exits_with_validation_status() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "c.json",
        r#"{"type": "ldah", "bits": 0}"#,
        "out",
    );
    let out = dldah(&["train", "--config", s(&cfg)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("model.bits"));

    let missing = dir.path().join("m.json");
    fs::write(
        &missing,
        r#"{"format_version": 1, "data": {"source": "csv", "path": "nope.csv"},
            "split": {"queries_per_class": 1, "train_per_class": 1},
            "model": {"type": "lsh", "bits": 4}, "output_dir": "o"}"#,
    )
    .unwrap();
    let out = dldah(&["train", "--config", s(&missing)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("data.path"));
}

#[test]
fn small_bench_is_deterministic_and_table_shaped() {
    let dir = tempfile::tempdir().unwrap();
    let model = r#"{"type": "dldah", "bits": 8, "epochs": 2, "hidden_dims": [16]}"#;
    let a = write_config(dir.path(), "a.json", model, "a");
    let b = write_config(dir.path(), "b.json", model, "b");
    ok(&["bench", "--config", s(&a), "--bits", "4,8"]);
    ok(&["bench", "--config", s(&b), "--bits", "4,8"]);
    let table = fs::read_to_string(dir.path().join("a/bench.csv")).unwrap();
    let lines: Vec<&str> = table.lines().collect();
    assert_eq!(lines[0], "method,4,8");
    assert_eq!(lines.len(), 4);
    assert!(
        lines[1].starts_with("lsh,")
            && lines[2].starts_with("ldah,")
            && lines[3].starts_with("dldah,")
    );
    for sub in [
        "bench.csv",
        "bench_precision.csv",
        "bench/dldah-8/model.json",
        "bench/dldah-8/gallery.codes",
        "bench/ldah-4/summary.txt",
    ] {
        assert_eq!(
            fs::read(dir.path().join("a").join(sub)).unwrap(),
            fs::read(dir.path().join("b").join(sub)).unwrap(),
            "{sub}"
        );
    }
}

//! End-to-end tests of the binary: ingest/query/fetch/delete flows,
//! translation output, and exit codes.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn vextra(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vextra"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn stderr(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).into_owned()
}

fn write_config(dir: &Path, provider: &str) -> String {
    let path = dir.join("config.json");
    fs::write(
        &path,
        format!(
            r#"{{"provider":"{provider}","persist_path":"{}"}}"#,
            dir.join("store.json").display()
        ),
    )
    .unwrap();
    path.to_string_lossy().into_owned()
}

fn record_line(i: usize) -> String {
    format!(
        r#"{{"id":"r{i}","vector":[{},{}],"payload":{{"category":"{}","year":{}}}}}"#,
        i as f64 / 100.0,
        1.0 - i as f64 / 100.0,
        ["a", "b", "c", "d", "e"][i % 5],
        2018 + (i % 8)
    )
}

#[test]
fn ingest_batches_and_reports_total() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "memory");
    let jsonl = dir.path().join("data.jsonl");
    let lines: Vec<String> = (0..100).map(record_line).collect();
    fs::write(&jsonl, lines.join("\n")).unwrap();

    let out = vextra(
        dir.path(),
        &[
            "ingest",
            "--config",
            &config,
            "--collection",
            "c",
            "--file",
            jsonl.to_str().unwrap(),
            "--batch-size",
            "10",
            "--create",
            "--dimension",
            "2",
            "--metric",
            "cosine",
        ],
    );
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(stdout(&out).trim(), "ingested 100");
}

#[test]
fn malformed_line_names_the_line_and_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "memory");
    let jsonl = dir.path().join("data.jsonl");
    let mut lines: Vec<String> = (0..10).map(record_line).collect();
    lines[6] = "{not json".to_string();
    fs::write(&jsonl, lines.join("\n")).unwrap();

    let out = vextra(
        dir.path(),
        &[
            "ingest",
            "--config",
            &config,
            "--collection",
            "c",
            "--file",
            jsonl.to_str().unwrap(),
            "--create",
            "--dimension",
            "2",
        ],
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 7"), "{}", stderr(&out));
}

#[test]
fn reingesting_the_same_file_leaves_the_store_identical() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "memory");
    let jsonl = dir.path().join("data.jsonl");
    let lines: Vec<String> = (0..20).map(record_line).collect();
    fs::write(&jsonl, lines.join("\n")).unwrap();

    let ingest_args = [
        "ingest",
        "--config",
        &config,
        "--collection",
        "c",
        "--file",
        jsonl.to_str().unwrap(),
    ];
    let create_args: Vec<&str> = ingest_args
        .iter()
        .copied()
        .chain(["--create", "--dimension", "2"])
        .collect();
    assert!(vextra(dir.path(), &create_args).status.success());
    let first = fs::read(dir.path().join("store.json")).unwrap();

    assert!(vextra(dir.path(), &ingest_args).status.success());
    let second = fs::read(dir.path().join("store.json")).unwrap();
    assert_eq!(first, second);
}

#[test]
fn query_returns_three_lines_on_three_row_collection() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "memory");
    let jsonl = dir.path().join("data.jsonl");
    let lines: Vec<String> = (0..3).map(record_line).collect();
    fs::write(&jsonl, lines.join("\n")).unwrap();
    let out = vextra(
        dir.path(),
        &[
            "ingest",
            "--config",
            &config,
            "--collection",
            "c",
            "--file",
            jsonl.to_str().unwrap(),
            "--create",
            "--dimension",
            "2",
        ],
    );
    assert!(out.status.success(), "{}", stderr(&out));

    let out = vextra(
        dir.path(),
        &[
            "query",
            "--config",
            &config,
            "--collection",
            "c",
            "--vector",
            "0.5,0.5",
            "--top-k",
            "10",
        ],
    );
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(stdout(&out).lines().count(), 3);
    for line in stdout(&out).lines() {
        let value: serde_json::Value = serde_json::from_str(line).unwrap();
        assert!(value.get("id").is_some());
        assert!(value.get("similarity_score").is_some());
    }
}

#[test]
fn filtered_query_returns_only_matching_ids() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "memory");
    let jsonl = dir.path().join("data.jsonl");
    let lines: Vec<String> = (0..20).map(record_line).collect();
    fs::write(&jsonl, lines.join("\n")).unwrap();
    vextra(
        dir.path(),
        &[
            "ingest",
            "--config",
            &config,
            "--collection",
            "c",
            "--file",
            jsonl.to_str().unwrap(),
            "--create",
            "--dimension",
            "2",
        ],
    );

    let out = vextra(
        dir.path(),
        &[
            "query",
            "--config",
            &config,
            "--collection",
            "c",
            "--vector",
            "0.5,0.5",
            "--top-k",
            "20",
            "--filter",
            r#"{"category":{"$in":["a","b"]}}"#,
        ],
    );
    assert!(out.status.success(), "{}", stderr(&out));
    for line in stdout(&out).lines() {
        let value: serde_json::Value = serde_json::from_str(line).unwrap();
        let category = value["payload"]["category"].as_str().unwrap();
        assert!(category == "a" || category == "b");
    }
}

#[test]
fn fetch_and_delete_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "memory");
    let jsonl = dir.path().join("data.jsonl");
    let lines: Vec<String> = (0..5).map(record_line).collect();
    fs::write(&jsonl, lines.join("\n")).unwrap();
    vextra(
        dir.path(),
        &[
            "ingest",
            "--config",
            &config,
            "--collection",
            "c",
            "--file",
            jsonl.to_str().unwrap(),
            "--create",
            "--dimension",
            "2",
        ],
    );

    let out = vextra(
        dir.path(),
        &["fetch", "--config", &config, "--collection", "c", "--ids", "r0,r3,missing"],
    );
    assert_eq!(stdout(&out).lines().count(), 2);

    let out = vextra(
        dir.path(),
        &["delete", "--config", &config, "--collection", "c", "--ids", "r0"],
    );
    assert_eq!(stdout(&out).trim(), "deleted 1");
    let out = vextra(
        dir.path(),
        &["delete", "--config", &config, "--collection", "c", "--ids", "r0"],
    );
    assert_eq!(stdout(&out).trim(), "deleted 0");
}

#[test]
fn translate_outputs_per_target() {
    let dir = tempfile::tempdir().unwrap();
    let filter = r#"{"$and":[{"genre":{"$eq":"drama"}},{"year":{"$gte":2020}}]}"#;

    let out = vextra(dir.path(), &["translate", "--target", "qdrant", "--filter", filter]);
    assert!(out.status.success());
    let body: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(
        body,
        serde_json::json!({"must": [
            {"key": "genre", "match": {"value": "drama"}},
            {"key": "year", "range": {"gte": 2020}}
        ]})
    );

    let out = vextra(
        dir.path(),
        &["translate", "--target", "milvus", "--filter", r#"{"year":{"$gt":2020}}"#],
    );
    assert_eq!(stdout(&out).trim_end(), "(year > 2020)");

    // Match-all renders to no output for weaviate.
    let out = vextra(dir.path(), &["translate", "--target", "weaviate", "--filter", "{}"]);
    assert!(out.status.success());
    assert!(stdout(&out).is_empty());
}

#[test]
fn exit_codes_separate_usage_from_backend_failures() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "memory");

    // Parse failure: exit 2 with the unified error message on stderr.
    let out = vextra(
        dir.path(),
        &["translate", "--target", "qdrant", "--filter", r#"{"$bogus":[]}"#],
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("$bogus"));

    // Backend failure: exit 3.
    let out = vextra(
        dir.path(),
        &[
            "query",
            "--config",
            &config,
            "--collection",
            "nonexistent",
            "--vector",
            "0.1,0.2",
        ],
    );
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("NotFoundError"), "{}", stderr(&out));

    // Unknown provider: configuration error, exit 2.
    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"provider":"qdrant","host":"localhost","port":"6333"}"#).unwrap();
    let out = vextra(
        dir.path(),
        &["list-collections", "--config", bad.to_str().unwrap()],
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("qdrant"));
}

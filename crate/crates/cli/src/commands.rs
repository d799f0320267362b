//! Implementations of the CLI verbs.

use std::fs;
use std::io::{BufRead, BufReader, Write as _};
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Duration;

use serde::Serialize;

use vextra::adapter::{default_registry, ClientConfig};
use vextra::model::{MetricKind, Payload, Record, RecordId};
use vextra::transpile::{transpile, NativeFilter, Target};
use vextra::{ErrorCode, UnifiedClient, UnifiedError, VextraError};

use crate::bench::{render_table, BenchConfig, BenchReport, OpKind};

/// A command failure carrying the process exit code: 2 for usage and
/// validation problems, 3 for backend failures.
#[derive(Debug)]
pub struct CliFailure {
    pub exit_code: i32,
    pub message: String,
}

impl CliFailure {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            exit_code: 2,
            message: message.into(),
        }
    }
}

fn exit_code_for(code: ErrorCode) -> i32 {
    match code {
        ErrorCode::Validation | ErrorCode::Configuration | ErrorCode::Schema => 2,
        _ => 3,
    }
}

impl From<UnifiedError> for CliFailure {
    fn from(err: UnifiedError) -> Self {
        Self {
            exit_code: exit_code_for(err.code),
            message: err.to_string(),
        }
    }
}

impl From<VextraError> for CliFailure {
    fn from(err: VextraError) -> Self {
        Self {
            exit_code: exit_code_for(err.code),
            message: err.to_string(),
        }
    }
}

pub fn load_config(path: &Path) -> Result<ClientConfig, CliFailure> {
    let bytes = fs::read(path).map_err(|e| {
        CliFailure::usage(format!("cannot read config {}: {e}", path.display()))
    })?;
    let config: ClientConfig = serde_json::from_slice(&bytes).map_err(|e| {
        CliFailure::usage(format!("malformed config {}: {e}", path.display()))
    })?;
    Ok(config)
}

pub fn connect(path: &Path) -> Result<UnifiedClient, CliFailure> {
    let config = load_config(path)?;
    Ok(UnifiedClient::connect(&config, &default_registry())?)
}

fn parse_metric(metric: &str) -> Result<MetricKind, CliFailure> {
    Ok(MetricKind::from_str(metric)?)
}

pub fn create_collection(
    config: &Path,
    collection: &str,
    dimension: usize,
    metric: &str,
) -> Result<(), CliFailure> {
    let client = connect(config)?;
    client.create_collection(collection, dimension, parse_metric(metric)?, None)?;
    println!("created {collection}");
    Ok(())
}

pub fn delete_collection(config: &Path, collection: &str) -> Result<(), CliFailure> {
    let client = connect(config)?;
    client.delete_collection(collection)?;
    println!("deleted {collection}");
    Ok(())
}

pub fn list_collections(config: &Path) -> Result<(), CliFailure> {
    let client = connect(config)?;
    for name in client.list_collections()? {
        println!("{name}");
    }
    Ok(())
}

pub fn ingest(
    config: &Path,
    collection: &str,
    file: &Path,
    batch_size: usize,
    create: bool,
    dimension: Option<usize>,
    metric: Option<String>,
) -> Result<(), CliFailure> {
    if batch_size == 0 {
        return Err(CliFailure::usage("--batch-size must be at least 1"));
    }
    let client = connect(config)?;
    if create {
        let dimension = dimension
            .ok_or_else(|| CliFailure::usage("--create requires --dimension"))?;
        let metric = metric.unwrap_or_else(|| "cosine".to_string());
        client.create_collection(collection, dimension, parse_metric(&metric)?, None)?;
    }

    let reader = BufReader::new(fs::File::open(file).map_err(|e| {
        CliFailure::usage(format!("cannot read {}: {e}", file.display()))
    })?);

    let mut batch: Vec<(usize, Record)> = Vec::with_capacity(batch_size);
    let mut total = 0usize;
    let flush = |batch: &mut Vec<(usize, Record)>| -> Result<usize, CliFailure> {
        if batch.is_empty() {
            return Ok(0);
        }
        let first_line = batch[0].0;
        let last_line = batch[batch.len() - 1].0;
        let records: Vec<Record> = batch.drain(..).map(|(_, r)| r).collect();
        client.upsert(collection, &records).map_err(|e| CliFailure {
            exit_code: exit_code_for(e.code),
            message: format!("batch at lines {first_line}-{last_line}: {e}"),
        })
    };

    for (index, line) in reader.lines().enumerate() {
        let line_number = index + 1;
        let line = line.map_err(|e| {
            CliFailure::usage(format!("line {line_number}: read error: {e}"))
        })?;
        if line.trim().is_empty() {
            continue;
        }
        let record: Record = serde_json::from_str(&line).map_err(|e| {
            CliFailure::usage(format!("line {line_number}: malformed record: {e}"))
        })?;
        batch.push((line_number, record));
        if batch.len() == batch_size {
            total += flush(&mut batch)?;
        }
    }
    total += flush(&mut batch)?;
    println!("ingested {total}");
    Ok(())
}

#[derive(Serialize)]
struct ResultLine<'a> {
    id: &'a RecordId,
    similarity_score: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    payload: Option<&'a Payload>,
}

pub fn parse_vector(text: &str) -> Result<Vec<f64>, CliFailure> {
    text.split(',')
        .map(|part| {
            part.trim()
                .parse::<f64>()
                .map_err(|e| CliFailure::usage(format!("bad vector component {part:?}: {e}")))
        })
        .collect()
}

pub fn query(
    config: &Path,
    collection: &str,
    vector: Option<String>,
    vector_file: Option<PathBuf>,
    top_k: usize,
    filter: Option<String>,
) -> Result<(), CliFailure> {
    let vector = match (vector, vector_file) {
        (Some(text), None) => parse_vector(&text)?,
        (None, Some(path)) => {
            let bytes = fs::read(&path).map_err(|e| {
                CliFailure::usage(format!("cannot read {}: {e}", path.display()))
            })?;
            serde_json::from_slice::<Vec<f64>>(&bytes).map_err(|e| {
                CliFailure::usage(format!("{} must hold a JSON array: {e}", path.display()))
            })?
        }
        _ => {
            return Err(CliFailure::usage(
                "exactly one of --vector or --vector-file is required",
            ))
        }
    };
    let filter_value = filter
        .map(|text| parse_filter_text(&text))
        .transpose()?;

    let client = connect(config)?;
    let results = client.query(collection, &vector, top_k, filter_value.as_ref(), None)?;
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    for result in &results {
        let line = ResultLine {
            id: &result.id,
            similarity_score: result.similarity_score,
            payload: result.payload.as_ref(),
        };
        writeln!(out, "{}", serde_json::to_string(&line).expect("serializable")).ok();
    }
    Ok(())
}

pub fn parse_ids(text: &str) -> Vec<RecordId> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|part| match part.parse::<i64>() {
            Ok(n) => RecordId::Int(n),
            Err(_) => RecordId::Str(part.to_string()),
        })
        .collect()
}

pub fn fetch(config: &Path, collection: &str, ids: &str) -> Result<(), CliFailure> {
    let client = connect(config)?;
    let records = client.fetch(collection, &parse_ids(ids))?;
    for record in &records {
        println!("{}", serde_json::to_string(record).expect("serializable"));
    }
    Ok(())
}

pub fn delete(config: &Path, collection: &str, ids: &str) -> Result<(), CliFailure> {
    let client = connect(config)?;
    let removed = client.delete(collection, &parse_ids(ids))?;
    println!("deleted {removed}");
    Ok(())
}

fn parse_filter_text(text: &str) -> Result<serde_json::Value, CliFailure> {
    serde_json::from_str(text)
        .map_err(|e| CliFailure::usage(format!("filter is not valid JSON: {e}")))
}

pub fn translate(target: &str, filter: &str) -> Result<(), CliFailure> {
    let target = Target::from_str(target)?;
    let source = parse_filter_text(filter)?;
    let ast = vextra::parse_filter(&source)?;
    match transpile(target, &ast)? {
        NativeFilter::Pinecone(body) | NativeFilter::Qdrant(body) => {
            println!("{}", serde_json::to_string_pretty(&body).expect("serializable"));
        }
        NativeFilter::Weaviate { text, .. } => {
            if !text.is_empty() {
                println!("{text}");
            }
        }
        NativeFilter::Milvus(expr) => {
            if !expr.is_empty() {
                println!("{expr}");
            }
        }
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
pub struct BenchArgs {
    pub config: Option<PathBuf>,
    pub op: String,
    pub batch_sizes: String,
    pub iterations: usize,
    pub concurrency: usize,
    pub per_call_ms: Option<f64>,
    pub per_record_ms: Option<f64>,
    pub seed: u64,
    pub top_k: usize,
    pub dimension: usize,
    pub rows: usize,
    pub window_secs: f64,
    pub json: Option<PathBuf>,
}

pub fn bench(args: BenchArgs) -> Result<Vec<BenchReport>, CliFailure> {
    let op = OpKind::from_str(&args.op).map_err(CliFailure::usage)?;
    let batch_sizes: Vec<usize> = args
        .batch_sizes
        .split(',')
        .map(|part| {
            part.trim()
                .parse::<usize>()
                .map_err(|e| CliFailure::usage(format!("bad batch size {part:?}: {e}")))
        })
        .collect::<Result<_, _>>()?;
    if args.iterations == 0 {
        return Err(CliFailure::usage("--iterations must be at least 1"));
    }
    if args.concurrency == 0 {
        return Err(CliFailure::usage("--concurrency must be at least 1"));
    }

    // The harness isolates middleware cost, so only the deterministic
    // built-in backends are allowed.
    let mut per_call_ms = 1.0;
    let mut per_record_ms = 0.01;
    if let Some(path) = &args.config {
        let config = load_config(path)?;
        match config.provider.as_str() {
            "simulated" | "memory" | "memory-a" | "memory-b" => {}
            other => {
                return Err(CliFailure::usage(format!(
                    "ConfigurationError: bench requires a simulated or memory provider, got {other:?}"
                )))
            }
        }
        if let Some(v) = config.per_call_latency_ms {
            per_call_ms = v;
        }
        if let Some(v) = config.per_record_latency_ms {
            per_record_ms = v;
        }
    }
    if let Some(v) = args.per_call_ms {
        per_call_ms = v;
    }
    if let Some(v) = args.per_record_ms {
        per_record_ms = v;
    }
    if !(per_call_ms.is_finite() && per_call_ms >= 0.0)
        || !(per_record_ms.is_finite() && per_record_ms >= 0.0)
    {
        return Err(CliFailure::usage("latency knobs must be finite and non-negative"));
    }

    let config = BenchConfig {
        op,
        batch_sizes,
        iterations: args.iterations,
        warmup: 100.min(args.iterations),
        concurrency: args.concurrency,
        per_call_ms,
        per_record_ms,
        seed: args.seed,
        top_k: args.top_k,
        dimension: args.dimension,
        rows: args.rows,
        window: Duration::from_secs_f64(args.window_secs.max(0.0)),
    };

    let reports = crate::bench::run_bench(&config)?;
    print!("{}", render_table(&reports));
    let json = serde_json::to_string_pretty(&reports).expect("serializable");
    println!("{json}");
    if let Some(path) = &args.json {
        fs::write(path, &json).map_err(|e| {
            CliFailure::usage(format!("cannot write {}: {e}", path.display()))
        })?;
    }
    Ok(reports)
}

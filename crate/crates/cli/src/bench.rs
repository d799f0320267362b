//! Overhead benchmark harness.
//!
//! Each cell runs the same workload in two modes against one simulated
//! backend: Direct invokes the adapter with a pre-built AST and
//! pre-validated records, bypassing the client entirely; Vextra goes
//! through the full client path, including filter parsing and validation.
//! The overhead is `(vextra_mean - direct_mean) / direct_mean * 100`,
//! computed from the same report's means.
//!
//! Latency is measured serially with interleaved mode order and a discarded
//! warm-up; throughput runs each mode with concurrent workers over a fixed
//! wall-clock window.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;
use std::time::{Duration, Instant};

use serde::Serialize;

use vextra::adapter::{SimulatedAdapter, VectorAdapter};
use vextra::filter::FilterAst;
use vextra::model::{MetricKind, Record};
use vextra::{UnifiedClient, UnifiedError};

use crate::workload;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OpKind {
    Upsert,
    Query,
    QueryFiltered,
}

impl OpKind {
    pub fn name(self) -> &'static str {
        match self {
            OpKind::Upsert => "upsert",
            OpKind::Query => "query",
            OpKind::QueryFiltered => "query_filtered",
        }
    }
}

impl std::str::FromStr for OpKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "upsert" => Ok(OpKind::Upsert),
            "query" => Ok(OpKind::Query),
            "query-filtered" | "query_filtered" => Ok(OpKind::QueryFiltered),
            other => Err(format!(
                "unknown op {other:?}; expected upsert, query, or query-filtered"
            )),
        }
    }
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub op: OpKind,
    /// Batch sizes for upsert cells; ignored for query ops.
    pub batch_sizes: Vec<usize>,
    pub iterations: usize,
    pub warmup: usize,
    pub concurrency: usize,
    pub per_call_ms: f64,
    pub per_record_ms: f64,
    pub seed: u64,
    pub top_k: usize,
    pub dimension: usize,
    /// Corpus size pre-loaded for query cells.
    pub rows: usize,
    /// Wall-clock window for the throughput phase; zero skips it.
    pub window: Duration,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            op: OpKind::Upsert,
            batch_sizes: vec![1, 100, 1000],
            iterations: 1000,
            warmup: 100,
            concurrency: 16,
            per_call_ms: 1.0,
            per_record_ms: 0.01,
            seed: 42,
            top_k: 10,
            dimension: 25,
            rows: 1000,
            window: Duration::from_secs(10),
        }
    }
}

/// Fraction of the slowest samples dropped from the mean. The simulated
/// backend gives each call a hard busy-time floor, so the latency
/// distribution is one-sided: a floor plus a sparse preemption tail.
/// Trimming the tail symmetrically in both modes leaves the mode
/// difference unbiased while keeping scheduler outliers from swamping it.
const TRIM_TOP: f64 = 0.05;

#[derive(Debug, Clone, Serialize)]
pub struct LatencyStats {
    /// Mean over the samples with the slowest 5% dropped.
    pub mean: f64,
    /// Median of all samples.
    pub p50: f64,
    /// 99th percentile of all samples.
    pub p99: f64,
}

impl LatencyStats {
    fn from_samples(samples: &mut [f64]) -> Self {
        samples.sort_by(|a, b| a.partial_cmp(b).expect("finite latencies"));
        let n = samples.len();
        let kept = (n - (n as f64 * TRIM_TOP).ceil() as usize).max(1);
        let mean = samples[..kept].iter().sum::<f64>() / kept as f64;
        let percentile = |p: usize| samples[((n * p) / 100).min(n - 1)];
        Self {
            mean,
            p50: percentile(50),
            p99: percentile(99),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchReport {
    pub op_kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub batch_size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub top_k: Option<usize>,
    pub iterations: usize,
    pub warmup: usize,
    pub concurrency: usize,
    pub seed: u64,
    pub direct_latency_ms: LatencyStats,
    pub vextra_latency_ms: LatencyStats,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub direct_throughput_ops_per_sec: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vextra_throughput_ops_per_sec: Option<f64>,
    pub overhead_percent: f64,
}

/// One benchmark cell: the workload closures for both modes.
struct Cell {
    label: Option<usize>,
    top_k: Option<usize>,
    direct: Box<dyn Fn(usize) + Send + Sync>,
    vextra: Box<dyn Fn(usize) + Send + Sync>,
}

pub fn run_bench(config: &BenchConfig) -> Result<Vec<BenchReport>, UnifiedError> {
    let mut reports = Vec::new();
    match config.op {
        OpKind::Upsert => {
            for &batch in &config.batch_sizes {
                let cell = upsert_cell(config, batch)?;
                reports.push(measure(config, cell));
            }
        }
        OpKind::Query | OpKind::QueryFiltered => {
            let cell = query_cell(config, config.op == OpKind::QueryFiltered)?;
            reports.push(measure(config, cell));
        }
    }
    Ok(reports)
}

fn build_backend(config: &BenchConfig) -> (Arc<SimulatedAdapter>, UnifiedClient) {
    let adapter = Arc::new(SimulatedAdapter::new(
        config.per_call_ms,
        config.per_record_ms,
    ));
    let client = UnifiedClient::bind(
        "simulated".into(),
        Arc::clone(&adapter) as Arc<dyn VectorAdapter>,
    );
    (adapter, client)
}

fn upsert_cell(config: &BenchConfig, batch: usize) -> Result<Cell, UnifiedError> {
    let (adapter, client) = build_backend(config);
    for name in ["direct", "vextra"] {
        client.create_collection(name, config.dimension, MetricKind::Cosine, None)?;
    }
    let records: Arc<Vec<Record>> =
        Arc::new(workload::records(config.seed, batch, config.dimension));

    let direct_records = Arc::clone(&records);
    let direct_adapter = Arc::clone(&adapter);
    let direct = move |_i: usize| {
        direct_adapter
            .upsert("direct", &direct_records)
            .expect("benchmark upsert");
    };

    let client = Arc::new(client);
    let vextra = move |_i: usize| {
        client
            .upsert("vextra", &records)
            .expect("benchmark upsert");
    };

    Ok(Cell {
        label: Some(batch),
        top_k: None,
        direct: Box::new(direct),
        vextra: Box::new(vextra),
    })
}

fn query_cell(config: &BenchConfig, filtered: bool) -> Result<Cell, UnifiedError> {
    let (adapter, client) = build_backend(config);
    client.create_collection("corpus", config.dimension, MetricKind::Cosine, None)?;
    let corpus = workload::records(config.seed, config.rows, config.dimension);
    client.upsert("corpus", &corpus)?;

    let queries: Arc<Vec<Vec<f64>>> = Arc::new(workload::query_vectors(
        config.seed ^ 0x51ab,
        256,
        config.dimension,
    ));
    let filter_doc = filtered.then(workload::five_value_in_filter);
    let ast = match &filter_doc {
        Some(doc) => vextra::parse_filter(doc).expect("benchmark filter is valid"),
        None => FilterAst::MatchAll,
    };
    let top_k = config.top_k;

    let direct_queries = Arc::clone(&queries);
    let direct = move |i: usize| {
        let q = &direct_queries[i % direct_queries.len()];
        adapter
            .query("corpus", q, top_k, &ast, None)
            .expect("benchmark query");
    };

    let client = Arc::new(client);
    let vextra = move |i: usize| {
        let q = &queries[i % queries.len()];
        client
            .query("corpus", q, top_k, filter_doc.as_ref(), None)
            .expect("benchmark query");
    };

    Ok(Cell {
        label: None,
        top_k: Some(top_k),
        direct: Box::new(direct),
        vextra: Box::new(vextra),
    })
}

fn measure(config: &BenchConfig, cell: Cell) -> BenchReport {
    let total = config.warmup + config.iterations;
    let mut direct_samples = Vec::with_capacity(total);
    let mut vextra_samples = Vec::with_capacity(total);

    let time_one = |f: &(dyn Fn(usize) + Send + Sync), i: usize| -> f64 {
        let start = Instant::now();
        f(i);
        start.elapsed().as_secs_f64() * 1e3
    };

    // Interleave the two modes, alternating which goes first, so drift and
    // scheduler noise land on both equally.
    for i in 0..total {
        if i % 2 == 0 {
            direct_samples.push(time_one(&*cell.direct, i));
            vextra_samples.push(time_one(&*cell.vextra, i));
        } else {
            vextra_samples.push(time_one(&*cell.vextra, i));
            direct_samples.push(time_one(&*cell.direct, i));
        }
    }
    let direct_stats = LatencyStats::from_samples(&mut direct_samples[config.warmup..]);
    let vextra_stats = LatencyStats::from_samples(&mut vextra_samples[config.warmup..]);

    let (direct_tput, vextra_tput) = if config.window.is_zero() {
        (None, None)
    } else {
        (
            Some(throughput(&cell.direct, config)),
            Some(throughput(&cell.vextra, config)),
        )
    };

    let overhead_percent =
        (vextra_stats.mean - direct_stats.mean) / direct_stats.mean * 100.0;

    BenchReport {
        op_kind: config.op.name().to_string(),
        batch_size: cell.label,
        top_k: cell.top_k,
        iterations: config.iterations,
        warmup: config.warmup,
        concurrency: config.concurrency,
        seed: config.seed,
        direct_latency_ms: direct_stats,
        vextra_latency_ms: vextra_stats,
        direct_throughput_ops_per_sec: direct_tput,
        vextra_throughput_ops_per_sec: vextra_tput,
        overhead_percent,
    }
}

/// Ops completed per second by `concurrency` workers over the window.
fn throughput(op: &(dyn Fn(usize) + Send + Sync), config: &BenchConfig) -> f64 {
    let completed = AtomicUsize::new(0);
    let deadline = Instant::now() + config.window;
    std::thread::scope(|scope| {
        for worker in 0..config.concurrency {
            let completed = &completed;
            let op = &op;
            scope.spawn(move || {
                let mut i = worker * 7919;
                while Instant::now() < deadline {
                    op(i);
                    completed.fetch_add(1, Ordering::Relaxed);
                    i += 1;
                }
            });
        }
    });
    completed.load(Ordering::Relaxed) as f64 / config.window.as_secs_f64()
}

/// Human-readable table, one row per report.
pub fn render_table(reports: &[BenchReport]) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{:<16} {:>8} {:>6} {:>12} {:>12} {:>12} {:>12} {:>10}\n",
        "op", "batch", "top_k", "direct mean", "vextra mean", "direct p99", "vextra p99", "overhead"
    ));
    for report in reports {
        out.push_str(&format!(
            "{:<16} {:>8} {:>6} {:>9.4} ms {:>9.4} ms {:>9.4} ms {:>9.4} ms {:>9.3}%\n",
            report.op_kind,
            report
                .batch_size
                .map(|b| b.to_string())
                .unwrap_or_else(|| "-".into()),
            report
                .top_k
                .map(|k| k.to_string())
                .unwrap_or_else(|| "-".into()),
            report.direct_latency_ms.mean,
            report.vextra_latency_ms.mean,
            report.direct_latency_ms.p99,
            report.vextra_latency_ms.p99,
            report.overhead_percent,
        ));
    }
    out
}

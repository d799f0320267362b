use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use vextra_cli::commands::{self, BenchArgs, CliFailure};

/// Unified vector-database client: one API and one filter language over
/// pluggable backends, with translation inspection and an overhead
/// benchmark harness.
#[derive(Parser)]
#[command(name = "vextra", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Create a collection.
    CreateCollection {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        collection: String,
        #[arg(long)]
        dimension: usize,
        #[arg(long, default_value = "cosine")]
        metric: String,
    },
    /// Delete a collection.
    DeleteCollection {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        collection: String,
    },
    /// List collection names.
    ListCollections {
        #[arg(long)]
        config: PathBuf,
    },
    /// Stream a JSONL file of records into a collection in batches.
    Ingest {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        collection: String,
        #[arg(long)]
        file: PathBuf,
        #[arg(long, default_value_t = 100)]
        batch_size: usize,
        /// Create the collection first (requires --dimension).
        #[arg(long)]
        create: bool,
        #[arg(long)]
        dimension: Option<usize>,
        #[arg(long)]
        metric: Option<String>,
    },
    /// Similarity search; prints one JSON object per result.
    Query {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        collection: String,
        /// Comma-separated components, e.g. "0.1,0.2".
        #[arg(long)]
        vector: Option<String>,
        /// File holding the query vector as a JSON array.
        #[arg(long)]
        vector_file: Option<PathBuf>,
        #[arg(long, default_value_t = 10)]
        top_k: usize,
        /// Filter document as JSON text.
        #[arg(long)]
        filter: Option<String>,
    },
    /// Fetch records by id; prints one JSON record per line.
    Fetch {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        collection: String,
        /// Comma-separated ids; numeric tokens are integer ids.
        #[arg(long)]
        ids: String,
    },
    /// Delete records by id.
    Delete {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        collection: String,
        #[arg(long)]
        ids: String,
    },
    /// Translate a filter document into a backend's native form.
    Translate {
        #[arg(long, value_parser = ["pinecone", "weaviate", "qdrant", "milvus"])]
        target: String,
        #[arg(long)]
        filter: String,
    },
    /// Measure middleware overhead against the simulated backend.
    Bench {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, value_parser = ["upsert", "query", "query-filtered"])]
        op: String,
        #[arg(long, default_value = "1,100,1000")]
        batch_sizes: String,
        #[arg(long, default_value_t = 1000)]
        iterations: usize,
        #[arg(long, default_value_t = 16)]
        concurrency: usize,
        #[arg(long)]
        per_call_ms: Option<f64>,
        #[arg(long)]
        per_record_ms: Option<f64>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        top_k: usize,
        #[arg(long, default_value_t = 25)]
        dimension: usize,
        /// Corpus size for query benchmarks.
        #[arg(long, default_value_t = 1000)]
        rows: usize,
        /// Wall-clock seconds for the throughput phase; 0 skips it.
        #[arg(long, default_value_t = 10.0)]
        window_secs: f64,
        /// Also write the JSON reports to this path.
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> Result<(), CliFailure> {
    match cli.command {
        Command::CreateCollection {
            config,
            collection,
            dimension,
            metric,
        } => commands::create_collection(&config, &collection, dimension, &metric),
        Command::DeleteCollection { config, collection } => {
            commands::delete_collection(&config, &collection)
        }
        Command::ListCollections { config } => commands::list_collections(&config),
        Command::Ingest {
            config,
            collection,
            file,
            batch_size,
            create,
            dimension,
            metric,
        } => commands::ingest(&config, &collection, &file, batch_size, create, dimension, metric),
        Command::Query {
            config,
            collection,
            vector,
            vector_file,
            top_k,
            filter,
        } => commands::query(&config, &collection, vector, vector_file, top_k, filter),
        Command::Fetch {
            config,
            collection,
            ids,
        } => commands::fetch(&config, &collection, &ids),
        Command::Delete {
            config,
            collection,
            ids,
        } => commands::delete(&config, &collection, &ids),
        Command::Translate { target, filter } => commands::translate(&target, &filter),
        Command::Bench {
            config,
            op,
            batch_sizes,
            iterations,
            concurrency,
            per_call_ms,
            per_record_ms,
            seed,
            top_k,
            dimension,
            rows,
            window_secs,
            json,
        } => commands::bench(BenchArgs {
            config,
            op,
            batch_sizes,
            iterations,
            concurrency,
            per_call_ms,
            per_record_ms,
            seed,
            top_k,
            dimension,
            rows,
            window_secs,
            json,
        })
        .map(|_| ()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.exit_code as u8)
        }
    }
}

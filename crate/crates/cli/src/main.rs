use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use local_antimagic::export::{labeling_to_dot, to_dot};
use local_antimagic::labeler::{
    extract_row_colors, label_tree_with, predict_row_colors, EdgeLabeling, LabelerConfig,
    RowColorPrediction,
};
use local_antimagic::oracle::{brute_force_chi_la, SearchOptions};
use local_antimagic::partitions::tuple_partition;
use local_antimagic::tree::{ExplicitTree, TaryTree};
use local_antimagic::verifier::{check, LabeledTree};
use local_antimagic::Error;
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::Value;

#[derive(Parser)]
#[command(
    name = "local-antimagic",
    version,
    about = "Local antimagic labelings of complete t-ary trees"
)]
struct Cli {
    /// Refuse to label trees with more edges than this.
    #[arg(
        long,
        global = true,
        env = "LOCAL_ANTIMAGIC_MAX_LABELS",
        default_value_t = 10_000_000
    )]
    max_labels: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Label the complete t-ary tree with n levels.
    Label {
        #[arg(long)]
        t: u32,
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Row colors from the closed forms (even n) or from the labeling (odd n).
    Predict {
        #[arg(long)]
        t: u32,
        #[arg(long)]
        n: u32,
    },
    /// Check a labeling read from a file ("-" for stdin).
    Verify {
        #[arg(long)]
        input: PathBuf,
    },
    /// Exact local antimagic chromatic number of a small tree.
    ChiLa {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 10)]
        max_edges: usize,
        #[arg(long)]
        no_prune: bool,
    },
    /// Split [base, base + t * count - 1] into t-tuples with consecutive sums.
    Partition {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        count: u64,
        #[arg(long, default_value_t = 1)]
        base: i64,
    },
    /// Render a labeling as Graphviz DOT.
    ExportDot {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
}

/// Exit statuses: 1 for a labeling that fails verification, 2 for bad input.
enum Failure {
    Invalid,
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Invalid) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Outcome {
    let config = LabelerConfig {
        max_labels: cli.max_labels,
    };
    match cli.command {
        Command::Label { t, n, format } => {
            let labeling = label_tree_with(t, n, &config)?;
            eprintln!(
                "labeled t = {t}, n = {n}: {} edges, {} leaves",
                labeling.tree().edge_count(),
                labeling.tree().leaf_count()
            );
            match format {
                Format::Json => emit(&labeling),
                Format::Dot => {
                    print!("{}", labeling_to_dot(&labeling)?);
                    Ok(())
                }
            }
        }
        Command::Predict { t, n } => predict(t, n, &config),
        Command::Verify { input } => {
            let tree = read_labeled(&input)?;
            let report = check(&tree)?;
            eprintln!(
                "{} colors over {} leaves; bijection: {}, local antimagic: {}",
                report.distinct_colors,
                report.leaf_count,
                report.is_bijection,
                report.is_local_antimagic
            );
            emit(&report)?;
            if report.is_valid() {
                Ok(())
            } else {
                Err(Failure::Invalid)
            }
        }
        Command::ChiLa {
            input,
            max_edges,
            no_prune,
        } => {
            let tree = read_shape(&input)?;
            let options = SearchOptions {
                max_edges,
                prune: !no_prune,
            };
            let result = brute_force_chi_la(&tree, &options)?;
            eprintln!(
                "chi_la = {} ({} leaves), {} labelings in {:.3}s",
                result.chi_la,
                tree.leaf_count(),
                result.labelings_examined,
                result.elapsed.as_secs_f64()
            );
            emit(&result)
        }
        Command::Partition { t, count, base } => {
            let partition = tuple_partition(t, count, base)?;
            let profile = partition.profile();
            match profile.isolate {
                Some(x) => eprintln!("sums {} and {x}", profile.consecutive),
                None => eprintln!("sums {}", profile.consecutive),
            }
            emit(&partition)
        }
        Command::ExportDot { input, out } => {
            let dot = to_dot(&read_labeled(&input)?)?;
            fs::write(&out, &dot).map_err(|e| Failure::Usage(format!("{}: {e}", out.display())))?;
            eprintln!("wrote {}", out.display());
            emit(&serde_json::json!({ "out": out, "bytes": dot.len() }))
        }
    }
}

#[derive(Serialize)]
struct Prediction {
    t: u32,
    n: u32,
    /// "closed_form" or "extracted".
    source: &'static str,
    rows: Vec<RowColorPrediction>,
}

fn predict(t: u32, n: u32, config: &LabelerConfig) -> Outcome {
    let tree = TaryTree::new(t, n)?;
    let (source, rows) = if n.is_multiple_of(2) {
        ("closed_form", predict_row_colors(t, n)?)
    } else {
        eprintln!("no closed form for odd n; reading the colors off the labeling");
        (
            "extracted",
            extract_row_colors(&label_tree_with(t, n, config)?)?,
        )
    };
    for row in &rows {
        match row.jump_color {
            Some(j) => eprintln!(
                "depth {}: {} with jump {j}",
                row.row_depth, row.constant_color
            ),
            None => eprintln!("depth {}: {}", row.row_depth, row.constant_color),
        }
    }
    emit(&Prediction {
        t: tree.branching(),
        n: tree.levels(),
        source,
        rows,
    })
}

fn emit<T: Serialize>(value: &T) -> Outcome {
    let json = serde_json::to_string(value).map_err(|e| Failure::Usage(e.to_string()))?;
    println!("{json}");
    Ok(())
}

fn read_json(path: &Path) -> Result<(String, Value), Failure> {
    let text = if path == Path::new("-") {
        std::io::read_to_string(std::io::stdin())
    } else {
        fs::read_to_string(path)
    }
    .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let name = path.display().to_string();
    // serde_json's message ends with the line and column.
    let value = serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{name}: {e}")))?;
    Ok((name, value))
}

fn decode<T: DeserializeOwned>(name: &str, value: Value) -> Result<T, Failure> {
    serde_path_to_error::deserialize(value).map_err(|e| {
        let path = e.path().to_string();
        Failure::Usage(format!("{name}: field {path}: {}", e.inner()))
    })
}

fn has(value: &Value, key: &str) -> bool {
    value.get(key).is_some()
}

/// Either `{"t", "n", "labels"}` or `{"nodes", "edges": [[u, v, label]]}`.
fn read_labeled(path: &Path) -> Result<LabeledTree, Failure> {
    let (name, value) = read_json(path)?;
    if has(&value, "labels") {
        Ok(decode::<EdgeLabeling>(&name, value)?.to_labeled_tree())
    } else if has(&value, "nodes") {
        decode(&name, value)
    } else {
        Err(Failure::Usage(format!(
            "{name}: expected a \"labels\" or a \"nodes\" field"
        )))
    }
}

/// `{"nodes", "edges"}` with or without labels, or `{"t", "n"}`.
fn read_shape(path: &Path) -> Result<ExplicitTree, Failure> {
    let (name, value) = read_json(path)?;
    if has(&value, "nodes") {
        let tree: LabeledTree = decode(&name, with_label_slots(value))?;
        Ok(tree.shape())
    } else if has(&value, "t") && has(&value, "n") {
        let tree: TaryTree = decode(&name, value)?;
        Ok(tree.to_explicit())
    } else {
        Err(Failure::Usage(format!(
            "{name}: expected a \"nodes\" field or \"t\" and \"n\""
        )))
    }
}

/// Pads bare `[u, v]` edges to `[u, v, null]`.
fn with_label_slots(mut value: Value) -> Value {
    if let Some(Value::Array(edges)) = value.get_mut("edges") {
        for edge in edges {
            if let Value::Array(pair) = edge {
                if pair.len() == 2 {
                    pair.push(Value::Null);
                }
            }
        }
    }
    value
}

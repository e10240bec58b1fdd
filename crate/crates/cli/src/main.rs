//! `dissim`: k-weights of graphs and realization of (n-1)-weight families.

use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use dissim::document::{
    decode_graph, family_to_value, parse_families, parse_family, realization_to_value, to_dot,
    vector_to_value, ParseError,
};
use dissim::generate::{generate, GenerateError, Target};
use dissim::{
    classify, realize, DissimilarityFamily, RealizationClass, RealizeError, Steiner,
    SteinerConfig, SteinerError, Verdict,
};

const EXIT_UNMATCHED: u8 = 1;
const EXIT_NOT_REALIZABLE: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_DATA: u8 = 65;
const EXIT_NO_INPUT: u8 = 66;
const EXIT_SOFTWARE: u8 = 70;

#[derive(Parser)]
#[command(name = "dissim", version, about = "k-weights of weighted graphs and their realization")]
struct Cli {
    /// Output layout: one JSON document per line, or indented JSON.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Pretty,
}

#[derive(Subcommand)]
enum Command {
    /// Minimum connected-subgraph weights of a graph document.
    Weights {
        /// Graph document, or `-` for stdin.
        graph: PathBuf,
        /// Size of the label subsets.
        #[arg(long, conflicts_with = "hat", required_unless_present = "hat")]
        k: Option<usize>,
        /// Weights of all subsets of size n-1, indexed by the omitted label.
        #[arg(long)]
        hat: bool,
    },
    /// Run every realizability checker on one or more families.
    Check {
        /// Family file (one family, or one per line), or `-` for stdin.
        family: PathBuf,
    },
    /// Build a witness graph for a family.
    Realize {
        family: PathBuf,
        #[arg(long)]
        class: RealizationClass,
        /// Also write the graph in DOT format to this path.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Check that a graph reproduces a family exactly.
    Verify { family: PathBuf, graph: PathBuf },
    /// Seeded random families passing one class checker, or none of them.
    Gen {
        #[arg(long)]
        n: usize,
        /// A class name, or `none` for families failing every class.
        #[arg(long)]
        class: Target,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::new(EXIT_USAGE, format!("parse error: {e}"))
    }
}

impl From<SteinerError> for Failure {
    fn from(e: SteinerError) -> Self {
        Failure::new(EXIT_DATA, e.to_string())
    }
}

impl From<RealizeError> for Failure {
    fn from(e: RealizeError) -> Self {
        let code = match &e {
            RealizeError::NotRealizable { .. } => EXIT_NOT_REALIZABLE,
            RealizeError::VerificationFailed { .. } | RealizeError::Internal(_) => EXIT_SOFTWARE,
            _ => EXIT_DATA,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<GenerateError> for Failure {
    fn from(e: GenerateError) -> Self {
        let code = match e {
            GenerateError::Exhausted { .. } => EXIT_SOFTWARE,
            _ => EXIT_DATA,
        };
        Failure::new(code, e.to_string())
    }
}

fn read_input(path: &Path) -> Result<String, Failure> {
    let mut text = String::new();
    let result = if path == Path::new("-") {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    result.map_err(|e| Failure::new(EXIT_NO_INPUT, format!("cannot read {}: {e}", path.display())))?;
    Ok(text)
}

fn emit(format: Format, value: &Value) {
    let text = match format {
        Format::Json => serde_json::to_string(value),
        Format::Pretty => serde_json::to_string_pretty(value),
    };
    println!("{}", text.expect("documents serialize"));
}

fn verdict_value(verdict: &Verdict) -> Value {
    let violations: Vec<Value> = verdict
        .violations
        .iter()
        .map(|v| json!({"condition": v.condition(), "message": v.to_string()}))
        .collect();
    json!({"pass": verdict.passed(), "violations": violations})
}

fn check_one(family: &DissimilarityFamily) -> (Value, Vec<RealizationClass>) {
    let mut classes = Map::new();
    let mut passed = Vec::new();
    for (class, verdict) in classify(family) {
        if verdict.passed() {
            passed.push(class);
        }
        classes.insert(class.to_string(), verdict_value(&verdict));
    }
    let mut doc = family_to_value(family);
    doc.as_object_mut()
        .expect("family document is an object")
        .insert("classes".into(), Value::Object(classes));
    (doc, passed)
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let format = cli.format;
    match cli.command {
        Command::Weights { graph, k, hat } => {
            let g = decode_graph(&read_input(&graph)?)?;
            let steiner = Steiner::new(SteinerConfig::from_env());
            if hat {
                emit(format, &family_to_value(&steiner.hat_vector(&g)?));
            } else {
                let k = k.expect("clap requires --k without --hat");
                emit(format, &vector_to_value(&steiner.dissimilarity_vector(&g, k)?));
            }
            Ok(0)
        }
        Command::Check { family } => {
            let families = parse_families(&read_input(&family)?)?;
            let mut results = Vec::with_capacity(families.len());
            let mut counts: Vec<usize> = vec![0; RealizationClass::ALL.len()];
            let mut realizable = 0;
            for f in &families {
                let (doc, passed) = check_one(f);
                for class in &passed {
                    let i = RealizationClass::ALL.iter().position(|c| c == class).expect("known class");
                    counts[i] += 1;
                }
                if !passed.is_empty() {
                    realizable += 1;
                }
                results.push(doc);
            }
            let per_class: Map<String, Value> = RealizationClass::ALL
                .iter()
                .zip(&counts)
                .map(|(c, n)| (c.to_string(), json!(n)))
                .collect();
            emit(
                format,
                &json!({
                    "results": results,
                    "summary": {
                        "families": families.len(),
                        "realizable": realizable,
                        "passed": per_class,
                    },
                }),
            );
            Ok(if realizable == families.len() { 0 } else { EXIT_UNMATCHED })
        }
        Command::Realize { family, class, dot } => {
            let f = parse_family(&read_input(&family)?)?;
            let r = realize(class, &f)?;
            if let Some(path) = dot {
                std::fs::write(&path, to_dot(&r.graph)).map_err(|e| {
                    Failure::new(EXIT_NO_INPUT, format!("cannot write {}: {e}", path.display()))
                })?;
            }
            emit(format, &realization_to_value(&r));
            Ok(0)
        }
        Command::Verify { family, graph } => {
            let f = parse_family(&read_input(&family)?)?;
            let g = decode_graph(&read_input(&graph)?)?;
            if g.n() != f.n() {
                emit(
                    format,
                    &json!({"match": false, "reason": format!("graph has {} external vertices, family has {} values", g.n(), f.n())}),
                );
                return Ok(EXIT_UNMATCHED);
            }
            let actual = Steiner::new(SteinerConfig::from_env()).hat_vector(&g)?;
            let mismatched: Vec<usize> = (1..=f.n()).filter(|&l| f.hat(l) != actual.hat(l)).collect();
            emit(
                format,
                &json!({
                    "match": mismatched.is_empty(),
                    "expected": family_to_value(&f)["hat"],
                    "actual": family_to_value(&actual)["hat"],
                    "mismatched_labels": mismatched,
                }),
            );
            Ok(if mismatched.is_empty() { 0 } else { EXIT_UNMATCHED })
        }
        Command::Gen {
            n,
            class,
            seed,
            count,
        } => {
            // One family per line whatever the format, so output can be piped to `check`.
            for f in generate(n, class, seed, count)? {
                emit(Format::Json, &family_to_value(&f));
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

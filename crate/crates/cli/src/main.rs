use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use wtcensus::census::{self, DEFAULT_BOUND};
use wtcensus::dyck::{enumerate_words, enumerate_words_with_edges, parse_text};
use wtcensus::oeis::{self, Comparison};
use wtcensus::tree::{RootedTree, TreeNode};

mod fetch;

/// Default cap on `list --weight`.
const LIST_BOUND: usize = 10;

#[derive(Debug, Parser)]
#[command(
    name = "wtcensus",
    version,
    about = "Count, list and verify weighted bicolored plane trees"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Tsv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    /// rooted trees by weight
    A,
    /// rooted trees by weight and edge count
    B,
    /// unrooted trees weighted by 1/|Aut|
    C,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print exact counts.
    Count {
        kind: Kind,
        /// Print the whole prefix up to this weight.
        #[arg(long)]
        max: Option<usize>,
        /// Weight.
        #[arg(long)]
        n: Option<usize>,
        /// Edge count (with `b`).
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// List the codes of all rooted trees of a weight, one per line.
    List {
        #[arg(long)]
        weight: usize,
        #[arg(long)]
        edges: Option<usize>,
        #[arg(long, default_value_t = LIST_BOUND)]
        bound: usize,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Turn tree JSON into its code.
    Encode {
        /// JSON text; read from stdin when absent or `-`.
        input: Option<String>,
    },
    /// Turn a code into tree JSON.
    Decode {
        /// Code text; read from stdin when absent or `-`.
        input: Option<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Cross-check every formula against series expansion and enumeration.
    Verify {
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        n_max: usize,
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: usize,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Compare the recurrence with the A002212 b-file.
    Oeis {
        #[arg(long, conflicts_with = "fetch")]
        fixture: Option<PathBuf>,
        #[arg(long)]
        fetch: bool,
        #[arg(long, default_value_t = 30)]
        max: usize,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
}

enum Failure {
    Usage(String),
    Data(String),
}

type Outcome = Result<String, Failure>;

/// Labelled index columns and the rendered value of one output row.
type Row = (Vec<(&'static str, usize)>, String);

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn data(msg: impl ToString) -> Failure {
    Failure::Data(msg.to_string())
}

fn read_input(input: Option<String>) -> Result<String, Failure> {
    match input.as_deref() {
        None | Some("-") => {
            let mut buf = String::new();
            io::stdin().read_to_string(&mut buf).map_err(data)?;
            Ok(buf)
        }
        Some(text) => Ok(text.to_string()),
    }
}

fn json_text(value: &Value) -> String {
    serde_json::to_string_pretty(value).expect("JSON values serialize")
}

fn count(
    kind: Kind,
    max: Option<usize>,
    n: Option<usize>,
    m: Option<usize>,
    format: Format,
) -> Outcome {
    let rows: Vec<Row> = match kind {
        Kind::A => {
            if m.is_some() {
                return Err(usage("--m only applies to `count b`"));
            }
            match (max, n) {
                (Some(max), None) => census::a_rec(max)
                    .into_iter()
                    .enumerate()
                    .map(|(i, a)| (vec![("n", i)], a.to_string()))
                    .collect(),
                (None, Some(n)) => {
                    vec![(vec![("n", n)], census::a_rec(n)[n].to_string())]
                }
                _ => return Err(usage("`count a` needs exactly one of --max or --n")),
            }
        }
        Kind::B => {
            if max.is_some() {
                return Err(usage("`count b` takes --n and optionally --m"));
            }
            let n = n.ok_or_else(|| usage("`count b` needs --n"))?;
            match m {
                Some(m) => {
                    let b = census::b_explicit(m, n).map_err(|e| usage(e.to_string()))?;
                    vec![(vec![("m", m), ("n", n)], b.to_string())]
                }
                None => census::b_row(n)
                    .into_iter()
                    .enumerate()
                    .map(|(i, b)| (vec![("m", i + 1), ("n", n)], b.to_string()))
                    .collect(),
            }
        }
        Kind::C => {
            if m.is_some() {
                return Err(usage("--m only applies to `count b`"));
            }
            let range = match (max, n) {
                (Some(max), None) => 1..=max,
                (None, Some(n)) => n..=n,
                _ => return Err(usage("`count c` needs exactly one of --max or --n")),
            };
            let mut rows = Vec::new();
            for i in range {
                let c = census::c_exact(i).map_err(|e| usage(e.to_string()))?;
                rows.push((vec![("n", i)], c.to_string()));
            }
            rows
        }
    };
    let kind_name = match kind {
        Kind::A => "a",
        Kind::B => "b",
        Kind::C => "c",
    };
    Ok(match format {
        Format::Table => rows
            .iter()
            .map(|(_, v)| v.as_str())
            .collect::<Vec<_>>()
            .join(" "),
        Format::Tsv => {
            let mut out: Vec<String> = Vec::new();
            if let Some((labels, _)) = rows.first() {
                let mut header: Vec<&str> = labels.iter().map(|(l, _)| *l).collect();
                header.push(kind_name);
                out.push(header.join("\t"));
            }
            for (labels, value) in &rows {
                let mut cols: Vec<String> = labels.iter().map(|(_, v)| v.to_string()).collect();
                cols.push(value.clone());
                out.push(cols.join("\t"));
            }
            out.join("\n")
        }
        Format::Json => {
            let values: Vec<Value> = rows
                .iter()
                .map(|(labels, value)| {
                    let mut obj = serde_json::Map::new();
                    for (label, v) in labels {
                        obj.insert(label.to_string(), json!(v));
                    }
                    obj.insert("value".into(), json!(value));
                    Value::Object(obj)
                })
                .collect();
            json_text(&json!({ "kind": kind_name, "values": values }))
        }
    })
}

fn list(weight: usize, edges: Option<usize>, bound: usize, format: Format) -> Outcome {
    if weight > bound {
        return Err(usage(format!(
            "refusing to list weight {weight}: above the bound {bound} (raise --bound to override)"
        )));
    }
    let words: Vec<String> = match edges {
        Some(m) => enumerate_words_with_edges(weight, m)
            .map(|w| w.to_string())
            .collect(),
        None => enumerate_words(weight).map(|w| w.to_string()).collect(),
    };
    Ok(match format {
        Format::Table => words.join("\n"),
        Format::Tsv => words
            .iter()
            .enumerate()
            .map(|(i, w)| format!("{i}\t{w}"))
            .collect::<Vec<_>>()
            .join("\n"),
        Format::Json => json_text(&json!(words)),
    })
}

fn encode(input: Option<String>) -> Outcome {
    let text = read_input(input)?;
    let value: Value =
        serde_json::from_str(&text).map_err(|e| data(format!("invalid JSON: {e}")))?;
    // accept either the full `decode` output or a bare node
    let node_value = value.get("tree").cloned().unwrap_or(value);
    let node: TreeNode =
        serde_json::from_value(node_value).map_err(|e| data(format!("invalid tree: {e}")))?;
    let tree = RootedTree::from_node(&node).map_err(data)?;
    Ok(tree.to_dyck().to_string())
}

fn decode(input: Option<String>, format: Format) -> Outcome {
    let text = read_input(input)?;
    let word = parse_text(text.trim_end_matches(['\n', '\r'])).map_err(data)?;
    let tree = RootedTree::from_dyck(&word);
    if tree.is_single_vertex() {
        let value = json!({ "code": "", "weight": 0, "edges": 0, "tree": tree.to_node() });
        return Ok(match format {
            Format::Json => json_text(&value),
            _ => "single vertex: weight 0, no edges".to_string(),
        });
    }
    let summary = tree.summary().map_err(data)?;
    let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
    Ok(match format {
        Format::Json => serde_json::to_string_pretty(&summary).map_err(data)?,
        Format::Table => [
            format!("code        {}", summary.code),
            format!("weight      {}", summary.weight),
            format!("edges       {}", summary.edges),
            format!(
                "passport    [{}]/[{}]",
                join(&summary.passport.alpha),
                join(&summary.passport.beta)
            ),
            format!("weights     [{}]", join(&summary.weight_distribution)),
            format!("aut order   {}", summary.aut_order),
            format!("canonical   {}", summary.canonical_code),
        ]
        .join("\n"),
        Format::Tsv => format!(
            "code\tweight\tedges\talpha\tbeta\taut_order\n{}\t{}\t{}\t{}\t{}\t{}",
            summary.code,
            summary.weight,
            summary.edges,
            join(&summary.passport.alpha),
            join(&summary.passport.beta),
            summary.aut_order
        ),
    })
}

fn verify(n_max: usize, bound: usize, format: Format) -> (String, bool) {
    let report = census::cross_verify(n_max, bound);
    let passed = report.passed();
    let text = match format {
        Format::Table => report.to_string(),
        Format::Json => {
            let mut value = serde_json::to_value(&report).expect("report serializes");
            value["passed"] = json!(passed);
            json_text(&value)
        }
        Format::Tsv => {
            let mut lines = vec!["status\tleg\tupto\tdetail".to_string()];
            for leg in &report.legs {
                let status = if leg.passed { "PASS" } else { "FAIL" };
                lines.push(format!(
                    "{status}\t{}\t{}\t{}",
                    leg.name, leg.upto, leg.detail
                ));
            }
            lines.join("\n")
        }
    };
    (text, passed)
}

fn oeis_check(fixture: Option<PathBuf>, fetch: bool, max: usize, format: Format) -> Outcome {
    let (text, source) = if fetch {
        fetch::fetch_bfile()
    } else if let Some(path) = fixture {
        let text = std::fs::read_to_string(&path)
            .map_err(|e| data(format!("cannot read {}: {e}", path.display())))?;
        (text, path.display().to_string())
    } else {
        (
            oeis::BUNDLED_A002212.to_string(),
            "bundled fixture".to_string(),
        )
    };
    let rows = oeis::parse_bfile(&text).map_err(data)?;
    let computed = census::a_rec(max);
    let comparison = oeis::compare(&rows, &computed).map_err(data)?;
    let (agree, detail) = match &comparison {
        Comparison::Agree { rows } => (
            true,
            format!("A002212 agrees with the recurrence for n = 0..{max} ({rows} rows, source: {source})"),
        ),
        Comparison::Mismatch {
            index,
            expected,
            computed,
        } => (
            false,
            format!("first mismatch at n = {index}: b-file {expected}, recurrence {computed} (source: {source})"),
        ),
    };
    let out = match format {
        Format::Json => json_text(&json!({
            "sequence": "A002212",
            "source": source,
            "max": max,
            "agree": agree,
            "detail": detail,
        })),
        Format::Tsv => format!("sequence\tmax\tagree\tsource\nA002212\t{max}\t{agree}\t{source}"),
        Format::Table => detail.clone(),
    };
    if agree {
        Ok(out)
    } else {
        Err(Failure::Data(out))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Count {
            kind,
            max,
            n,
            m,
            format,
        } => count(kind, max, n, m, format),
        Command::List {
            weight,
            edges,
            bound,
            format,
        } => list(weight, edges, bound, format),
        Command::Encode { input } => encode(input),
        Command::Decode { input, format } => decode(input, format),
        Command::Verify {
            n_max,
            bound,
            format,
        } => {
            let (text, passed) = verify(n_max, bound, format);
            if passed {
                Ok(text)
            } else {
                Err(Failure::Data(text))
            }
        }
        Command::Oeis {
            fixture,
            fetch,
            max,
            format,
        } => oeis_check(fixture, fetch, max, format),
    };
    let mut stdout = io::stdout().lock();
    match outcome {
        Ok(text) => {
            if writeln!(stdout, "{text}").is_err() {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Data(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

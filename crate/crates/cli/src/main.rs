//! `gamma-cone`: curvature, conical curvature and audits from the command line.
//!
//! Reports are newline-delimited JSON on stdout. Exit status: 0 when every
//! check passes, 1 when some check fails, 2 on input or usage errors (in which
//! case nothing is written to stdout).

use std::fs;
use std::io::{self, Read, Write};
use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gamma_cone::audit::{self, AuditReport, Family};
use gamma_cone::graph::{encode_edge_list, encode_graph6, parse_edge_list, parse_graph6};
use gamma_cone::{DimensionParam, Graph};

const THREADS_VAR: &str = "GAMMA_CONE_THREADS";

#[derive(Parser)]
#[command(name = "gamma-cone", version, about = "Bakry-Emery curvature and conical curvature of finite graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Pointwise curvature Ric_N(x) with witnesses.
    Curvature {
        #[command(flatten)]
        input: InputArg,
        /// A vertex id or "all".
        #[arg(long, default_value = "all")]
        at: String,
        /// Dimension N > 1, or "inf".
        #[arg(long, default_value = "inf")]
        n: String,
    },
    /// Conical curvature CRic_N, its ceiling K^c_max and the witness space.
    Cric {
        #[command(flatten)]
        input: InputArg,
        #[arg(long, default_value = "inf")]
        n: String,
    },
    /// Run every check on an input file or a generated corpus.
    Audit {
        /// Graph file (.el or .g6, one graph per line) or "-" for stdin.
        input: Option<String>,
        #[arg(long, conflicts_with = "input", requires = "max_n")]
        family: Option<String>,
        /// Largest vertex count in the corpus.
        #[arg(long, requires = "family")]
        max_n: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Single dimension to audit; default is 2, 5 and inf.
        #[arg(long)]
        n: Option<String>,
    },
    /// Print a graph from a named family.
    Generate {
        #[arg(long)]
        family: String,
        /// Number of vertices.
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::El)]
        format: Format,
    },
}

#[derive(Args)]
struct InputArg {
    /// Graph file (.el or .g6) or "-" for stdin.
    input: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    El,
    G6,
}

/// An input or usage error; maps to exit status 2.
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

fn parse_dimension(s: &str) -> Result<DimensionParam, UsageError> {
    s.parse::<DimensionParam>().map_err(|e| UsageError(format!("--n: {e}")))
}

/// Reads graphs from a path or stdin. Edge lists hold one graph; graph6 input
/// holds one per non-empty line. Stdin is edge-list when its first content
/// line is an `n <count>` header.
fn read_graphs(input: &str) -> Result<Vec<(String, Graph)>, UsageError> {
    let (text, name, graph6) = if input == "-" {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text)?;
        let first = text
            .lines()
            .map(str::trim)
            .find(|l| !l.is_empty() && !l.starts_with('#'))
            .unwrap_or("");
        let graph6 = !first.starts_with("n ") && first != "n";
        (text, "stdin".to_string(), graph6)
    } else {
        let path = Path::new(input);
        let graph6 = match path.extension().and_then(|e| e.to_str()) {
            Some("g6") => true,
            Some("el") => false,
            _ => return Err(UsageError(format!("{input}: expected a .el or .g6 file"))),
        };
        let text = fs::read_to_string(path).map_err(|e| UsageError(format!("{input}: {e}")))?;
        let name = path.file_name().map_or(input.to_string(), |n| n.to_string_lossy().into_owned());
        (text, name, graph6)
    };
    if !graph6 {
        let g = parse_edge_list(&text).map_err(|e| UsageError(format!("{name}: {e}")))?;
        return Ok(vec![(name, g)]);
    }
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .collect();
    if lines.is_empty() {
        return Err(UsageError(format!("{name}: no graphs")));
    }
    let single = lines.len() == 1;
    lines
        .into_iter()
        .map(|(i, line)| {
            let g = parse_graph6(line).map_err(|e| UsageError(format!("{name}:{}: {e}", i + 1)))?;
            let id = if single { name.clone() } else { format!("{name}:{}", i + 1) };
            Ok((id, g))
        })
        .collect()
}

fn family_graph(family: &str, n: usize) -> Result<Graph, UsageError> {
    Ok(match family {
        "complete" => Graph::complete(n)?,
        "cycle" => Graph::cycle(n)?,
        "path" => Graph::path(n)?,
        "hypercube" => {
            if !n.is_power_of_two() || n < 2 {
                return Err(UsageError(format!("hypercube needs a power-of-two vertex count >= 2, got {n}")));
            }
            Graph::hypercube(n.trailing_zeros() as usize)?
        }
        other => return Err(UsageError(format!("unknown family {other:?}; expected complete, cycle, path or hypercube"))),
    })
}

fn configure_threads() -> Result<(), UsageError> {
    let Ok(value) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .map_err(|_| UsageError(format!("{THREADS_VAR} must be a non-negative integer, got {value:?}")))?;
    rayon::ThreadPoolBuilder::new().num_threads(threads).build_global()?;
    Ok(())
}

/// Output lines and whether any check failed.
fn run(command: Command) -> Result<(Vec<String>, bool), UsageError> {
    let reports: Vec<AuditReport> = match command {
        Command::Curvature { input, at, n } => {
            let n_param = parse_dimension(&n)?;
            let at = match at.as_str() {
                "all" => None,
                v => Some(v.parse::<usize>().map_err(|_| UsageError(format!("--at: expected a vertex id or \"all\", got {v:?}")))?),
            };
            read_graphs(&input.input)?
                .iter()
                .map(|(id, g)| audit::curvature_report(id, g, at, n_param, 0))
                .collect::<Result<_, _>>()?
        }
        Command::Cric { input, n } => {
            let n_param = parse_dimension(&n)?;
            read_graphs(&input.input)?
                .iter()
                .map(|(id, g)| audit::cric_report(id, g, n_param, 0))
                .collect::<Result<_, _>>()?
        }
        Command::Audit {
            input,
            family,
            max_n,
            seed,
            n,
        } => {
            let ns = match n {
                Some(n) => vec![parse_dimension(&n)?],
                None => audit::default_dimensions(),
            };
            let graphs = match (input, family, max_n) {
                (Some(input), None, None) => read_graphs(&input)?,
                (None, Some(family), Some(max_n)) => {
                    let family = Family::parse(&family).ok_or_else(|| UsageError(format!("unknown family {family:?}")))?;
                    audit::corpus(family, max_n)?
                }
                _ => return Err(UsageError("audit needs an input or --family with --max-n".into())),
            };
            audit::audit_corpus(&graphs, &ns, seed)
                .into_iter()
                .collect::<Result<_, _>>()?
        }
        Command::Generate { family, n, format } => {
            let g = family_graph(&family, n)?;
            let text = match format {
                Format::El => encode_edge_list(&g),
                Format::G6 => encode_graph6(&g)? + "\n",
            };
            return Ok((vec![text.trim_end().to_string()], false));
        }
    };
    let failed = reports.iter().any(AuditReport::has_failure);
    Ok((reports.iter().map(AuditReport::to_json_line).collect(), failed))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = configure_threads().and_then(|()| run(cli.command));
    match outcome {
        Ok((lines, failed)) => {
            let mut out = io::stdout().lock();
            for line in lines {
                if writeln!(out, "{line}").is_err() {
                    return ExitCode::from(2);
                }
            }
            ExitCode::from(u8::from(failed))
        }
        Err(UsageError(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

//! Command-line front end: JSON in, JSON out.
//!
//! Exit codes: `0` success, `1` validation failure (a JSON error object on
//! stderr), `2` usage error.

use std::ffi::OsString;
use std::fs;
use std::io::{self, BufWriter, Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::decompose::{
    build_monotone_lp, constraint_census, monotone_decompose_with, recompose, vertex_decompose,
    DecomposeObjective, DecomposeOptions,
};
use crate::elicit::{build_elicitation_lp, elicit, elicit_soft};
use crate::error::{Error, Result};
use crate::gai::{canonical_decomposition, delta_decomposition, embed, embed_model, Fill};
use crate::json::{self, Style};
use crate::kary::{check_capacity, mobius, p_additivity_degree, support, zeta, KaryCapacity};
use crate::polytope::{count_vertices, enumerate_antichains, enumerate_vertices};
use crate::rational::parse_rational;

const SCHEMAS: &str = "\
JSON formats (rationals are exact \"p/q\" strings; coordinates are
comma-joined 0-based level indices such as \"2,0,1\"):

  game         {\"n\": 3, \"k\": 2, \"values\": {\"0,0,0\": \"0\", ...}}  every point present
  mobius       {\"n\": 3, \"k\": 2, \"mobius\": {\"1,0,2\": \"1/2\", ...}}  nonzero entries only
  tabulated    {\"attributes\": [{\"name\": \"x0\", \"levels\": [\"low\", \"high\"]}, ...],
                \"values\": {\"0,1\": \"1/3\", ...}}  every alternative present
  model        {\"attributes\": [...], \"terms\": [{\"scope\": [0, 2], \"values\": {\"a,b\": ..}}]}
  decomposition {\"n\": .., \"k\": .., \"singletons\": [{\"i\": 0, \"values\": {\"l\": ..}}],
                \"pairs\": [{\"i\": 0, \"j\": 1, \"values\": {\"a,b\": ..}}]}
                (plus \"bounds\": [m_0, ..] when level counts differ)
  combination  {\"n\": .., \"k\": .., \"atoms\": [{\"vertex\": <vertex>, \"weight\": \"1/2\"}]}
  vertex       {\"support\": [0, 2], \"antichain\": [[1, 2], [2, 0]], \"mobius\": {..}}
                one record per line; a singleton threshold l reads [[l]]
  dataset      {\"attributes\": [...], \"strict\": [{\"better\": [1, 0], \"worse\": [0, 1]}],
                \"weak\": [...], \"assignments\": [{\"alt\": [1, 1], \"category\": 2}]}
  error        {\"error\": \"<kind>\", \"message\": \"..\", ...}  on stderr, exit code 1

With --decimal N rationals are written as truncated decimals prefixed with
'~'; such output is for reading only and is not accepted as input.";

#[derive(Debug, Parser)]
#[command(
    name = "gaikit",
    version,
    about = "Exact tools for 2-additive GAI utility models and k-ary capacities",
    after_long_help = SCHEMAS
)]
pub struct Cli {
    #[command(flatten)]
    io: IoArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct IoArgs {
    /// Input file; standard input when omitted.
    #[arg(long, short, global = true)]
    input: Option<PathBuf>,
    /// Output file; standard output when omitted.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Write rationals as N-digit truncated decimals marked with '~'.
    #[arg(long, global = true, value_name = "N")]
    decimal: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Möbius transform of a game (game -> mobius).
    Mobius,
    /// Zeta transform, inverse of mobius (mobius -> game).
    Zeta,
    /// Checks the capacity axioms (game -> report); exits 1 on violations.
    Check,
    /// k-additivity degree and support of a game (game -> {"degree", "support"}).
    Padd,
    /// Embeds a utility into a k-ary capacity (tabulated or model -> game).
    Embed {
        #[arg(long, value_enum, default_value_t = FillArg::Clamp)]
        fill: FillArg,
    },
    /// Canonical decomposition along ordered scopes (tabulated -> model).
    Canonical {
        /// Scopes separated by ';', attributes by ',': "1;0,2;0,1".
        #[arg(long)]
        order: String,
        /// Anchor alternative, e.g. "0,0,0"; the worst alternative by default.
        #[arg(long)]
        anchor: Option<String>,
    },
    /// Decomposition into all scopes of size at most p (tabulated -> model).
    DeltaDecompose {
        #[arg(long)]
        p: usize,
    },
    /// Vertices of the 2-additive capacity polytope.
    Vertices {
        #[command(subcommand)]
        action: VertexAction,
    },
    /// Antichains of the (k+1)x(k+1) grid, one JSON line each.
    Antichains {
        #[arg(long)]
        k: u32,
    },
    /// Monotone decomposition of a 2-additive capacity
    /// (game -> decomposition, or combination with --method vertex).
    Decompose {
        #[arg(long, value_enum, default_value_t = Method::Lp)]
        method: Method,
        #[arg(long, value_enum, default_value_t = ObjectiveArg::Feasibility)]
        objective: ObjectiveArg,
        /// Also write the program in CPLEX LP format to this file.
        #[arg(long, value_name = "PATH")]
        lp_file: Option<PathBuf>,
    },
    /// Sums term tables or weighted vertices (decomposition or combination -> game).
    Recompose,
    /// Constraint counts of the decomposed and full-grid formulations.
    Census {
        #[arg(long, requires = "k", conflicts_with = "m")]
        n: Option<usize>,
        #[arg(long, requires = "n")]
        k: Option<u32>,
        /// Per-attribute level bounds, e.g. "1,2,3".
        #[arg(long, value_delimiter = ',')]
        m: Option<Vec<u32>>,
    },
    /// Fits a monotone 2-additive model to preference data (dataset -> result).
    Elicit {
        /// Minimize total violation with a fixed strict margin instead.
        #[arg(long)]
        soft: bool,
        /// Strict margin of the soft fit.
        #[arg(long, default_value = "1/100")]
        margin: String,
        /// Also write the program in CPLEX LP format to this file.
        #[arg(long, value_name = "PATH")]
        lp_file: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
enum VertexAction {
    /// Closed-form vertex census.
    Count {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: u32,
    },
    /// Every vertex, one JSON line each.
    Enum {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: u32,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FillArg {
    Clamp,
    Constant,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Lp,
    Vertex,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ObjectiveArg {
    Feasibility,
    MinPairTops,
}

/// Parses `argv` and runs the command against the given streams; returns
/// the exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    match execute(&cli, stdin, stdout) {
        Ok(Outcome::Success) => 0,
        Ok(Outcome::Rejected(error)) => {
            let _ = writeln!(stderr, "{}", json::to_line(&error));
            1
        }
        Err(e) => {
            let _ = writeln!(stderr, "{}", json::to_line(&error_to_json(&e)));
            1
        }
    }
}

enum Outcome {
    Success,
    /// Output was written but the input failed validation.
    Rejected(Value),
}

pub fn error_to_json(e: &Error) -> Value {
    let mut out = json!({ "error": e.kind(), "message": e.to_string() });
    let extra = match e {
        Error::NotACapacity(report) => Some(("report", json::report_to_json(report))),
        Error::NotTwoAdditive {
            point,
            coefficient,
            support_size,
        } => Some((
            "witness",
            json!({ "point": point, "coefficient": coefficient, "support_size": support_size }),
        )),
        Error::NotPAdditive { p, witness } => Some((
            "witness",
            json!({
                "p": p,
                "scope": witness.scope,
                "from": witness.from,
                "to": witness.to,
                "context": witness.context,
                "other_context": witness.other_context,
                "value": witness.value.to_string(),
                "other_value": witness.other_value.to_string(),
            }),
        )),
        _ => None,
    };
    if let Some((key, value)) = extra {
        out.as_object_mut().expect("object").insert(key.into(), value);
    }
    out
}

struct Io<'a> {
    args: &'a IoArgs,
    stdin: &'a mut dyn Read,
    stdout: &'a mut dyn Write,
}

impl Io<'_> {
    fn style(&self) -> Style {
        self.args.decimal.map_or(Style::Exact, Style::Decimal)
    }

    fn read(&mut self) -> Result<Value> {
        let (text, source) = match &self.args.input {
            Some(path) => (
                fs::read_to_string(path)
                    .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?,
                path.display().to_string(),
            ),
            None => {
                let mut text = String::new();
                self.stdin
                    .read_to_string(&mut text)
                    .map_err(|e| Error::Parse(format!("<stdin>: {e}")))?;
                (text, "<stdin>".to_string())
            }
        };
        json::parse_text(&text, &source)
    }

    /// Runs `body` against the chosen output sink.
    fn write(&mut self, body: impl FnOnce(&mut dyn Write) -> io::Result<()>) -> Result<()> {
        let result = match &self.args.output {
            Some(path) => {
                let file = fs::File::create(path)
                    .map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
                let mut sink = BufWriter::new(file);
                body(&mut sink).and_then(|_| sink.flush())
            }
            None => {
                let mut sink = BufWriter::new(&mut *self.stdout);
                body(&mut sink).and_then(|_| sink.flush())
            }
        };
        result.map_err(|e| Error::InvalidArgument(format!("cannot write output: {e}")))
    }

    fn emit(&mut self, value: &Value) -> Result<()> {
        let text = json::to_pretty(value);
        self.write(|sink| sink.write_all(text.as_bytes()))
    }
}

fn write_lp(path: &Option<PathBuf>, lp: &crate::lp::LinearProgram) -> Result<()> {
    if let Some(path) = path {
        fs::write(path, lp.to_lp_format())
            .map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn parse_levels(text: &str, what: &str) -> Result<Vec<u32>> {
    text.split(',')
        .map(|part| {
            part.trim()
                .parse::<u32>()
                .map_err(|_| Error::InvalidArgument(format!("{what} {text:?} is not a list of levels")))
        })
        .collect()
}

fn parse_order(text: &str) -> Result<Vec<Vec<usize>>> {
    text.split(';')
        .map(|scope| {
            scope
                .split(',')
                .map(|part| {
                    part.trim().parse::<usize>().map_err(|_| {
                        Error::InvalidArgument(format!("order {text:?} is not a list of scopes"))
                    })
                })
                .collect()
        })
        .collect()
}

fn execute(cli: &Cli, stdin: &mut dyn Read, stdout: &mut dyn Write) -> Result<Outcome> {
    let mut io = Io {
        args: &cli.io,
        stdin,
        stdout,
    };
    let style = io.style();
    match &cli.command {
        Command::Mobius => {
            let v = json::game_from_json(&io.read()?)?;
            io.emit(&json::mobius_to_json(&mobius(&v), style))?;
        }
        Command::Zeta => {
            let m = json::mobius_from_json(&io.read()?)?;
            io.emit(&json::game_to_json(&zeta(&m), style))?;
        }
        Command::Check => {
            let v = json::game_from_json(&io.read()?)?;
            let report = check_capacity(&v);
            io.emit(&json::report_to_json(&report))?;
            if !report.is_capacity() {
                return Ok(Outcome::Rejected(error_to_json(&Error::NotACapacity(Box::new(report)))));
            }
        }
        Command::Padd => {
            let v = json::game_from_json(&io.read()?)?;
            io.emit(&json!({ "degree": p_additivity_degree(&v), "support": support(&v) }))?;
        }
        Command::Embed { fill } => {
            let input = io.read()?;
            let fill = match fill {
                FillArg::Clamp => Fill::Clamp,
                FillArg::Constant => Fill::Constant,
            };
            let v = if input.get("terms").is_some() {
                embed_model(&json::model_from_json(&input)?, fill)?
            } else {
                embed(&json::tabulated_from_json(&input)?, fill)?
            };
            io.emit(&json::game_to_json(&v, style))?;
        }
        Command::Canonical { order, anchor } => {
            let u = json::tabulated_from_json(&io.read()?)?;
            let scopes = parse_order(order)?;
            let anchor = match anchor {
                Some(text) => parse_levels(text, "anchor")?,
                None => vec![0; u.space().n()],
            };
            let model = canonical_decomposition(&u, &scopes, &anchor)?;
            io.emit(&json::model_to_json(&model, style))?;
        }
        Command::DeltaDecompose { p } => {
            let u = json::tabulated_from_json(&io.read()?)?;
            io.emit(&json::model_to_json(&delta_decomposition(&u, *p)?, style))?;
        }
        Command::Vertices { action } => match action {
            VertexAction::Count { n, k } => {
                io.emit(&json::vertex_census_to_json(&count_vertices(*n, *k)?))?;
            }
            VertexAction::Enum { n, k } => {
                let vertices = enumerate_vertices(*n, *k)?;
                io.write(|sink| {
                    for vertex in vertices {
                        writeln!(sink, "{}", json::to_line(&json::vertex_to_json(&vertex, style)))?;
                    }
                    Ok(())
                })?;
            }
        },
        Command::Antichains { k } => {
            if *k == 0 {
                return Err(Error::InvalidArgument("k must be at least 1".into()));
            }
            let antichains = enumerate_antichains(*k);
            io.write(|sink| {
                for a in &antichains {
                    writeln!(sink, "{}", json::to_line(&json::antichain_to_json(a)))?;
                }
                Ok(())
            })?;
        }
        Command::Decompose {
            method,
            objective,
            lp_file,
        } => {
            let v = KaryCapacity::try_new(json::game_from_json(&io.read()?)?)?;
            match method {
                Method::Lp => {
                    if lp_file.is_some() {
                        write_lp(lp_file, build_monotone_lp(&v)?.program())?;
                    }
                    let options = DecomposeOptions {
                        objective: match objective {
                            ObjectiveArg::Feasibility => DecomposeObjective::Feasibility,
                            ObjectiveArg::MinPairTops => DecomposeObjective::MinimizePairTops,
                        },
                        ..DecomposeOptions::default()
                    };
                    let d = monotone_decompose_with(&v, &options)?;
                    io.emit(&json::decomposition_to_json(&d, style))?;
                }
                Method::Vertex => {
                    let c = vertex_decompose(&v)?;
                    io.emit(&json::combination_to_json(&c, style))?;
                }
            }
        }
        Command::Recompose => {
            let input = io.read()?;
            let v = if input.get("atoms").is_some() {
                json::combination_from_json(&input)?.capacity()
            } else {
                recompose(&json::decomposition_from_json(&input)?)?
            };
            io.emit(&json::game_to_json(&v, style))?;
        }
        Command::Census { n, k, m } => {
            let bounds = match (n, k, m) {
                (Some(n), Some(k), None) => vec![*k; *n],
                (None, None, Some(m)) => m.clone(),
                _ => return Err(Error::InvalidArgument("give --n and --k, or --m".into())),
            };
            let census = constraint_census(&bounds)?;
            io.emit(&json::constraint_census_to_json(&bounds, &census))?;
        }
        Command::Elicit {
            soft,
            margin,
            lp_file,
        } => {
            let data = json::dataset_from_json(&io.read()?)?;
            let built = build_elicitation_lp(&data)?;
            write_lp(lp_file, built.program())?;
            if *soft {
                let margin = parse_rational(margin).map_err(|e| Error::InvalidArgument(e.to_string()))?;
                let fit = elicit_soft(&data, &margin)?;
                io.emit(&json!({
                    "status": "soft",
                    "total_violation": style.rational(&fit.total_violation),
                    "slacks": fit.slacks.iter().map(|s| style.rational(s)).collect::<Vec<_>>(),
                    "thresholds": fit.thresholds.iter().map(|t| style.rational(t)).collect::<Vec<_>>(),
                    "model": json::decomposition_to_json(&fit.model, style),
                }))?;
            } else {
                let result = elicit(&data)?;
                io.emit(&json::elicitation_to_json(&result, built.program(), style))?;
            }
        }
    }
    Ok(Outcome::Success)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str], input: &str) -> (i32, String, String) {
        let mut stdin = input.as_bytes();
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("gaikit").chain(args.iter().copied());
        let code = run(argv, &mut stdin, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn census_prints_counts() {
        let (code, out, _) = call(&["census", "--n", "4", "--k", "4"], "");
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["variables"], 170);
        assert_eq!(v["full"], 2000);
        assert_eq!(v["decomposed"], 256);
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(call(&["census", "--n", "4"], "").0, 2);
        assert_eq!(call(&["nonsense"], "").0, 2);
        assert_eq!(call(&["--help"], "").0, 0);
    }

    #[test]
    fn validation_errors_exit_one_with_json() {
        let (code, _, err) = call(&["mobius"], "{\"n\": 1}");
        assert_eq!(code, 1);
        let e: Value = serde_json::from_str(err.trim()).unwrap();
        assert_eq!(e["error"], "parse");
    }

    #[test]
    fn check_flags_non_capacities() {
        let input = r#"{"n": 1, "k": 2, "values": {"0": "0", "1": "1", "2": "1/2"}}"#;
        let (code, out, err) = call(&["check"], input);
        assert_eq!(code, 1);
        let report: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(report["capacity"], false);
        assert!(err.contains("not_a_capacity"));
    }
}

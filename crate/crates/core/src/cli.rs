//! The `reglang` command line.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::alphabet::Alphabet;
use crate::count::{count_table, CountRow, CountVectors};
use crate::dfa::Dfa;
use crate::error::{Error, Result};
use crate::graph::{self, ComponentReport};
use crate::metrics::{self, CesaroConfig, CesaroMode, DistanceOptions, Metric};
use crate::oracle::{oracle_counts, OracleBudget};
use crate::regex::{parse_regex, Regex};
use crate::spectral::{self, SpectralReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_CONVERGENCE: i32 = 2;

/// Decimal places kept in floating point output.
pub const FLOAT_DIGITS: usize = 12;

#[derive(Debug, Parser)]
#[command(name = "reglang", version, about = "Entropy and distances of regular languages")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Topological entropy of a language.
    Entropy {
        regex: String,
        /// Alphabet as a string of symbols, e.g. `abc`.
        #[arg(long)]
        alphabet: Option<String>,
    },
    /// Distance between two languages.
    Distance {
        #[command(flatten)]
        opts: MetricArgs,
        r1: String,
        r2: String,
    },
    /// Pairwise distance matrix of the expressions in a file, one per line.
    Matrix {
        #[command(flatten)]
        opts: MetricArgs,
        #[arg(long)]
        file: PathBuf,
    },
    /// Automaton, component structure and word counts of a language.
    Analyze {
        regex: String,
        #[arg(long)]
        alphabet: Option<String>,
        /// Emit counts for lengths 0..=N.
        #[arg(long, value_name = "N")]
        counts: Option<u64>,
        /// Include the minimal DFA.
        #[arg(long)]
        dump: bool,
        /// Check counts against exhaustive enumeration.
        #[arg(long)]
        verify: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Debug, Clone, clap::Args)]
pub struct MetricArgs {
    #[arg(long, value_parser = parse_metric)]
    pub metric: Metric,
    /// Length for `jn` and `jnp`.
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long, value_enum, default_value_t = ModeArg::Auto)]
    pub mode: ModeArg,
    /// Convergence tolerance for `jc`.
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long)]
    pub alphabet: Option<String>,
    /// Average `J'_n` instead of `J_n` in `jc`.
    #[arg(long)]
    pub exact_sequence: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Auto,
    Empirical,
    Analytic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

fn parse_metric(s: &str) -> std::result::Result<Metric, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

impl MetricArgs {
    fn options(&self) -> DistanceOptions {
        DistanceOptions {
            n: self.n,
            cesaro: CesaroConfig {
                mode: match self.mode {
                    ModeArg::Auto => CesaroMode::Auto,
                    ModeArg::Empirical => CesaroMode::Empirical,
                    ModeArg::Analytic => CesaroMode::Analytic,
                },
                sequence: if self.exact_sequence {
                    metrics::Sequence::Exact
                } else {
                    metrics::Sequence::Cumulative
                },
                tol: self.tol,
                ..CesaroConfig::default()
            },
        }
    }
}

/// Parses `args` (program name first), runs the command, and returns the
/// exit code. Errors go to `err` prefixed with `error:`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    match execute(&cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_convergence() {
                EXIT_CONVERGENCE
            } else {
                EXIT_INPUT
            }
        }
    }
}

fn io_error(e: impl std::fmt::Display) -> Error {
    Error::InvalidArgument(format!("i/o: {e}"))
}

pub fn execute(command: &Command, out: &mut dyn Write) -> Result<()> {
    match command {
        Command::Entropy { regex, alphabet } => {
            let dfas = compile_all(&[regex.as_str()], alphabet.as_deref())?;
            let report = spectral::language_entropy(&dfas[0])?;
            write_json(out, &entropy_json(&report))
        }
        Command::Distance { opts, r1, r2 } => {
            let dfas = compile_all(&[r1.as_str(), r2.as_str()], opts.alphabet.as_deref())?;
            let result = metrics::distance(opts.metric, &dfas[0], &dfas[1], &opts.options())?;
            write_json(out, &serde_json::to_value(&result).map_err(io_error)?)
        }
        Command::Matrix { opts, file } => {
            let text = std::fs::read_to_string(file)
                .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", file.display())))?;
            let regexes: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
            let dfas = compile_all(&regexes, opts.alphabet.as_deref())?;
            write_matrix(out, &regexes, &dfas, opts.metric, &opts.options())
        }
        Command::Analyze {
            regex,
            alphabet,
            counts,
            dump,
            verify,
            format,
        } => analyze(out, regex, alphabet.as_deref(), *counts, *dump, *verify, *format),
    }
}

/// Parses every expression and compiles them over one shared alphabet: the
/// override if given, otherwise the union of their literals.
pub fn compile_all(regexes: &[&str], alphabet: Option<&str>) -> Result<Vec<Dfa>> {
    let override_sigma = alphabet.map(Alphabet::from);
    let asts: Vec<Regex> = regexes
        .iter()
        .map(|r| parse_regex(r, override_sigma.as_ref()))
        .collect::<Result<_>>()?;
    let sigma = match override_sigma {
        Some(s) => s,
        None => asts
            .iter()
            .fold(Alphabet::default(), |acc, a| acc.union(&a.literals())),
    };
    asts.iter().map(|a| crate::compile_ast(a, Some(&sigma))).collect()
}

fn entropy_json(report: &SpectralReport) -> Value {
    json!({
        "entropy_bits": report.entropy_bits,
        "spectral_radius": report.spectral_radius,
        "components": report.components.iter().map(|c| json!({
            "size": c.size,
            "period": c.period,
            "radius": c.radius,
        })).collect::<Vec<_>>(),
        "lambda_class": report.lambda_class,
    })
}

fn write_matrix(
    out: &mut dyn Write,
    labels: &[&str],
    dfas: &[Dfa],
    metric: Metric,
    opts: &DistanceOptions,
) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let header = std::iter::once("").chain(labels.iter().copied());
    w.write_record(header).map_err(io_error)?;
    for (i, label) in labels.iter().enumerate() {
        let row: Vec<f64> = (0..dfas.len())
            .into_par_iter()
            .map(|j| Ok(metrics::distance(metric, &dfas[i], &dfas[j], opts)?.value))
            .collect::<Result<_>>()?;
        let record = std::iter::once(label.to_string()).chain(row.iter().map(|&v| format_float(v)));
        w.write_record(record).map_err(io_error)?;
        w.flush().map_err(io_error)?;
    }
    Ok(())
}

#[derive(Serialize)]
struct Verification {
    n_max: u64,
    agrees: bool,
    mismatches: Vec<u64>,
}

#[allow(clippy::too_many_arguments)]
fn analyze(
    out: &mut dyn Write,
    regex: &str,
    alphabet: Option<&str>,
    counts: Option<u64>,
    dump: bool,
    verify: bool,
    format: Format,
) -> Result<()> {
    let sigma_override = alphabet.map(Alphabet::from);
    let ast = parse_regex(regex, sigma_override.as_ref())?;
    let dfa = crate::compile_ast(&ast, sigma_override.as_ref())?;
    let cv = CountVectors::from_dfa(&dfa);
    let rows = counts.map(|n| count_table(&cv, n));

    if format == Format::Csv {
        let rows = rows.ok_or_else(|| Error::InvalidArgument("--format csv needs --counts N".into()))?;
        if dump || verify {
            return Err(Error::InvalidArgument("--dump and --verify need --format json".into()));
        }
        return write_counts_csv(out, &rows);
    }

    let trim = graph::trim(&dfa);
    let components: ComponentReport = graph::scc_decompose(&trim);
    let mut doc = json!({
        "regex": regex,
        "alphabet": dfa.alphabet(),
        "states": dfa.num_states(),
        "trim_states": trim.len(),
        "components": components,
        "entropy": entropy_json(&spectral::language_entropy(&dfa)?),
    });
    if let Some(rows) = &rows {
        doc["counts"] = serde_json::to_value(rows).map_err(io_error)?;
    }
    if dump {
        doc["dfa"] = serde_json::to_value(&dfa).map_err(io_error)?;
    }
    if verify {
        let n_max = counts.unwrap_or(8).min(OracleBudget::default().max_length as u64);
        let oracle = oracle_counts(&ast, dfa.alphabet(), n_max as usize)?;
        let table = count_table(&cv, n_max);
        let mismatches: Vec<u64> = oracle
            .iter()
            .zip(&table)
            .filter(|(o, t)| {
                t.exact != o.exact.into() || t.cumulative != o.cumulative.into()
            })
            .map(|(o, _)| o.n as u64)
            .collect();
        doc["verify"] = serde_json::to_value(Verification {
            n_max,
            agrees: mismatches.is_empty(),
            mismatches,
        })
        .map_err(io_error)?;
    }
    write_json(out, &doc)
}

fn write_counts_csv(out: &mut dyn Write, rows: &[CountRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["n", "W_n", "W_le_n"]).map_err(io_error)?;
    for r in rows {
        w.write_record([r.n.to_string(), r.exact.to_string(), r.cumulative.to_string()])
            .map_err(io_error)?;
    }
    w.flush().map_err(io_error)
}

/// Fixed precision, trailing zeros removed, no negative zero.
pub fn format_float(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let s = format!("{:.*}", FLOAT_DIGITS, x);
    let s = s.trim_end_matches('0').trim_end_matches('.');
    match s {
        "-0" => "0".to_string(),
        _ => s.to_string(),
    }
}

/// Rounds every float in `v` to [`FLOAT_DIGITS`] decimals.
pub fn round_floats(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let rounded: f64 = format_float(n.as_f64().unwrap_or(0.0)).parse().unwrap_or(0.0);
            *v = if rounded.fract() == 0.0 && rounded.abs() < 1e15 {
                json!(rounded)
            } else {
                serde_json::Number::from_f64(rounded).map_or(Value::Null, Value::Number)
            };
        }
        Value::Array(items) => items.iter_mut().for_each(round_floats),
        Value::Object(map) => map.values_mut().for_each(round_floats),
        _ => {}
    }
}

fn write_json(out: &mut dyn Write, v: &Value) -> Result<()> {
    let mut v = v.clone();
    round_floats(&mut v);
    let text = serde_json::to_string_pretty(&v).map_err(io_error)?;
    writeln!(out, "{text}").map_err(io_error)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("reglang").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    fn json_of(text: &str) -> Value {
        serde_json::from_str(text).unwrap()
    }

    #[test]
    fn entropy_command() {
        let (code, out, _) = run_args(&["entropy", "(a|b)*"]);
        assert_eq!(code, 0);
        let v = json_of(&out);
        assert_eq!(v["entropy_bits"], json!(1.0));
        assert_eq!(v["lambda_class"], "expanding");
        assert_eq!(v["components"][0]["period"], 1);
    }

    #[test]
    fn distance_commands() {
        let (code, out, _) = run_args(&["distance", "--metric", "jc", "(a|b)*", "((a|b){2})*"]);
        assert_eq!(code, 0);
        let v = json_of(&out);
        assert_eq!(v["value"], json!(0.5));
        assert_eq!(v["mode"], "per-residue");
        assert_eq!(v["metric"], "cesaro");

        let (code, out, _) = run_args(&["distance", "--metric", "h", "a*", "(a|b)*"]);
        assert_eq!(code, 0);
        assert_eq!(json_of(&out)["value"], json!(1.0));

        let (code, out, _) = run_args(&["distance", "--metric", "jn", "--n", "3", "(a|b)*", "((a|b){2})*"]);
        assert_eq!(code, 0);
        assert_eq!(json_of(&out)["diagnostics"]["exact"], "2/3");
    }

    #[test]
    fn input_errors_exit_one() {
        let (code, _, err) = run_args(&["entropy", "(a|b"]);
        assert_eq!(code, 1);
        assert!(err.contains("position 4"), "{err}");
        let (code, _, err) = run_args(&["distance", "--metric", "jc", "--alphabet", "a", "a", "b"]);
        assert_eq!(code, 1);
        assert!(err.contains("not in the alphabet"), "{err}");
        let (code, _, _) = run_args(&["distance", "--metric", "jn", "a", "b"]);
        assert_eq!(code, 1);
        let (code, _, _) = run_args(&["distance", "--metric", "zz", "a", "b"]);
        assert_eq!(code, 1);
    }

    #[test]
    fn convergence_errors_exit_two() {
        let (code, _, err) = run_args(&[
            "distance", "--metric", "jc", "--mode", "analytic", "--tol", "1e-300", "a*", "(aa)*",
        ]);
        assert_eq!(code, 2, "{err}");
    }

    #[test]
    fn analyze_outputs() {
        let (code, out, _) = run_args(&["analyze", "(aa)*", "--counts", "4", "--dump", "--verify"]);
        assert_eq!(code, 0);
        let v = json_of(&out);
        assert_eq!(v["counts"][4]["W_le_n"], "3");
        assert_eq!(v["dfa"]["states"], 2);
        assert_eq!(v["verify"]["agrees"], true);
        assert_eq!(v["components"]["residue_period"], 2);

        let (code, out, _) = run_args(&["analyze", "(a|b)*", "--counts", "2", "--format", "csv"]);
        assert_eq!(code, 0);
        assert_eq!(out, "n,W_n,W_le_n\n0,1,1\n1,2,3\n2,4,7\n");
    }

    #[test]
    fn matrix_in_file_order() {
        let dir = std::env::temp_dir().join(format!("reglang-cli-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("m.txt");
        std::fs::write(&path, "(a|b)*\n\na*\n((a|b){2})*\n").unwrap();
        let (code, out, err) = run_args(&["matrix", "--metric", "h", "--file", path.to_str().unwrap()]);
        assert_eq!(code, 0, "{err}");
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines[0], ",(a|b)*,a*,((a|b){2})*");
        assert_eq!(lines[1], "(a|b)*,0,1,1");
        assert_eq!(lines[2], "a*,1,0,1");
        assert_eq!(lines.len(), 4);
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn float_formatting() {
        assert_eq!(format_float(0.5), "0.5");
        assert_eq!(format_float(1.0 / 3.0), "0.333333333333");
        assert_eq!(format_float(-1e-15), "0");
        let mut v = json!({"x": [0.1 + 0.2, 2.0]});
        round_floats(&mut v);
        assert_eq!(v.to_string(), r#"{"x":[0.3,2.0]}"#);
    }
}

//! The `vvmod` command line: `qexp` prints expansions, `eval` evaluates
//! Eisenstein series at a point, `verify` runs the identity registry.
//!
//! Exit codes: 0 success, 1 a check failed, 2 usage error, 3 numeric error.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::eisenstein::{
    e2_expansion, e2hol_expansion, e2vec, eis_fourier_with_tail, eis_sum, vv_eis_sum, EisensteinSpec, VvProduct,
};
use crate::error::Error;
use crate::identities::{run_all, CheckReport, RunConfig, DEFAULT_RADIUS};
use crate::qyseries::{EvalPoint, ScalarExpansion, DEFAULT_ORDER};
use crate::specfun::C64;
use crate::symframe::{VectorForm, XPolynomial};

pub const SCHEMA: &str = "vvmod/1";

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "vvmod", version, about = "Vector-valued modular forms and Eisenstein series")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the expansion of e2hol, e2, e2vec or frame(j,m)
    Qexp {
        form: String,
        #[command(flatten)]
        common: Common,
    },
    /// Evaluate a scalar or vector-valued Eisenstein series at one point
    Eval {
        #[arg(long, allow_hyphen_values = true)]
        k: i32,
        #[arg(long, default_value_t = 0)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        j: usize,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_pair)]
        s: (f64, f64),
        #[arg(long, allow_hyphen_values = true, value_parser = parse_pair)]
        tau: (f64, f64),
        #[arg(long, value_enum, default_value_t = Evaluator::Fourier)]
        evaluator: Evaluator,
        #[command(flatten)]
        common: Common,
    },
    /// Run the identity checks
    Verify {
        /// Glob over check names
        #[arg(long)]
        filter: Option<String>,
        /// Tolerance override, name=value; repeatable
        #[arg(long = "tolerance", value_parser = parse_override)]
        tolerances: Vec<(String, f64)>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug, Args)]
struct Common {
    #[arg(long, default_value_t = DEFAULT_ORDER, value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(1..))]
    order: usize,
    #[arg(long, default_value_t = DEFAULT_RADIUS, value_parser = clap::value_parser!(u32).range(1..))]
    radius: u32,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Evaluator {
    Sum,
    Fourier,
    Product,
}

fn parse_pair(text: &str) -> Result<(f64, f64), String> {
    let (a, b) = text.split_once(',').ok_or_else(|| format!("expected \"a,b\", got {text:?}"))?;
    let parse = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("{t:?}: {e}"));
    let pair = (parse(a)?, parse(b)?);
    if !(pair.0.is_finite() && pair.1.is_finite()) {
        return Err(format!("non-finite value in {text:?}"));
    }
    Ok(pair)
}

fn parse_override(text: &str) -> Result<(String, f64), String> {
    let (name, value) = text.split_once('=').ok_or_else(|| format!("expected name=value, got {text:?}"))?;
    let value = value.parse::<f64>().map_err(|e| format!("{value:?}: {e}"))?;
    Ok((name.to_string(), value))
}

/// Failure of a command, mapped to an exit code.
enum Failure {
    Usage(String),
    Numeric(Error),
    Other(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_numeric() {
            Failure::Numeric(e)
        } else {
            Failure::Other(e)
        }
    }
}

#[derive(Serialize)]
struct Versioned<T: Serialize> {
    schema: &'static str,
    #[serde(flatten)]
    body: T,
}

fn to_json<T: Serialize>(body: T) -> String {
    serde_json::to_string(&Versioned { schema: SCHEMA, body }).expect("serializable output") + "\n"
}

/// Named object accepted by `qexp`.
#[derive(Debug, Clone, PartialEq)]
pub enum FormName {
    E2hol,
    E2,
    E2vec,
    Frame { j: usize, m: usize },
}

impl std::str::FromStr for FormName {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self, Error> {
        match text {
            "e2hol" => return Ok(FormName::E2hol),
            "e2" => return Ok(FormName::E2),
            "e2vec" => return Ok(FormName::E2vec),
            _ => {}
        }
        let args = text
            .strip_prefix("frame(")
            .and_then(|t| t.strip_suffix(')'))
            .or_else(|| text.strip_prefix("frame:"))
            .ok_or_else(|| Error::Parse(format!("unknown form {text:?}; expected e2hol, e2, e2vec or frame(j,m)")))?;
        let (j, m) =
            args.split_once(',').ok_or_else(|| Error::Parse(format!("frame needs two indices, got {text:?}")))?;
        let index = |t: &str| t.trim().parse::<usize>().map_err(|e| Error::Parse(format!("{t:?}: {e}")));
        let (j, m) = (index(j)?, index(m)?);
        if j > m {
            return Err(Error::Index(format!("frame index j = {j} exceeds m = {m}")));
        }
        Ok(FormName::Frame { j, m })
    }
}

fn scalar_rows(f: &ScalarExpansion) -> Vec<(usize, usize, C64)> {
    let mut rows = Vec::new();
    for r in 0..=f.depth() {
        for n in 0..=f.order() {
            let c = f.coeff(r, n);
            if c != C64::new(0.0, 0.0) {
                rows.push((r, n, c));
            }
        }
    }
    rows
}

fn render_scalar(f: &ScalarExpansion, format: Format) -> String {
    match format {
        Format::Json => to_json(f.to_json()),
        Format::Csv => {
            let mut out = String::from("r,n,re,im\n");
            for (r, n, c) in scalar_rows(f) {
                let _ = writeln!(out, "{r},{n},{},{}", c.re, c.im);
            }
            out
        }
        Format::Table => {
            let mut out = format!("weight {} order {} depth {}\n", f.weight(), f.order(), f.depth());
            let _ = writeln!(out, "{:>3} {:>4} {:>24} {:>24}", "r", "n", "re", "im");
            for (r, n, c) in scalar_rows(f) {
                let _ = writeln!(out, "{r:>3} {n:>4} {:>24} {:>24}", c.re, c.im);
            }
            out
        }
    }
}

fn render_vector(f: &VectorForm, format: Format) -> String {
    match format {
        Format::Json => to_json(f.to_json()),
        Format::Csv => {
            let mut out = String::from("component,r,n,re,im\n");
            for (j, g) in f.components().iter().enumerate() {
                for (r, n, c) in scalar_rows(g) {
                    let _ = writeln!(out, "{j},{r},{n},{},{}", c.re, c.im);
                }
            }
            out
        }
        Format::Table => {
            let mut out = format!("weight {} type sym^{}\n", f.weight(), f.m());
            let _ = writeln!(out, "{:>9} {:>3} {:>4} {:>24} {:>24}", "component", "r", "n", "re", "im");
            for (j, g) in f.components().iter().enumerate() {
                for (r, n, c) in scalar_rows(g) {
                    let _ = writeln!(out, "{j:>9} {r:>3} {n:>4} {:>24} {:>24}", c.re, c.im);
                }
            }
            out
        }
    }
}

fn cmd_qexp(form: &str, common: &Common) -> Result<String, Failure> {
    let name: FormName = form.parse().map_err(|e: Error| Failure::Usage(e.to_string()))?;
    let n = common.order;
    Ok(match name {
        FormName::E2hol => render_scalar(&e2hol_expansion(n), common.format),
        FormName::E2 => render_scalar(&e2_expansion(n), common.format),
        FormName::E2vec => render_vector(&e2vec(n), common.format),
        FormName::Frame { j, m } => render_vector(&VectorForm::pure_frame(j, m, n)?, common.format),
    })
}

#[derive(Serialize)]
struct EvalOutput {
    k: i32,
    m: usize,
    j: usize,
    s: (f64, f64),
    tau: (f64, f64),
    value: crate::symframe::XPolynomialJson,
    tail_bound: Option<f64>,
    evaluator: Evaluator,
    order: Option<usize>,
    radius: Option<u32>,
}

#[allow(clippy::too_many_arguments)]
fn cmd_eval(
    k: i32,
    m: usize,
    j: usize,
    s: (f64, f64),
    tau: (f64, f64),
    evaluator: Evaluator,
    common: &Common,
) -> Result<String, Failure> {
    let point = EvalPoint::new(tau.0, tau.1).map_err(|e| Failure::Usage(e.to_string()))?;
    let spec = EisensteinSpec::vector(k, m, j, C64::new(s.0, s.1)).map_err(|e| Failure::Usage(e.to_string()))?;
    let (order, radius) = (common.order, common.radius);
    let (value, tail_bound, order, radius): (XPolynomial, Option<f64>, _, _) = match evaluator {
        Evaluator::Sum => {
            let value = if m == 0 {
                XPolynomial::from_coeffs(vec![eis_sum(&spec, &point, radius)?])?
            } else {
                vv_eis_sum(&spec, &point, radius)?
            };
            (value, None, None, Some(radius))
        }
        Evaluator::Fourier => {
            if m != 0 {
                return Err(Failure::Usage("the fourier evaluator takes m = 0; use product for m > 0".into()));
            }
            let e = eis_fourier_with_tail(&spec, &point, order)?;
            (XPolynomial::from_coeffs(vec![e.value])?, Some(e.tail_bound), Some(order), None)
        }
        Evaluator::Product => {
            let product = VvProduct::new(k, m, j, order)?;
            let (value, tail) = product.eval_with_tail(spec.s, &point)?;
            (value, Some(tail), Some(order), None)
        }
    };
    let out = EvalOutput { k, m, j, s, tau, value: value.to_json(), tail_bound, evaluator, order, radius };
    Ok(match common.format {
        Format::Json => to_json(out),
        Format::Csv => {
            let mut text = String::from("a,re,im\n");
            for (a, c) in value.coeffs().iter().enumerate() {
                let _ = writeln!(text, "{a},{},{}", c.re, c.im);
            }
            text
        }
        Format::Table => {
            let mut text = format!(
                "E(k={k}, m={m}, j={j}, s={}+{}i) at tau={}+{}i, evaluator {:?}\n",
                s.0, s.1, tau.0, tau.1, evaluator
            );
            let _ = writeln!(text, "{:>3} {:>24} {:>24}", "X^a", "re", "im");
            for (a, c) in value.coeffs().iter().enumerate() {
                let _ = writeln!(text, "{a:>3} {:>24} {:>24}", c.re, c.im);
            }
            if let Some(t) = tail_bound {
                let _ = writeln!(text, "tail bound {t:e}");
            }
            text
        }
    })
}

#[derive(Serialize)]
struct VerifyOutput<'a> {
    passed: bool,
    reports: &'a [CheckReport],
}

fn render_reports(reports: &[CheckReport], format: Format) -> String {
    let all = reports.iter().all(|r| r.passed);
    match format {
        Format::Json => to_json(VerifyOutput { passed: all, reports }),
        Format::Csv => {
            let mut out = String::from("name,passed,residual,tolerance\n");
            for r in reports {
                let _ = writeln!(out, "{},{},{:e},{:e}", r.name, r.passed, r.residual, r.tolerance);
            }
            out
        }
        Format::Table => {
            let width = reports.iter().map(|r| r.name.len()).max().unwrap_or(4).max(4);
            let mut out = format!("{:<width$}  {:<4}  {:>12}  {:>12}  notes\n", "name", "ok", "residual", "tolerance");
            for r in reports {
                let _ = writeln!(
                    out,
                    "{:<width$}  {:<4}  {:>12.3e}  {:>12.3e}  {}",
                    r.name,
                    if r.passed { "PASS" } else { "FAIL" },
                    r.residual,
                    r.tolerance,
                    r.notes
                );
            }
            out
        }
    }
}

fn cmd_verify(
    filter: Option<String>,
    tolerances: Vec<(String, f64)>,
    common: &Common,
) -> Result<(String, bool), Failure> {
    let config = RunConfig {
        order: common.order,
        radius: common.radius,
        seed: common.seed,
        tolerances: tolerances.into_iter().collect::<BTreeMap<_, _>>(),
        filter,
    };
    let reports = run_all(&config).map_err(|e| Failure::Usage(e.to_string()))?;
    Ok((render_reports(&reports, common.format), reports.iter().all(|r| r.passed)))
}

fn single_line(text: &str) -> String {
    text.lines().map(str::trim).filter(|l| !l.is_empty()).collect::<Vec<_>>().join(" ")
}

/// Run the CLI on `args` (including the program name); returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return EXIT_OK;
            }
            let text = e.to_string();
            let first = text.lines().next().unwrap_or("invalid arguments");
            let first = first.strip_prefix("error: ").unwrap_or(first);
            let _ = writeln!(err, "error: {}", single_line(first));
            return EXIT_USAGE;
        }
    };
    let result = match cli.command {
        Command::Qexp { form, common } => cmd_qexp(&form, &common).map(|t| (t, true)),
        Command::Eval { k, m, j, s, tau, evaluator, common } => {
            cmd_eval(k, m, j, s, tau, evaluator, &common).map(|t| (t, true))
        }
        Command::Verify { filter, tolerances, common } => cmd_verify(filter, tolerances, &common),
    };
    match result {
        Ok((text, passed)) => {
            let _ = out.write_all(text.as_bytes());
            if passed {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            }
        }
        Err(failure) => {
            let (code, message) = match failure {
                Failure::Usage(m) => (EXIT_USAGE, m),
                Failure::Numeric(e) => (EXIT_NUMERIC, e.to_string()),
                Failure::Other(e) => (EXIT_USAGE, e.to_string()),
            };
            let _ = writeln!(err, "error: {}", single_line(&message));
            code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("vvmod").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn form_names() {
        assert_eq!("e2".parse::<FormName>().unwrap(), FormName::E2);
        assert_eq!("frame(1,2)".parse::<FormName>().unwrap(), FormName::Frame { j: 1, m: 2 });
        assert_eq!("frame:0,3".parse::<FormName>().unwrap(), FormName::Frame { j: 0, m: 3 });
        assert!("frame(3,2)".parse::<FormName>().is_err());
        assert!("e4".parse::<FormName>().is_err());
    }

    #[test]
    fn qexp_e2_small_order() {
        let (code, out, _) = run_capture(&["qexp", "e2", "--order", "2"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["schema"], SCHEMA);
        assert_eq!(v["weight"], 2);
        let coeffs = v["coeffs"].as_array().unwrap();
        assert_eq!(coeffs.len(), 4);
        assert_eq!(coeffs[2][2], -72.0);
    }

    #[test]
    fn usage_errors() {
        let (code, _, err) = run_capture(&["qexp", "e4"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.starts_with("error:") && err.lines().count() == 1);
        let (code, _, err) = run_capture(&["eval", "--k", "4", "--s", "0", "--tau", "0,1"]);
        assert_eq!(code, EXIT_USAGE);
        assert_eq!(err.lines().count(), 1);
        let (code, _, _) = run_capture(&["qexp", "e2", "--order", "0"]);
        assert_eq!(code, EXIT_USAGE);
    }

    #[test]
    fn divergent_sum_is_numeric_error() {
        let (code, _, err) = run_capture(&["eval", "--k", "0", "--s", "1,0", "--tau", "0,1", "--evaluator", "sum"]);
        assert_eq!(code, EXIT_NUMERIC);
        assert!(err.starts_with("error:"));
    }

    #[test]
    fn negative_parameters_parse() {
        let (code, out, err) = run_capture(&["eval", "--k", "6", "--s", "-1,0", "--tau", "-0.4,1.2"]);
        assert_eq!(code, 0, "{err}");
        assert!(out.contains("\"evaluator\":\"fourier\""));
    }
}

//! The `nhl` command line.
//!
//! Exit codes: 0 on success, 2 on invalid input, 3 when an internal
//! consistency check fails.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde::Serialize;
use serde_json::{json, Value};

use crate::diagnostics::{diagnose, DEFAULT_NMAX};
use crate::ehrhart::{leading_data, NormalEhrhart};
use crate::error::{Error, Result};
use crate::face_ring::{face_ring_report, SimplicialComplex};
use crate::hilbert::{
    default_range, hilbert_data_from, sample, series, series_numerator, Filtration, HilbertReport,
};
use crate::io::{read_ideal, read_json, BasisJson, ComplexJson, IdealJson};
use crate::monomial::MonomialIdeal;
use crate::newton::{integral_closure_power, NewtonPolyhedron};
use crate::rlr2d::{hoskin_deligne, lipman_polynomial, MixedPair, PointBasis};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_VIOLATION: i32 = 3;

pub const NMAX_ENV: &str = "NHL_NMAX";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FiltrationArg {
    Ordinary,
    Normal,
}

impl From<FiltrationArg> for Filtration {
    fn from(f: FiltrationArg) -> Self {
        match f {
            FiltrationArg::Ordinary => Filtration::Ordinary,
            FiltrationArg::Normal => Filtration::Normal,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "nhl",
    version,
    about = "Normal Hilbert coefficients of monomial ideals"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, global = true, value_enum, default_value = "table")]
    pub format: Format,

    /// Reserved for randomized corpus generation.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Integral closure of I^n.
    Closure {
        #[arg(long)]
        ideal: PathBuf,
        #[arg(long, default_value_t = 1)]
        power: u32,
    },
    /// Hilbert function samples H(0..N).
    Hilbert {
        #[arg(long)]
        ideal: PathBuf,
        #[arg(long, value_enum, default_value = "normal")]
        filtration: FiltrationArg,
        #[arg(long)]
        range: Option<usize>,
    },
    /// Hilbert coefficients e_0..e_d and the postulation number.
    Coeffs {
        #[arg(long)]
        ideal: PathBuf,
        #[arg(long, value_enum, default_value = "normal")]
        filtration: FiltrationArg,
        #[arg(long)]
        range: Option<usize>,
    },
    /// Truncated Hilbert series and its numerator (1-t)^d F(t).
    Series {
        #[arg(long)]
        ideal: PathBuf,
        #[arg(long, value_enum, default_value = "normal")]
        filtration: FiltrationArg,
        #[arg(long)]
        range: Option<usize>,
    },
    /// Coefficient inequalities and reduction-number checks.
    Diagnose {
        #[arg(long)]
        ideal: PathBuf,
        #[arg(long)]
        nmax: Option<u32>,
    },
    /// Ehrhart polynomials of the split polytopes S and P.
    Ehrhart {
        #[arg(long)]
        ideal: PathBuf,
        #[arg(long)]
        range: Option<u32>,
    },
    /// f-vector, Chern number and purity of a simplicial complex.
    FaceRing {
        #[arg(long)]
        complex: PathBuf,
    },
    /// Lipman's formula for one ideal, mixed lengths for two (dimension 2).
    Rlr2d {
        #[arg(long, num_args = 1, required = true)]
        ideal: Vec<PathBuf>,
        #[arg(long)]
        r: Option<u32>,
        #[arg(long)]
        s: Option<u32>,
        #[arg(long)]
        nmax: Option<u32>,
    },
    /// Length and Hilbert coefficients from a point basis.
    HoskinDeligne {
        #[arg(long)]
        basis: PathBuf,
    },
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
            let text = e.render().to_string();
            if code == EXIT_OK {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    match execute(&cli) {
        Ok(outcome) => {
            let _ = writeln!(out, "{}", render(&outcome.report, cli.format));
            if let Some(e) = outcome.violation {
                let _ = writeln!(err, "error: {e}");
                return EXIT_VIOLATION;
            }
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_violation() {
                EXIT_VIOLATION
            } else {
                EXIT_INVALID
            }
        }
    }
}

/// A report, plus a violation found after the report was assembled.
pub struct Outcome {
    pub report: Value,
    pub violation: Option<Error>,
}

impl Outcome {
    fn ok(report: impl Serialize) -> Result<Self> {
        Ok(Outcome {
            report: serde_json::to_value(report)?,
            violation: None,
        })
    }
}

fn nmax(flag: Option<u32>) -> Result<u32> {
    if let Some(n) = flag {
        return Ok(n);
    }
    match std::env::var(NMAX_ENV) {
        Ok(text) => text.trim().parse().map_err(|_| {
            Error::Invalid(format!(
                "{NMAX_ENV} must be a nonnegative integer, got {text:?}"
            ))
        }),
        Err(_) => Ok(DEFAULT_NMAX),
    }
}

fn rational(q: &BigRational) -> Value {
    if q.is_integer() {
        // exact integers stay numbers when they fit
        if let Ok(v) = q.to_integer().to_string().parse::<i64>() {
            return json!(v);
        }
    }
    json!(q.to_string())
}

pub fn execute(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Closure { ideal, power } => {
            let ideal = read_ideal(ideal)?;
            let closure = integral_closure_power(&ideal, *power)?;
            let mut report = serde_json::to_value(IdealJson::from(&closure))?;
            report["power"] = json!(power);
            report["colength"] = json!(closure.colength()?);
            Ok(Outcome {
                report,
                violation: None,
            })
        }
        Command::Hilbert {
            ideal,
            filtration,
            range,
        } => {
            let ideal = read_ideal(ideal)?;
            let range = range.unwrap_or_else(|| default_range(ideal.dim()));
            let samples = sample(&ideal, (*filtration).into(), range)?;
            Outcome::ok(json!({
                "filtration": samples.filtration,
                "samples": samples.values,
            }))
        }
        Command::Coeffs {
            ideal,
            filtration,
            range,
        } => {
            let ideal = read_ideal(ideal)?;
            let range = range.unwrap_or_else(|| default_range(ideal.dim()));
            let (samples, data) = hilbert_data_from(&ideal, (*filtration).into(), range)?;
            Outcome::ok(HilbertReport::new(&samples, &data))
        }
        Command::Series {
            ideal,
            filtration,
            range,
        } => {
            let ideal = read_ideal(ideal)?;
            let range = range.unwrap_or_else(|| default_range(ideal.dim()));
            let samples = sample(&ideal, (*filtration).into(), range)?;
            let series = series(&samples);
            let numerator = series_numerator(&series, ideal.dim());
            Outcome::ok(json!({"series": series, "numerator": numerator}))
        }
        Command::Diagnose { ideal, nmax: flag } => {
            let ideal = read_ideal(ideal)?;
            let report = diagnose(&ideal, nmax(*flag)?)?;
            let violation = report.ensure_consistent().err();
            Ok(Outcome {
                report: serde_json::to_value(&report)?,
                violation,
            })
        }
        Command::Ehrhart { ideal, range } => {
            let ideal = read_ideal(ideal)?;
            ehrhart_report(&ideal, range.unwrap_or(ideal.dim() as u32 + 2))
        }
        Command::FaceRing { complex } => {
            let json: ComplexJson = read_json(complex)?;
            Outcome::ok(face_ring_report(&SimplicialComplex::from_json(&json)?)?)
        }
        Command::Rlr2d {
            ideal,
            r,
            s,
            nmax: flag,
        } => {
            let ideals = ideal.iter().map(read_ideal).collect::<Result<Vec<_>>>()?;
            match ideals.as_slice() {
                [i] => Outcome::ok(lipman_polynomial(i, nmax(*flag)?)?),
                [i, j] => mixed_report(i, j, *r, *s),
                _ => Err(Error::Invalid(
                    "rlr2d takes one or two --ideal files".into(),
                )),
            }
        }
        Command::HoskinDeligne { basis } => {
            let json: BasisJson = read_json(basis)?;
            Outcome::ok(hoskin_deligne(&PointBasis::from_json(&json)?)?)
        }
    }
}

fn ehrhart_report(ideal: &MonomialIdeal, range: u32) -> Result<Outcome> {
    let q = NewtonPolyhedron::build(ideal)?;
    let (s_poly, p_poly) = q.split();
    let normal = NormalEhrhart::new(ideal)?;
    let d = ideal.dim();
    let coeffs = |e: &crate::ehrhart::EhrhartPolynomial| -> Vec<Value> {
        (0..=d).map(|k| rational(&e.coefficient(k))).collect()
    };
    let lead = |e: &crate::ehrhart::EhrhartPolynomial| {
        let l = leading_data(e, d);
        json!({
            "volume": rational(&l.volume),
            "half_boundary": rational(&l.half_boundary),
            "lower_dimensional": l.lower_dimensional,
        })
    };
    let values = (0..=range)
        .map(|n| normal.value(n))
        .collect::<Result<Vec<_>>>()?;
    Outcome::ok(json!({
        "s_vertices": s_poly.vertices().iter().map(|v| v.entries().to_vec()).collect::<Vec<_>>(),
        "p_vertices": p_poly.vertices().iter().map(|v| v.entries().to_vec()).collect::<Vec<_>>(),
        "s": coeffs(&normal.s),
        "p": coeffs(&normal.p),
        "difference": coeffs(&normal.difference),
        "s_leading": lead(&normal.s),
        "p_leading": lead(&normal.p),
        "lengths": values,
    }))
}

fn mixed_report(
    i: &MonomialIdeal,
    j: &MonomialIdeal,
    r: Option<u32>,
    s: Option<u32>,
) -> Result<Outcome> {
    if i.dim() != j.dim() {
        return Err(Error::DimensionMismatch {
            expected: i.dim(),
            found: j.dim(),
        });
    }
    let pair = MixedPair::new(i, j)?;
    let rs: Vec<u32> = (0..=3).collect();
    let r_values = r.map(|r| vec![r]).unwrap_or_else(|| rs.clone());
    let s_values = s.map(|s| vec![s]).unwrap_or(rs);
    let mut rows = Vec::new();
    for &r in &r_values {
        for &s in &s_values {
            rows.push(pair.length(r, s)?);
        }
    }
    let first = &rows[0];
    Outcome::ok(json!({
        "e_i": first.e_i,
        "e_j": first.e_j,
        "mixed_e1": first.mixed_e1,
        "rows": rows.iter().map(|m| json!({"r": m.r, "s": m.s, "predicted": m.predicted, "observed": m.observed})).collect::<Vec<_>>(),
    }))
}

/// Renders a report as JSON or as an aligned plain-text table with the same values.
pub fn render(report: &Value, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string(report).expect("report serializes"),
        Format::Table => {
            let mut lines = Vec::new();
            table_lines(report, "", &mut lines);
            let width = lines.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            lines
                .iter()
                .map(|(k, v)| {
                    if v.is_empty() {
                        k.clone()
                    } else {
                        format!("{k:width$}  {v}")
                    }
                })
                .collect::<Vec<_>>()
                .join("\n")
        }
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.iter().all(|x| !x.is_object()) => Some(
            items
                .iter()
                .map(|x| scalar(x).unwrap_or_else(|| x.to_string()))
                .collect::<Vec<_>>()
                .join(" "),
        ),
        _ => None,
    }
}

fn table_lines(v: &Value, prefix: &str, lines: &mut Vec<(String, String)>) {
    match v {
        Value::Object(map) => {
            for (k, child) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                table_lines(child, &key, lines);
            }
        }
        Value::Array(items) if items.iter().any(|x| x.is_object()) => {
            for (i, item) in items.iter().enumerate() {
                table_lines(item, &format!("{prefix}[{i}]"), lines);
            }
        }
        other => lines.push((prefix.to_string(), scalar(other).unwrap_or_default())),
    }
}

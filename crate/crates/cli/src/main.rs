//! `ascurve`: command-line access to point counts, L-polynomials, bounds,
//! trace codes and Walsh spectra of Artin-Schreier curves. Every command
//! prints one JSON document; failures print `{"error": {"code", "message"}}`
//! and exit nonzero.

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use artin_schreier::bounds::compare_report;
use artin_schreier::codes::{
    build_trace_code, code_report, distance_bound_dual_bch, distance_bound_goppa_dual, distance_bound_via_zero_counts,
    dual_bch_with_allone, fp_spanning_set, goppa_dual, min_distance_exhaustive, LinearCode,
};
use artin_schreier::counting::{char_sum, count_curve_points, count_trace_zeros, CurveInstance};
use artin_schreier::field::{Elem, FieldSpec};
use artin_schreier::newton::{build_polygon, check_a1_valuation, root_valuations};
use artin_schreier::poly::Poly;
use artin_schreier::walsh::walsh_summary;
use artin_schreier::zeta::{compute_l_polynomial, hasse_witt_invariant, predicted_hasse_witt_artin_schreier, verify_weil_structure};
use artin_schreier::{checks, exact, Error, Limits};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "ascurve", version, about = "Exact computations for Artin-Schreier curves y^p - y = f(x)")]
struct Cli {
    /// Largest field that may be enumerated.
    #[arg(long, global = true, default_value_t = artin_schreier::limits::DEFAULT_MAX_ELEMENTS)]
    max_enum: u64,
    /// Largest number of codewords a distance search may walk.
    #[arg(long, global = true, default_value_t = artin_schreier::limits::DEFAULT_MAX_CODEWORDS)]
    max_codewords: u64,
    /// Cap on concurrent partitions (default: available cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Write a reproducibility manifest to this path.
    #[arg(long, global = true)]
    manifest: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct FieldArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    n: u32,
    /// Modulus coefficients, constant term first (default: smallest irreducible).
    #[arg(long, value_delimiter = ',')]
    modulus: Option<Vec<u64>>,
}

impl FieldArgs {
    fn build(&self) -> Result<Arc<FieldSpec>, Error> {
        let spec = match &self.modulus {
            Some(m) => FieldSpec::new(self.p, self.n, m.clone())?,
            None => FieldSpec::with_default_modulus(self.p, self.n)?,
        };
        Ok(Arc::new(spec))
    }
}

#[derive(Args, Debug, Clone)]
struct CurveArgs {
    #[command(flatten)]
    field: FieldArgs,
    /// Polynomial such as "x^5 + 3*x^3 + x"; coefficients are canonical encodings.
    #[arg(long)]
    f: String,
}

impl CurveArgs {
    fn build(&self) -> Result<CurveInstance, Error> {
        CurveInstance::parse(self.field.build()?, &self.f)
    }
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum CodeFamily {
    /// Tr_P of all polynomials of degree at most --degree, P = F_q.
    Trace,
    /// All-one word plus the dual of the primitive BCH code of designed distance --t.
    DualBch,
    /// Dual of the classical Goppa code with a degree --t polynomial, plus the all-one word.
    GoppaDual,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Describe F_{p^n}: order, modulus, and power basis.
    Field(FieldArgs),
    /// |Z_f| = #{a : Tr(f(a)) = 0}.
    CountZeros(CurveArgs),
    /// N_f(i), the number of F_{q^i}-rational points.
    CurvePoints {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long, default_value_t = 1)]
        i: u32,
    },
    /// Exact character sum over F_q as a trace-value distribution.
    CharSum {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long, default_value_t = 1)]
        beta: Elem,
    },
    /// L-polynomial from exhaustive counts over F_{q^1..q^g}.
    Lpoly {
        #[command(flatten)]
        curve: CurveArgs,
        /// Extra extension counts used as cross-checks.
        #[arg(long, default_value_t = 0)]
        extra: u32,
    },
    /// Hasse-Witt invariant of the curve's L-polynomial.
    HasseWitt(CurveArgs),
    /// p-adic Newton polygon of an integer polynomial.
    NewtonPolygon {
        #[arg(long)]
        p: u64,
        /// Integer coefficients, constant term first.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        coeffs: Vec<String>,
    },
    /// Weil, Weil-Serre and improved bounds for deg f = m over F_{p^n}.
    Bounds {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u64,
    },
    /// Build a trace code and report its parameters.
    TraceCode {
        #[arg(long, value_enum, default_value_t = CodeFamily::Trace)]
        family: CodeFamily,
        #[command(flatten)]
        field: FieldArgs,
        /// Maximum degree for the plain trace code.
        #[arg(long)]
        degree: Option<u64>,
        /// Designed distance (dual BCH) or Goppa polynomial degree.
        #[arg(long)]
        t: Option<u64>,
        /// Goppa polynomial (default: smallest root-free monic of degree t).
        #[arg(long)]
        goppa: Option<String>,
        /// Also compute the exact minimum distance.
        #[arg(long)]
        distance: bool,
        /// Write the generator matrix as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact minimum distance of a code file written by trace-code.
    MinDistance {
        #[arg(long)]
        code: PathBuf,
    },
    /// Walsh spectrum summary and nonlinearity of f over F_{2^n}.
    Walsh {
        #[arg(long)]
        n: u32,
        #[arg(long, value_delimiter = ',')]
        modulus: Option<Vec<u64>>,
        #[arg(long)]
        f: String,
    },
    /// Reproduce the published numerical claims and print a pass/fail table.
    VerifyPaper {
        /// Run only this criterion (1-10).
        #[arg(long)]
        criterion: Option<u32>,
    },
}

/// Failure with a machine-readable code.
struct Failure {
    code: &'static str,
    message: String,
    detail: Option<Value>,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { code: e.code(), message: e.to_string(), detail: None }
    }
}

fn io_failure(e: std::io::Error, path: &std::path::Path) -> Failure {
    Failure { code: "io_error", message: format!("{}: {e}", path.display()), detail: None }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable output")
}

/// Runs a command and returns its JSON output plus the field it used.
fn run(command: &Command, limits: &Limits) -> Result<(Value, Option<Arc<FieldSpec>>), Failure> {
    Ok(match command {
        Command::Field(args) => {
            let k = args.build()?;
            (json!({"p": k.p(), "n": k.n(), "q": k.q(), "modulus": k.modulus(), "basis": k.basis()}), Some(k))
        }
        Command::CountZeros(args) => {
            let c = args.build()?;
            let z = count_trace_zeros(&c, limits)?;
            (json!({"f": c.original(), "reduced_f": c.poly(), "zeros": z}), Some(c.field().clone()))
        }
        Command::CurvePoints { curve, i } => {
            let c = curve.build()?;
            let n = count_curve_points(&c, *i, limits)?;
            (json!({"f": c.original(), "i": i, "points": n}), Some(c.field().clone()))
        }
        Command::CharSum { curve, beta } => {
            let c = curve.build()?;
            let s = char_sum(&c, *beta, limits)?;
            let out = json!({
                "f": c.original(),
                "beta": beta,
                "distribution": s.distribution,
                "norm_squared": s.exact_value().norm_squared().coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                "exact_magnitude": s.exact_magnitude(),
                "magnitude_f64": s.magnitude,
                "magnitude_error_f64": s.magnitude_error,
            });
            (out, Some(c.field().clone()))
        }
        Command::Lpoly { curve, extra } => {
            let c = curve.build()?;
            let (l, counts) = compute_l_polynomial(&c, *extra, limits)?;
            let out = json!({
                "f": c.original(),
                "counts": counts,
                "lpoly": l,
                "weil": verify_weil_structure(&l),
                "a1_valuation": if c.genus().unwrap_or(0) >= 1 && c.field().n() >= 3 && c.field().n() % 2 == 1 {
                    Some(to_value(&check_a1_valuation(&l, c.field().n())?))
                } else {
                    None
                },
            });
            (out, Some(c.field().clone()))
        }
        Command::HasseWitt(args) => {
            let c = args.build()?;
            let (l, _) = compute_l_polynomial(&c, 0, limits)?;
            let hw = hasse_witt_invariant(&l, c.field().p());
            let out = json!({
                "f": c.original(),
                "lpoly": l,
                "hasse_witt": hw,
                "predicted": predicted_hasse_witt_artin_schreier(),
            });
            (out, Some(c.field().clone()))
        }
        Command::NewtonPolygon { p, coeffs } => {
            let u = coeffs
                .iter()
                .map(|s| s.trim().parse::<BigInt>().map_err(|_| Error::Parse(format!("not an integer: {s:?}"))))
                .collect::<Result<Vec<_>, _>>()?;
            let np = build_polygon(&u, *p)?;
            let vals: Vec<Value> = root_valuations(&np)
                .iter()
                .map(|(k, m)| json!({"valuation": exact::ratio_to_string(k), "multiplicity": m}))
                .collect();
            (json!({"polygon": np, "root_valuations": vals}), None)
        }
        Command::Bounds { p, n, m } => (to_value(&compare_report(*p, *n, *m)?), None),
        Command::TraceCode { family, field, degree, t, goppa, distance, out } => {
            let k = field.build()?;
            let need_t = || t.ok_or_else(|| Error::Parse("--t is required for this family".into()));
            let (code, expected, guaranteed, bounds) = match family {
                CodeFamily::Trace => {
                    let d = degree.ok_or_else(|| Error::Parse("--degree is required for the trace family".into()))?;
                    let points: Vec<Elem> = (0..k.q()).collect();
                    let exps: Vec<u64> = (0..=d).collect();
                    let code = build_trace_code(&k, &points, &fp_spanning_set(&k, &exps, None), false)?;
                    let bounds = distance_bound_via_zero_counts(k.p(), k.n(), d, k.q())
                        .map(|b| vec![(b, format!("trace-zero bound over degrees <= {d}"))])
                        .unwrap_or_default();
                    (code, None, None, bounds)
                }
                CodeFamily::DualBch => {
                    let t = need_t()?;
                    if field.modulus.is_some() {
                        return Err(Error::Parse("dual BCH codes use the default modulus".into()).into());
                    }
                    let c = dual_bch_with_allone(k.p(), t, k.n())?;
                    let bounds = distance_bound_dual_bch(k.p(), t, k.n())
                        .map(|b| vec![(b, "dual BCH genus bound".to_string())])
                        .unwrap_or_default();
                    (c.code, Some(c.expected_dimension), Some(c.dimension_guaranteed), bounds)
                }
                CodeFamily::GoppaDual => {
                    let t = need_t()?;
                    if field.modulus.is_some() {
                        return Err(Error::Parse("Goppa duals use the default modulus".into()).into());
                    }
                    let g = goppa.as_deref().map(|s| Poly::parse(s, k.as_ref())).transpose()?;
                    let c = goppa_dual(k.p(), k.n(), t, g)?;
                    let mut bounds = Vec::new();
                    if let Ok(b) = distance_bound_via_zero_counts(k.p(), k.n(), 2 * t - 1, k.q()) {
                        bounds.push((b, format!("trace-zero bound over twisted degrees <= {}", 2 * t - 1)));
                    }
                    if let Ok(b) = distance_bound_goppa_dual(k.p(), k.n(), t) {
                        bounds.push((b, "Goppa-dual genus bound".to_string()));
                    }
                    (c.code, Some(c.expected_dimension), Some(c.dimension_guaranteed), bounds)
                }
            };
            let d = if *distance { min_distance_exhaustive(&code, limits)? } else { None };
            if let Some(path) = out {
                let text = serde_json::to_string(&code).expect("serializable code");
                std::fs::write(path, text + "\n").map_err(|e| io_failure(e, path))?;
            }
            let report = code_report(&code, d, bounds);
            let out = json!({
                "report": report,
                "expected_dimension": expected,
                "dimension_guaranteed": guaranteed,
            });
            (out, Some(k))
        }
        Command::MinDistance { code } => {
            let text = std::fs::read_to_string(code).map_err(|e| io_failure(e, code))?;
            let c: LinearCode = serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
            let d = min_distance_exhaustive(&c, limits)?;
            (json!({"p": c.p(), "N": c.length(), "k": c.dimension(), "d": d}), None)
        }
        Command::Walsh { n, modulus, f } => {
            let k = FieldArgs { p: 2, n: *n, modulus: modulus.clone() }.build()?;
            let poly = Poly::parse(f, k.as_ref())?;
            (to_value(&walsh_summary(&k, &poly, limits)?), Some(k))
        }
        Command::VerifyPaper { criterion } => {
            let report = match criterion {
                Some(c) => {
                    let r = checks::run_criterion(*c, limits).ok_or_else(|| Error::Parse(format!("no criterion {c}")))?;
                    checks::VerifyReport { pass: r.pass, criteria: vec![r] }
                }
                None => checks::run_all(limits),
            };
            let value = to_value(&report);
            if !report.pass {
                return Err(Failure {
                    code: "verification_failed",
                    message: "one or more criteria failed".into(),
                    detail: Some(value),
                });
            }
            (value, None)
        }
    })
}

#[derive(Serialize)]
struct RunManifest<'a> {
    schema_version: u32,
    tool_version: &'static str,
    field: Option<&'a FieldSpec>,
    operation: String,
    inputs: Value,
    outputs: &'a Value,
    wall_time_seconds: f64,
}

fn operation_name(command: &Command) -> String {
    let debug = format!("{command:?}");
    let name = debug.split(|c: char| !c.is_alphanumeric()).next().unwrap_or_default();
    let mut out = String::new();
    for (i, ch) in name.chars().enumerate() {
        if ch.is_uppercase() && i > 0 {
            out.push('-');
        }
        out.push(ch.to_ascii_lowercase());
    }
    out
}

fn emit_error(f: &Failure) {
    let mut err = json!({"error": {"code": f.code, "message": f.message}});
    if let Some(detail) = &f.detail {
        err["error"]["detail"] = detail.clone();
    }
    println!("{}", serde_json::to_string_pretty(&err).expect("serializable error"));
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            emit_error(&Failure { code: "usage", message: e.to_string().trim_end().to_string(), detail: None });
            return ExitCode::from(2);
        }
    };
    let mut limits = Limits { max_elements: cli.max_enum, max_codewords: cli.max_codewords, ..Limits::default() };
    if let Some(t) = cli.threads {
        limits = limits.with_threads(t);
    }
    let start = Instant::now();
    match run(&cli.command, &limits) {
        Ok((output, field)) => {
            println!("{}", serde_json::to_string_pretty(&output).expect("serializable output"));
            if let Some(path) = &cli.manifest {
                let argv: Vec<String> = std::env::args().skip(1).collect();
                let manifest = RunManifest {
                    schema_version: SCHEMA_VERSION,
                    tool_version: env!("CARGO_PKG_VERSION"),
                    field: field.as_deref(),
                    operation: operation_name(&cli.command),
                    inputs: json!({"argv": strip_manifest_flag(&argv)}),
                    outputs: &output,
                    wall_time_seconds: start.elapsed().as_secs_f64(),
                };
                let text = serde_json::to_string_pretty(&manifest).expect("serializable manifest");
                if let Err(e) = std::fs::write(path, text + "\n") {
                    emit_error(&io_failure(e, path));
                    return ExitCode::FAILURE;
                }
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            emit_error(&f);
            ExitCode::FAILURE
        }
    }
}

/// The argument list without `--manifest <path>`, so replaying it does not
/// overwrite the manifest.
fn strip_manifest_flag(argv: &[String]) -> Vec<String> {
    let mut out = Vec::new();
    let mut skip = false;
    for a in argv {
        if skip {
            skip = false;
        } else if a == "--manifest" {
            skip = true;
        } else if !a.starts_with("--manifest=") {
            out.push(a.clone());
        }
    }
    out
}

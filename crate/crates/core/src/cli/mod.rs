//! Command-line front end. [`run`] parses arguments, executes one command
//! and returns what should be written to stdout and stderr together with
//! the process exit code, so the binary stays a thin shell.
//!
//! Exit codes: 0 success, 2 a size or series cap was hit, 3 pole, 4
//! degenerate input, 5 parse error, 6 usage error.

pub mod polyspec;
#[cfg(test)]
mod schema_check;

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::asym::{h_limits, stirling_modulus_ratio, verify_epsilon, AsymError};
use crate::complex::{ComplexHP, PrecisionConfig};
use crate::decomp::{falsify, DecompError, VarSpec};
use crate::diffpoly::{c_coefficient, gamma_log_ratio, DiffPolyError, DEFAULT_RATIO_LIMIT};
use crate::specfun::{digamma_jet, functional_eq_residual, gamma_deriv, zeta_jet, SpecError};
use crate::voronin::{density_trend, gamma_curve, nearest_approach, VoroninError, DEFAULT_STEP, DEFAULT_X};

pub use polyspec::{parse_polyspec, ParseError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CAP: i32 = 2;
pub const EXIT_POLE: i32 = 3;
pub const EXIT_DEGENERATE: i32 = 4;
pub const EXIT_PARSE: i32 = 5;
pub const EXIT_USAGE: i32 = 6;

/// Orders above this make `voronin` slow enough to warn about.
const INTERACTIVE_ORDER: u32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "gzlab", version, about = "Gamma/zeta differential-algebra laboratory")]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Working precision in bits
    #[arg(
        long,
        global = true,
        env = "GZ_PRECISION_BITS",
        default_value_t = 256,
        value_parser = clap::value_parser!(u32).range(64..=1_000_000)
    )]
    precision_bits: u32,
    /// Seed for the random u-sample vectors
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print Γ⁽ⁿ⁾/Γ as a polynomial in f = Γ'/Γ and its derivatives
    Bell {
        #[arg(long)]
        n: u32,
    },
    /// Print the ladder c_1..c_n (coefficient of f^(k-2) f' in Γ⁽ᵏ⁾/Γ)
    Cn {
        #[arg(long)]
        n: u32,
    },
    /// Evaluate ζ⁽ᵏ⁾, Γ⁽ᵏ⁾ or ψ⁽ᵏ⁾ at a complex point
    Eval {
        #[arg(value_enum)]
        function: EvalFunction,
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        #[arg(long, default_value_t = 0)]
        order: u32,
    },
    /// Asymptotic checks
    Asym {
        #[command(subcommand)]
        check: AsymCheck,
    },
    /// Look for growth evidence that P(ζ, …; Γ, Γ⁽ⁿ⁾, Γ⁽ˡ⁾) does not vanish on Re z = 3/4
    Falsify {
        /// Polynomial text, or a path to a file containing it
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[arg(long, default_value_t = 2)]
        l: u32,
        #[arg(long, default_value_t = 0)]
        m: u32,
        /// Heights: comma list, lo:hi (10 points) or lo:hi:count
        #[arg(long, default_value = "10:100")]
        ys: String,
    },
    /// Search the curve (ζ, …, ζ⁽ᵐ⁾)(x + iy) for a close approach to a target
    Voronin {
        /// Comma-separated complex target, m + 1 entries
        #[arg(long, allow_hyphen_values = true, conflicts_with = "self_target")]
        target: Option<String>,
        /// Use the curve value at this height as the target
        #[arg(long)]
        self_target: Option<f64>,
        #[arg(long, default_value_t = 0)]
        m: u32,
        /// lo:hi, or a comma list of nested ranges
        #[arg(long, default_value = "0:200", allow_hyphen_values = true)]
        range: String,
        #[arg(long, default_value_t = DEFAULT_STEP)]
        step: f64,
        #[arg(long, default_value_t = DEFAULT_X)]
        x: f64,
    },
    /// Residual of the functional equation along 3/4 + iy
    FeCheck {
        #[arg(long, default_value = "1:40:20")]
        ys: String,
        #[arg(long, default_value_t = 0.75)]
        x: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EvalFunction {
    Zeta,
    Gamma,
    Digamma,
}

#[derive(Debug, Subcommand)]
enum AsymCheck {
    /// ε_n against K_n/(z log z)
    Epsilon {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value = "1e4,1e6,1e8", allow_hyphen_values = true)]
        zs: String,
    },
    /// (f'/f²)·z(log z)² and (f''/(f f'))·z log z
    Hlimits {
        #[arg(long, default_value = "1e4,1e6,1e8", allow_hyphen_values = true)]
        zs: String,
    },
    /// |Γ(3/4 + iy)| / (e^{-πy/2} y^{1/4} √(2π))
    Stirling {
        #[arg(long, default_value = "10,20,40,80")]
        y: String,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Cap(String),
    #[error("{0}")]
    Pole(String),
    #[error("{0}")]
    Degenerate(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Parse(_) => EXIT_PARSE,
            CliError::Cap(_) => EXIT_CAP,
            CliError::Pole(_) => EXIT_POLE,
            CliError::Degenerate(_) => EXIT_DEGENERATE,
        }
    }
}

impl From<DiffPolyError> for CliError {
    fn from(e: DiffPolyError) -> Self {
        match e {
            DiffPolyError::LimitExceeded { .. } => CliError::Cap(e.to_string()),
            DiffPolyError::Parse { .. } => CliError::Parse(e.to_string()),
            DiffPolyError::MissingJetValue { .. } => CliError::Degenerate(e.to_string()),
        }
    }
}

impl From<SpecError> for CliError {
    fn from(e: SpecError) -> Self {
        match e {
            SpecError::Pole { .. } => CliError::Pole(e.to_string()),
            SpecError::PrecisionUnreachable { .. } | SpecError::Overflow(_) => CliError::Cap(e.to_string()),
            SpecError::InvalidConfig(_) => CliError::Usage(e.to_string()),
            SpecError::DiffPoly(inner) => inner.into(),
        }
    }
}

impl From<AsymError> for CliError {
    fn from(e: AsymError) -> Self {
        match e {
            AsymError::Spec(inner) => inner.into(),
            AsymError::DiffPoly(inner) => inner.into(),
            AsymError::Sector { .. } | AsymError::DivisionNearZero { .. } | AsymError::Domain(_) => {
                CliError::Degenerate(e.to_string())
            }
        }
    }
}

impl From<DecompError> for CliError {
    fn from(e: DecompError) -> Self {
        match e {
            DecompError::Spec(inner) => inner.into(),
            DecompError::Asym(inner) => inner.into(),
            DecompError::InvalidSpec(_) | DecompError::Domain(_) => CliError::Usage(e.to_string()),
            DecompError::NoSuchIndex { .. } | DecompError::ZeroSpec | DecompError::AllZeroCoefficients => {
                CliError::Degenerate(e.to_string())
            }
        }
    }
}

impl From<VoroninError> for CliError {
    fn from(e: VoroninError) -> Self {
        match e {
            VoroninError::Spec(inner) => inner.into(),
            VoroninError::Domain(_) => CliError::Usage(e.to_string()),
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Parse(e.to_string())
    }
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// A command result in all three output shapes.
struct Rendered {
    json: Value,
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
    text: String,
}

impl Rendered {
    fn emit(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("serializable");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.header).expect("in-memory write");
                for row in &self.rows {
                    w.write_record(row).expect("in-memory write");
                }
                String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
            }
            Format::Text => self.text.clone(),
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

/// Runs one command line (including the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let mut warnings = String::new();
    match execute(&cli, &mut warnings) {
        Ok(rendered) => Outcome {
            code: EXIT_OK,
            stdout: rendered.emit(cli.format),
            stderr: warnings,
        },
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("{warnings}error: {e}\n"),
        },
    }
}

fn execute(cli: &Cli, warnings: &mut String) -> Result<Rendered, CliError> {
    let cfg = PrecisionConfig::new(cli.precision_bits);
    cfg.validate().map_err(CliError::Usage)?;
    match &cli.command {
        Command::Bell { n } => cmd_bell(*n),
        Command::Cn { n } => cmd_cn(*n),
        Command::Eval { function, z, order } => cmd_eval(*function, z, *order, &cfg),
        Command::Asym { check } => match check {
            AsymCheck::Epsilon { n, zs } => cmd_epsilon(*n, zs, &cfg),
            AsymCheck::Hlimits { zs } => cmd_hlimits(zs, &cfg),
            AsymCheck::Stirling { y } => cmd_stirling(y, &cfg),
        },
        Command::Falsify { poly, n, l, m, ys } => cmd_falsify(poly, *n, *l, *m, ys, &cfg, cli.seed),
        Command::Voronin {
            target,
            self_target,
            m,
            range,
            step,
            x,
        } => {
            if *m > INTERACTIVE_ORDER {
                let _ = writeln!(warnings, "warning: m = {m} makes each curve sample noticeably slower");
            }
            cmd_voronin(target.as_deref(), *self_target, *m, range, *step, *x, &cfg)
        }
        Command::FeCheck { ys, x } => cmd_fe_check(ys, *x, &cfg),
    }
}

fn parse_complex(text: &str, prec: u32) -> Result<ComplexHP, CliError> {
    ComplexHP::parse(text.trim(), prec).ok_or_else(|| CliError::Parse(format!("bad complex literal '{text}'")))
}

fn parse_complex_list(text: &str, prec: u32) -> Result<Vec<ComplexHP>, CliError> {
    text.split(',').map(|s| parse_complex(s, prec)).collect()
}

fn parse_f64(text: &str) -> Result<f64, CliError> {
    text.trim()
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| CliError::Parse(format!("bad number '{text}'")))
}

/// `lo:hi` with `..` accepted in place of `:`.
fn parse_range(text: &str) -> Result<(f64, f64), CliError> {
    let t = text.replace("..", ":");
    let parts: Vec<&str> = t.split(':').collect();
    if parts.len() != 2 {
        return Err(CliError::Parse(format!("range '{text}' is not lo:hi")));
    }
    Ok((parse_f64(parts[0])?, parse_f64(parts[1])?))
}

/// Comma list, `lo:hi` (10 evenly spaced points) or `lo:hi:count`.
pub fn parse_real_list(text: &str) -> Result<Vec<f64>, CliError> {
    let t = text.replace("..", ":");
    if !t.contains(':') {
        return t.split(',').map(parse_f64).collect();
    }
    let parts: Vec<&str> = t.split(':').collect();
    let (lo, hi) = match parts.as_slice() {
        [a, b] | [a, b, _] => (parse_f64(a)?, parse_f64(b)?),
        _ => return Err(CliError::Parse(format!("list '{text}' is not lo:hi or lo:hi:count"))),
    };
    let count: usize = match parts.get(2) {
        Some(c) => c
            .trim()
            .parse()
            .ok()
            .filter(|&c| c >= 1)
            .ok_or_else(|| CliError::Parse(format!("bad point count in '{text}'")))?,
        None => 10,
    };
    if count == 1 {
        return Ok(vec![lo]);
    }
    Ok((0..count)
        .map(|i| lo + (hi - lo) * i as f64 / (count - 1) as f64)
        .collect())
}

fn cmd_bell(n: u32) -> Result<Rendered, CliError> {
    if n > DEFAULT_RATIO_LIMIT {
        return Err(DiffPolyError::LimitExceeded {
            n,
            limit: DEFAULT_RATIO_LIMIT,
        }
        .into());
    }
    let r = gamma_log_ratio(n)?;
    let rendered = r.to_string();
    let rows = r
        .monomials()
        .iter()
        .map(|m| {
            let single = crate::diffpoly::DiffPoly::monomial(1, m.exponents.clone());
            vec![m.coefficient.to_string(), single.to_string(), m.exponents.weight().to_string()]
        })
        .collect();
    Ok(Rendered {
        json: json!({
            "n": n,
            "poly": rendered,
            "terms": r.len(),
            "coefficient_sum": r.coefficient_sum().to_string(),
        }),
        header: vec!["coefficient", "monomial", "weight"],
        rows,
        text: format!("{rendered}\n"),
    })
}

fn cmd_cn(n: u32) -> Result<Rendered, CliError> {
    if n > DEFAULT_RATIO_LIMIT {
        return Err(DiffPolyError::LimitExceeded {
            n,
            limit: DEFAULT_RATIO_LIMIT,
        }
        .into());
    }
    let mut ladder = Vec::new();
    let mut rows = Vec::new();
    let mut text = String::new();
    for k in 1..=n {
        let c = c_coefficient(k)?.to_string();
        ladder.push(json!({ "n": k, "c": c }));
        rows.push(vec![k.to_string(), c.clone()]);
        let _ = writeln!(text, "c_{k} = {c}");
    }
    Ok(Rendered {
        json: json!({ "ladder": ladder }),
        header: vec!["n", "c"],
        rows,
        text,
    })
}

fn cmd_eval(function: EvalFunction, z: &str, order: u32, cfg: &PrecisionConfig) -> Result<Rendered, CliError> {
    let z = parse_complex(z, cfg.precision_bits)?;
    let k = order as usize;
    let (name, value) = match function {
        EvalFunction::Zeta => ("zeta", zeta_jet(&z, k, cfg)?.swap_remove(k)),
        EvalFunction::Gamma => ("gamma", gamma_deriv(&z, order, cfg)?),
        EvalFunction::Digamma => ("digamma", digamma_jet(&z, k, cfg)?.swap_remove(k)),
    };
    Ok(Rendered {
        json: json!({ "function": name, "z": to_json(&z), "order": order, "value": to_json(&value) }),
        header: vec!["function", "z", "order", "re", "im"],
        rows: vec![vec![
            name.into(),
            z.to_string(),
            order.to_string(),
            value.re().to_string(),
            value.im().to_string(),
        ]],
        text: format!("{value}\n"),
    })
}

fn cmd_epsilon(n: u32, zs: &str, cfg: &PrecisionConfig) -> Result<Rendered, CliError> {
    if n == 0 {
        return Err(CliError::Usage("--n must be at least 1".into()));
    }
    let zs = parse_complex_list(zs, cfg.precision_bits)?;
    let report = verify_epsilon(n, &zs, cfg)?;
    let mut rows = Vec::new();
    let mut text = format!("n = {n}, converging = {}\n", report.converging);
    for i in 0..zs.len() {
        let cells = [
            &report.sample_points[i],
            &report.measured[i],
            &report.predicted[i],
            &report.ratios[i],
        ];
        rows.push(cells.iter().map(|c| c.to_string()).collect());
        let _ = writeln!(
            text,
            "z = {}: eps = {}, ratio = {}",
            cells[0], cells[1], cells[3]
        );
    }
    Ok(Rendered {
        json: to_json(&report),
        header: vec!["z", "measured", "predicted", "ratio"],
        rows,
        text,
    })
}

fn cmd_hlimits(zs: &str, cfg: &PrecisionConfig) -> Result<Rendered, CliError> {
    let zs = parse_complex_list(zs, cfg.precision_bits)?;
    let mut items = Vec::new();
    let mut rows = Vec::new();
    let mut text = String::new();
    for z in &zs {
        let (h, g) = h_limits(z, cfg)?;
        items.push(json!({ "z": to_json(z), "h": to_json(&h), "g": to_json(&g) }));
        rows.push(vec![z.to_string(), h.to_string(), g.to_string()]);
        let _ = writeln!(text, "z = {z}: H z log^2 z = {h}, f''/(f f') z log z = {g}");
    }
    Ok(Rendered {
        json: json!({ "limits": items }),
        header: vec!["z", "h", "g"],
        rows,
        text,
    })
}

fn cmd_stirling(ys: &str, cfg: &PrecisionConfig) -> Result<Rendered, CliError> {
    let ys = parse_real_list(ys)?;
    let mut items = Vec::new();
    let mut rows = Vec::new();
    let mut text = String::new();
    for &y in &ys {
        let r = stirling_modulus_ratio(y, cfg)?;
        items.push(json!({ "y": y, "ratio": to_json(&r) }));
        rows.push(vec![y.to_string(), r.to_string()]);
        let _ = writeln!(text, "y = {y}: ratio = {r}");
    }
    Ok(Rendered {
        json: json!({ "stirling": items }),
        header: vec!["y", "ratio"],
        rows,
        text,
    })
}

fn read_poly_source(poly: &str) -> Result<String, CliError> {
    let path = std::path::Path::new(poly);
    if path.is_file() {
        std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {poly}: {e}")))
    } else {
        Ok(poly.to_string())
    }
}

fn cmd_falsify(
    poly: &str,
    n: u32,
    l: u32,
    m: u32,
    ys: &str,
    cfg: &PrecisionConfig,
    seed: u64,
) -> Result<Rendered, CliError> {
    let spec = VarSpec::new(m, n, l)?;
    let src = read_poly_source(poly)?;
    let p = parse_polyspec(&src, &spec, cfg.precision_bits)?;
    let ys = parse_real_list(ys)?;
    let report = falsify(&p, &ys, cfg, seed)?;
    let rows = report
        .samples
        .iter()
        .map(|s| vec![s.y.to_string(), s.measured.to_string(), s.predicted.to_string(), s.ratio.to_string()])
        .collect();
    let verdict = to_json(&report.verdict);
    let text = format!(
        "p0 = {}, (q0, t0) = ({}, {}), verdict = {}\n",
        report.p0,
        report.q0,
        report.t0,
        verdict.as_str().unwrap_or_default()
    );
    Ok(Rendered {
        json: to_json(&report),
        header: vec!["y", "measured", "predicted", "ratio"],
        rows,
        text,
    })
}

fn cmd_voronin(
    target: Option<&str>,
    self_target: Option<f64>,
    m: u32,
    range: &str,
    step: f64,
    x: f64,
    cfg: &PrecisionConfig,
) -> Result<Rendered, CliError> {
    let target = match (target, self_target) {
        (Some(t), _) => parse_complex_list(t, cfg.precision_bits)?,
        (None, Some(y)) => gamma_curve(y, m, x, cfg)?.values,
        (None, None) => return Err(CliError::Usage("one of --target or --self-target is required".into())),
    };
    if target.len() != m as usize + 1 {
        return Err(CliError::Usage(format!(
            "--target has {} entries but --m {m} needs {}",
            target.len(),
            m + 1
        )));
    }
    let ranges: Vec<(f64, f64)> = range.split(',').map(parse_range).collect::<Result<_, _>>()?;
    let results = if ranges.len() == 1 {
        vec![nearest_approach(&target, ranges[0], step, m, x, cfg)?]
    } else {
        density_trend(&target, &ranges, step, m, x, cfg)?
    };
    let mut rows = Vec::new();
    let mut text = String::new();
    for r in &results {
        rows.push(vec![
            r.best_y.to_string(),
            r.distance.to_string(),
            r.samples_scanned.to_string(),
            r.range.0.to_string(),
            r.range.1.to_string(),
        ]);
        let _ = writeln!(
            text,
            "range {}:{}: best y = {}, distance = {} ({} samples)",
            r.range.0, r.range.1, r.best_y, r.distance, r.samples_scanned
        );
    }
    let json = if results.len() == 1 {
        to_json(&results[0])
    } else {
        json!({ "trend": to_json(&results) })
    };
    Ok(Rendered {
        json,
        header: vec!["y", "distance", "samples_scanned", "y_lo", "y_hi"],
        rows,
        text,
    })
}

fn cmd_fe_check(ys: &str, x: f64, cfg: &PrecisionConfig) -> Result<Rendered, CliError> {
    let ys = parse_real_list(ys)?;
    let prec = cfg.precision_bits;
    let mut items = Vec::new();
    let mut rows = Vec::new();
    let mut text = String::new();
    let mut worst = crate::mp::Real::new(prec);
    for &y in &ys {
        let z = ComplexHP::from_f64(x, y, prec);
        let r = functional_eq_residual(&z, cfg)?;
        if r > worst {
            worst = r.clone();
        }
        items.push(json!({ "y": y, "residual": to_json(&r) }));
        rows.push(vec![y.to_string(), r.to_string()]);
        let _ = writeln!(text, "z = {z}: residual = {r}");
    }
    let _ = writeln!(text, "max residual = {worst}");
    Ok(Rendered {
        json: json!({ "x": x, "residuals": items, "max_residual": to_json(&worst) }),
        header: vec!["y", "residual"],
        rows,
        text,
    })
}

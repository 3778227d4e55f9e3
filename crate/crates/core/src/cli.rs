//! Command-line front end. [`run`] parses arguments, runs one subcommand and
//! returns the process exit code: 0 on success, 1 when an asserted bound
//! fails, 2 on bad usage or input.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::codes::{family, read_code, Code, LinearCode};
use crate::decoding::{asymptotic_bound, list_error_bound, list_error_bound_opt, mc_decoding_error, DecodingBound};
use crate::erasure::{erasure_lambda, smoothing_erasure_report_with, ErasureMode};
use crate::error::{invalid, Error, Result};
use crate::kernels::{format_order, parse_orders, Kernel};
use crate::random_coding::{dinf_bound_opt, dinf_estimate, qn_estimate, qn_recursive_bound, EnsembleSpec};
use crate::report::BoundReport;
use crate::scalar::{parse_rational, Rational};
use crate::smoothing::{
    capacity_curve, divergence_to_uniform, lower_bound, lower_bound_report, perfect_kernel_search, smooth,
    smooth_exact,
};
use crate::verify::{best_decoding_bound, code_suite, run_suite, SuiteConfig};
use crate::wiretap::{
    leakage_exact, rate_curve, rate_point, secrecy_bound, threshold_curve, NestedScheme, ReConvention, Regime,
};

/// Environment variable holding the default worker count.
pub const WORKERS_ENV: &str = "SMOOTHING_WORKERS";

#[derive(Parser, Debug)]
#[command(name = "smoothing", version, about = "Noise smoothing of binary codes")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Shorthand for `--format json`.
    #[arg(long, global = true)]
    json: bool,
    /// Write the table here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads (default: $SMOOTHING_WORKERS, else all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug, Clone)]
struct CodeArg {
    /// Code file (`linear n k` or `explicit n m` format).
    #[arg(long, conflicts_with = "family")]
    code: Option<PathBuf>,
    /// Built-in family, e.g. `hamming:3`, `rm:1,4`, `golay23`, `random:12,6,7`.
    #[arg(long)]
    family: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Divergence of `T_r f_C` from uniform, with the rate lower bound.
    Smooth {
        #[command(flatten)]
        code: CodeArg,
        /// `bernoulli:p`, `ball:t`, `sphere:t`, `subcube:i,j,..`, `radial:@file`.
        #[arg(long)]
        kernel: String,
        /// Comma-separated orders; `inf` allowed.
        #[arg(long, default_value = "1,2,inf")]
        alpha: String,
        #[arg(long, value_enum, default_value_t = SmoothMode::Float)]
        mode: SmoothMode,
    },
    /// Bernoulli smoothing capacities and the erasure-dual threshold.
    CapacityCurve {
        #[arg(long, default_value_t = 101)]
        grid: usize,
    },
    /// Wiretap rates and leakage.
    Wiretap {
        #[command(subcommand)]
        command: WiretapCommand,
    },
    /// Smoothing divergence against the erasure conditional entropy.
    ErasureBound {
        #[command(flatten)]
        code: CodeArg,
        #[arg(long)]
        delta: f64,
        #[arg(long, default_value = "1,2,inf")]
        alpha: String,
        /// `exact` or `mc:TRIALS`.
        #[arg(long, default_value = "exact")]
        mode: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// List-decoding error bound on a binary symmetric channel.
    DecodeBound {
        #[command(flatten)]
        code: CodeArg,
        #[arg(long)]
        delta: f64,
        #[arg(long, default_value_t = 1)]
        list: u64,
        #[arg(long, conflicts_with = "theta")]
        t: Option<usize>,
        #[arg(long, requires = "t")]
        tprime: Option<usize>,
        #[arg(long)]
        theta: Option<f64>,
        /// Also run the Monte Carlo decoder with this many trials.
        #[arg(long)]
        mc: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Monte Carlo over random codes.
    Mc {
        #[command(subcommand)]
        command: McCommand,
    },
    /// Runs the inequality and identity suite.
    Verify {
        #[arg(long)]
        quick: bool,
        /// Also check every `*.code` file in this directory.
        #[arg(long)]
        fixtures: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Perfect-smoothing kernel search for a code.
    Perfect {
        #[command(flatten)]
        code: CodeArg,
    },
    /// Code file utilities.
    Code {
        #[command(subcommand)]
        command: CodeCommand,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum SmoothMode {
    Exact,
    Float,
}

#[derive(Subcommand, Debug)]
enum WiretapCommand {
    /// Achievable rates for a pair of crossover probabilities.
    Rates {
        #[arg(long)]
        db: f64,
        #[arg(long)]
        de: f64,
        /// `all`, or a list of `shannon`, `bec`, `rm`, `alpha:A`.
        #[arg(long, default_value = "all")]
        regime: String,
        /// Also sweep `δ_e` over this many points and emit threshold curves.
        #[arg(long)]
        grid: Option<usize>,
        #[arg(long, default_value = "numbers")]
        re_convention: String,
        /// Alias of --out for this subcommand.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Exact leakage of a nested scheme and its smoothing bounds.
    Leakage {
        #[arg(long)]
        inner: PathBuf,
        #[arg(long)]
        outer: PathBuf,
        #[arg(long)]
        de: f64,
        #[arg(long, default_value = "1,2,inf")]
        alpha: String,
    },
}

#[derive(Subcommand, Debug)]
enum McCommand {
    /// Estimates `Q_n(α)` for random codes and compares with its bound.
    Qn {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        rate: f64,
        #[arg(long)]
        kernel: String,
        /// Orders `1 + p/q` as fractions or integers; `inf` allowed.
        #[arg(long, default_value = "2")]
        alpha: String,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand, Debug)]
enum CodeCommand {
    /// Writes a built-in family member in the code file format.
    Gen {
        /// Family name, optionally with parameters: `rm:1,4`.
        #[arg(long)]
        family: String,
        /// Comma-separated parameters, if not given with the family.
        #[arg(long)]
        params: Option<String>,
    },
}

/// A table with `#` config lines.
struct Table {
    config: Vec<(String, String)>,
    columns: Vec<&'static str>,
    rows: Vec<Vec<Value>>,
    failed: bool,
    /// Printed verbatim instead of the table when set.
    raw: Option<String>,
}

impl Table {
    fn new(command: &str, columns: &[&'static str]) -> Self {
        Table {
            config: vec![("command".into(), command.into())],
            columns: columns.to_vec(),
            rows: Vec::new(),
            failed: false,
            raw: None,
        }
    }

    fn meta(&mut self, k: &str, v: impl ToString) {
        self.config.push((k.to_string(), v.to_string()));
    }

    fn push(&mut self, row: Vec<Value>) {
        self.rows.push(row);
    }

    fn report(&mut self, r: &BoundReport) {
        self.failed |= !r.passed();
        self.push(vec![s(&r.name), num(r.lhs), num(r.rhs), num(r.slack), s(r.verdict)]);
    }

    fn render(&self, format: Format) -> String {
        if let Some(r) = &self.raw {
            return r.clone();
        }
        match format {
            Format::Csv => {
                let mut out = String::new();
                for (k, v) in &self.config {
                    out.push_str(&format!("# {k}: {v}\n"));
                }
                out.push_str(&self.columns.join(","));
                out.push('\n');
                for row in &self.rows {
                    let cells: Vec<String> = row.iter().map(csv_cell).collect();
                    out.push_str(&cells.join(","));
                    out.push('\n');
                }
                out
            }
            Format::Json => {
                let config: serde_json::Map<String, Value> =
                    self.config.iter().map(|(k, v)| (k.clone(), Value::String(v.clone()))).collect();
                let rows: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|r| Value::Object(self.columns.iter().map(|c| c.to_string()).zip(r.iter().cloned()).collect()))
                    .collect();
                let mut text = serde_json::to_string_pretty(&json!({ "config": config, "rows": rows }))
                    .expect("tables serialize");
                text.push('\n');
                text
            }
        }
    }
}

fn csv_cell(v: &Value) -> String {
    match v {
        Value::String(t) if t.contains(',') || t.contains('"') => format!("\"{}\"", t.replace('"', "\"\"")),
        Value::String(t) => t.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn num(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else if x.is_nan() {
        Value::String("nan".into())
    } else if x > 0.0 {
        Value::String("inf".into())
    } else {
        Value::String("-inf".into())
    }
}

fn opt(x: Option<f64>) -> Value {
    x.map(num).unwrap_or(Value::Null)
}

fn s(x: impl ToString) -> Value {
    Value::String(x.to_string())
}

fn int(x: impl Into<i64>) -> Value {
    json!(x.into())
}

/// Parses `name:1,2,3` or a bare family name.
fn parse_family(spec: &str) -> Result<LinearCode> {
    let (name, args) = spec.split_once(':').unwrap_or((spec, ""));
    let params = if args.trim().is_empty() {
        Vec::new()
    } else {
        args.split(',')
            .map(|p| p.trim().parse::<u64>().map_err(|_| invalid(format!("bad family parameter {p:?}"))))
            .collect::<Result<Vec<_>>>()?
    };
    family(name.trim(), &params)
}

fn load_code(arg: &CodeArg) -> Result<(Code, String)> {
    match (&arg.code, &arg.family) {
        (Some(p), _) => Ok((read_code(p)?, p.display().to_string())),
        (None, Some(f)) => Ok((Code::from(parse_family(f)?), f.clone())),
        (None, None) => Err(invalid("give --code FILE or --family SPEC")),
    }
}

fn load_linear(arg: &CodeArg) -> Result<(LinearCode, String)> {
    let (code, label) = load_code(arg)?;
    match code {
        Code::Linear(c) => Ok((c, label)),
        Code::Explicit(_) => Err(invalid("this command needs a linear code")),
    }
}

/// Sets the global worker count from the flag or the environment; later
/// calls in the same process keep the first pool.
fn configure_workers(flag: Option<usize>) -> Result<()> {
    let n = match flag {
        Some(n) => Some(n),
        None => match std::env::var(WORKERS_ENV) {
            Ok(v) => Some(v.trim().parse().map_err(|_| invalid(format!("{WORKERS_ENV}={v:?} is not a count")))?),
            Err(_) => None,
        },
    };
    if let Some(n) = n {
        if n == 0 {
            return Err(invalid("worker count must be positive"));
        }
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}

/// Parses arguments (without the program name skipped: the first item is
/// the program name, as with `std::env::args_os`), runs the command and
/// writes its table to `out` unless `--out` names a file.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            if code == 0 {
                let _ = write!(out, "{e}");
            } else {
                eprintln!("{e}");
            }
            return code;
        }
    };
    match execute(&cli) {
        Ok((table, path)) => {
            let format = if cli.json { Format::Json } else { cli.format };
            let text = table.render(format);
            let written = match path.or_else(|| cli.out.clone()) {
                Some(p) => std::fs::write(&p, &text).map_err(Error::from),
                None => out.write_all(text.as_bytes()).map_err(Error::from),
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return 2;
            }
            if table.failed {
                eprintln!("bound violation");
                1
            } else {
                0
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn execute(cli: &Cli) -> Result<(Table, Option<PathBuf>)> {
    configure_workers(cli.workers)?;
    let mut path = None;
    let table = match &cli.command {
        Command::Smooth { code, kernel, alpha, mode } => smooth_cmd(code, kernel, alpha, *mode)?,
        Command::CapacityCurve { grid } => capacity_cmd(*grid)?,
        Command::Wiretap { command } => match command {
            WiretapCommand::Rates { db, de, regime, grid, re_convention, csv } => {
                path = csv.clone();
                rates_cmd(*db, *de, regime, *grid, re_convention)?
            }
            WiretapCommand::Leakage { inner, outer, de, alpha } => leakage_cmd(inner, outer, *de, alpha)?,
        },
        Command::ErasureBound { code, delta, alpha, mode, seed } => erasure_cmd(code, *delta, alpha, mode, *seed)?,
        Command::DecodeBound { code, delta, list, t, tprime, theta, mc, seed } => {
            decode_cmd(code, *delta, *list, *t, *tprime, *theta, *mc, *seed)?
        }
        Command::Mc { command: McCommand::Qn { n, rate, kernel, alpha, trials, seed } } => {
            qn_cmd(*n, *rate, kernel, alpha, *trials, *seed)?
        }
        Command::Verify { quick, fixtures, seed } => verify_cmd(*quick, fixtures.as_ref(), *seed)?,
        Command::Perfect { code } => perfect_cmd(code)?,
        Command::Code { command: CodeCommand::Gen { family: f, params } } => {
            let spec = match params {
                Some(p) => format!("{f}:{p}"),
                None => f.clone(),
            };
            let mut t = Table::new("code gen", &[]);
            t.raw = Some(crate::codes::format_code(&Code::from(parse_family(&spec)?)));
            t
        }
    };
    Ok((table, path))
}

fn smooth_cmd(code_arg: &CodeArg, kernel: &str, alpha: &str, mode: SmoothMode) -> Result<Table> {
    let (code, label) = load_code(code_arg)?;
    let n = code.n();
    let kernel = Kernel::parse(n, kernel)?;
    let orders = parse_orders(alpha)?;
    let mut t = Table::new(
        "smooth",
        &["alpha", "d_alpha", "l_alpha", "dimensionless", "lower_bound", "verdict"],
    );
    t.meta("code", &label);
    t.meta("n", n);
    t.meta("size", code.size());
    t.meta("kernel", &kernel);
    t.meta("mode", format!("{mode:?}").to_lowercase());
    t.meta("formula", "d_alpha = n - H_alpha(T_r f_C); lower_bound = n(1-R) - H_alpha(r)");
    if let Ok(e) = smooth_exact(&code, &kernel) {
        t.meta("exactly_uniform", e.is_uniform());
    }
    let (float, exact) = match mode {
        SmoothMode::Float => (Some(smooth::<f64>(&code, &kernel)?), None),
        SmoothMode::Exact => (None, Some(smooth::<Rational>(&code, &kernel)?)),
    };
    for a in orders {
        let rep = match (&float, &exact) {
            (Some(f), _) => divergence_to_uniform(f, a)?,
            (None, Some(e)) => divergence_to_uniform(e, a)?,
            _ => unreachable!(),
        };
        let report = lower_bound_report(&code, &kernel, a)?;
        t.failed |= !report.passed();
        t.push(vec![
            s(format_order(a)),
            num(rep.d_alpha),
            opt(rep.l_alpha),
            opt(rep.dimensionless),
            num(lower_bound(n, code.rate(), &kernel, a)?),
            s(report.verdict),
        ]);
    }
    Ok(t)
}

fn capacity_cmd(grid: usize) -> Result<Table> {
    let mut t = Table::new("capacity-curve", &["delta", "shannon", "s2", "s_inf", "bec_dual"]);
    t.meta("grid", grid);
    t.meta("formula", "shannon = 1-h(d); s2 = 1-h_2(d); s_inf = 1+log(1-d); bec_dual = (1-2d)^2");
    for r in capacity_curve(grid)? {
        t.push(vec![num(r.delta), num(r.shannon), num(r.s2), num(r.s_inf), num(r.bec_dual)]);
    }
    Ok(t)
}

fn rates_cmd(db: f64, de: f64, regime: &str, grid: Option<usize>, conv: &str) -> Result<Table> {
    let regimes = Regime::parse(regime)?;
    let conv = ReConvention::parse(conv)?;
    let mut t = Table::new(
        "wiretap rates",
        &["kind", "delta_b", "delta_e", "regime", "r_b", "r_e", "rate", "clamped"],
    );
    t.meta("db", db);
    t.meta("de", de);
    t.meta("regime", regime);
    t.meta("re_convention", format!("{conv:?}").to_lowercase());
    t.meta(
        "formula",
        "shannon: 1-h(db), 1-h(de); bec_dual: 1-log(1+2sqrt(db(1-db))), Re; rm: 1-h(db), Re; alpha: 1-h(db), 1-h_a(de)",
    );
    t.meta(
        "re",
        match conv {
            ReConvention::Numbers => "(1-2de)^2",
            ReConvention::FourDeltaProduct => "4de(1-de)",
        },
    );
    let row = |t: &mut Table, kind: &str, p: &crate::wiretap::RatePoint| {
        t.push(vec![
            s(kind),
            num(p.delta_b),
            num(p.delta_e),
            s(p.regime.label()),
            num(p.r_b),
            num(p.r_e),
            num(p.rate),
            s(p.clamped),
        ]);
    };
    for r in &regimes {
        let p = rate_point(db, de, *r, conv)?;
        row(&mut t, "point", &p);
    }
    if let Some(g) = grid {
        for p in rate_curve(db, &regimes, g, conv)? {
            row(&mut t, "sweep", &p);
        }
        for r in threshold_curve(g, conv)? {
            t.push(vec![
                s("threshold"),
                num(r.delta),
                num(r.delta),
                s("decodability|shannon|smoothing"),
                num(r.decodability),
                num(r.shannon),
                num(r.smoothing),
                s(false),
            ]);
        }
    }
    Ok(t)
}

fn leakage_cmd(inner: &PathBuf, outer: &PathBuf, de: f64, alpha: &str) -> Result<Table> {
    let as_linear = |p: &PathBuf| -> Result<LinearCode> {
        match read_code(p)? {
            Code::Linear(c) => Ok(c),
            Code::Explicit(_) => Err(invalid(format!("{} is not a linear code", p.display()))),
        }
    };
    let scheme = NestedScheme::new(as_linear(inner)?, as_linear(outer)?)?;
    let mut t = Table::new("wiretap leakage", &["quantity", "alpha", "value"]);
    t.meta("inner", inner.display());
    t.meta("outer", outer.display());
    t.meta("de", de);
    t.meta("formula", "leakage = H(T f_Cb) - H(T f_Ce); bound = D_alpha(T f_Ce || U_n)");
    let leak = leakage_exact(&scheme, de)?;
    t.push(vec![s("leakage"), s("1"), num(leak)]);
    for a in parse_orders(alpha)? {
        let b = secrecy_bound(&scheme, de, a)?;
        if a == 1.0 {
            let r = BoundReport::new("leakage <= D(T f_Ce || U)", leak, b);
            t.failed |= !r.passed();
        }
        t.push(vec![s("secrecy_bound"), s(format_order(a)), num(b)]);
    }
    Ok(t)
}

fn erasure_cmd(code_arg: &CodeArg, delta: f64, alpha: &str, mode: &str, seed: u64) -> Result<Table> {
    let (code, label) = load_linear(code_arg)?;
    let mode = ErasureMode::parse(mode, seed)?;
    let mut t = Table::new("erasure-bound", &["alpha", "lambda", "lhs", "rhs", "slack", "verdict"]);
    t.meta("code", &label);
    t.meta("delta", delta);
    t.meta("mode", format!("{mode:?}"));
    t.meta("formula", "D_alpha(T_delta f_C || U) <= E[|G| - rank_C(G)], G erased with prob lambda");
    for a in parse_orders(alpha)? {
        let r = smoothing_erasure_report_with(&code, delta, a, mode)?;
        t.failed |= !r.passed();
        t.push(vec![
            s(format_order(a)),
            num(erasure_lambda(a, delta)?),
            num(r.lhs),
            num(r.rhs),
            num(r.slack),
            s(r.verdict),
        ]);
    }
    Ok(t)
}

#[allow(clippy::too_many_arguments)]
fn decode_cmd(
    code_arg: &CodeArg,
    delta: f64,
    list: u64,
    t: Option<usize>,
    tprime: Option<usize>,
    theta: Option<f64>,
    mc: Option<u64>,
    seed: u64,
) -> Result<Table> {
    let (code, label) = load_linear(code_arg)?;
    let dist = Code::from(code.clone()).distance_distribution()?;
    let mut out = Table::new(
        "decode-bound",
        &["kind", "n", "delta", "list", "t", "t_prime", "energy_term", "tail_term", "total", "std_error"],
    );
    out.meta("code", &label);
    out.meta("delta", delta);
    out.meta("list", list);
    out.meta("seed", seed);
    out.meta("formula", "total = beta_delta(t')/L sum_{w>=1} mu_t(w) A_w + P(|Y|<=t') + P(|Y|>=t)");
    let row = |kind: &str, b: &DecodingBound, se: Option<f64>| {
        vec![
            s(kind),
            int(b.n as i64),
            num(b.delta),
            json!(b.list),
            int(b.t as i64),
            int(b.t_prime),
            num(b.energy_term),
            num(b.tail_term),
            num(b.total),
            opt(se),
        ]
    };
    let bound = match (t, theta) {
        (_, Some(th)) => {
            let a = asymptotic_bound(&dist, delta, list, th)?;
            out.meta("theta", th);
            out.push(row("asymptotic", &a.stated, None));
            if let Some(x) = a.exact_tail_total {
                let mut v = a.stated.clone();
                v.tail_term = x - v.energy_term;
                v.total = x;
                out.push(row("asymptotic_exact_tail", &v, None));
            }
            a.stated
        }
        (Some(t), None) => {
            let b = match tprime {
                Some(tp) => list_error_bound(&dist, delta, list, t, tp)?,
                None => list_error_bound_opt(&dist, delta, list, t)?,
            };
            out.push(row("bound", &b, None));
            b
        }
        (None, None) => {
            let b = best_decoding_bound(&code, delta, list)?;
            out.push(row("bound", &b, None));
            b
        }
    };
    if let Some(trials) = mc {
        let est = mc_decoding_error(&code, delta, list, bound.t, trials, seed)?;
        let r = BoundReport::new("decoding", est.mean - 3.0 * est.std_error, bound.total);
        out.failed |= !r.passed();
        let mc_row = DecodingBound {
            energy_term: f64::NAN,
            tail_term: f64::NAN,
            total: est.mean,
            ..bound.clone()
        };
        out.push(row("mc", &mc_row, Some(est.std_error)));
    }
    Ok(out)
}

fn qn_cmd(n: usize, rate: f64, kernel: &str, alpha: &str, trials: u64, seed: u64) -> Result<Table> {
    let k = Kernel::parse(n, kernel)?;
    let spec = EnsembleSpec::from_rate(n, rate, k.clone(), trials, seed)?;
    let mut t = Table::new("mc qn", &["alpha", "estimate", "std_error", "bound", "verdict"]);
    t.meta("n", n);
    t.meta("rate", rate);
    t.meta("m", spec.m);
    t.meta("kernel", &k);
    t.meta("trials", trials);
    t.meta("seed", seed);
    t.meta("formula", "Q_n(a) = E ||2^n T_r f_C||_a^a; bound from the recursion in p/q = a-1");
    for part in alpha.split(',') {
        let part = part.trim();
        let (est, bound) = if matches!(part, "inf" | "Inf" | "infinity") {
            (dinf_estimate(&spec)?, dinf_bound_opt(n, spec.rate(), &k)?.0)
        } else {
            let a = parse_rational(part)?;
            let af = crate::scalar::rational_to_f64(&a);
            let est = qn_estimate(&spec, af)?;
            let excess = a - Rational::from_integer(1.into());
            let bound = if excess <= Rational::from_integer(0.into()) {
                1.0
            } else {
                let p = u64::try_from(excess.numer().clone()).map_err(|_| invalid("order too large"))?;
                let q = u64::try_from(excess.denom().clone()).map_err(|_| invalid("order too large"))?;
                qn_recursive_bound(n, spec.rate(), &k, p, q)?
            };
            (est, bound)
        };
        let r = BoundReport::new(format!("qn a={part}"), est.mean - 3.0 * est.std_error, bound);
        t.failed |= !r.passed();
        t.push(vec![s(part), num(est.mean), num(est.std_error), num(bound), s(r.verdict)]);
    }
    Ok(t)
}

fn verify_cmd(quick: bool, fixtures: Option<&PathBuf>, seed: u64) -> Result<Table> {
    let mut t = Table::new("verify", &["name", "lhs", "rhs", "slack", "verdict"]);
    t.meta("quick", quick);
    t.meta("seed", seed);
    let mut reports = run_suite(SuiteConfig { quick, seed })?;
    if let Some(dir) = fixtures {
        t.meta("fixtures", dir.display());
        let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "code"))
            .collect();
        paths.sort();
        let codes = paths.iter().map(|p| read_code(p)).collect::<Result<Vec<_>>>()?;
        reports.extend(code_suite(&codes)?);
    }
    let passed = reports.iter().filter(|r| r.passed()).count();
    t.meta("passed", format!("{passed}/{}", reports.len()));
    for r in &reports {
        t.report(r);
    }
    Ok(t)
}

fn perfect_cmd(code_arg: &CodeArg) -> Result<Table> {
    let (code, label) = load_code(code_arg)?;
    let mut t = Table::new("perfect", &["weight", "kernel_value", "local_weight_coefficient"]);
    t.meta("code", &label);
    match perfect_kernel_search(&code)? {
        Some(p) => {
            t.meta("covering_radius", p.covering_radius);
            t.meta("external_distance", p.external_distance);
            t.meta("kernel_radius", p.radius);
            let profile = p.kernel.profile().expect("radial kernel");
            for (i, v) in profile.values().iter().enumerate() {
                let w = p.weights.get(i).map(|w| s(w)).unwrap_or(Value::Null);
                t.push(vec![int(i as i64), s(v), w]);
            }
        }
        None => t.meta("result", "no nonnegative radial kernel found"),
    }
    Ok(t)
}

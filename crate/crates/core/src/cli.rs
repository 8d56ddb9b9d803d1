//! Command line front end. Every subcommand writes one JSON object per line
//! (or CSV rows with `--format csv`); failures write a JSON error object to
//! stderr and exit with 2 for bad input or 3 for a failed check.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde_json::{Map, Number, Value};

use crate::error::{Error, Result};
use crate::forms::{QuadForm, UnimodularTransform};
use crate::operator::{
    apply_operator, bound_constant_probe, indefinite_log_family, jacobi_family,
    lemma_window_check, lp_sharpness_family, pell_log_counterexample, rep_weight_scan,
    rep_weight_sum, square_disc_zero_line, weighted_norm_estimate, DivergenceCertificate,
    LemmaChecker, LpExponent, SparseFunction, SumReport, Window,
};
use crate::pell::{automorph_group, pell4_fundamental, solution_of_automorph, AutomorphGroup};
use crate::representations::{
    brute_force_reps, enumerate_reps_bounded, gamma, n_bound, solve_congruence, RepCache,
};

/// Version line printed by `--version`.
pub const VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), " (interface revision 1)");

#[derive(Parser, Debug)]
#[command(name = "quadlab", version = VERSION, about = "Binary quadratic forms and discrete fractional integral sums")]
struct Cli {
    /// Worker threads for sweeps over k (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Jsonl)]
    format: Format,
    /// Newline-delimited JSON cache of representation classes.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Jsonl,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Family {
    SquareDisc,
    Jacobi,
    PellLog,
    IndefiniteLog,
    LpSharp,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Discriminant and class of a form.
    Classify {
        #[arg(long, value_parser = parse_form)]
        form: QuadForm,
    },
    /// Reduced form with its witness.
    Reduce {
        #[arg(long, value_parser = parse_form)]
        form: QuadForm,
    },
    /// Proper equivalence test with a witness.
    Equivalent {
        #[arg(long, value_parser = parse_form)]
        form: QuadForm,
        #[arg(long, value_parser = parse_form)]
        other: QuadForm,
    },
    /// Least positive solution of t^2 - Δu^2 = 4.
    Pell {
        #[arg(long, value_parser = parse_int, allow_hyphen_values = true)]
        delta: BigInt,
        /// Also report how minimality was checked.
        #[arg(long)]
        verify: bool,
    },
    /// The automorph group: the finite list or the generator and its powers.
    Automorphs {
        #[arg(long, value_parser = parse_form)]
        form: QuadForm,
        #[arg(long, default_value_t = 5)]
        limit: u32,
    },
    /// Γ_t(s).
    Gamma {
        #[arg(long, value_parser = parse_int, allow_hyphen_values = true)]
        t: BigInt,
        #[arg(long, value_parser = parse_int, allow_hyphen_values = true)]
        s: BigInt,
    },
    /// Solutions of u^2 = Δ (mod 4|k|) with 0 <= u < 2|k|.
    Congruence {
        #[arg(long, value_parser = parse_int, allow_hyphen_values = true)]
        delta: BigInt,
        #[arg(long, value_parser = parse_int, allow_hyphen_values = true)]
        k: BigInt,
    },
    /// Representations q(m, n) = k with 1 <= |m| <= M.
    Reps {
        #[arg(long, value_parser = parse_form)]
        form: QuadForm,
        #[arg(long, value_parser = parse_int, allow_hyphen_values = true)]
        k: BigInt,
        #[arg(long)]
        max_m: u64,
        /// Diff against an exhaustive scan of the box.
        #[arg(long)]
        oracle: bool,
    },
    /// Congruence classes of the representations of k.
    Classes {
        #[arg(long, value_parser = parse_form)]
        form: QuadForm,
        #[arg(long, value_parser = parse_int, allow_hyphen_values = true)]
        k: BigInt,
    },
    /// S_λ(k), the weighted sum over representations with m != 0.
    Repsum {
        #[arg(long, value_parser = parse_form)]
        form: QuadForm,
        #[arg(long, value_parser = parse_int, allow_hyphen_values = true)]
        k: BigInt,
        #[arg(long, value_parser = parse_real)]
        lambda: f64,
        #[arg(long, value_parser = parse_real, default_value = "1e-12")]
        tol: f64,
        /// Sum only |m| <= M by direct scan instead.
        #[arg(long)]
        scan_max_m: Option<u64>,
    },
    /// Small-window solution counts for every k in A:B.
    LemmaCheck {
        #[arg(long, value_parser = parse_form)]
        form: QuadForm,
        #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
        k_range: (i64, i64),
    },
    /// I_λ f(n) for n in the window, truncated at |m| <= M.
    Apply {
        #[arg(long, value_parser = parse_form)]
        form: QuadForm,
        #[arg(long)]
        f: PathBuf,
        #[arg(long, value_parser = parse_real)]
        lambda: f64,
        #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
        n_window: (i64, i64),
        #[arg(long)]
        max_m: u64,
    },
    /// l^p norm of I_λ f over the window.
    Norm {
        #[arg(long, value_parser = parse_form)]
        form: QuadForm,
        #[arg(long)]
        f: PathBuf,
        #[arg(long, value_parser = parse_real)]
        lambda: f64,
        #[arg(long)]
        p: String,
        #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
        n_window: (i64, i64),
        #[arg(long)]
        max_m: u64,
    },
    /// Largest S_λ(k) over 1 <= |k| <= K.
    Probe {
        #[arg(long, value_parser = parse_form)]
        form: QuadForm,
        #[arg(long, value_parser = parse_real)]
        lambda: f64,
        #[arg(long)]
        max_k: u64,
    },
    /// Divergence certificate of a counterexample family.
    Counterexample {
        #[arg(value_enum)]
        family: Family,
        /// Square-disc family only.
        #[arg(long, value_parser = parse_form)]
        form: Option<QuadForm>,
        /// Square-disc family only.
        #[arg(long, value_parser = parse_real, default_value = "1")]
        lambda: f64,
        #[arg(long, default_value_t = 1)]
        r: u32,
        #[arg(long, value_parser = parse_real, default_value = "2")]
        p: f64,
        /// J, or M for the lp-sharp family.
        #[arg(long)]
        steps: u64,
    },
}

fn parse_form(s: &str) -> std::result::Result<QuadForm, String> {
    s.parse::<QuadForm>().map_err(|e| e.to_string())
}

fn parse_int(s: &str) -> std::result::Result<BigInt, String> {
    s.trim().parse::<BigInt>().map_err(|_| format!("not an integer: {s:?}"))
}

fn parse_real(s: &str) -> std::result::Result<f64, String> {
    match s.trim().parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(format!("not a finite decimal: {s:?}")),
    }
}

fn parse_range(s: &str) -> std::result::Result<(i64, i64), String> {
    let (a, b) = s
        .split_once(':')
        .ok_or_else(|| format!("expected A:B, got {s:?}"))?;
    let a: i64 = a.trim().parse().map_err(|_| format!("bad range start {a:?}"))?;
    let b: i64 = b.trim().parse().map_err(|_| format!("bad range end {b:?}"))?;
    if a > b {
        return Err(format!("range {a}:{b} is empty"));
    }
    Ok((a, b))
}

/// Formats like C's `%.17g`: 17 significant digits, trailing zeros
/// dropped, exponent form outside `1e-5 <= |x| < 1e17`.
pub fn format_f64(x: f64) -> Option<String> {
    if !x.is_finite() {
        return None;
    }
    if x == 0.0 {
        return Some(if x.is_sign_negative() { "-0.0" } else { "0.0" }.into());
    }
    let sci = format!("{:.16e}", x);
    let (mant, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-5..17).contains(&exp) {
        let mant = mant.trim_end_matches('0').trim_end_matches('.');
        let mant = if mant.contains('.') { mant.to_string() } else { format!("{mant}.0") };
        return Some(format!("{mant}e{exp}"));
    }
    let neg = mant.starts_with('-');
    let digits: String = mant.chars().filter(|c| c.is_ascii_digit()).collect();
    let point = exp + 1;
    let body = if point <= 0 {
        format!("0.{}{}", "0".repeat((-point) as usize), digits)
    } else if point as usize >= digits.len() {
        format!("{}{}.0", digits, "0".repeat(point as usize - digits.len()))
    } else {
        format!("{}.{}", &digits[..point as usize], &digits[point as usize..])
    };
    let body = if body.contains('.') {
        let t = body.trim_end_matches('0');
        if t.ends_with('.') {
            format!("{t}0")
        } else {
            t.to_string()
        }
    } else {
        body
    };
    Some(if neg { format!("-{body}") } else { body })
}

fn float(x: f64) -> Value {
    match format_f64(x) {
        Some(s) => Value::Number(s.parse::<Number>().expect("valid JSON number")),
        None => Value::Null,
    }
}

fn int(x: &BigInt) -> Value {
    Value::Number(x.to_string().parse::<Number>().expect("valid JSON number"))
}

fn form_value(q: &QuadForm) -> Value {
    Value::String(q.to_string())
}

fn matrix(t: &UnimodularTransform) -> Value {
    Value::Array(t.entries().iter().map(|e| int(e)).collect())
}

fn pair(p: &(BigInt, BigInt)) -> Value {
    Value::Array(vec![int(&p.0), int(&p.1)])
}

/// Builds a JSON object with keys in insertion order.
macro_rules! obj {
    ($($k:expr => $v:expr),* $(,)?) => {{
        let mut m = Map::new();
        $(m.insert($k.to_string(), $v);)*
        Value::Object(m)
    }};
}

struct Emitter<'a> {
    format: Format,
    out: &'a mut (dyn Write + Send),
    header: Option<Vec<String>>,
}

impl<'a> Emitter<'a> {
    fn emit(&mut self, v: Value) -> Result<()> {
        match self.format {
            Format::Jsonl => {
                serde_json::to_writer(&mut *self.out, &v)?;
                self.out.write_all(b"\n")?;
            }
            Format::Csv => {
                let Value::Object(map) = v else {
                    return Err(Error::Invariant("CSV rows must be objects".into()));
                };
                let keys: Vec<String> = map.keys().cloned().collect();
                if self.header.as_ref() != Some(&keys) {
                    writeln!(self.out, "{}", keys.join(","))?;
                    self.header = Some(keys);
                }
                let cells: Vec<String> = map.values().map(csv_cell).collect();
                writeln!(self.out, "{}", cells.join(","))?;
            }
        }
        Ok(())
    }
}

fn csv_cell(v: &Value) -> String {
    let raw = match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        Value::Bool(b) => b.to_string(),
        other => other.to_string(),
    };
    if raw.contains([',', '"', '\n']) {
        format!("\"{}\"", raw.replace('"', "\"\""))
    } else {
        raw
    }
}

fn sum_value(r: &SumReport) -> Value {
    obj! {
        "form" => form_value(&r.form),
        "k" => int(&r.k),
        "lambda" => float(r.lambda),
        "value" => float(r.value),
        "method" => Value::String(r.method.tag().into()),
        "truncation" => int(&r.truncation),
        "tail_bound" => float(r.tail_bound),
    }
}

fn certificate_values(c: &DivergenceCertificate) -> Vec<Value> {
    let mut rows: Vec<Value> = c
        .terms
        .iter()
        .map(|t| {
            obj! {
                "record" => Value::String("term".into()),
                "index" => Value::from(t.index),
                "k" => int(&t.k),
                "weight" => float(t.weight),
                "count" => int(&t.count),
                "certified_count" => t.certified_count.as_ref().map(int).unwrap_or(Value::Null),
                "witnesses" => Value::Array(t.witnesses.iter().map(pair).collect()),
                "term" => float(t.term),
                "partial_sum" => float(t.partial_sum),
            }
        })
        .collect();
    let params: Map<String, Value> = c
        .parameters
        .iter()
        .map(|(k, v)| (k.clone(), Value::String(v.clone())))
        .collect();
    let extras: Map<String, Value> = c.extras.iter().map(|(k, v)| (k.clone(), float(*v))).collect();
    rows.push(obj! {
        "record" => Value::String("certificate".into()),
        "family" => Value::String(c.family.into()),
        "form" => form_value(&c.form),
        "parameters" => Value::Object(params),
        "index" => Value::from(c.index),
        "partial_sum_lower_bound" => float(c.partial_sum_lower_bound),
        "predicted_growth" => obj! {
            "description" => Value::String(c.predicted_growth.description.clone()),
            "value" => c.predicted_growth.value.map(float).unwrap_or(Value::Null),
        },
        "extras" => Value::Object(extras),
        "strictly_increasing" => Value::Bool(c.is_strictly_increasing()),
        "notes" => Value::Array(c.notes.iter().map(|n| Value::String(n.clone())).collect()),
    });
    rows
}

fn read_function(path: &PathBuf) -> Result<SparseFunction> {
    SparseFunction::from_csv(&std::fs::read_to_string(path)?)
}

fn window(r: (i64, i64)) -> Result<Window> {
    Window::new(r.0, r.1)
}

/// Exit status for an error: 3 for failed checks, 2 for everything else.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Invariant(_) => 3,
        _ => 2,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::UnsupportedClass { .. } => "unsupported_class",
        Error::Domain(_) => "domain",
        Error::Parse(_) => "parse",
        Error::Invariant(_) => "invariant",
        Error::Io(_) => "io",
        Error::Json(_) => "json",
    }
}

/// Runs the command line with the process streams and returns the exit
/// status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let mut out = std::io::BufWriter::new(std::io::stdout());
    let code = run_with(args, &mut out, &mut std::io::stderr());
    let _ = out.flush();
    code
}

/// [`run`] with explicit output streams.
pub fn run_with<I, T>(args: I, out: &mut (dyn Write + Send), err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand) {
                let _ = write!(out, "{e}");
                return if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand { 2 } else { 0 };
            }
            let msg = e.to_string();
            let line = obj! {
                "error" => Value::String("usage".into()),
                "message" => Value::String(msg.trim().to_string()),
            };
            let _ = writeln!(err, "{line}");
            return 2;
        }
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.threads {
        builder = builder.num_threads(n.max(1));
    }
    let result = match builder.build() {
        Ok(pool) => pool.install(|| dispatch(&cli, out)),
        Err(e) => Err(Error::domain(format!("thread pool: {e}"))),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = out.flush();
            let line = obj! {
                "error" => Value::String(error_kind(&e).into()),
                "message" => Value::String(e.to_string()),
            };
            let _ = writeln!(err, "{line}");
            exit_code(&e)
        }
    }
}

fn dispatch(cli: &Cli, out: &mut (dyn Write + Send)) -> Result<i32> {
    let mut em = Emitter {
        format: cli.format,
        out,
        header: None,
    };
    let cache = match &cli.cache {
        Some(path) => Some(RepCache::load(path)?),
        None => None,
    };
    let mut status = 0;
    match &cli.command {
        Command::Classify { form } => {
            let class = form.classify();
            em.emit(obj! {
                "form" => form_value(form),
                "discriminant" => int(&form.discriminant()),
                "class" => Value::String(class.tag().into()),
                "primitive" => Value::Bool(form.is_primitive()),
            })?;
        }
        Command::Reduce { form } => {
            let (r, w) = form.reduce()?;
            em.emit(obj! {
                "form" => form_value(form),
                "reduced" => form_value(&r),
                "witness" => matrix(&w),
            })?;
        }
        Command::Equivalent { form, other } => {
            let w = form.equivalent(other)?;
            em.emit(obj! {
                "form" => form_value(form),
                "other" => form_value(other),
                "equivalent" => Value::Bool(w.is_some()),
                "witness" => w.as_ref().map(matrix).unwrap_or(Value::Null),
            })?;
        }
        Command::Pell { delta, verify } => {
            let f = pell4_fundamental(delta)?;
            let mut v = obj! {
                "delta" => int(delta),
                "T" => int(&f.t),
                "U" => int(&f.u),
            };
            if *verify {
                let proof = match f.verify_minimal()? {
                    crate::pell::MinimalityProof::DirectScan { checked } => {
                        obj! { "method" => Value::String("direct_scan".into()), "checked" => Value::from(checked) }
                    }
                    crate::pell::MinimalityProof::PowerRootCertificate { max_k } => {
                        obj! { "method" => Value::String("power_root_certificate".into()), "max_k" => Value::from(max_k) }
                    }
                };
                if let Value::Object(m) = &mut v {
                    m.insert("minimality".into(), proof);
                }
            }
            em.emit(v)?;
        }
        Command::Automorphs { form, limit } => {
            let (prim, _) = form.primitive_part()?;
            match automorph_group(&prim)? {
                AutomorphGroup::Finite(list) => {
                    em.emit(obj! {
                        "form" => form_value(form),
                        "group" => Value::String("finite".into()),
                        "size" => Value::from(list.len()),
                    })?;
                    for (i, m) in list.iter().enumerate() {
                        em.emit(obj! { "index" => Value::from(i), "matrix" => matrix(m) })?;
                    }
                }
                AutomorphGroup::InfiniteCyclic { generator } => {
                    let (t, u) = solution_of_automorph(&prim, &generator);
                    em.emit(obj! {
                        "form" => form_value(form),
                        "group" => Value::String("infinite_cyclic".into()),
                        "generator" => matrix(&generator),
                        "T" => int(&t),
                        "U" => int(&u),
                    })?;
                    let mut m = UnimodularTransform::identity();
                    for j in 1..=*limit {
                        m = &m * &generator;
                        if form.apply_transform(&m) != *form {
                            return Err(Error::Invariant(format!("power {j} does not fix {form}")));
                        }
                        em.emit(obj! { "power" => Value::from(j), "matrix" => matrix(&m) })?;
                    }
                }
            }
        }
        Command::Gamma { t, s } => {
            let g = gamma(t, s)?;
            em.emit(obj! { "t" => int(t), "s" => int(s), "gamma" => int(&g) })?;
        }
        Command::Congruence { delta, k } => {
            for sol in solve_congruence(delta, k)? {
                em.emit(obj! { "k" => int(&sol.k), "u" => int(&sol.u), "v" => int(&sol.v) })?;
            }
        }
        Command::Reps { form, k, max_m, oracle } => {
            let reps = enumerate_reps_bounded(form, k, *max_m)?;
            for r in &reps {
                em.emit(obj! { "m" => int(&r.m), "n" => int(&r.n), "k" => int(&r.k), "g" => int(&r.g) })?;
            }
            let mut summary = obj! { "form" => form_value(form), "k" => int(k), "max_m" => Value::from(*max_m), "count" => Value::from(reps.len()) };
            if *oracle {
                let max_n = n_bound(form, k, *max_m)
                    .to_u64()
                    .ok_or_else(|| Error::domain("oracle box too large"))?;
                let brute: Vec<_> = brute_force_reps(form, k, *max_m, max_n)
                    .into_iter()
                    .filter(|r| !r.m.is_zero())
                    .collect();
                let matched = brute == reps;
                if let Value::Object(m) = &mut summary {
                    m.insert("oracle_count".into(), Value::from(brute.len()));
                    m.insert("oracle_match".into(), Value::Bool(matched));
                }
                if !matched {
                    status = 3;
                }
            }
            em.emit(summary)?;
        }
        Command::Classes { form, k } => {
            let local;
            let cache = match &cache {
                Some(c) => c,
                None => {
                    local = RepCache::new();
                    &local
                }
            };
            for cls in cache.rep_classes(form, k)?.iter() {
                em.emit(obj! {
                    "g" => int(&cls.g),
                    "k" => int(&cls.base.k),
                    "u" => int(&cls.base.u),
                    "v" => int(&cls.base.v),
                    "nonempty" => Value::Bool(!cls.is_empty()),
                    "witness" => cls.witness.as_ref().map(matrix).unwrap_or(Value::Null),
                    "orbit_anchor" => cls.orbit_anchor.as_ref().map(matrix).unwrap_or(Value::Null),
                })?;
            }
        }
        Command::Repsum { form, k, lambda, tol, scan_max_m } => {
            let r = match scan_max_m {
                Some(m) => rep_weight_scan(form, k, *lambda, *m)?,
                None => rep_weight_sum(form, k, *lambda, *tol)?,
            };
            em.emit(sum_value(&r))?;
        }
        Command::LemmaCheck { form, k_range } => {
            let ks: Vec<i64> = (k_range.0..=k_range.1).collect();
            let rows: Vec<(i64, u64, u64)> = match LemmaChecker::new(form) {
                Ok(checker) => ks
                    .par_iter()
                    .map(|&k| {
                        let (w, c) = checker.count(k);
                        (k, w, c)
                    })
                    .collect(),
                Err(Error::Domain(_)) => ks
                    .par_iter()
                    .map(|&k| {
                        lemma_window_check(form, &BigInt::from(k)).map(|r| {
                            (k, r.window.to_u64().unwrap_or(u64::MAX), r.count)
                        })
                    })
                    .collect::<Result<Vec<_>>>()?,
                Err(e) => return Err(e),
            };
            for (k, w, c) in rows {
                if c > 4 {
                    status = 3;
                }
                em.emit(obj! {
                    "form" => form_value(form),
                    "k" => Value::from(k),
                    "window" => Value::from(w),
                    "count" => Value::from(c),
                    "pass" => Value::Bool(c <= 4),
                })?;
            }
        }
        Command::Apply { form, f, lambda, n_window, max_m } => {
            let func = read_function(f)?;
            for (n, v) in apply_operator(form, &func, *lambda, window(*n_window)?, *max_m)? {
                em.emit(obj! { "n" => Value::from(n), "value" => float(v) })?;
            }
        }
        Command::Norm { form, f, lambda, p, n_window, max_m } => {
            let func = read_function(f)?;
            let p: LpExponent = p.parse()?;
            let r = weighted_norm_estimate(form, &func, *lambda, p, window(*n_window)?, *max_m)?;
            let opt = |x: Option<f64>| x.map(float).unwrap_or(Value::Null);
            em.emit(obj! {
                "form" => form_value(&r.form),
                "lambda" => float(r.lambda),
                "p" => Value::String(r.p.to_string()),
                "n_window" => Value::String(format!("{}:{}", r.window.lo, r.window.hi)),
                "max_m" => Value::from(r.max_m),
                "window_norm" => float(r.window_norm),
                "exhaustive_norm" => opt(r.exhaustive_norm),
                "identity_value" => opt(r.identity_value),
                "identity_tail_bound" => opt(r.identity_tail_bound),
            })?;
        }
        Command::Probe { form, lambda, max_k } => {
            let r = bound_constant_probe(form, *lambda, *max_k)?;
            em.emit(obj! {
                "form" => form_value(&r.form),
                "lambda" => float(r.lambda),
                "max_k" => Value::from(r.max_k),
                "sup" => float(r.sup),
                "argmax" => Value::from(r.argmax),
                "tail_bound" => float(r.tail_bound),
            })?;
        }
        Command::Counterexample { family, form, lambda, r, p, steps } => {
            let cert = match family {
                Family::SquareDisc => {
                    let q = form
                        .clone()
                        .ok_or_else(|| Error::domain("square-disc needs --form"))?;
                    square_disc_zero_line(&q, *lambda, *steps)?
                }
                Family::Jacobi => jacobi_family(*r, *steps)?,
                Family::PellLog => pell_log_counterexample(*steps)?,
                Family::IndefiniteLog => indefinite_log_family(*r, *steps)?,
                Family::LpSharp => lp_sharpness_family(*p, *steps)?,
            };
            if !cert.is_strictly_increasing() {
                status = 3;
            }
            for row in certificate_values(&cert) {
                em.emit(row)?;
            }
        }
    }
    if let (Some(c), Some(path)) = (&cache, &cli.cache) {
        c.save(path)?;
    }
    Ok(status)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["quadlab"];
        full.extend_from_slice(args);
        let code = run_with(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn float_formatting() {
        assert_eq!(format_f64(41.0 / 15.0).unwrap(), "2.7333333333333334");
        assert_eq!(format_f64(0.4).unwrap(), "0.40000000000000002");
        assert_eq!(format_f64(2.0).unwrap(), "2.0");
        assert_eq!(format_f64(1e-7).unwrap(), "9.9999999999999995e-8");
        assert_eq!(format_f64(1e20).unwrap(), "1.0e20");
        assert_eq!(format_f64(-0.001).unwrap(), "-0.001");
        assert_eq!(format_f64(123456.0).unwrap(), "123456.0");
        assert!(format_f64(f64::INFINITY).is_none());
    }

    #[test]
    fn documented_outputs() {
        assert_eq!(run_capture(&["pell", "--delta", "32"]).1, "{\"delta\":32,\"T\":6,\"U\":1}\n");
        assert_eq!(run_capture(&["gamma", "--t", "8", "--s", "7"]).1, "{\"t\":8,\"s\":7,\"gamma\":2}\n");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_capture(&["pell", "--delta", "4"]).0, 2);
        assert_eq!(run_capture(&["gamma", "--t", "x", "--s", "7"]).0, 2);
        let (code, _, err) = run_capture(&["repsum", "--form", "1,3,2", "--k", "5", "--lambda", "1"]);
        assert_eq!(code, 2);
        assert!(err.contains("unsupported_class"));
        let (code, out, _) = run_capture(&["--version"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), "quadlab 0.1.0 (interface revision 1)");
    }
}

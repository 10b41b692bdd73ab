//! Command-line front end: argument parsing, report formatting and cache handling.

use std::ffi::OsString;
use std::fmt::{self, Write as _};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::alcove::{
    alcove_of, box_representatives, box_window, dot_act, element_of_word, format_word, parse_word, Alcove,
};
use crate::error::{Error, Result};
use crate::klpoly::{HalfLaurent, KlCache, KlEngine};
use crate::loewy::{
    dimension_check, head_socle_check, head_weight_second_form, layer_table, loewy_length, parity_check,
    verify_placements, LoewyTable,
};
use crate::oracle;
use crate::periodic::Periodic;
use crate::rootsys::{ParabolicDatum, RootDatum};
use crate::weight::Weight;

/// Environment variable naming the cache directory.
pub const CACHE_ENV: &str = "LOEWY_CACHE_DIR";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum CheckKind {
    Inversion,
    LoewyLength,
    HeadSocle,
    Parity,
    #[value(name = "w-I-factors", alias = "w-i-factors")]
    WIFactors,
    Dimension,
    OracleDiff,
    All,
}

impl CheckKind {
    const EACH: [CheckKind; 7] = [
        CheckKind::Inversion,
        CheckKind::LoewyLength,
        CheckKind::HeadSocle,
        CheckKind::Parity,
        CheckKind::WIFactors,
        CheckKind::Dimension,
        CheckKind::OracleDiff,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Inversion => "inversion",
            CheckKind::LoewyLength => "loewy-length",
            CheckKind::HeadSocle => "head-socle",
            CheckKind::Parity => "parity",
            CheckKind::WIFactors => "w-I-factors",
            CheckKind::Dimension => "dimension",
            CheckKind::OracleDiff => "oracle-diff",
            CheckKind::All => "all",
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "loewy",
    version,
    about = "Loewy layers of parabolically induced G1T-modules from periodic Kazhdan-Lusztig polynomials"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Root system data, and parabolic data with --I.
    Roots(Opts),
    /// Ordinary affine KL polynomial P_{x,y} for words --x, --y.
    Kl(Opts),
    /// Periodic polynomial P̂ between the alcoves x·A⁺ and y·A⁺ (P̂^I with --I).
    Phat(Opts),
    /// Periodic inverse polynomial Q between the alcoves x·A⁺ and y·A⁺.
    Q(Opts),
    /// Loewy layer table of the induced module from the periodic KL formula.
    Loewy(Opts),
    /// Run consistency checks over λ (default: one per alcove of the restricted box) and I (default: all).
    Check {
        #[arg(value_enum)]
        kind: CheckKind,
        #[command(flatten)]
        opts: Opts,
    },
    /// Socle series computed by explicit linear algebra over F_p (A1, A2).
    Oracle(Opts),
}

#[derive(Args, Debug, Clone)]
struct Opts {
    /// Root system type: A1, A1xA1, A2, B2, G2, A3.
    #[arg(long = "type", value_name = "LABEL")]
    label: String,
    /// Levi simple roots, 1-based and comma separated; empty for the Borel.
    #[arg(long = "I", value_name = "LIST", allow_hyphen_values = true)]
    subset: Option<String>,
    /// Weight in fundamental-weight coordinates, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    /// Alcove word over s0..sr; the weight is x•0.
    #[arg(long)]
    alcove: Option<String>,
    /// Word over s0..sr for the first element
    #[arg(long)]
    x: Option<String>,
    /// Word over s0..sr for the second element
    #[arg(long)]
    y: Option<String>,
    /// The characteristic, a prime at least the Coxeter number
    #[arg(long)]
    p: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Overrides the LOEWY_CACHE_DIR environment variable.
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    /// Neither read nor write cached values
    #[arg(long)]
    no_cache: bool,
    /// Largest number of alcoves in an inversion-check window.
    #[arg(long)]
    window_cap: Option<usize>,
    /// Evaluate P̂ at this fixed translation depth.
    #[arg(long)]
    depth: Option<u32>,
    /// Depths tried past the first dominant one before giving up.
    #[arg(long)]
    max_extra_depth: Option<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Action {
    Roots,
    Kl,
    Phat,
    Q,
    Loewy,
    Check(CheckKind),
    Oracle,
}

/// A fully parsed invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Action,
    pub label: String,
    /// 0-based Levi indices; `None` when not given.
    pub subset: Option<Vec<usize>>,
    pub lambda: Option<Weight>,
    pub alcove: Option<Vec<usize>>,
    pub x: Option<Vec<usize>>,
    pub y: Option<Vec<usize>>,
    pub p: Option<u64>,
    pub format: Format,
    pub cache_dir: Option<PathBuf>,
    pub no_cache: bool,
    pub window_cap: Option<usize>,
    pub depth: Option<u32>,
    pub max_extra_depth: Option<u32>,
}

fn parse_subset(s: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let i: usize = part.parse().map_err(|_| Error::Parse(format!("bad simple-root index `{part}`")))?;
        if i == 0 {
            return Err(Error::Parse("simple-root indices are 1-based".into()));
        }
        out.push(i - 1);
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn parse_weight(s: &str) -> Result<Weight> {
    let s = s.trim().trim_start_matches('(').trim_end_matches(')');
    s.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad weight coordinate `{t}`"))))
        .collect::<Result<Vec<_>>>()
        .map(Weight)
}

impl RunConfig {
    /// Parses command-line arguments (without the program name).
    pub fn parse<I, T>(args: I) -> std::result::Result<Self, CliError>
    where
        I: IntoIterator<Item = T>,
        T: Into<OsString> + Clone,
    {
        let argv = std::iter::once(OsString::from("loewy")).chain(args.into_iter().map(Into::into));
        let cli = Cli::try_parse_from(argv).map_err(CliError::Clap)?;
        let (command, o) = match cli.command {
            Command::Roots(o) => (Action::Roots, o),
            Command::Kl(o) => (Action::Kl, o),
            Command::Phat(o) => (Action::Phat, o),
            Command::Q(o) => (Action::Q, o),
            Command::Loewy(o) => (Action::Loewy, o),
            Command::Check { kind, opts } => (Action::Check(kind), opts),
            Command::Oracle(o) => (Action::Oracle, o),
        };
        let word = |w: &Option<String>| w.as_deref().map(parse_word).transpose();
        Ok(RunConfig {
            command,
            label: o.label,
            subset: o.subset.as_deref().map(parse_subset).transpose().map_err(CliError::Usage)?,
            lambda: o.lambda.as_deref().map(parse_weight).transpose().map_err(CliError::Usage)?,
            alcove: word(&o.alcove).map_err(CliError::Usage)?,
            x: word(&o.x).map_err(CliError::Usage)?,
            y: word(&o.y).map_err(CliError::Usage)?,
            p: o.p,
            format: o.format,
            cache_dir: o.cache_dir,
            no_cache: o.no_cache,
            window_cap: o.window_cap,
            depth: o.depth,
            max_extra_depth: o.max_extra_depth,
        })
    }

    /// The canonical argument string; parsing it gives back `self`.
    pub fn canonical(&self) -> String {
        let mut s = match self.command {
            Action::Roots => "roots".to_string(),
            Action::Kl => "kl".to_string(),
            Action::Phat => "phat".to_string(),
            Action::Q => "q".to_string(),
            Action::Loewy => "loewy".to_string(),
            Action::Check(k) => format!("check {}", k.name()),
            Action::Oracle => "oracle".to_string(),
        };
        let _ = write!(s, " --type {}", self.label);
        if let Some(i) = &self.subset {
            let idx: Vec<String> = i.iter().map(|x| (x + 1).to_string()).collect();
            let _ = write!(s, " --I={}", idx.join(","));
        }
        if let Some(l) = &self.lambda {
            let c: Vec<String> = l.0.iter().map(i64::to_string).collect();
            let _ = write!(s, " --lambda={}", c.join(","));
        }
        for (flag, w) in [("alcove", &self.alcove), ("x", &self.x), ("y", &self.y)] {
            if let Some(w) = w {
                let _ = write!(s, " --{flag} {}", format_word(w));
            }
        }
        if let Some(p) = self.p {
            let _ = write!(s, " --p {p}");
        }
        let fmt = match self.format {
            Format::Text => "text",
            Format::Json => "json",
            Format::Csv => "csv",
        };
        let _ = write!(s, " --format {fmt}");
        if let Some(d) = &self.cache_dir {
            let _ = write!(s, " --cache-dir {}", d.display());
        }
        if self.no_cache {
            s.push_str(" --no-cache");
        }
        if let Some(c) = self.window_cap {
            let _ = write!(s, " --window-cap {c}");
        }
        if let Some(m) = self.depth {
            let _ = write!(s, " --depth {m}");
        }
        if let Some(m) = self.max_extra_depth {
            let _ = write!(s, " --max-extra-depth {m}");
        }
        s
    }

    /// The cache in effect: `--cache-dir`, then `$LOEWY_CACHE_DIR`, then
    /// `$HOME/.cache/loewy-kl`. Fixed-depth runs are never cached.
    pub fn cache(&self) -> Option<KlCache> {
        if self.no_cache || self.depth.is_some() || self.max_extra_depth.is_some() {
            return None;
        }
        let dir = self
            .cache_dir
            .clone()
            .or_else(|| std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from))
            .or_else(|| std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache").join("loewy-kl")))?;
        Some(KlCache::new(dir))
    }
}

impl fmt::Display for RunConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical())
    }
}

#[derive(Debug)]
pub enum CliError {
    Clap(clap::Error),
    Usage(Error),
}

/// Exit code and emitted text of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: 0, stdout, stderr: String::new() }
    }
}

fn is_usage_error(e: &Error) -> bool {
    matches!(
        e,
        Error::UnsupportedType(_)
            | Error::IndexOutOfRange { .. }
            | Error::NotRegular { .. }
            | Error::UnsupportedAlgebra(_)
            | Error::Parse(_)
    )
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::UnsupportedType(_) => "UnsupportedType",
        Error::IndexOutOfRange { .. } => "IndexOutOfRange",
        Error::NotRegular { .. } => "NotRegular",
        Error::StabilizationFailed { .. } => "StabilizationFailed",
        Error::WindowTooSmall(_) => "WindowTooSmall",
        Error::InternalInconsistency(_) => "InternalInconsistency",
        Error::PredictionMismatch(_) => "PredictionMismatch",
        Error::DimensionMismatch { .. } => "DimensionMismatch",
        Error::UnsupportedAlgebra(_) => "UnsupportedAlgebra",
        Error::NotHighestWeight(_) => "NotHighestWeight",
        Error::Parse(_) => "Parse",
        Error::Io(_) => "Io",
    }
}

/// Runs one invocation: exit code 0 on success, 1 on a failed mathematical check
/// (with a JSON failure record on stdout), 2 on a usage error.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match RunConfig::parse(args) {
        Ok(c) => c,
        Err(CliError::Clap(e)) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 { Outcome::ok(text) } else { Outcome { code, stdout: String::new(), stderr: text } };
        }
        Err(CliError::Usage(e)) => return Outcome { code: 2, stdout: String::new(), stderr: format!("error: {e}\n") },
    };
    match execute(&cfg) {
        Ok(out) => out,
        Err(e) if is_usage_error(&e) => Outcome { code: 2, stdout: String::new(), stderr: format!("error: {e}\n") },
        Err(e) => {
            let record =
                json!({"status": "error", "kind": error_kind(&e), "message": e.to_string(), "config": cfg.canonical()});
            Outcome { code: 1, stdout: format!("{record}\n"), stderr: format!("error: {e}\n") }
        }
    }
}

fn execute(cfg: &RunConfig) -> Result<Outcome> {
    let d = RootDatum::build(&cfg.label)?;
    if let Some(i) = &cfg.subset {
        d.check_index_set(i)?;
    }
    match cfg.command {
        Action::Roots => roots(cfg, &d).map(Outcome::ok),
        Action::Kl => kl(cfg, &d).map(Outcome::ok),
        Action::Phat | Action::Q => periodic_poly(cfg, &d).map(Outcome::ok),
        Action::Loewy | Action::Oracle => table(cfg, &d).map(Outcome::ok),
        Action::Check(kind) => check(cfg, &d, kind),
    }
}

fn finite_word(d: &RootDatum, w: usize) -> String {
    let word: String = d.weyl[w].word.iter().map(|i| format!("s{}", i + 1)).collect();
    if word.is_empty() {
        "e".into()
    } else {
        word
    }
}

fn need<'a, T>(v: &'a Option<T>, flag: &str) -> Result<&'a T> {
    v.as_ref().ok_or_else(|| Error::Parse(format!("missing --{flag}")))
}

/// `--p`, required to be a prime no smaller than the Coxeter number.
fn prime_of(cfg: &RunConfig, d: &RootDatum) -> Result<u64> {
    let p = *need(&cfg.p, "p")?;
    let is_prime = p >= 2 && (2..).take_while(|k| k * k <= p).all(|k| p % k != 0);
    if !is_prime || (p as i64) < d.coxeter_number {
        return Err(Error::Parse(format!("--p {p} must be a prime at least h = {} for {}", d.coxeter_number, d.label)));
    }
    Ok(p)
}

fn json_text(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn roots(cfg: &RunConfig, d: &RootDatum) -> Result<String> {
    let pd = cfg.subset.as_ref().map(|i| ParabolicDatum::new(d, i)).transpose()?;
    match cfg.format {
        Format::Json => {
            let mut v = json!({
                "type": d.label,
                "rank": d.rank,
                "cartan": d.cartan,
                "coxeter_number": d.coxeter_number,
                "weyl_order": d.weyl_order(),
                "rho": d.rho(),
                "w0": finite_word(d, d.w0),
                "positive_roots": d.roots.iter().map(|r| json!({"root": r.coeffs, "weight": r.weight})).collect::<Vec<_>>(),
            });
            if let Some(pd) = &pd {
                v["parabolic"] = json!({
                    "I": pd.subset.iter().map(|i| i + 1).collect::<Vec<_>>(),
                    "w_I": finite_word(d, pd.w_i),
                    "w^I": finite_word(d, pd.w_upper),
                    "length_w^I": pd.upper_length(d),
                    "two_rho_P": pd.two_rho_p,
                    "W^I": pd.min_coset_reps.iter().map(|&w| finite_word(d, w)).collect::<Vec<_>>(),
                });
            }
            Ok(json_text(&v))
        }
        Format::Csv => {
            let mut s = String::from("index,root,weight\n");
            for (k, r) in d.roots.iter().enumerate() {
                let c: Vec<String> = r.coeffs.iter().map(i64::to_string).collect();
                let w: Vec<String> = r.weight.0.iter().map(i64::to_string).collect();
                let _ = writeln!(s, "{},[{}],({})", k + 1, c.join(";"), w.join(";"));
            }
            Ok(s)
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(
                s,
                "type {}  rank {}  |W| = {}  |R+| = {}  h = {}",
                d.label,
                d.rank,
                d.weyl_order(),
                d.num_positive_roots(),
                d.coxeter_number
            );
            let _ = writeln!(s, "cartan {:?}", d.cartan);
            let _ = writeln!(s, "rho {}  w0 = {}", d.rho(), finite_word(d, d.w0));
            let _ = writeln!(s, "positive roots (simple-root coordinates, weight):");
            for r in &d.roots {
                let _ = writeln!(s, "  {:?}  {}", r.coeffs, r.weight);
            }
            if let Some(pd) = &pd {
                let idx: Vec<String> = pd.subset.iter().map(|i| (i + 1).to_string()).collect();
                let _ = writeln!(s, "I = {{{}}}", idx.join(","));
                let _ = writeln!(
                    s,
                    "  w_I = {}  w^I = {}  l(w^I) = {}",
                    finite_word(d, pd.w_i),
                    finite_word(d, pd.w_upper),
                    pd.upper_length(d)
                );
                let _ = writeln!(s, "  2rho_P = {}", pd.two_rho_p);
                let reps: Vec<String> = pd.min_coset_reps.iter().map(|&w| finite_word(d, w)).collect();
                let _ = writeln!(s, "  W^I = {{{}}}", reps.join(", "));
            }
            Ok(s)
        }
    }
}

fn poly_report(cfg: &RunConfig, name: &str, x: &str, y: &str, poly: &HalfLaurent) -> String {
    match cfg.format {
        Format::Json => json_text(&json!({
            "type": cfg.label,
            "poly": name,
            "x": x,
            "y": y,
            "value": poly.to_string(),
            "record": poly.to_record(),
        })),
        Format::Csv => format!("poly,x,y,record\n{name},{x},{y},{}\n", poly.to_record()),
        Format::Text => format!("{name}[{x}, {y}] = {poly}\n"),
    }
}

fn kl(cfg: &RunConfig, d: &RootDatum) -> Result<String> {
    let x = element_of_word(d, need(&cfg.x, "x")?)?;
    let y = element_of_word(d, need(&cfg.y, "y")?)?;
    let cache = cfg.cache();
    let mut engine = match &cache {
        Some(c) => c.open(d)?,
        None => KlEngine::new(d),
    };
    let poly = engine.kl(&x, &y);
    if let Some(c) = &cache {
        c.store(&engine)?;
    }
    let word = |a: Alcove| format_word(&a.reduced_word(d));
    Ok(poly_report(cfg, "P", &word(x.alcove(d)), &word(y.alcove(d)), &poly))
}

fn periodic(cfg: &RunConfig, d: &RootDatum) -> Result<(Periodic, Option<KlCache>)> {
    let mut per = Periodic::new(d).with_fixed_depth(cfg.depth);
    if let Some(m) = cfg.max_extra_depth {
        per = per.with_max_extra_depth(m);
    }
    let cache = cfg.cache();
    if let Some(c) = &cache {
        c.load_periodic(&mut per)?;
    }
    Ok((per, cache))
}

fn periodic_poly(cfg: &RunConfig, d: &RootDatum) -> Result<String> {
    let (mut per, cache) = periodic(cfg, d)?;
    let levi = cfg.subset.as_ref().filter(|i| i.len() < d.rank);
    let (datum, name) = match (cfg.command, levi) {
        (Action::Phat, Some(i)) => (d.sub_datum(i), "Phat^I"),
        (Action::Phat, None) => (d.clone(), "Phat"),
        (_, Some(_)) => return Err(Error::Parse("q takes no proper Levi subset".into())),
        (_, None) => (d.clone(), "Q"),
    };
    let a = element_of_word(&datum, need(&cfg.x, "x")?)?.alcove(&datum);
    let b = element_of_word(&datum, need(&cfg.y, "y")?)?.alcove(&datum);
    let poly = match (cfg.command, levi) {
        (Action::Phat, Some(i)) => per.phat_levi(i, &a, &b)?,
        (Action::Phat, None) => per.phat(&a, &b)?,
        _ => per.q_periodic(&a, &b)?,
    };
    if let Some(c) = &cache {
        c.store_periodic(&per)?;
    }
    let word = |a: &Alcove| format_word(&a.reduced_word(&datum));
    Ok(poly_report(cfg, name, &word(&a), &word(&b), &poly))
}

/// `--lambda`, or `x•0` for `--alcove x`.
fn lambda_of(cfg: &RunConfig, d: &RootDatum, p: u64) -> Result<Weight> {
    match (&cfg.lambda, &cfg.alcove) {
        (Some(l), None) => {
            if l.rank() != d.rank {
                return Err(Error::Parse(format!("weight {l} has rank {}, expected {}", l.rank(), d.rank)));
            }
            Ok(l.clone())
        }
        (None, Some(w)) => Ok(dot_act(d, &element_of_word(d, w)?, &Weight::zero(d.rank), p)),
        (Some(_), Some(_)) => Err(Error::Parse("give either --lambda or --alcove".into())),
        (None, None) => Err(Error::Parse("missing --lambda or --alcove".into())),
    }
}

fn format_table(cfg: &RunConfig, d: &RootDatum, t: &LoewyTable) -> Result<String> {
    Ok(match cfg.format {
        Format::Json => t.to_json(d)? + "\n",
        Format::Csv => t.to_csv(),
        Format::Text => t.to_report(d),
    })
}

fn table(cfg: &RunConfig, d: &RootDatum) -> Result<String> {
    let p = prime_of(cfg, d)?;
    let lambda = lambda_of(cfg, d, p)?;
    let subset = cfg.subset.clone().unwrap_or_default();
    let t = if cfg.command == Action::Oracle {
        oracle::loewy_table(d, &subset, &lambda, p)?
    } else {
        let (mut per, cache) = periodic(cfg, d)?;
        let t = layer_table(&mut per, &subset, &lambda, p)?;
        if let Some(c) = &cache {
            c.store_periodic(&per)?;
        }
        t
    };
    format_table(cfg, d, &t)
}

/// One check outcome.
#[derive(Clone, Debug)]
struct CheckRecord {
    check: &'static str,
    lambda: Weight,
    subset: Option<Vec<usize>>,
    pass: bool,
    detail: String,
}

impl CheckRecord {
    fn to_json(&self, cfg: &RunConfig, p: u64) -> Value {
        json!({
            "check": self.check,
            "type": cfg.label,
            "p": p,
            "lambda": self.lambda,
            "I": self.subset.as_ref().map(|i| i.iter().map(|x| x + 1).collect::<Vec<_>>()),
            "status": if self.pass { "pass" } else { "fail" },
            "detail": self.detail,
        })
    }
}

fn all_subsets(rank: usize) -> Vec<Vec<usize>> {
    (0..1usize << rank).map(|m| (0..rank).filter(|i| m >> i & 1 == 1).collect()).collect()
}

fn is_contract_violation(e: &Error) -> bool {
    matches!(e, Error::PredictionMismatch(_) | Error::DimensionMismatch { .. } | Error::InternalInconsistency(_))
}

/// Splits contract violations (a failed check) from other errors (an aborted run).
fn verdict(r: Result<String>) -> Result<std::result::Result<String, String>> {
    match r {
        Ok(s) => Ok(Ok(s)),
        Err(e) if is_contract_violation(&e) => Ok(Err(e.to_string())),
        Err(e) => Err(e),
    }
}

fn run_table_check(kind: CheckKind, d: &RootDatum, t: &LoewyTable) -> Result<String> {
    match kind {
        CheckKind::LoewyLength => loewy_length(d, t).map(|n| format!("length {n}")),
        CheckKind::HeadSocle => {
            let head = head_socle_check(d, t)?;
            let second = head_weight_second_form(d, &t.lambda, t.p, &t.subset)?;
            if second != head {
                return Err(Error::PredictionMismatch(format!("head forms disagree: {head} vs {second}")));
            }
            Ok(format!("head {head}"))
        }
        CheckKind::Parity => parity_check(d, t).map(|()| format!("{} entries", t.entries().len())),
        CheckKind::WIFactors => verify_placements(d, t).map(|v| format!("{} placements", v.len())),
        CheckKind::Dimension => dimension_check(d, t).map(|r| format!("dim {} = {}", r.lhs, r.rhs)),
        CheckKind::OracleDiff => {
            let o = oracle::loewy_table(d, &t.subset, &t.lambda, t.p)?;
            if &o == t {
                Ok(format!("{} factors agree", o.total_factors()))
            } else {
                Err(Error::PredictionMismatch(format!(
                    "formula {} oracle {}",
                    t.to_csv().replace('\n', " "),
                    o.to_csv().replace('\n', " ")
                )))
            }
        }
        CheckKind::Inversion | CheckKind::All => unreachable!("not a table check"),
    }
}

fn check(cfg: &RunConfig, d: &RootDatum, kind: CheckKind) -> Result<Outcome> {
    let p = prime_of(cfg, d)?;
    let oracle_ok = oracle::Algebra::for_datum(d).is_ok();
    let kinds: Vec<CheckKind> = match kind {
        CheckKind::All => CheckKind::EACH.into_iter().filter(|&k| k != CheckKind::OracleDiff || oracle_ok).collect(),
        CheckKind::OracleDiff if !oracle_ok => return Err(Error::UnsupportedAlgebra(d.label.clone())),
        k => vec![k],
    };
    let lambdas = if cfg.lambda.is_some() || cfg.alcove.is_some() {
        vec![lambda_of(cfg, d, p)?]
    } else {
        box_representatives(d, p)
    };
    if lambdas.is_empty() {
        return Err(Error::Parse(format!("no {p}-regular weights for {}", d.label)));
    }
    let subsets = cfg.subset.clone().map_or_else(|| all_subsets(d.rank), |i| vec![i]);
    let (mut per, cache) = periodic(cfg, d)?;
    let mut records = Vec::new();
    for lambda in &lambdas {
        if kinds.contains(&CheckKind::Inversion) {
            let mut window = Vec::new();
            for mu in box_window(d, lambda, p, None)? {
                window.push(alcove_of(d, &mu, p)?);
            }
            if let Some(cap) = cfg.window_cap {
                window.truncate(cap);
            }
            let report = per.inversion_check(&window)?;
            let mut detail =
                format!("{} pairs on {} alcoves, {} deviations", report.pairs, window.len(), report.deviations.len());
            if let Some((a, b, v)) = report.deviations.first() {
                let _ = write!(
                    detail,
                    "; first at ({}, {}): {v}",
                    format_word(&a.reduced_word(d)),
                    format_word(&b.reduced_word(d))
                );
            }
            records.push(CheckRecord {
                check: "inversion",
                lambda: lambda.clone(),
                subset: None,
                pass: report.is_ok(),
                detail,
            });
        }
        let table_kinds: Vec<CheckKind> = kinds.iter().copied().filter(|&k| k != CheckKind::Inversion).collect();
        if table_kinds.is_empty() {
            continue;
        }
        for subset in &subsets {
            let t = match layer_table(&mut per, subset, lambda, p) {
                Ok(t) => t,
                Err(e) if is_contract_violation(&e) => {
                    for &k in &table_kinds {
                        records.push(CheckRecord {
                            check: k.name(),
                            lambda: lambda.clone(),
                            subset: Some(subset.clone()),
                            pass: false,
                            detail: e.to_string(),
                        });
                    }
                    continue;
                }
                Err(e) => return Err(e),
            };
            for &k in &table_kinds {
                let (pass, detail) = match verdict(run_table_check(k, d, &t))? {
                    Ok(s) => (true, s),
                    Err(s) => (false, s),
                };
                records.push(CheckRecord {
                    check: k.name(),
                    lambda: lambda.clone(),
                    subset: Some(subset.clone()),
                    pass,
                    detail,
                });
            }
        }
    }
    if let Some(c) = &cache {
        c.store_periodic(&per)?;
    }
    let failed = records.iter().filter(|r| !r.pass).count();
    let stdout = match cfg.format {
        Format::Json => json_text(&json!({
            "type": cfg.label,
            "p": p,
            "checks": records.len(),
            "failed": failed,
            "results": records.iter().map(|r| r.to_json(cfg, p)).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut s = String::from("check,lambda,I,status,detail\n");
            for r in &records {
                let lam: Vec<String> = r.lambda.0.iter().map(i64::to_string).collect();
                let sub = r.subset.as_ref().map_or_else(
                    || "all".to_string(),
                    |i| i.iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join(";"),
                );
                let _ = writeln!(
                    s,
                    "{},({}),{{{}}},{},\"{}\"",
                    r.check,
                    lam.join(";"),
                    sub,
                    if r.pass { "pass" } else { "fail" },
                    r.detail.replace('"', "'")
                );
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for r in &records {
                if r.pass {
                    let sub = r.subset.as_ref().map_or_else(String::new, |i| {
                        format!(" I={{{}}}", i.iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join(","))
                    });
                    let _ = writeln!(s, "PASS {} {} p={p} lambda={}{sub}: {}", r.check, cfg.label, r.lambda, r.detail);
                } else {
                    let _ = writeln!(s, "FAIL {}", r.to_json(cfg, p));
                }
            }
            let _ = writeln!(s, "{} checks, {failed} failed", records.len());
            s
        }
    };
    Ok(Outcome { code: i32::from(failed > 0), stdout, stderr: String::new() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(s: &str) -> Vec<String> {
        s.split_whitespace().map(String::from).collect()
    }

    #[test]
    fn canonical_roundtrip() {
        for line in [
            "loewy --type A1 --I= --lambda=2 --p 5 --format json",
            "check w-I-factors --type B2 --I=1 --p 11 --no-cache",
            "phat --type A2 --x s0s1 --y s0s1s2s0 --depth 3",
            "roots --type G2",
            "check inversion --type A2 --p 5 --window-cap 12 --max-extra-depth 4 --cache-dir /tmp/x",
        ] {
            let cfg = RunConfig::parse(args(line)).unwrap();
            let again = RunConfig::parse(args(&cfg.canonical())).unwrap();
            assert_eq!(again, cfg, "{line}");
            assert_eq!(again.canonical(), cfg.canonical());
        }
        let spaced = RunConfig::parse(["loewy", "--type", "A1", "--I", "", "--lambda", "-4", "--p", "5"]).unwrap();
        assert_eq!(spaced.subset, Some(vec![]));
        assert_eq!(spaced.lambda, Some(Weight(vec![-4])));
    }

    #[test]
    fn a1_table_json() {
        let out = run(args("loewy --type A1 --I= --lambda 2 --p 5 --format json --no-cache"));
        assert_eq!(out.code, 0, "{}", out.stderr);
        let t = LoewyTable::from_json(&out.stdout).unwrap();
        assert_eq!(t.entries(), vec![(0, Weight(vec![2]), 1), (1, Weight(vec![-4]), 1)]);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run(args("frobnicate")).code, 2);
        assert_eq!(run(args("loewy --type A2 --lambda 0,0 --p 4 --no-cache")).code, 2);
        assert_eq!(run(args("loewy --type G2 --lambda 0,0 --p 5 --no-cache")).code, 2);
        assert_eq!(run(args("loewy --type E8 --lambda 0 --p 5")).code, 2);
        assert_eq!(run(args("loewy --type A2 --lambda=-1,-1 --p 5 --no-cache")).code, 2);
        assert_eq!(run(args("loewy --type A2 --I 3 --lambda 0,0 --p 5 --no-cache")).code, 2);
        assert_eq!(run(args("check oracle-diff --type B2 --p 5 --no-cache")).code, 2);
        assert_eq!(run(args("check inversion --type A2 --p 5 --no-cache")).code, 0);
        let full = run(args("loewy --type A2 --I 1,2 --lambda 3,1 --p 5 --no-cache"));
        assert_eq!(full.code, 0);
        assert!(full.stdout.contains("loewy length 1"));
    }

    #[test]
    fn stabilization_failure_is_a_contract_failure() {
        let out = run(args("phat --type A2 --x e --y s0s1s2s0 --max-extra-depth 0"));
        assert_eq!(out.code, 1);
        let record: Value = serde_json::from_str(out.stdout.trim()).unwrap();
        assert_eq!(record["kind"], "StabilizationFailed");
    }

    #[test]
    fn warm_and_cold_reports_match() {
        let dir = tempfile::tempdir().unwrap();
        let line =
            format!("loewy --type B2 --I 2 --lambda 1,1 --p 7 --format json --cache-dir {}", dir.path().display());
        let cold = run(args(&line));
        let warm = run(args(&line));
        assert_eq!(cold.code, 0);
        assert_eq!(cold, warm);
        assert!(dir.path().join("periodic-B2.txt").exists());
        let kl = format!("kl --type G2 --x s1 --y s1s2s1s0 --cache-dir {}", dir.path().display());
        assert_eq!(run(args(&kl)), run(args(&kl)));
    }
}

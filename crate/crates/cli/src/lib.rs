//! Command-line front end for the `xyent` crate: convergence tables, spectrum
//! dumps and parameter sweeps rendered as CSV or JSON.

use std::fmt;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Map, Value};

use xyent::chain::{
    build_correlation_matrix, build_xx_matrix, classify_case, modulus_k, nu_spectrum, ModelParams, NuSpectrum,
    PhaseCase,
};
use xyent::entropy::{
    renyi_exact, renyi_limit_modular, renyi_limit_qproduct, vn_entropy_closed, vn_entropy_exact,
    vn_entropy_limit_integral, vn_entropy_limit_series, xx_entropy_asymptotic,
};
use xyent::spectrum::{density_spectrum, finite_l_top_eigenvalues, tail_bound, DEFAULT_NMAX};
use xyent::special::EllipticModulus;
use xyent::toeplitz::{
    xx_char_det_asymptotic, xx_char_det_from_spectrum, xy_block_det_asymptotic, xy_char_det_from_spectrum,
    SpectralParameter,
};
use xyent::Error;

/// Default tolerance for the ladder series of the limiting entropy.
pub const DEFAULT_SERIES_TOL: f64 = 1e-14;

/// Largest number of finite-L eigenvalues generated for the spectrum comparison column.
const MAX_FINITE_L_EIGENVALUES: usize = 20_000;

const CSV_HELP: &str = "\
CSV output: one header line, then one line per row. Floats are written with 17 significant \
digits in scientific notation; missing values are empty fields. Columns by command:
  entropy   L,S_exact,S_reference,difference
            S_reference is the XX asymptotic formula when gamma = 0 and the L -> infinity
            limit otherwise; a final row with L=inf carries the limit alone.
  renyi     alpha,S_exact,S_limit_qproduct,S_limit_modular
  spectrum  n,lambda_n,multiplicity,cumulative_trace[,finite_L]
  detcheck  L,exact_ln_abs_D,asymptotic_ln_abs_D,abs_ratio_minus_one
  sweep     gamma,h,case,sigma,k,tau0,S_series,S_integral,S_closed
JSON output carries the same rows as objects keyed by column name under \"rows\", the column \
list under \"columns\" and a \"metadata\" object with the command, gamma, h, case label, sigma, \
k, k' and tau0.";

#[derive(Debug, Parser)]
#[command(name = "xyent", version, about = "Entanglement entropy of the XY spin chain", after_long_help = CSV_HELP)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Von Neumann entropy: exact block values against the asymptotic formula or the limit.
    Entropy(CommonArgs),
    /// Renyi entropies: exact at one block length against both limiting formulas.
    Renyi(CommonArgs),
    /// Reduced density-matrix spectrum of the semi-infinite block.
    Spectrum(CommonArgs),
    /// Block Toeplitz determinant: exact against asymptotic.
    Detcheck(CommonArgs),
    /// Limiting entropy over a grid of (gamma, h) points.
    Sweep(CommonArgs),
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Anisotropy, a scalar or start:stop:step (ranges only for sweep).
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: String,
    /// Magnetic field, a scalar or start:stop:step (ranges only for sweep).
    #[arg(long, allow_hyphen_values = true)]
    pub h: String,
    /// Block length, a scalar or start:stop:step.
    #[arg(long = "L")]
    pub l: Option<String>,
    /// Comma-separated Renyi indices.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    /// Highest ladder level of the spectrum.
    #[arg(long)]
    pub nmax: Option<usize>,
    /// Spectral parameter as "re,im" or "re".
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Tolerance of the ladder series (entropy, sweep) or proximity threshold (detcheck).
    #[arg(long, allow_hyphen_values = true)]
    pub tol: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Entropy,
    Renyi,
    Spectrum,
    Detcheck,
    Sweep,
}

impl fmt::Display for CommandKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CommandKind::Entropy => "entropy",
            CommandKind::Renyi => "renyi",
            CommandKind::Spectrum => "spectrum",
            CommandKind::Detcheck => "detcheck",
            CommandKind::Sweep => "sweep",
        })
    }
}

/// A validated invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: CommandKind,
    pub gammas: Vec<f64>,
    pub hs: Vec<f64>,
    pub ls: Vec<usize>,
    pub alphas: Vec<f64>,
    pub nmax: usize,
    pub lambda: Option<Complex64>,
    pub format: Format,
    pub tol: Option<f64>,
}

impl RunConfig {
    pub fn gamma(&self) -> f64 {
        self.gammas[0]
    }

    pub fn h(&self) -> f64 {
        self.hs[0]
    }
}

#[derive(Debug)]
pub enum CliError {
    /// Invalid flag value, named by the flag.
    Config { field: &'static str, detail: String },
    Numeric(Error),
}

impl CliError {
    fn config(field: &'static str, detail: impl Into<String>) -> Self {
        CliError::Config {
            field,
            detail: detail.into(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Numeric(e) if e.is_convergence_failure() => 3,
            _ => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config { field, detail } => write!(f, "invalid --{field}: {detail}"),
            CliError::Numeric(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Numeric(e)
    }
}

fn parse_f64(field: &'static str, s: &str) -> Result<f64, CliError> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| CliError::config(field, format!("'{s}' is not a number")))?;
    if !v.is_finite() {
        return Err(CliError::config(field, format!("'{s}' is not finite")));
    }
    Ok(v)
}

/// Parses `x` or `start:stop:step` (stop included when hit within roundoff).
fn parse_real_range(field: &'static str, s: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        [x] => Ok(vec![parse_f64(field, x)?]),
        [a, b, c] => {
            let (start, stop, step) = (parse_f64(field, a)?, parse_f64(field, b)?, parse_f64(field, c)?);
            if step <= 0.0 {
                return Err(CliError::config(field, "range step must be positive"));
            }
            if stop < start {
                return Err(CliError::config(field, "range stop is below start"));
            }
            let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
            if count > 1_000_000 {
                return Err(CliError::config(field, "range has too many points"));
            }
            Ok((0..count).map(|i| start + i as f64 * step).collect())
        }
        _ => Err(CliError::config(field, format!("'{s}' is neither a scalar nor start:stop:step"))),
    }
}

fn parse_usize(field: &'static str, s: &str) -> Result<usize, CliError> {
    s.trim()
        .parse()
        .map_err(|_| CliError::config(field, format!("'{s}' is not a non-negative integer")))
}

fn parse_int_range(field: &'static str, s: &str) -> Result<Vec<usize>, CliError> {
    let parts: Vec<&str> = s.split(':').collect();
    let out: Vec<usize> = match parts.as_slice() {
        [x] => vec![parse_usize(field, x)?],
        [a, b, c] => {
            let (start, stop, step) = (parse_usize(field, a)?, parse_usize(field, b)?, parse_usize(field, c)?);
            if step == 0 {
                return Err(CliError::config(field, "range step must be positive"));
            }
            if stop < start {
                return Err(CliError::config(field, "range stop is below start"));
            }
            (start..=stop).step_by(step).collect()
        }
        _ => return Err(CliError::config(field, format!("'{s}' is neither a scalar nor start:stop:step"))),
    };
    if out.contains(&0) {
        return Err(CliError::config(field, "block length must be at least 1"));
    }
    Ok(out)
}

fn parse_alphas(s: &str) -> Result<Vec<f64>, CliError> {
    let mut out = Vec::new();
    for part in s.split(',') {
        let a = parse_f64("alpha", part)?;
        if a <= 0.0 {
            return Err(CliError::config("alpha", format!("{a} is not positive")));
        }
        if a == 1.0 {
            return Err(CliError::config(
                "alpha",
                "alpha = 1 is excluded: the Renyi entropy ln(Tr rho^alpha)/(1-alpha) is defined only for alpha != 1 \
                 (use the entropy command for the von Neumann limit)",
            ));
        }
        out.push(a);
    }
    Ok(out)
}

fn parse_lambda(s: &str) -> Result<Complex64, CliError> {
    let parts: Vec<&str> = s.split(',').collect();
    let z = match parts.as_slice() {
        [re] => Complex64::new(parse_f64("lambda", re)?, 0.0),
        [re, im] => Complex64::new(parse_f64("lambda", re)?, parse_f64("lambda", im)?),
        _ => return Err(CliError::config("lambda", format!("'{s}' is not of the form re,im"))),
    };
    if z.im == 0.0 && z.re.abs() <= 1.0 {
        return Err(CliError::config(
            "lambda",
            format!("{} lies on the cut [-1, 1] where the determinant asymptotics do not apply", z.re),
        ));
    }
    Ok(z)
}

impl RunConfig {
    /// Validates raw flags for `command`.
    pub fn from_args(command: CommandKind, a: &CommonArgs) -> Result<Self, CliError> {
        let gammas = parse_real_range("gamma", &a.gamma)?;
        let hs = parse_real_range("h", &a.h)?;
        if command != CommandKind::Sweep {
            if gammas.len() != 1 {
                return Err(CliError::config("gamma", "ranges are accepted only by sweep"));
            }
            if hs.len() != 1 {
                return Err(CliError::config("h", "ranges are accepted only by sweep"));
            }
        }
        if let Some(g) = gammas.iter().find(|g| **g < 0.0) {
            return Err(CliError::config("gamma", format!("{g} is negative")));
        }
        let ls = match &a.l {
            Some(s) => parse_int_range("L", s)?,
            None => Vec::new(),
        };
        if command == CommandKind::Renyi && ls.len() > 1 {
            return Err(CliError::config("L", "renyi takes a single block length"));
        }
        if command == CommandKind::Detcheck && ls.is_empty() {
            return Err(CliError::config("L", "detcheck needs at least one block length"));
        }
        let alphas = match (&a.alpha, command) {
            (Some(s), _) => parse_alphas(s)?,
            (None, CommandKind::Renyi) => return Err(CliError::config("alpha", "renyi needs an alpha list")),
            (None, _) => Vec::new(),
        };
        let lambda = match (&a.lambda, command) {
            (Some(s), _) => Some(parse_lambda(s)?),
            (None, CommandKind::Detcheck) => return Err(CliError::config("lambda", "detcheck needs a lambda")),
            (None, _) => None,
        };
        let nmax = a.nmax.unwrap_or(DEFAULT_NMAX);
        if nmax > 5000 {
            return Err(CliError::config("nmax", "must not exceed 5000"));
        }
        if let Some(t) = a.tol {
            if !(t > 0.0 && t.is_finite()) {
                return Err(CliError::config("tol", format!("{t} is not a positive number")));
            }
        }
        Ok(RunConfig {
            command,
            gammas,
            hs,
            ls,
            alphas,
            nmax,
            lambda,
            format: a.format,
            tol: a.tol,
        })
    }
}

/// A table cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Float(f64),
    Int(u64),
    Text(String),
    Empty,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Float(x) => format!("{x:.16e}"),
            Cell::Int(n) => n.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Float(x) => json!(x),
            Cell::Int(n) => json!(n),
            Cell::Text(s) => json!(s),
            Cell::Empty => Value::Null,
        }
    }

    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Float(x) => Some(*x),
            Cell::Int(n) => Some(*n as f64),
            _ => None,
        }
    }
}

fn opt(x: Option<f64>) -> Cell {
    x.map_or(Cell::Empty, Cell::Float)
}

/// Ordered output table with its metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub metadata: Map<String, Value>,
}

impl Table {
    fn new(columns: Vec<&'static str>, cfg: &RunConfig) -> Self {
        let mut metadata = Map::new();
        metadata.insert("command".into(), json!(cfg.command.to_string()));
        if cfg.command != CommandKind::Sweep {
            metadata.insert("gamma".into(), json!(cfg.gamma()));
            metadata.insert("h".into(), json!(cfg.h()));
            let (label, sigma, modulus) = match ModelParams::new(cfg.gamma(), cfg.h()) {
                Ok(p) => (classify_case(&p).ok(), classify_case(&p).ok().map(|c| c.sigma), modulus_k(&p).ok()),
                Err(_) => (None, None, None),
            };
            metadata.insert("case".into(), label.map_or(Value::Null, |c| json!(c.label.to_string())));
            metadata.insert("sigma".into(), sigma.map_or(Value::Null, |s| json!(s)));
            metadata.insert("k".into(), modulus.map_or(Value::Null, |e| json!(e.k)));
            metadata.insert("kprime".into(), modulus.map_or(Value::Null, |e| json!(e.kprime)));
            metadata.insert("tau0".into(), modulus.map_or(Value::Null, |e| json!(e.tau0)));
        }
        Table {
            columns,
            rows: Vec::new(),
            metadata,
        }
    }

    /// Column `name` of every row.
    pub fn column(&self, name: &str) -> Vec<Cell> {
        let idx = self.columns.iter().position(|c| *c == name).expect("unknown column");
        self.rows.iter().map(|r| r[idx].clone()).collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(Cell::csv).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                let mut m = Map::new();
                for (c, v) in self.columns.iter().zip(r) {
                    m.insert((*c).to_string(), v.json());
                }
                Value::Object(m)
            })
            .collect();
        let doc = json!({
            "metadata": Value::Object(self.metadata.clone()),
            "columns": self.columns,
            "rows": rows,
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("json serialisation");
        s.push('\n');
        s
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }
}

fn chain_params(cfg: &RunConfig) -> Result<ModelParams, CliError> {
    Ok(ModelParams::new(cfg.gamma(), cfg.h())?)
}

/// Exact spectrum: the XX matrix at `gamma = 0`, the Majorana matrix otherwise.
fn exact_nus(p: &ModelParams, l: usize) -> Result<NuSpectrum, Error> {
    if p.is_xx() {
        nu_spectrum(&build_xx_matrix(p.h, l)?)
    } else {
        nu_spectrum(&build_correlation_matrix(p, l, None)?)
    }
}

fn off_critical(p: &ModelParams) -> Result<(PhaseCase, EllipticModulus), Error> {
    Ok((classify_case(p)?, modulus_k(p)?))
}

pub fn cmd_entropy(cfg: &RunConfig) -> Result<Table, CliError> {
    let p = chain_params(cfg)?;
    let mut t = Table::new(vec!["L", "S_exact", "S_reference", "difference"], cfg);
    if p.is_xx() {
        if p.h.abs() >= 2.0 {
            return Err(Error::Domain {
                op: "entropy",
                detail: format!("the XX chain (gamma = 0) needs |h| < 2, got h = {}", p.h),
            }
            .into());
        }
        if cfg.ls.is_empty() {
            return Err(CliError::config("L", "gamma = 0 has no finite limit; give block lengths"));
        }
        for &l in &cfg.ls {
            let exact = vn_entropy_exact(&exact_nus(&p, l)?)?.value;
            let asym = xx_entropy_asymptotic(p.h, l)?.value;
            t.rows
                .push(vec![Cell::Int(l as u64), Cell::Float(exact), Cell::Float(asym), Cell::Float(exact - asym)]);
        }
        return Ok(t);
    }
    let (case, e) = off_critical(&p)?;
    let limit = vn_entropy_limit_series(&e, case.sigma, cfg.tol.unwrap_or(DEFAULT_SERIES_TOL))?.value;
    for &l in &cfg.ls {
        let exact = vn_entropy_exact(&exact_nus(&p, l)?)?.value;
        t.rows
            .push(vec![Cell::Int(l as u64), Cell::Float(exact), Cell::Float(limit), Cell::Float(exact - limit)]);
    }
    t.rows
        .push(vec![Cell::Text("inf".into()), Cell::Empty, Cell::Float(limit), Cell::Empty]);
    Ok(t)
}

pub fn cmd_renyi(cfg: &RunConfig) -> Result<Table, CliError> {
    let p = chain_params(cfg)?;
    let limits = match off_critical(&p) {
        Ok(v) => Some(v),
        Err(e @ Error::Boundary { .. }) if cfg.ls.is_empty() => return Err(e.into()),
        Err(Error::Boundary { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    let nus = match cfg.ls.first() {
        Some(&l) => Some(exact_nus(&p, l)?),
        None => None,
    };
    let mut t = Table::new(vec!["alpha", "S_exact", "S_limit_qproduct", "S_limit_modular"], cfg);
    if let Some(&l) = cfg.ls.first() {
        t.metadata.insert("L".into(), json!(l));
    }
    for &a in &cfg.alphas {
        let exact = match &nus {
            Some(n) => Some(renyi_exact(n, a)?.value),
            None => None,
        };
        let (q, m) = match &limits {
            Some((case, e)) => (
                Some(renyi_limit_qproduct(a, e, case)?.value),
                Some(renyi_limit_modular(a, e, case)?.value),
            ),
            None => (None, None),
        };
        t.rows.push(vec![Cell::Float(a), opt(exact), opt(q), opt(m)]);
    }
    Ok(t)
}

pub fn cmd_spectrum(cfg: &RunConfig) -> Result<Table, CliError> {
    let p = chain_params(cfg)?;
    let spec = density_spectrum(&p, cfg.nmax)?;
    let with_finite = cfg.ls.len() == 1;
    if cfg.ls.len() > 1 {
        return Err(CliError::config("L", "spectrum takes a single block length"));
    }
    let mut columns = vec!["n", "lambda_n", "multiplicity", "cumulative_trace"];
    if with_finite {
        columns.push("finite_L");
    }
    let mut t = Table::new(columns, cfg);
    t.metadata.insert("nmax".into(), json!(cfg.nmax));
    t.metadata
        .insert("trace_tail_bound".into(), json!(tail_bound(&spec, 1.0, cfg.nmax)));

    // offsets[n] = number of eigenvalues above level n
    let mut offsets = Vec::with_capacity(cfg.nmax + 1);
    let mut acc = 0.0;
    for n in 0..=cfg.nmax {
        offsets.push(acc);
        acc += spec.mult_f64(n);
    }
    let finite = if with_finite {
        let wanted = offsets
            .iter()
            .filter(|&&o| o < MAX_FINITE_L_EIGENVALUES as f64)
            .map(|&o| o as usize + 1)
            .max()
            .unwrap_or(1);
        t.metadata.insert("L".into(), json!(cfg.ls[0]));
        Some(finite_l_top_eigenvalues(&exact_nus(&p, cfg.ls[0])?, wanted))
    } else {
        None
    };
    let trace = spec.cumulative_trace();
    for n in 0..=cfg.nmax {
        let mut row = vec![
            Cell::Int(n as u64),
            Cell::Float(spec.ln_lambda(n).exp()),
            Cell::Text(spec.mults[n].to_string()),
            Cell::Float(trace[n]),
        ];
        if let Some(f) = &finite {
            let o = offsets[n];
            row.push(if o < f.len() as f64 { Cell::Float(f[o as usize]) } else { Cell::Empty });
        }
        t.rows.push(row);
    }
    Ok(t)
}

pub fn cmd_detcheck(cfg: &RunConfig) -> Result<Table, CliError> {
    let p = chain_params(cfg)?;
    let lambda = cfg.lambda.expect("validated");
    let s = SpectralParameter::new(lambda)?;
    let mut t = Table::new(
        vec!["L", "exact_ln_abs_D", "asymptotic_ln_abs_D", "abs_ratio_minus_one"],
        cfg,
    );
    t.metadata.insert("lambda_re".into(), json!(lambda.re));
    t.metadata.insert("lambda_im".into(), json!(lambda.im));
    let xy = if p.is_xx() { None } else { Some(off_critical(&p)?) };
    for &l in &cfg.ls {
        let nus = exact_nus(&p, l)?;
        let (exact, asym) = match &xy {
            None => (xx_char_det_from_spectrum(&nus.nus, lambda), xx_char_det_asymptotic(&s, p.h, l)?),
            Some((case, e)) => (
                xy_char_det_from_spectrum(&nus.nus, lambda),
                xy_block_det_asymptotic(&s, e, case, l, cfg.tol)?,
            ),
        };
        t.rows.push(vec![
            Cell::Int(l as u64),
            Cell::Float(exact.ln_abs()),
            Cell::Float(asym.ln_abs()),
            Cell::Float(asym.ratio_minus_one(&exact).norm()),
        ]);
    }
    Ok(t)
}

/// Points on a phase boundary are skipped with a note on stderr.
pub fn cmd_sweep(cfg: &RunConfig) -> Result<Table, CliError> {
    let mut t = Table::new(
        vec!["gamma", "h", "case", "sigma", "k", "tau0", "S_series", "S_integral", "S_closed"],
        cfg,
    );
    let tol = cfg.tol.unwrap_or(DEFAULT_SERIES_TOL);
    for &g in &cfg.gammas {
        for &h in &cfg.hs {
            let p = ModelParams::new(g, h)?;
            let (case, e) = match off_critical(&p) {
                Ok(v) => v,
                Err(err @ Error::Boundary { .. }) => {
                    eprintln!("skipping gamma={g}, h={h}: {err}");
                    continue;
                }
                Err(err) => return Err(err.into()),
            };
            t.rows.push(vec![
                Cell::Float(g),
                Cell::Float(h),
                Cell::Text(case.label.to_string()),
                Cell::Int(case.sigma as u64),
                Cell::Float(e.k),
                Cell::Float(e.tau0),
                Cell::Float(vn_entropy_limit_series(&e, case.sigma, tol)?.value),
                Cell::Float(vn_entropy_limit_integral(&e, case.sigma)?.value),
                Cell::Float(vn_entropy_closed(&e, &case)?.value),
            ]);
        }
    }
    Ok(t)
}

pub fn run_config(cfg: &RunConfig) -> Result<Table, CliError> {
    match cfg.command {
        CommandKind::Entropy => cmd_entropy(cfg),
        CommandKind::Renyi => cmd_renyi(cfg),
        CommandKind::Spectrum => cmd_spectrum(cfg),
        CommandKind::Detcheck => cmd_detcheck(cfg),
        CommandKind::Sweep => cmd_sweep(cfg),
    }
}

/// Validates, runs and renders a parsed command line.
pub fn run(cli: &Cli) -> Result<String, CliError> {
    let (kind, args) = match &cli.command {
        Command::Entropy(a) => (CommandKind::Entropy, a),
        Command::Renyi(a) => (CommandKind::Renyi, a),
        Command::Spectrum(a) => (CommandKind::Spectrum, a),
        Command::Detcheck(a) => (CommandKind::Detcheck, a),
        Command::Sweep(a) => (CommandKind::Sweep, a),
    };
    let cfg = RunConfig::from_args(kind, args)?;
    Ok(run_config(&cfg)?.render(cfg.format))
}

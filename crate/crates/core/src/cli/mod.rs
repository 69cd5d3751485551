//! Command-line front end. [`run`] parses arguments, dispatches to the
//! engines, writes the report, and returns the process exit code.

mod output;

pub use output::{num, Cell, Format, Report};

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::catalog::{self, apply_property, Property};
use crate::error::{Error, Result};
use crate::funcspace::{interior_samples, range_of_derivative, solve_monotone, Interval, ScalarFunction, QUAD_TOL};
use crate::jets::dual_jet;
use crate::transform::{
    clairaut_singular_solution, conjugate_samples, convert_dual_coordinates, integral_transform_tol, parametric_dual,
    DualCoordinates, Extremum, Strategy,
};
use crate::verify::{verify_all, Filter, Status, VerifyConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Settings shared by every subcommand.
#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub grid: usize,
    pub quad_tol: f64,
    pub tol: f64,
    pub format: Format,
    pub seed: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config { grid: 4096, quad_tol: QUAD_TOL, tol: 1e-8, format: Format::Table, seed: 0 }
    }
}

impl Config {
    pub fn validate(&self) -> Result<()> {
        if self.grid < 2 {
            return Err(Error::InvalidParameter(format!("--grid must be at least 2, got {}", self.grid)));
        }
        for (name, v) in [("--quad-tol", self.quad_tol), ("--tol", self.tol)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidParameter(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Parser)]
#[command(name = "legendre", version, about = "Legendre transforms of scalar functions")]
pub struct Cli {
    /// Grid size for discrete transforms.
    #[arg(long, global = true, default_value_t = 4096)]
    pub grid: usize,
    /// Absolute tolerance for quadrature.
    #[arg(long, global = true, default_value_t = QUAD_TOL)]
    pub quad_tol: f64,
    /// Residual tolerance for verification.
    #[arg(long, global = true, default_value_t = 1e-8)]
    pub tol: f64,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Seed for random parameter draws.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Transform an expression in x.
    Transform(TransformArgs),
    /// Check catalog entries numerically.
    Verify(VerifyArgs),
    /// Browse the catalog of transform pairs.
    #[command(subcommand)]
    Catalog(CatalogCommand),
    /// Taylor coefficients of f at x0 and of its transform at m0 = f'(x0).
    Jet(JetArgs),
    /// Singular solution of y = x y' + h(y').
    Clairaut(ClairautArgs),
    /// Curve and dual-curve samples for plotting, one branch per
    /// convex or concave stretch.
    Plotdata(PlotArgs),
    /// Convert a line between (m, d), (m, b) and (u, v) coordinates.
    Convert(ConvertArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Explicit inversion of f' when it is monotone, else sup.
    Auto,
    Sup,
    /// Infimum instead of supremum, for concave f.
    Inf,
    Integral,
    Parametric,
}

#[derive(Debug, Args)]
pub struct TransformArgs {
    #[arg(allow_hyphen_values = true)]
    pub expr: String,
    /// Domain of f as `lo:hi` (open), or an interval such as `[0,1)`.
    #[arg(long, allow_hyphen_values = true, default_value = "-inf:inf")]
    pub domain: String,
    #[arg(long, value_enum, default_value_t = Method::Auto)]
    pub method: Method,
    /// Slopes m to evaluate at (x values for the parametric method).
    #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
    pub at: Vec<f64>,
    /// Number of points when --at is not given.
    #[arg(long, default_value_t = 21)]
    pub points: usize,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Filter terms such as `part=c,id=c.ln*`.
    #[arg(long)]
    pub filter: Option<String>,
    #[arg(long)]
    pub part: Option<String>,
    /// Entry id; a trailing `*` matches a prefix.
    #[arg(long)]
    pub id: Option<String>,
    /// Residual sample points per parameter set.
    #[arg(long, default_value_t = 1000)]
    pub points: usize,
    /// Random parameter draws besides the defaults.
    #[arg(long, default_value_t = 3)]
    pub draws: usize,
    /// Also check slope duality, curvature reciprocity and involution.
    #[arg(long)]
    pub theorem1: bool,
}

#[derive(Debug, Subcommand)]
pub enum CatalogCommand {
    /// One line per entry.
    List {
        #[arg(long)]
        part: Option<String>,
    },
    /// Formulas, domains and parameters of one entry.
    Show {
        id: String,
        /// Parameter values as name=value.
        #[arg(long = "param", value_parser = parse_binding, allow_hyphen_values = true)]
        params: Vec<(String, f64)>,
    },
    /// Apply a transform property to an entry.
    Apply {
        property: String,
        id: String,
        /// Property arguments as name=value (a, c, s, t, b, anchor).
        #[arg(long = "arg", value_parser = parse_binding, allow_hyphen_values = true)]
        args: Vec<(String, f64)>,
        #[arg(long = "param", value_parser = parse_binding, allow_hyphen_values = true)]
        params: Vec<(String, f64)>,
        /// Evaluate the new g at these slopes.
        #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
        at: Vec<f64>,
        /// Run the residual sweep on the new pair.
        #[arg(long)]
        check: bool,
    },
}

#[derive(Debug, Args)]
pub struct JetArgs {
    #[arg(allow_hyphen_values = true)]
    pub expr: String,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    pub x0: f64,
    #[arg(long, default_value_t = 4)]
    pub order: usize,
}

#[derive(Debug, Args)]
pub struct ClairautArgs {
    /// h as an expression in m.
    #[arg(allow_hyphen_values = true)]
    pub h: String,
    /// Slope range `lo:hi`.
    #[arg(long, allow_hyphen_values = true, default_value = "-1:1")]
    pub m: String,
    #[arg(long, default_value_t = 21)]
    pub points: usize,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    /// Expression in x (ignored with --entry).
    #[arg(allow_hyphen_values = true)]
    pub expr: Option<String>,
    /// Catalog id, or the figure `b.sin-figure`.
    #[arg(long)]
    pub entry: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub domain: Option<String>,
    #[arg(long, default_value_t = 201)]
    pub points: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Coords {
    /// y = m x - d
    Md,
    /// y = m x + b
    Mb,
    /// u x + v y = 1
    Uv,
}

#[derive(Debug, Args)]
pub struct ConvertArgs {
    #[arg(allow_hyphen_values = true)]
    pub a: f64,
    #[arg(allow_hyphen_values = true)]
    pub b: f64,
    #[arg(long, value_enum, default_value_t = Coords::Md)]
    pub from: Coords,
    #[arg(long, value_enum)]
    pub to: Coords,
}

fn parse_binding(s: &str) -> std::result::Result<(String, f64), String> {
    let (name, value) = s.split_once('=').ok_or_else(|| format!("expected name=value, got `{s}`"))?;
    let v = crate::expr::parse(value)
        .and_then(|e| e.eval(0.0))
        .map_err(|e| format!("bad value in `{s}`: {e}"))?;
    Ok((name.trim().to_string(), v))
}

/// Parses `lo:hi` as an open interval; bracketed text is passed to
/// [`Interval::parse`]. Endpoints may be constant expressions.
pub fn parse_domain(text: &str) -> Result<Interval> {
    let t = text.trim();
    if t.starts_with(['(', '[']) {
        return Interval::parse(t, &[]);
    }
    let (lo, hi) = t
        .split_once(':')
        .ok_or_else(|| Error::InvalidParameter(format!("domain `{text}` is not of the form lo:hi")))?;
    Interval::parse(&format!("({lo},{hi})"), &[])
}

/// Runs the CLI on `args` (program name first), writing results to `out`
/// and notes and errors to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let cfg = Config { grid: cli.grid, quad_tol: cli.quad_tol, tol: cli.tol, format: cli.format, seed: cli.seed };
    let result = cfg.validate().and_then(|_| dispatch(&cli.command, &cfg));
    match result {
        Ok((report, code)) => {
            for n in &report.notes {
                let _ = writeln!(err, "note: {n}");
            }
            match report.write(cfg.format, out).and_then(|_| out.flush()) {
                // a reader that stops early (`| head`) is not an error
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => code,
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    EXIT_USAGE
                }
                Ok(()) => code,
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn dispatch(cmd: &Command, cfg: &Config) -> Result<(Report, i32)> {
    match cmd {
        Command::Transform(a) => cmd_transform(a, cfg).map(|r| (r, EXIT_OK)),
        Command::Verify(a) => cmd_verify(a, cfg),
        Command::Catalog(c) => cmd_catalog(c, cfg),
        Command::Jet(a) => cmd_jet(a).map(|r| (r, EXIT_OK)),
        Command::Clairaut(a) => cmd_clairaut(a).map(|r| (r, EXIT_OK)),
        Command::Plotdata(a) => cmd_plotdata(a).map(|r| (r, EXIT_OK)),
        Command::Convert(a) => cmd_convert(a).map(|r| (r, EXIT_OK)),
    }
}

/// True when `f'` is strictly monotone over a dense sample of the domain.
fn slope_is_monotone(f: &ScalarFunction) -> bool {
    let slopes: Option<Vec<f64>> = interior_samples(&f.domain(), 2000).into_iter().map(|x| f.slope(x).ok()).collect();
    let Some(s) = slopes else { return false };
    s.windows(2).all(|w| w[1] > w[0]) || s.windows(2).all(|w| w[1] < w[0])
}

fn slope_points(f: &ScalarFunction, args: &TransformArgs) -> Result<Vec<f64>> {
    if !args.at.is_empty() {
        return Ok(args.at.clone());
    }
    let range = range_of_derivative(f, 2000)?;
    Ok(interior_samples(&range, args.points.max(1)))
}

fn discrete(f: &ScalarFunction, ms: &[f64], ext: Extremum, cfg: &Config) -> Result<Vec<(f64, f64)>> {
    let dom = f.domain();
    if !dom.is_bounded() {
        return Err(Error::domain(format!(
            "the {} method needs a bounded --domain, got {dom}",
            if ext == Extremum::Sup { "sup" } else { "inf" }
        )));
    }
    let xs: Vec<f64> = if dom.lo_closed && dom.hi_closed {
        (0..cfg.grid).map(|i| dom.lo + dom.width() * i as f64 / (cfg.grid - 1) as f64).collect()
    } else {
        interior_samples(&dom, cfg.grid)
    };
    let fs = xs.iter().map(|&x| f.eval(x)).collect::<Result<Vec<f64>>>()?;
    Ok(conjugate_samples(&xs, &fs, ms, ext, Strategy::Auto).into_iter().map(|p| (p.m, p.g)).collect())
}

pub fn cmd_transform(args: &TransformArgs, cfg: &Config) -> Result<Report> {
    let dom = parse_domain(&args.domain)?;
    let f = ScalarFunction::from_expr(&args.expr, dom)?;
    if args.method == Method::Parametric {
        let xs = if args.at.is_empty() { interior_samples(&dom, args.points.max(1)) } else { args.at.clone() };
        let sample = parametric_dual(&f, &xs);
        let mut r = Report::new(&["x", "m", "d"]);
        for &(x, m, d) in &sample.points {
            r.push(vec![x.into(), m.into(), d.into()]);
        }
        for (x, why) in &sample.skipped {
            r.note(format!("skipped x = {}: {why}", num(*x)));
        }
        if let Some(&(_, m0, d0)) = sample.points.first() {
            if sample.points.len() > 1 && sample.points.iter().all(|p| p.1 == m0) {
                r.note(format!(
                    "every tangent has slope {}: f is linear and its dual is the single point ({}, {})",
                    num(m0),
                    num(m0),
                    num(d0)
                ));
            }
        }
        return Ok(r);
    }
    let method = match args.method {
        Method::Auto if slope_is_monotone(&f) => Method::Integral,
        Method::Auto => Method::Sup,
        m => m,
    };
    let explicit = args.method == Method::Auto && method == Method::Integral;
    let ms = slope_points(&f, args)?;
    let rows: Vec<(f64, f64)> = match method {
        Method::Sup => discrete(&f, &ms, Extremum::Sup, cfg)?,
        Method::Inf => discrete(&f, &ms, Extremum::Inf, cfg)?,
        _ if explicit => {
            // x(m) solves f'(x) = m; then g = m x - f(x)
            let fp = f.derivative_fn();
            ms.iter()
                .map(|&m| {
                    let x = solve_monotone(&fp, m)?;
                    Ok((m, m * x - f.eval(x)?))
                })
                .collect::<Result<_>>()?
        }
        _ => {
            if !slope_is_monotone(&f) {
                return Err(Error::domain("the integral method needs f' to be monotone on the domain"));
            }
            let fp = f.derivative_fn();
            let xs = interior_samples(&dom, 3);
            let x0 = xs[1];
            let m0 = f.slope(x0)?;
            let g0 = x0 * m0 - f.eval(x0)?;
            let inv = fp.inverse_fn(range_of_derivative(&f, 2000)?);
            ms.iter()
                .map(|&m| Ok((m, integral_transform_tol(&inv, m0, g0, m, cfg.quad_tol)?)))
                .collect::<Result<_>>()?
        }
    };
    let mut r = Report::new(&["m", "g"]);
    for (m, g) in rows {
        r.push(vec![m.into(), g.into()]);
    }
    let used = match method {
        Method::Sup => "sup",
        Method::Inf => "inf",
        _ if explicit => "explicit",
        _ => "integral",
    };
    r.note(format!("method: {used}"));
    Ok(r)
}

pub fn cmd_verify(args: &VerifyArgs, cfg: &Config) -> Result<(Report, i32)> {
    let mut filter = match &args.filter {
        Some(t) => Filter::parse(t)?,
        None => Filter::default(),
    };
    if args.part.is_some() {
        filter.part = args.part.clone();
    }
    if args.id.is_some() {
        filter.id = args.id.clone();
    }
    let vcfg = VerifyConfig {
        n_points: args.points,
        pass_tol: cfg.tol,
        draws: args.draws,
        seed: cfg.seed,
        theorem1: args.theorem1,
        grid: cfg.grid,
        ..VerifyConfig::default()
    };
    let reports = verify_all(&filter, &vcfg);
    if reports.is_empty() {
        return Err(Error::NotFound("no catalog entry matches the filter".into()));
    }
    let mut r = Report::new(&[
        "id",
        "status",
        "max_abs_residual",
        "max_scaled_residual",
        "m_domain_match",
        "m_domain_stored",
        "m_domain_observed",
        "diagnostics",
    ]);
    for v in &reports {
        let status = match v.status {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        };
        r.push(vec![
            v.entry_id.as_str().into(),
            status.into(),
            v.max_abs_residual.into(),
            v.max_scaled_residual.into(),
            v.m_domain_match.into(),
            v.m_domain_stored.as_str().into(),
            v.m_domain_observed.clone().unwrap_or_default().into(),
            v.diagnostics.join("; ").into(),
        ]);
    }
    r.json = Some(serde_json::to_value(&reports).map_err(|e| Error::NonFinite(e.to_string()))?);
    let count = |s: Status| reports.iter().filter(|v| v.status == s).count();
    let failed = count(Status::Fail);
    r.note(format!("{} passed, {failed} failed, {} skipped", count(Status::Pass), count(Status::Skipped)));
    Ok((r, if failed > 0 { EXIT_VERIFY_FAILED } else { EXIT_OK }))
}

fn cmd_catalog(cmd: &CatalogCommand, cfg: &Config) -> Result<(Report, i32)> {
    match cmd {
        CatalogCommand::List { part } => {
            let mut r = Report::new(&["id", "part", "title", "verified"]);
            for rec in catalog::records().iter().filter(|rec| part.as_ref().map_or(true, |p| &rec.part == p)) {
                r.push(vec![rec.id.as_str().into(), rec.part.as_str().into(), rec.title.as_str().into(), rec.verified.into()]);
            }
            Ok((r, EXIT_OK))
        }
        CatalogCommand::Show { id, params } => {
            let rec = catalog::record(id)?;
            if !params.is_empty() {
                // surface bad names and values early
                rec.instantiate(&with_defaults(rec, params))?;
            }
            let mut r = Report::new(&["field", "value"]);
            let mut add = |k: &str, v: String| r.push(vec![k.into(), v.into()]);
            add("id", rec.id.clone());
            add("title", rec.title.clone());
            add("f", rec.f.describe());
            add("g", rec.g.describe());
            add("x_domain", rec.x_domain.clone());
            add("m_domain", rec.m_domain.clone());
            for p in &rec.parameters {
                let v = params.iter().find(|(n, _)| n == &p.name).map_or(p.default, |(_, v)| *v);
                add(&format!("parameter {}", p.name), num(v));
            }
            if !rec.notes.is_empty() {
                add("notes", rec.notes.clone());
            }
            add("verified", rec.verified.to_string());
            for (k, v) in [("printed_f", &rec.printed_f), ("printed_g", &rec.printed_g), ("printed_m_domain", &rec.printed_m_domain), ("audit", &rec.audit)] {
                if let Some(v) = v {
                    add(k, v.clone());
                }
            }
            if !rec.verified {
                r.note("unverified: special function out of scope");
            }
            r.json = Some(serde_json::to_value(rec).map_err(|e| Error::NonFinite(e.to_string()))?);
            Ok((r, EXIT_OK))
        }
        CatalogCommand::Apply { property, id, args, params, at, check } => {
            let rec = catalog::record(id)?;
            let base = rec.instantiate(&with_defaults(rec, params))?;
            let pair = apply_property(&base, &Property::from_id(property, args)?)?;
            let mut r = Report::new(&["m", "g"]);
            for &m in at {
                r.push(vec![m.into(), pair.g.eval(m)?.into()]);
            }
            r.note(format!("entry: {}", pair.entry_id));
            r.note(format!("f(x) = {} on {}", pair.f.label(), pair.x_domain));
            r.note(format!("g(m) = {} on {}", pair.g.label(), pair.m_domain));
            let mut code = EXIT_OK;
            if *check {
                let v = crate::verify::residual_sweep_with(
                    &pair,
                    &VerifyConfig { pass_tol: cfg.tol, seed: cfg.seed, ..VerifyConfig::default() },
                );
                r.note(format!("residual sweep: {:?}, max residual {}", v.status, num(v.max_abs_residual)));
                for d in &v.diagnostics {
                    r.note(d.clone());
                }
                if v.status == Status::Fail {
                    code = EXIT_VERIFY_FAILED;
                }
            }
            Ok((r, code))
        }
    }
}

fn with_defaults(rec: &catalog::EntryRecord, given: &[(String, f64)]) -> Vec<(String, f64)> {
    let mut values = rec.defaults();
    for (name, v) in given {
        match values.iter_mut().find(|(n, _)| n == name) {
            Some(slot) => slot.1 = *v,
            None => values.push((name.clone(), *v)),
        }
    }
    values
}

pub fn cmd_jet(args: &JetArgs) -> Result<Report> {
    let f = ScalarFunction::from_expr(&args.expr, Interval::real_line())?;
    let fj = f.jet(args.x0, args.order)?;
    let gj = dual_jet(&fj, args.order)?;
    let mut r = Report::new(&["k", "f_coeff", "g_coeff"]);
    for k in 0..=args.order {
        r.push(vec![k.into(), fj.coeffs[k].into(), gj.coeffs[k].into()]);
    }
    r.note(format!("f expanded at x0 = {}, g at m0 = {}", num(fj.basepoint), num(gj.basepoint)));
    r.json = Some(json!({
        "x0": fj.basepoint,
        "f_coeffs": fj.coeffs,
        "m0": gj.basepoint,
        "g_coeffs": gj.coeffs,
    }));
    Ok(r)
}

pub fn cmd_clairaut(args: &ClairautArgs) -> Result<Report> {
    let range = parse_domain(&args.m)?;
    let h = ScalarFunction::from_expr(&args.h, Interval::real_line())?;
    let n = args.points.max(2);
    let ms: Vec<f64> = if range.is_bounded() {
        (0..n).map(|i| range.lo + range.width() * i as f64 / (n - 1) as f64).collect()
    } else {
        interior_samples(&range, n)
    };
    let sol = clairaut_singular_solution(&h, &ms)?;
    let mut r = Report::new(&["x", "m", "y"]);
    for &(x, m, y) in &sol.envelope.points {
        r.push(vec![x.into(), m.into(), y.into()]);
    }
    r.note(format!("general solution: {}", sol.general_solution));
    if sol.degenerate {
        r.note("h is linear: the envelope is a single point");
    }
    Ok(r)
}

pub fn cmd_plotdata(args: &PlotArgs) -> Result<Report> {
    let f = match (&args.entry, &args.expr) {
        (Some(id), _) if id == "b.sin-figure" => {
            let pi2 = std::f64::consts::FRAC_PI_2;
            ScalarFunction::from_expr("sin(x)", Interval::open(-pi2, pi2))?
        }
        (Some(id), _) => catalog::lookup(id)?.f,
        (None, Some(e)) => ScalarFunction::from_expr(e, Interval::real_line())?,
        (None, None) => return Err(Error::InvalidParameter("give an expression or --entry".into())),
    };
    let f = match &args.domain {
        Some(d) => f.with_domain(parse_domain(d)?),
        None => f,
    };
    let xs = interior_samples(&f.domain(), args.points.max(2));
    let sample = parametric_dual(&f, &xs);
    let mut r = Report::new(&["branch", "x", "y", "m", "d"]);
    let mut branch = 0usize;
    let mut last_sign = 0.0;
    for &(x, m, d) in &sample.points {
        let sign = f.jet(x, 2).map_or(0.0, |j| j.coeffs[2].signum());
        if sign != 0.0 && last_sign != 0.0 && sign != last_sign {
            branch += 1;
        }
        if sign != 0.0 {
            last_sign = sign;
        }
        let kind = if last_sign > 0.0 { "convex" } else if last_sign < 0.0 { "concave" } else { "linear" };
        r.push(vec![format!("{branch}:{kind}").into(), x.into(), (m * x - d).into(), m.into(), d.into()]);
    }
    for (x, why) in &sample.skipped {
        r.note(format!("skipped x = {}: {why}", num(*x)));
    }
    Ok(r)
}

pub fn cmd_convert(args: &ConvertArgs) -> Result<Report> {
    let (m, d) = match args.from {
        Coords::Md => (args.a, args.b),
        Coords::Mb => (args.a, -args.b),
        Coords::Uv => {
            if args.b == 0.0 {
                return Err(Error::DivisionByZero("v = 0 is a vertical line".into()));
            }
            (-args.a / args.b, 1.0 / args.b)
        }
    };
    let (names, (p, q)) = match args.to {
        Coords::Md => (["m", "d"], (m, d)),
        Coords::Mb => (["m", "b"], convert_dual_coordinates((m, d), DualCoordinates::Mb)?),
        Coords::Uv => (["u", "v"], convert_dual_coordinates((m, d), DualCoordinates::Uv)?),
    };
    let mut r = Report::new(&names);
    r.push(vec![p.into(), q.into()]);
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("legendre").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn domains() {
        assert_eq!(parse_domain("-10:10").unwrap(), Interval::open(-10.0, 10.0));
        assert_eq!(parse_domain("0:inf").unwrap(), Interval::open(0.0, f64::INFINITY));
        assert_eq!(parse_domain("[0,pi]").unwrap(), Interval::closed(0.0, std::f64::consts::PI));
        assert!(parse_domain("0..1").is_err());
    }

    #[test]
    fn sup_of_exp() {
        let (code, out, _) = call(&["--format", "csv", "transform", "exp(x)", "--domain=-10:10", "--method=sup", "--at", "1.0"]);
        assert_eq!(code, 0);
        let g: f64 = out.lines().nth(1).unwrap().split(',').nth(1).unwrap().parse().unwrap();
        assert!((g + 1.0).abs() < 1e-4, "{g}");
    }

    #[test]
    fn auto_and_integral_agree() {
        let (_, a, err) = call(&["--format", "csv", "transform", "exp(x)", "--at", "0.5,2"]);
        assert!(err.contains("method: explicit"));
        let (_, b, _) = call(&["--format", "csv", "transform", "exp(x)", "--method", "integral", "--at", "0.5,2"]);
        let vals = |s: &str| -> Vec<f64> { s.lines().skip(1).map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect() };
        for ((m, x), y) in [0.5f64, 2.0].iter().zip(vals(&a)).zip(vals(&b)) {
            let exact = m * m.ln() - m;
            assert!((x - exact).abs() < 1e-12 && (y - exact).abs() < 1e-9, "{x} {y} {exact}");
        }
    }

    #[test]
    fn parametric_line_warns() {
        let (code, _, err) = call(&["transform", "x", "--method=parametric"]);
        assert_eq!(code, 0);
        assert!(err.contains("single point"), "{err}");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(call(&["transform", "exp(x", "--at", "1"]).0, EXIT_USAGE);
        assert_eq!(call(&["transform", "exp(x)", "--method=sup", "--at", "1"]).0, EXIT_USAGE);
        assert_eq!(call(&["nonsense"]).0, EXIT_USAGE);
        assert_eq!(call(&["--grid", "1", "catalog", "list"]).0, EXIT_USAGE);
        assert_eq!(call(&["verify", "--id", "c.ex"]).0, EXIT_OK);
        assert_eq!(call(&["verify", "--id", "c.ex", "--tol", "1e-30"]).0, EXIT_VERIFY_FAILED);
        assert_eq!(call(&["catalog", "show", "no.such"]).0, EXIT_USAGE);
    }

    #[test]
    fn jet_example() {
        let (code, out, _) = call(&["--format", "json", "jet", "x*sin(x)", "--x0", "0", "--order", "4"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        let g: Vec<f64> = serde_json::from_value(v["g_coeffs"].clone()).unwrap();
        let want = [0.0, 0.0, 0.25, 0.0, 1.0 / 96.0];
        assert!(g.iter().zip(want).all(|(a, b)| (a - b).abs() < 1e-12), "{g:?}");
    }

    #[test]
    fn catalog_show_and_apply() {
        let (code, out, _) = call(&["catalog", "show", "c.ex"]);
        assert_eq!(code, 0);
        assert!(out.contains("exp(x)") && out.contains("m*ln(m)-m"), "{out}");
        let (code, out, err) = call(&["--format", "csv", "catalog", "apply", "scaleout", "c.ex", "--arg", "a=3", "--at", "3", "--check"]);
        assert_eq!(code, 0, "{err}");
        // 3 g(m/3) at m = 3 is -3
        assert_eq!(out.lines().nth(1).unwrap(), "3.0,-3.0");
    }

    #[test]
    fn sine_figure_has_two_branches() {
        let (code, out, _) = call(&["--format", "csv", "plotdata", "--entry", "b.sin-figure", "--points", "50"]);
        assert_eq!(code, 0);
        let branches: std::collections::BTreeSet<&str> = out.lines().skip(1).map(|l| l.split(',').next().unwrap()).collect();
        assert_eq!(branches.into_iter().collect::<Vec<_>>(), ["0:convex", "1:concave"]);
    }

    #[test]
    fn convert_round_trip() {
        let (_, out, _) = call(&["--format", "csv", "convert", "2", "4", "--to", "uv"]);
        assert_eq!(out, "u,v\n-0.5,0.25\n");
        let (_, out, _) = call(&["--format", "csv", "convert", "--from", "uv", "--to", "md", "--", "-0.5", "0.25"]);
        assert_eq!(out, "m,d\n2.0,4.0\n");
    }
}

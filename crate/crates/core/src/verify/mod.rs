//! Checks that a pair really is a Legendre pair: the residual
//! `x f'(x) - f(x) - g(f'(x))` vanishes on the x-domain, the m-domain is the
//! range of `f'`, and the slope, curvature, involution and critical-point
//! relations hold.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::catalog::{self, id_hash, EntryRecord};
use crate::error::{Error, Result};
use crate::funcspace::{interior_samples, range_of_derivative, Interval, TransformPair};
use crate::jets::CURVATURE_EPS;
use crate::transform::{conjugate_samples, Extremum, Strategy};

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyConfig {
    pub n_points: usize,
    /// Absolute residual tolerance for closed-form entries.
    pub pass_tol: f64,
    /// Absolute residual tolerance for entries whose f is a quadrature.
    pub quadrature_pass_tol: f64,
    /// Samples used to refine the range of f'.
    pub range_samples: usize,
    /// Agreement required between observed and stored m-domain endpoints.
    pub domain_tol: f64,
    /// Random parameter draws per parametric entry, besides the defaults.
    pub draws: usize,
    pub seed: u64,
    /// Also run the slope, curvature, involution and critical-point checks.
    pub theorem1: bool,
    pub grid: usize,
    pub curvature_eps: f64,
    pub curvature_tol: f64,
    pub slope_tol: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            n_points: 1000,
            pass_tol: 1e-8,
            quadrature_pass_tol: 1e-6,
            range_samples: 10_000,
            domain_tol: 1e-6,
            draws: 3,
            seed: 0,
            theorem1: false,
            grid: 4096,
            curvature_eps: CURVATURE_EPS,
            curvature_tol: 1e-8,
            slope_tol: 1e-5,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// Deviations in the Theorem 1 relations; `None` when not applicable.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Theorem1Report {
    /// Max of `|g'(f'(x)) - x| / max(1, |x|)`.
    pub slope_dev: Option<f64>,
    /// Max of `|g''(m) f''(x) - 1|`.
    pub curvature_dev: Option<f64>,
    /// Max of `|f(x) - (double transform)(x)|` over interior probes.
    pub involution_dev: Option<f64>,
    /// `max(|f'(g'(0))|, |f(g'(0)) + g(0)|)` when 0 is inside the m-domain.
    pub critical_point_dev: Option<f64>,
    /// Points dropped because `|f''| < eps`.
    pub singular_points: usize,
    /// Points left out of the curvature check because rounding `m = f'(x)`
    /// alone moves `g''(m)` by more than a tenth of the tolerance.
    pub ill_conditioned: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub entry_id: String,
    pub max_abs_residual: f64,
    /// Max of `|r| / max(1, |x f'|, |f|, |g|)`: the residual relative to the
    /// terms it cancels, which separates rounding from formula errors.
    pub max_scaled_residual: f64,
    /// Point where the largest residual occurred.
    pub worst_x: Option<f64>,
    pub n_points: usize,
    pub m_domain_match: bool,
    pub m_domain_stored: String,
    pub m_domain_observed: Option<String>,
    pub curvature_check_max_dev: Option<f64>,
    pub involution_max_dev: Option<f64>,
    pub theorem1: Option<Theorem1Report>,
    /// Parameter sets checked (defaults first).
    pub parameter_sets: Vec<Vec<(String, f64)>>,
    pub status: Status,
    pub diagnostics: Vec<String>,
}

impl VerificationReport {
    fn skipped(id: &str, stored: String, why: String) -> VerificationReport {
        VerificationReport {
            entry_id: id.to_string(),
            max_abs_residual: 0.0,
            max_scaled_residual: 0.0,
            worst_x: None,
            n_points: 0,
            m_domain_match: false,
            m_domain_stored: stored,
            m_domain_observed: None,
            curvature_check_max_dev: None,
            involution_max_dev: None,
            theorem1: None,
            parameter_sets: Vec::new(),
            status: Status::Skipped,
            diagnostics: vec![why],
        }
    }

    /// Folds another report on the same entry into this one, keeping worst
    /// values.
    fn absorb(&mut self, other: VerificationReport) {
        if other.max_abs_residual > self.max_abs_residual || other.max_abs_residual.is_nan() {
            self.max_abs_residual = other.max_abs_residual;
            self.worst_x = other.worst_x;
        }
        self.max_scaled_residual = self.max_scaled_residual.max(other.max_scaled_residual);
        self.n_points += other.n_points;
        self.m_domain_match &= other.m_domain_match;
        if !other.m_domain_match {
            self.m_domain_observed = other.m_domain_observed;
            self.m_domain_stored = other.m_domain_stored;
        }
        self.parameter_sets.extend(other.parameter_sets);
        if other.status == Status::Fail {
            self.status = Status::Fail;
        }
        self.diagnostics.extend(other.diagnostics);
    }
}

/// Observed and stored endpoints agree: both unbounded (a sample beyond
/// 1e6 counts) or within `tol`, relative when large.
fn endpoint_match(observed: f64, stored: f64, tol: f64) -> bool {
    if stored.is_infinite() {
        return observed == stored || (observed.abs() > 1e6 && observed.signum() == stored.signum());
    }
    observed.is_finite() && (observed - stored).abs() <= tol * stored.abs().max(1.0)
}

pub fn domains_match(observed: &Interval, stored: &Interval, tol: f64) -> bool {
    endpoint_match(observed.lo, stored.lo, tol) && endpoint_match(observed.hi, stored.hi, tol)
}

/// Residual sweep with the default configuration.
pub fn residual_sweep(pair: &TransformPair, n: usize) -> VerificationReport {
    residual_sweep_with(pair, &VerifyConfig { n_points: n, ..VerifyConfig::default() })
}

pub fn residual_sweep_with(pair: &TransformPair, cfg: &VerifyConfig) -> VerificationReport {
    let stored = pair.m_domain.to_string();
    if !pair.f.is_supported() || !pair.g.is_supported() {
        return VerificationReport::skipped(
            &pair.entry_id,
            stored,
            "unverified: special function out of scope".into(),
        );
    }
    let tol = if pair.quadrature_backed { cfg.quadrature_pass_tol } else { cfg.pass_tol };
    let mut diagnostics = Vec::new();
    let mut worst = (0.0f64, None);
    let mut scaled = 0.0f64;
    let mut failures = 0usize;
    let xs = interior_samples(&pair.x_domain, cfg.n_points);
    for &x in &xs {
        let r = (|| -> Result<(f64, f64)> {
            let j = pair.f.jet(x, 1)?;
            let m = j.coeffs[1];
            let g = pair.g.eval(m)?;
            let size = 1f64.max((x * m).abs()).max(j.coeffs[0].abs()).max(g.abs());
            Ok((x * m - j.coeffs[0] - g, size))
        })();
        match r {
            Ok((r, size)) => {
                if r.abs() > worst.0 || r.is_nan() {
                    worst = (r.abs(), Some(x));
                }
                scaled = scaled.max(r.abs() / size);
            }
            Err(e) => {
                failures += 1;
                if failures <= 3 {
                    diagnostics.push(format!("x = {x}: {e}"));
                }
            }
        }
    }
    if failures > 3 {
        diagnostics.push(format!("{} more points failed", failures - 3));
    }
    let (m_domain_match, observed) = match range_of_derivative(&pair.f, cfg.range_samples) {
        Ok(r) => (domains_match(&r, &pair.m_domain, cfg.domain_tol), Some(r.to_string())),
        Err(e) => {
            diagnostics.push(format!("range of f': {e}"));
            (false, None)
        }
    };
    if !m_domain_match {
        diagnostics.push(format!(
            "m-domain: stored {stored}, range of f' is {}",
            observed.as_deref().unwrap_or("unavailable")
        ));
    }
    if worst.0 > tol || worst.0.is_nan() {
        diagnostics.push(format!("max residual {:e} exceeds {tol:e}", worst.0));
    }
    let ok = failures == 0 && m_domain_match && worst.0 <= tol;
    VerificationReport {
        entry_id: pair.entry_id.clone(),
        max_abs_residual: worst.0,
        max_scaled_residual: scaled,
        worst_x: worst.1,
        n_points: xs.len() - failures,
        m_domain_match,
        m_domain_stored: stored,
        m_domain_observed: observed,
        curvature_check_max_dev: None,
        involution_max_dev: None,
        theorem1: None,
        parameter_sets: vec![pair.parameters.iter().map(|p| (p.name.clone(), p.value)).collect()],
        status: if ok { Status::Pass } else { Status::Fail },
        diagnostics,
    }
}

/// Sign of `f''` over the samples: 1 convex, -1 concave, 0 mixed.
fn curvature_sign(pair: &TransformPair, xs: &[f64]) -> f64 {
    let mut sign = 0.0;
    for &x in xs {
        let Ok(j) = pair.f.jet(x, 2) else { return 0.0 };
        let s = j.coeffs[2].signum();
        if j.coeffs[2] == 0.0 {
            continue;
        }
        if sign == 0.0 {
            sign = s;
        } else if sign != s {
            return 0.0;
        }
    }
    sign
}

/// Slope duality, curvature reciprocity, involution and the
/// critical-point correspondence on `n` interior points.
pub fn theorem1_checks(pair: &TransformPair, n: usize) -> Theorem1Report {
    theorem1_checks_with(pair, &VerifyConfig { n_points: n, ..VerifyConfig::default() })
}

pub fn theorem1_checks_with(pair: &TransformPair, cfg: &VerifyConfig) -> Theorem1Report {
    let mut rep = Theorem1Report::default();
    let all = interior_samples(&pair.x_domain, cfg.n_points);
    // the outer tenth on each side is dominated by conditioning at the ends
    let xs = &all[all.len() / 10..all.len() - all.len() / 10];
    let mut slope: Option<f64> = None;
    let mut curv: Option<f64> = None;
    for &x in xs {
        let Ok(fj) = pair.f.jet(x, 2) else { continue };
        let m = fj.coeffs[1];
        let f2 = 2.0 * fj.coeffs[2];
        if f2.abs() < cfg.curvature_eps {
            rep.singular_points += 1;
            continue;
        }
        let Ok(gj) = pair.g.jet(m, 3) else { continue };
        let sd = (gj.coeffs[1] - x).abs() / x.abs().max(1.0);
        slope = Some(slope.map_or(sd, |s| s.max(sd)));
        let g2 = 2.0 * gj.coeffs[2];
        let g3 = 6.0 * gj.coeffs[3];
        if (g3 / g2).abs() * m.abs().max(1.0) * f64::EPSILON > 0.1 * cfg.curvature_tol {
            rep.ill_conditioned += 1;
            continue;
        }
        let cd = (g2 * f2 - 1.0).abs();
        curv = Some(curv.map_or(cd, |c| c.max(cd)));
    }
    rep.slope_dev = slope;
    rep.curvature_dev = curv;

    // involution on the sampled dual: g at m = f'(x) over a grid, then the
    // discrete transform back at interior probes
    let sign = curvature_sign(pair, xs);
    if sign != 0.0 {
        let grid = interior_samples(&pair.x_domain, cfg.grid);
        let (ms, gs): (Vec<f64>, Vec<f64>) = grid
            .iter()
            .filter_map(|&x| {
                let m = pair.f.slope(x).ok()?;
                Some((m, pair.g.eval(m).ok()?))
            })
            .filter(|(m, g)| m.is_finite() && g.is_finite())
            .unzip();
        let mut order: Vec<usize> = (0..ms.len()).collect();
        order.sort_by(|&a, &b| ms[a].total_cmp(&ms[b]));
        order.dedup_by(|a, b| ms[*a] == ms[*b]);
        let ms: Vec<f64> = order.iter().map(|&i| ms[i]).collect();
        let gs: Vec<f64> = order.iter().map(|&i| gs[i]).collect();
        if ms.len() > 8 {
            let lo = grid[grid.len() / 10];
            let hi = grid[grid.len() - 1 - grid.len() / 10];
            let probes: Vec<f64> = (0..100).map(|i| lo + (hi - lo) * (i as f64 + 0.5) / 100.0).collect();
            let ext = if sign > 0.0 { Extremum::Sup } else { Extremum::Inf };
            let back = conjugate_samples(&ms, &gs, &probes, ext, Strategy::Auto);
            let dev = back
                .iter()
                .filter_map(|p| pair.f.eval(p.m).ok().map(|f| (f - p.g).abs()))
                .fold(0.0f64, f64::max);
            rep.involution_dev = Some(dev);
        }
    }

    if pair.m_domain.contains_interior(0.0) {
        let r = (|| -> Result<f64> {
            let gj = pair.g.jet(0.0, 1)?;
            let x = gj.coeffs[1];
            let fj = pair.f.jet(x, 1)?;
            Ok(fj.coeffs[1].abs().max((fj.coeffs[0] + gj.coeffs[0]).abs()))
        })();
        rep.critical_point_dev = r.ok();
    }
    rep
}

/// Entry selection for [`verify_all`].
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Filter {
    pub part: Option<String>,
    /// Exact id, or a prefix when it ends in `*`.
    pub id: Option<String>,
}

impl Filter {
    /// Parses `part=c`, `id=e.erf.a`, `id=c.*`, or an empty string; terms
    /// may be joined with commas.
    pub fn parse(text: &str) -> Result<Filter> {
        let mut f = Filter::default();
        for term in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            match term.split_once('=') {
                Some(("part", v)) => f.part = Some(v.to_string()),
                Some(("id", v)) => f.id = Some(v.to_string()),
                _ => return Err(Error::InvalidParameter(format!("bad filter term `{term}`; use part=X or id=Y"))),
            }
        }
        Ok(f)
    }

    pub fn matches(&self, r: &EntryRecord) -> bool {
        self.part.as_ref().map_or(true, |p| &r.part == p)
            && self.id.as_ref().map_or(true, |id| match id.strip_suffix('*') {
                Some(prefix) => r.id.starts_with(prefix),
                None => &r.id == id,
            })
    }
}

/// Verifies one catalog record at its defaults and `cfg.draws` random
/// admissible parameter sets.
pub fn verify_record(r: &EntryRecord, cfg: &VerifyConfig) -> VerificationReport {
    if !r.verified {
        return VerificationReport::skipped(&r.id, r.m_domain.clone(), "unverified: special function out of scope".into());
    }
    let mut sets = vec![r.defaults()];
    if !r.parameters.is_empty() {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ id_hash(&r.id));
        sets.extend((0..cfg.draws).map(|_| r.draw(&mut rng)));
    }
    let mut report: Option<VerificationReport> = None;
    for (k, values) in sets.iter().enumerate() {
        let one = match r.instantiate(values) {
            Ok(pair) => {
                let mut rep = residual_sweep_with(&pair, cfg);
                if cfg.theorem1 && k == 0 {
                    let t = theorem1_checks_with(&pair, cfg);
                    rep.curvature_check_max_dev = t.curvature_dev;
                    rep.involution_max_dev = t.involution_dev;
                    if t.curvature_dev.is_some_and(|d| d > cfg.curvature_tol) {
                        rep.status = Status::Fail;
                        rep.diagnostics.push(format!("curvature reciprocity off by {:e}", t.curvature_dev.unwrap_or(0.0)));
                    }
                    if t.slope_dev.is_some_and(|d| d > cfg.slope_tol) {
                        rep.status = Status::Fail;
                        rep.diagnostics.push(format!("slope duality off by {:e}", t.slope_dev.unwrap_or(0.0)));
                    }
                    rep.theorem1 = Some(t);
                }
                rep
            }
            Err(e) => {
                let mut rep = VerificationReport::skipped(&r.id, r.m_domain.clone(), format!("parameters {values:?}: {e}"));
                rep.status = Status::Fail;
                rep.parameter_sets = vec![values.clone()];
                rep
            }
        };
        match report.as_mut() {
            None => report = Some(one),
            Some(acc) => acc.absorb(one),
        }
    }
    report.expect("at least the default parameter set")
}

/// One report per matching catalog entry, in catalog order.
pub fn verify_all(filter: &Filter, cfg: &VerifyConfig) -> Vec<VerificationReport> {
    catalog::records().iter().filter(|r| filter.matches(r)).map(|r| verify_record(r, cfg)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::lookup;
    use crate::funcspace::ScalarFunction;

    #[test]
    fn exp_pair_passes() {
        let rep = residual_sweep(&lookup("c.ex").unwrap(), 1000);
        assert_eq!(rep.status, Status::Pass, "{:?}", rep.diagnostics);
        assert!(rep.max_abs_residual <= 1e-10);
    }

    #[test]
    fn line_to_point_pair() {
        let f = ScalarFunction::from_expr("x", Interval::real_line()).unwrap();
        let g = ScalarFunction::from_expr("0", Interval::point(1.0)).unwrap();
        let rep = residual_sweep(&TransformPair::new("line", f, g), 100);
        assert_eq!(rep.max_abs_residual, 0.0);
        assert_eq!(rep.status, Status::Pass);
    }

    #[test]
    fn wrong_pair_fails() {
        let f = ScalarFunction::from_expr("exp(x)", Interval::real_line()).unwrap();
        let g = ScalarFunction::from_expr("m*ln(m)", Interval::open(0.0, f64::INFINITY)).unwrap();
        let rep = residual_sweep(&TransformPair::new("wrong", f, g), 1000);
        assert_eq!(rep.status, Status::Fail);
        // residual is -m, largest at the right end of the sample
        let x = rep.worst_x.unwrap();
        assert!((rep.max_abs_residual - x.exp()).abs() < 1e-9 * x.exp());
    }

    #[test]
    fn theorem1_on_power_and_quadratic() {
        let t = theorem1_checks(&lookup("b.xpp").unwrap(), 200);
        assert!(t.slope_dev.unwrap() < 1e-8 && t.curvature_dev.unwrap() < 1e-8, "{t:?}");
        let t = theorem1_checks(&lookup("b.quadratic").unwrap(), 200);
        assert!(t.curvature_dev.unwrap() < 1e-15, "{t:?}");
        assert!(t.critical_point_dev.unwrap() < 1e-14);
        let t = theorem1_checks(&lookup("c.cosh").unwrap(), 200);
        assert!(t.critical_point_dev.unwrap() < 1e-14, "{t:?}");
    }

    #[test]
    fn stubs_are_skipped() {
        let reps = verify_all(&Filter::parse("id=e.elliptic_F").unwrap(), &VerifyConfig::default());
        assert_eq!(reps.len(), 1);
        assert_eq!(reps[0].status, Status::Skipped);
    }

    #[test]
    fn filters() {
        let f = Filter::parse("part=c,id=c.l*").unwrap();
        assert!(f.matches(catalog::record("c.ln").unwrap()));
        assert!(!f.matches(catalog::record("c.ex").unwrap()));
        assert!(Filter::parse("color=red").is_err());
    }
}

use serde::Serialize;

use super::{Interval, ScalarFunction};
use crate::error::{Error, Result};

/// Points `(x, m, d)` of the parametric dual curve `m = f'(x)`,
/// `d = x f'(x) - f(x)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DualCurveSample {
    pub points: Vec<(f64, f64, f64)>,
    pub source_label: String,
    /// Grid points that could not be evaluated, with the reason.
    pub skipped: Vec<(f64, String)>,
}

fn softplus(t: f64) -> f64 {
    if t > 30.0 {
        t
    } else {
        t.exp().ln_1p()
    }
}

/// `n` points strictly inside `domain`: Chebyshev nodes on bounded domains
/// (pulled in by 1e-4 of the width), uniform on [-8, 8] for the real line,
/// and `a ± softplus(t)` for half-lines.
pub fn interior_samples(domain: &Interval, n: usize) -> Vec<f64> {
    let Interval { lo, hi, .. } = *domain;
    if domain.is_point() {
        return vec![lo; n.max(1)];
    }
    let t = |i: usize| -8.0 + 16.0 * (i as f64 + 0.5) / n as f64;
    match (lo.is_finite(), hi.is_finite()) {
        (true, true) => {
            let delta = 1e-4 * (hi - lo);
            let (a, b) = (lo + delta, hi - delta);
            (0..n)
                .map(|i| {
                    let c = (std::f64::consts::PI * (2 * (n - 1 - i) + 1) as f64 / (2 * n) as f64).cos();
                    (0.5 * (a + b) + 0.5 * (b - a) * c).clamp(a, b)
                })
                .collect()
        }
        (true, false) => (0..n).map(|i| lo + softplus(t(i))).collect(),
        (false, true) => (0..n).map(|i| hi - softplus(-t(i))).collect(),
        (false, false) => (0..n).map(t).collect(),
    }
}

/// Interval hull of `h` over `domain`, refined toward each end of the
/// domain. Non-finite values met while approaching an end count as an
/// unbounded hull in the direction the values were heading.
pub fn hull_of(h: &dyn Fn(f64) -> Result<f64>, domain: &Interval, n: usize) -> Result<Interval> {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    let mut take = |v: f64| {
        lo = lo.min(v);
        hi = hi.max(v);
    };
    let xs = interior_samples(domain, n.max(2));
    let mut vs = Vec::with_capacity(xs.len());
    for &x in &xs {
        let v = h(x)?;
        if !v.is_finite() {
            return Err(Error::domain(format!("non-finite value {v} at x = {x}")));
        }
        take(v);
        vs.push(v);
    }
    // polish extrema that fall between samples
    for sign in [1.0, -1.0] {
        let best = (0..vs.len()).max_by(|&i, &j| (sign * vs[i]).total_cmp(&(sign * vs[j]))).expect("samples");
        if best > 0 && best + 1 < vs.len() {
            if let Some(v) = golden_max(&|x| h(x).map(|v| sign * v), xs[best - 1], xs[best + 1]) {
                take(sign * v);
            }
        }
    }
    if !domain.is_point() {
        let width = if domain.is_bounded() { domain.width() } else { 1.0 };
        for (end, dir) in [(domain.lo, 1.0), (domain.hi, -1.0)] {
            let at = |k: i32| {
                if end.is_finite() {
                    end + dir * width * 10f64.powi(-k)
                } else {
                    end.signum() * 10f64.powi(k)
                }
            };
            let (seen, unbounded) = approach(h, domain, (1..=15).map(at));
            for &v in &seen {
                take(v);
            }
            if let Some(inf) = unbounded {
                take(inf);
                continue;
            }
            // limits reached logarithmically in x converge geometrically
            // when the decade exponent doubles
            let (far, _) = approach(h, domain, (0..9).map(|j| at(1 << j)));
            for &v in &far {
                take(v);
            }
            let seen = if far.len() >= 5 { far } else { seen };
            if let Some(limit) = extrapolate(&seen) {
                take(limit);
            }
        }
    }
    if lo == hi {
        return Ok(Interval::point(lo));
    }
    Interval::new(lo, hi, false, false)
}

/// Values of `h` along points approaching an end, stopping at the first
/// overflow. The second item is an infinite limit when the values are seen
/// to be unbounded.
fn approach(
    h: &dyn Fn(f64) -> Result<f64>,
    domain: &Interval,
    xs: impl Iterator<Item = f64>,
) -> (Vec<f64>, Option<f64>) {
    let mut seen: Vec<f64> = Vec::new();
    let mut trend = 0.0;
    for x in xs {
        if !domain.contains_interior(x) {
            continue;
        }
        match h(x) {
            Ok(v) if v.is_finite() => {
                if let Some(&p) = seen.last() {
                    if v != p {
                        trend = (v - p).signum();
                    }
                }
                seen.push(v);
            }
            Ok(_) | Err(Error::NonFinite(_)) => {
                // overflow in intermediate terms does not by itself mean the
                // values are unbounded
                let large = seen.last().is_some_and(|p| p.abs() > 1e6);
                if trend != 0.0 && (large || divergence(&seen).is_some()) {
                    return (seen, Some(trend * f64::INFINITY));
                }
                return (seen, None);
            }
            Err(_) => {}
        }
    }
    let unbounded = divergence(&seen);
    (seen, unbounded)
}

/// Aitken's delta-squared limit from the window of four values closest to
/// the end whose increments shrink by a steady ratio; windows spoiled by
/// rounding are passed over.
fn extrapolate(v: &[f64]) -> Option<f64> {
    v.windows(4).rev().find_map(|w| {
        let d = [w[1] - w[0], w[2] - w[1], w[3] - w[2]];
        if d.iter().any(|&x| x == 0.0 || x.signum() != d[0].signum()) {
            return None;
        }
        let (r1, r2) = (d[1] / d[0], d[2] / d[1]);
        if r2 > 0.9 || (r2 - r1).abs() > 1e-2 * r2 {
            return None;
        }
        Some(w[3] + d[2] * r2 / (1.0 - r2)).filter(|l| l.is_finite())
    })
}

/// Values taken at geometrically closer points to an end: if their
/// increments are not shrinking geometrically, the values are unbounded
/// there (logarithmic growth has constant increments per decade).
fn divergence(v: &[f64]) -> Option<f64> {
    let k = v.len();
    if k < 4 {
        return None;
    }
    let d: Vec<f64> = v[k - 4..].windows(2).map(|w| w[1] - w[0]).collect();
    let sign = d[2].signum();
    let growing = d.iter().all(|x| x.signum() == sign)
        && d[2].abs() >= 0.98 * d[1].abs()
        && d[1].abs() >= 0.98 * d[0].abs()
        && d[2].abs() > 1e-6 * v[k - 1].abs().max(1.0);
    growing.then_some(sign * f64::INFINITY)
}

fn golden_max(h: &dyn Fn(f64) -> Result<f64>, mut a: f64, mut b: f64) -> Option<f64> {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut hc, mut hd) = (h(c).ok()?, h(d).ok()?);
    for _ in 0..80 {
        if hc >= hd {
            b = d;
            d = c;
            hd = hc;
            c = b - r * (b - a);
            hc = h(c).ok()?;
        } else {
            a = c;
            c = d;
            hc = hd;
            d = a + r * (b - a);
            hd = h(d).ok()?;
        }
    }
    Some(hc.max(hd)).filter(|v| v.is_finite())
}

/// Range of `f'` over the domain of `f`.
pub fn range_of_derivative(f: &ScalarFunction, n_samples: usize) -> Result<Interval> {
    if n_samples < 2 {
        return Err(Error::InvalidParameter("range_of_derivative needs at least 2 samples".into()));
    }
    hull_of(&|x| f.slope(x), &f.domain(), n_samples)
}

/// Image of `f` over its domain.
pub fn image_of(f: &ScalarFunction, n_samples: usize) -> Result<Interval> {
    hull_of(&|x| f.eval(x), &f.domain(), n_samples)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    fn f(text: &str, dom: Interval) -> ScalarFunction {
        ScalarFunction::from_expr(text, dom).unwrap()
    }

    #[test]
    fn derivative_ranges() {
        let r = range_of_derivative(&f("exp(x)", Interval::real_line()), 1000).unwrap();
        assert_eq!(r, Interval::open(0.0, f64::INFINITY));
        let r = range_of_derivative(&f("x*ln(x)", Interval::open(0.0, f64::INFINITY)), 1000).unwrap();
        assert_eq!(r, Interval::real_line());
        let r = range_of_derivative(&f("x*atan(x)-ln(1+x^2)/2", Interval::real_line()), 1000).unwrap();
        assert!((r.lo + FRAC_PI_2).abs() < 1e-12 && (r.hi - FRAC_PI_2).abs() < 1e-12, "{r}");
        // 1/ln(x) tends to 0 too slowly to be seen by sampling alone
        let r = range_of_derivative(&f("li(x)", Interval::open(1.0, f64::INFINITY)), 1000).unwrap();
        assert!(r.lo.abs() < 1e-12 && r.hi == f64::INFINITY, "{r}");
        let r = range_of_derivative(&f("x^1.2", Interval::open(0.0, f64::INFINITY)), 1000).unwrap();
        assert!(r.lo.abs() < 1e-12 && r.hi == f64::INFINITY, "{r}");
        let r = range_of_derivative(&f("x", Interval::real_line()), 100).unwrap();
        assert_eq!(r, Interval::point(1.0));
        let r = range_of_derivative(&f("sin(x)", Interval::open(-FRAC_PI_2, FRAC_PI_2)), 1000).unwrap();
        assert!(!r.lo_closed && !r.hi_closed);
        assert!(r.lo.abs() < 1e-12 && (r.hi - 1.0).abs() < 1e-6, "{r}");
    }

    #[test]
    fn samples_stay_inside() {
        for dom in [
            Interval::open(0.0, 1.0),
            Interval::open(0.0, f64::INFINITY),
            Interval::open(f64::NEG_INFINITY, -2.0),
            Interval::real_line(),
        ] {
            let xs = interior_samples(&dom, 1000);
            assert_eq!(xs.len(), 1000);
            assert!(xs.iter().all(|&x| dom.contains_interior(x)), "{dom}");
            assert!(xs.windows(2).all(|w| w[0] <= w[1]));
        }
    }
}

use crate::error::{Error, Result};
use crate::funcspace::ScalarFunction;

/// Which extremum the discrete transform takes over the grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Extremum {
    /// `sup_x (m x - f(x))`, the conjugate of a convex function.
    #[default]
    Sup,
    /// `inf_x (m x - f(x))`, for concave functions.
    Inf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Linear-time scan when the samples are convex, full scan otherwise.
    #[default]
    Auto,
    BruteForce,
}

/// One transformed value with the grid point that attains it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConjugatePoint {
    pub m: f64,
    pub g: f64,
    pub x: f64,
}

/// `g(m) = max over the grid of (m x - f(x))`. Grid points where `f`
/// cannot be evaluated are dropped. Non-convex input yields the conjugate of
/// its convex envelope.
pub fn discrete_conjugate(f: &ScalarFunction, x_grid: &[f64], m_grid: &[f64]) -> Vec<(f64, f64)> {
    let (xs, fs): (Vec<f64>, Vec<f64>) = x_grid.iter().filter_map(|&x| f.eval(x).ok().map(|v| (x, v))).unzip();
    conjugate_samples(&xs, &fs, m_grid, Extremum::Sup, Strategy::Auto)
        .into_iter()
        .map(|p| (p.m, p.g))
        .collect()
}

/// Discrete transform of samples `(xs[i], fs[i])`. Ties go to the smallest
/// `x`. Returns nothing for an empty sample set.
pub fn conjugate_samples(xs: &[f64], fs: &[f64], ms: &[f64], ext: Extremum, strategy: Strategy) -> Vec<ConjugatePoint> {
    assert_eq!(xs.len(), fs.len(), "sample arrays differ in length");
    if xs.is_empty() {
        return Vec::new();
    }
    if ext == Extremum::Inf {
        // inf (m x - f) = -sup ((-m) x - (-f))
        let neg_f: Vec<f64> = fs.iter().map(|v| -v).collect();
        let neg_m: Vec<f64> = ms.iter().map(|v| -v).collect();
        return conjugate_samples(xs, &neg_f, &neg_m, Extremum::Sup, strategy)
            .into_iter()
            .map(|p| ConjugatePoint { m: -p.m, g: -p.g, x: p.x })
            .collect();
    }
    let fast = strategy == Strategy::Auto && samples_convex(xs, fs);
    if fast {
        fast_scan(xs, fs, ms)
    } else {
        ms.iter().map(|&m| brute_at(xs, fs, m)).collect()
    }
}

fn brute_at(xs: &[f64], fs: &[f64], m: f64) -> ConjugatePoint {
    let mut best = 0;
    let mut bv = m * xs[0] - fs[0];
    for i in 1..xs.len() {
        let v = m * xs[i] - fs[i];
        if v > bv {
            best = i;
            bv = v;
        }
    }
    ConjugatePoint { m, g: bv, x: xs[best] }
}

/// Strictly increasing abscissae and nondecreasing chord slopes, up to
/// rounding.
pub fn samples_convex(xs: &[f64], fs: &[f64]) -> bool {
    if xs.windows(2).any(|w| !(w[1] > w[0])) || fs.iter().any(|v| !v.is_finite()) {
        return false;
    }
    let mut prev = f64::NEG_INFINITY;
    for i in 1..xs.len() {
        let s = (fs[i] - fs[i - 1]) / (xs[i] - xs[i - 1]);
        let slack = 1e-9 * (s.abs() + prev.abs().min(s.abs()) + 1.0);
        if s < prev - slack {
            return false;
        }
        prev = prev.max(s);
    }
    true
}

/// For convex samples the maximizer is nondecreasing in `m`, so a single
/// pointer sweeps the grid once. Around each stop, points whose values lie
/// within rounding of the stop value are compared directly so the result
/// matches a full scan exactly.
fn fast_scan(xs: &[f64], fs: &[f64], ms: &[f64]) -> Vec<ConjugatePoint> {
    let n = xs.len();
    let xmax = xs.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let fmax = fs.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let mut order: Vec<usize> = (0..ms.len()).collect();
    if ms.windows(2).any(|w| w[1] < w[0]) {
        order.sort_by(|&a, &b| ms[a].total_cmp(&ms[b]));
    }
    let mut out = vec![ConjugatePoint { m: 0.0, g: 0.0, x: 0.0 }; ms.len()];
    let mut i = 0;
    for &k in &order {
        let m = ms[k];
        if !m.is_finite() {
            out[k] = brute_at(xs, fs, m);
            continue;
        }
        let v = |j: usize| m * xs[j] - fs[j];
        while i + 1 < n && v(i + 1) > v(i) {
            i += 1;
        }
        let band = 16.0 * f64::EPSILON * (m.abs() * xmax + fmax);
        let floor = v(i) - band;
        let mut lo = i;
        while lo > 0 && v(lo - 1) >= floor {
            lo -= 1;
        }
        let mut hi = i;
        while hi + 1 < n && v(hi + 1) >= floor {
            hi += 1;
        }
        let mut best = lo;
        for j in lo + 1..=hi {
            if v(j) > v(best) {
                best = j;
            }
        }
        out[k] = ConjugatePoint { m, g: v(best), x: xs[best] };
        i = lo;
    }
    out
}

/// `min over t of f1(x - t) + f2(t)`: the best grid point is refined by a
/// golden-section search between its neighbours.
pub fn infimal_convolution(f1: &ScalarFunction, f2: &ScalarFunction, x: f64, t_grid: &[f64]) -> Result<f64> {
    let h = |t: f64| -> f64 {
        match (f1.eval(x - t), f2.eval(t)) {
            (Ok(a), Ok(b)) if (a + b).is_finite() => a + b,
            _ => f64::INFINITY,
        }
    };
    let vals: Vec<f64> = t_grid.iter().map(|&t| h(t)).collect();
    let best = (0..vals.len())
        .filter(|&i| vals[i].is_finite())
        .min_by(|&a, &b| vals[a].total_cmp(&vals[b]))
        .ok_or_else(|| Error::EmptyFeasibleSet(format!("no grid t with x - t and t in the domains at x = {x}")))?;
    let lo = t_grid[best.saturating_sub(1)];
    let hi = t_grid[(best + 1).min(t_grid.len() - 1)];
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let (mut a, mut b) = (lo.min(hi), lo.max(hi));
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut hc, mut hd) = (h(c), h(d));
    for _ in 0..100 {
        if hc <= hd {
            b = d;
            d = c;
            hd = hc;
            c = b - r * (b - a);
            hc = h(c);
        } else {
            a = c;
            c = d;
            hc = hd;
            d = a + r * (b - a);
            hd = h(d);
        }
    }
    Ok(vals[best].min(hc).min(hd))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcspace::Interval;

    fn grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
        (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
    }

    fn f(text: &str) -> ScalarFunction {
        ScalarFunction::from_expr(text, Interval::real_line()).unwrap()
    }

    #[test]
    fn examples() {
        let xs = grid(-10.0, 10.0, 4001);
        let g = discrete_conjugate(&f("x^2/2"), &xs, &[0.5]);
        assert!((g[0].1 - 0.125).abs() < 1e-12);
        let g = discrete_conjugate(&f("abs(x)"), &xs, &[0.0]);
        assert_eq!(g[0].1, 0.0);
        let g = discrete_conjugate(&f("exp(x)"), &xs, &[1.0]);
        assert!((g[0].1 + 1.0).abs() < 1e-4);
    }

    #[test]
    fn ties_take_smallest_x() {
        let xs = grid(-2.0, 2.0, 5);
        let fs: Vec<f64> = xs.iter().map(|x: &f64| x.abs()).collect();
        let p = conjugate_samples(&xs, &fs, &[1.0, 0.0], Extremum::Sup, Strategy::Auto);
        assert_eq!(p[0].x, 0.0);
        assert_eq!(p[1].x, 0.0);
        let b = conjugate_samples(&xs, &fs, &[1.0, 0.0], Extremum::Sup, Strategy::BruteForce);
        assert_eq!(p, b);
    }

    #[test]
    fn fast_path_matches_full_scan_on_flat_pieces() {
        // linear stretch with slope exactly 0.1 and unsorted m values
        let xs = grid(-3.0, 3.0, 601);
        let fs: Vec<f64> = xs.iter().map(|&x| if x < -1.0 { (x + 1.0).powi(2) + 0.1 * x } else { 0.1 * x }).collect();
        let ms = [0.1, -0.5, 0.1 + 1e-17, 2.0, 0.0999999, 7.0];
        let a = conjugate_samples(&xs, &fs, &ms, Extremum::Sup, Strategy::Auto);
        let b = conjugate_samples(&xs, &fs, &ms, Extremum::Sup, Strategy::BruteForce);
        assert_eq!(a, b);
    }

    #[test]
    fn inf_variant_on_concave_samples() {
        let xs = grid(-1.0, 1.0, 2001);
        let fs: Vec<f64> = xs.iter().map(|x| -x * x / 2.0).collect();
        let p = conjugate_samples(&xs, &fs, &[0.5], Extremum::Inf, Strategy::Auto);
        assert!((p[0].g + 0.125).abs() < 1e-12);
    }

    #[test]
    fn nonconvex_input_falls_back() {
        let xs = grid(-2.0, 2.0, 401);
        let fs: Vec<f64> = xs.iter().map(|x| (x * x - 1.0).powi(2)).collect();
        assert!(!samples_convex(&xs, &fs));
        let a = conjugate_samples(&xs, &fs, &[0.0, 0.3], Extremum::Sup, Strategy::Auto);
        assert_eq!(a[0].g, 0.0);
    }

    #[test]
    fn infimal_convolution_examples() {
        let q = f("x^2/2");
        let ts = grid(-5.0, 5.0, 101);
        assert!((infimal_convolution(&q, &q, 2.0, &ts).unwrap() - 1.0).abs() < 1e-12);
        let steep = f("1e6*x^2");
        let v = infimal_convolution(&q, &steep, 2.0, &ts).unwrap();
        assert!((v - 2.0).abs() < 1e-5);
        let narrow = ScalarFunction::from_expr("x", Interval::open(10.0, 11.0)).unwrap();
        assert!(matches!(infimal_convolution(&q, &narrow, 0.0, &ts), Err(Error::EmptyFeasibleSet(_))));
    }
}

//! Adaptive Gauss–Kronrod (7/15) quadrature with infinite-range
//! substitutions and a principal-value helper for simple poles.

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
// Gauss weights for XGK[1], XGK[3], XGK[5], XGK[7]
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

const MAX_INTERVALS: usize = 4000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
}

fn gk15<F: Fn(f64) -> Result<f64>>(f: &F, a: f64, b: f64) -> Result<(f64, f64)> {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c)?;
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    for i in 0..7 {
        let dx = h * XGK[i];
        let s = f(c - dx)? + f(c + dx)?;
        k += WGK[i] * s;
        if i % 2 == 1 {
            g += WG[i / 2] * s;
        }
    }
    let (k, g) = (k * h, g * h);
    if !k.is_finite() {
        return Err(Error::QuadratureFailure(format!("non-finite integrand on [{a}, {b}]")));
    }
    Ok((k, (k - g).abs()))
}

/// Integrates `f` over the finite interval [a, b] to absolute tolerance `tol`.
fn adaptive<F: Fn(f64) -> Result<f64>>(f: &F, a: f64, b: f64, tol: f64) -> Result<Estimate> {
    let (v, e) = gk15(f, a, b)?;
    let mut parts = vec![(a, b, v, e)];
    let mut evals = 15;
    loop {
        let value: f64 = parts.iter().map(|p| p.2).sum();
        let error: f64 = parts.iter().map(|p| p.3).sum();
        if error <= tol || error <= 4.0 * f64::EPSILON * value.abs() {
            return Ok(Estimate { value, error, evaluations: evals });
        }
        if parts.len() >= MAX_INTERVALS {
            return Err(Error::QuadratureFailure(format!(
                "tolerance {tol} not met on [{a}, {b}] (error estimate {error})"
            )));
        }
        let (i, _) = parts
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .expect("nonempty");
        let (lo, hi, _, _) = parts.swap_remove(i);
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            return Err(Error::QuadratureFailure(format!("interval [{lo}, {hi}] cannot be split")));
        }
        let (v1, e1) = gk15(f, lo, mid)?;
        let (v2, e2) = gk15(f, mid, hi)?;
        evals += 30;
        parts.push((lo, mid, v1, e1));
        parts.push((mid, hi, v2, e2));
    }
}

/// Integrates `f` from `a` to `b`; either limit may be infinite, and `a > b`
/// flips the sign.
pub fn integrate<F: Fn(f64) -> Result<f64>>(f: F, a: f64, b: f64, tol: f64) -> Result<Estimate> {
    integrate_dyn(&f, a, b, tol)
}

fn integrate_dyn(f: &dyn Fn(f64) -> Result<f64>, a: f64, b: f64, tol: f64) -> Result<Estimate> {
    if a.is_nan() || b.is_nan() {
        return Err(Error::domain("NaN integration limit"));
    }
    if a == b {
        return Ok(Estimate { value: 0.0, error: 0.0, evaluations: 0 });
    }
    if a > b {
        let r = integrate_dyn(f, b, a, tol)?;
        return Ok(Estimate { value: -r.value, ..r });
    }
    match (a.is_finite(), b.is_finite()) {
        (true, true) => adaptive(&f, a, b, tol),
        (true, false) => adaptive(
            &|s: f64| {
                let w = 1.0 - s;
                Ok(f(a + s / w)? / (w * w))
            },
            0.0,
            1.0,
            tol,
        ),
        (false, true) => adaptive(
            &|s: f64| Ok(f(b - (1.0 - s) / s)? / (s * s)),
            0.0,
            1.0,
            tol,
        ),
        (false, false) => {
            let l = integrate_dyn(f, f64::NEG_INFINITY, 0.0, tol / 2.0)?;
            let r = integrate_dyn(f, 0.0, f64::INFINITY, tol / 2.0)?;
            Ok(Estimate {
                value: l.value + r.value,
                error: l.error + r.error,
                evaluations: l.evaluations + r.evaluations,
            })
        }
    }
}

/// Principal-value integral of `f` from `a` to `b` (finite) where `f` has a
/// simple pole at `c` with the given residue. The pole term is subtracted
/// and integrated analytically; `c` may lie outside [a, b].
pub fn integrate_pv<F: Fn(f64) -> Result<f64>>(
    f: F,
    a: f64,
    b: f64,
    c: f64,
    residue: f64,
    tol: f64,
) -> Result<Estimate> {
    if a == c || b == c {
        return Err(Error::domain(format!("integration limit on the pole at {c}")));
    }
    let g = |t: f64| Ok(f(t)? - residue / (t - c));
    let (lo, hi) = (a.min(b), a.max(b));
    let mut est = if lo < c && c < hi {
        let l = integrate(g, lo, c, tol / 2.0)?;
        let r = integrate(g, c, hi, tol / 2.0)?;
        Estimate {
            value: l.value + r.value,
            error: l.error + r.error,
            evaluations: l.evaluations + r.evaluations,
        }
    } else {
        integrate(g, lo, hi, tol)?
    };
    est.value += residue * ((hi - c).abs() / (lo - c).abs()).ln();
    if a > b {
        est.value = -est.value;
    }
    Ok(est)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn polynomial_is_exact() {
        let r = integrate(|x| Ok(x.powi(5) - 2.0 * x), -1.0, 2.0, 1e-12).unwrap();
        assert!((r.value - (64.0 / 6.0 - 1.0 / 6.0 - 3.0)).abs() < 1e-13);
    }

    #[test]
    fn gaussian_over_the_line() {
        let r = integrate(|x| Ok((-x * x).exp()), f64::NEG_INFINITY, f64::INFINITY, 1e-12).unwrap();
        assert!((r.value - PI.sqrt()).abs() < 1e-11);
    }

    #[test]
    fn erf_of_one_by_quadrature() {
        let r = integrate(|t| Ok(2.0 / PI.sqrt() * (-t * t).exp()), 0.0, 1.0, 1e-13).unwrap();
        assert!((r.value - crate::specfun::erf(1.0)).abs() < 1e-13);
    }

    #[test]
    fn reversed_limits_flip_sign() {
        let a = integrate(|x| Ok(x.cos()), 0.0, 1.0, 1e-12).unwrap().value;
        let b = integrate(|x| Ok(x.cos()), 1.0, 0.0, 1e-12).unwrap().value;
        assert_eq!(a, -b);
    }

    #[test]
    fn principal_value_gives_li() {
        let f = |t: f64| Ok(1.0 / t.ln());
        let r = integrate_pv(f, 0.0, 2.0, 1.0, 1.0, 1e-12).unwrap();
        assert!((r.value - 1.045_163_780_117_492_8).abs() < 1e-10);
        let r = integrate_pv(f, 0.0, 0.5, 1.0, 1.0, 1e-12).unwrap();
        assert!((r.value - crate::specfun::li(0.5).unwrap()).abs() < 1e-10);
    }
}

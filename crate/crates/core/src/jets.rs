//! Taylor jet of the transform `g` at `m0 = f'(x0)` from the jet of `f`
//! at `x0`.
//!
//! Since `g'` is the inverse function of `f'`, the jet of `g'` at `m0` is
//! the series reversion of the jet of `f'` at `x0`; one integration with
//! `g(m0) = x0 f'(x0) - f(x0)` gives `g`. This is the repeated division
//! by `f''` carried out to all orders at once.

use crate::error::{Error, Result};
use crate::expr::{series, Jet};

/// Curvature threshold below which the dual jet is refused.
pub const CURVATURE_EPS: f64 = 1e-12;

/// Dual jet of order `order`; `f_jet` must have order at least `order`.
pub fn dual_jet(f_jet: &Jet, order: usize) -> Result<Jet> {
    dual_jet_eps(f_jet, order, CURVATURE_EPS)
}

pub fn dual_jet_eps(f_jet: &Jet, order: usize, eps: f64) -> Result<Jet> {
    if f_jet.order() < order.max(2) {
        return Err(Error::InvalidParameter(format!(
            "dual jet of order {order} needs an f jet of order {}, got {}",
            order.max(2),
            f_jet.order()
        )));
    }
    let x0 = f_jet.basepoint;
    let c = &f_jet.coeffs[..=order.max(2)];
    let f2 = 2.0 * c[2];
    if f2.abs() < eps || !f2.is_finite() {
        return Err(Error::SingularCurvature(format!("f''({x0}) = {f2}")));
    }
    let m0 = c[1];
    let g0 = x0 * m0 - c[0];
    // f' around x0, truncated so the result has order + 1 terms
    let slope = &series::derivative(c)[..order.max(1)];
    let mut gp = series::revert(slope)?;
    gp[0] = x0;
    let g = series::antiderivative(&gp, g0);
    Jet::new(m0, g[..=order].to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr;

    fn close(a: &[f64], b: &[f64], tol: f64) {
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(b) {
            assert!((x - y).abs() <= tol * y.abs().max(1.0), "{a:?} vs {b:?}");
        }
    }

    #[test]
    fn x_sin_x_at_zero() {
        let f = expr::parse("x*sin(x)").unwrap().eval_jet(0.0, 4).unwrap();
        let g = dual_jet(&f, 4).unwrap();
        assert_eq!(g.basepoint, 0.0);
        close(&g.coeffs, &[0.0, 0.0, 0.25, 0.0, 1.0 / 96.0], 1e-15);
    }

    #[test]
    fn quadratic_is_self_dual() {
        let a = 1.7;
        let f = expr::parse("x^2/2").unwrap().eval_jet(a, 4).unwrap();
        let g = dual_jet(&f, 4).unwrap();
        assert_eq!(g.basepoint, a);
        close(&g.coeffs, &[a * a / 2.0, a, 0.5, 0.0, 0.0], 1e-15);
    }

    #[test]
    fn exp_gives_m_ln_m_minus_m() {
        let f = expr::parse("exp(x)").unwrap().eval_jet(0.0, 4).unwrap();
        let g = dual_jet(&f, 4).unwrap();
        close(&g.coeffs, &[-1.0, 0.0, 0.5, -1.0 / 6.0, 1.0 / 12.0], 1e-14);
    }

    #[test]
    fn flat_curvature_is_singular() {
        let f = expr::parse("x^3").unwrap().eval_jet(0.0, 4).unwrap();
        assert!(matches!(dual_jet(&f, 4), Err(Error::SingularCurvature(_))));
        let f = expr::parse("x").unwrap().eval_jet(0.3, 3).unwrap();
        assert!(matches!(dual_jet(&f, 3), Err(Error::SingularCurvature(_))));
    }

    #[test]
    fn fourth_and_fifth_derivative_formulas() {
        let f = expr::parse("exp(x/3)+x^4/5-sin(x)").unwrap();
        for x0 in [0.4, 1.1, 2.0] {
            let fj = f.eval_jet(x0, 5).unwrap();
            let d = |k: usize| fj.derivative(k);
            let g = dual_jet(&fj, 5).unwrap();
            let (f2, f3, f4, f5) = (d(2), d(3), d(4), d(5));
            let g4 = (3.0 * f3 * f3 - f2 * f4) / f2.powi(5);
            let g5 = (-15.0 * f3.powi(3) + 10.0 * f2 * f3 * f4 - f2 * f2 * f5) / f2.powi(7);
            assert!((g.derivative(4) - g4).abs() < 1e-10 * g4.abs().max(1.0));
            assert!((g.derivative(5) - g5).abs() < 1e-10 * g5.abs().max(1.0));
        }
    }

    #[test]
    fn dual_of_dual_recovers_f() {
        let f = expr::parse("exp(x)+x^2").unwrap().eval_jet(0.5, 6).unwrap();
        let g = dual_jet(&f, 6).unwrap();
        let back = dual_jet(&g, 6).unwrap();
        assert!((back.basepoint - 0.5).abs() < 1e-15);
        close(&back.coeffs, &f.coeffs, 1e-9);
    }
}

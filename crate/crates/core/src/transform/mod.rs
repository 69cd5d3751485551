//! Legendre transforms by explicit inversion of `f'`, exact polyline
//! duality, integration of `(f')^{-1}`, and discrete maximization, plus
//! parametric dual curves, support-line extension, Clairaut envelopes and
//! dual-coordinate conversions.

mod discrete;

pub use discrete::{
    conjugate_samples, discrete_conjugate, infimal_convolution, samples_convex, ConjugatePoint, Extremum, Strategy,
};
pub use crate::funcspace::piecewise_linear_dual;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::expr::Node;
use crate::funcspace::{Body, DualCurveSample, Interval, ScalarFunction, QUAD_TOL};
use crate::quad;

/// The line `y = m x - d`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TangentLine {
    pub m: f64,
    pub d: f64,
}

impl TangentLine {
    pub fn new(m: f64, d: f64) -> Result<TangentLine> {
        if !m.is_finite() || !d.is_finite() {
            return Err(Error::NonFinite(format!("tangent line m = {m}, d = {d}")));
        }
        Ok(TangentLine { m, d })
    }

    pub fn y(&self, x: f64) -> f64 {
        self.m * x - self.d
    }

    /// Tangent to `f` at `x`.
    pub fn tangent_to(f: &ScalarFunction, x: f64) -> Result<TangentLine> {
        let j = f.jet(x, 1)?;
        TangentLine::new(j.coeffs[1], x * j.coeffs[1] - j.coeffs[0])
    }
}

/// `(x, f'(x), x f'(x) - f(x))` at each grid point. Points outside the
/// interior of the domain, or where `f` fails, are recorded as skipped.
pub fn parametric_dual(f: &ScalarFunction, x_grid: &[f64]) -> DualCurveSample {
    let mut points = Vec::with_capacity(x_grid.len());
    let mut skipped = Vec::new();
    for &x in x_grid {
        if !f.domain().contains_interior(x) {
            skipped.push((x, format!("{x} is not interior to {}", f.domain())));
            continue;
        }
        match TangentLine::tangent_to(f, x) {
            Ok(t) => points.push((x, t.m, t.d)),
            Err(e) => skipped.push((x, e.to_string())),
        }
    }
    DualCurveSample { points, source_label: f.label().to_string(), skipped }
}

/// `g(m) = m x(m) - f(x(m))` with `x(m) = (f')^{-1}(m)` supplied.
pub fn method1_explicit(f: &ScalarFunction, f_prime_inverse: &ScalarFunction, m: f64) -> Result<f64> {
    let x = f_prime_inverse.eval(m)?;
    Ok(m * x - f.eval(x)?)
}

/// `g(m) = g(m0) + integral of (f')^{-1} from m0 to m`.
pub fn integral_transform(f_prime_inverse: &ScalarFunction, m0: f64, g_m0: f64, m: f64) -> Result<f64> {
    integral_transform_tol(f_prime_inverse, m0, g_m0, m, QUAD_TOL)
}

pub fn integral_transform_tol(f_prime_inverse: &ScalarFunction, m0: f64, g_m0: f64, m: f64, tol: f64) -> Result<f64> {
    for end in [m0, m] {
        if !f_prime_inverse.domain().contains(end) {
            return Err(Error::domain(format!("{end} is outside {}", f_prime_inverse.domain())));
        }
    }
    Ok(g_m0 + quad::integrate(|t| f_prime_inverse.eval(t), m0, m, tol)?.value)
}

fn line_piece(x_end: f64, f_end: f64, on: Interval) -> ScalarFunction {
    // m x_end - f(x_end)
    let ast = Node::binary(
        crate::expr::BinOp::Sub,
        Node::binary(crate::expr::BinOp::Mul, Node::Var, Node::literal(x_end)),
        Node::literal(f_end),
    );
    let e = crate::expr::Expression::from_ast(ast, "m");
    let label = e.to_string();
    ScalarFunction::new(Body::Expr(e), on, &label)
}

/// Completes a transform known on the slope range of `f` to the whole line
/// with the supporting lines at the endpoints of `f`'s bounded domain:
/// beyond the slope at an endpoint `a`, `g(m) = m a - f(a)`.
pub fn extend_with_support_lines(g_core: &ScalarFunction, f: &ScalarFunction) -> Result<ScalarFunction> {
    let dom = f.domain();
    let end = |a: f64| -> Result<(f64, f64, f64)> {
        if !a.is_finite() {
            return Err(Error::domain("supporting lines need finite domain endpoints"));
        }
        let at = f.with_domain(Interval::closed(dom.lo, dom.hi));
        let j = at.jet(a, 1).map_err(|e| Error::domain(format!("f unavailable at endpoint {a}: {e}")))?;
        Ok((a, j.coeffs[0], j.coeffs[1]))
    };
    let (a, fa, sa) = end(dom.lo)?;
    let (b, fb, sb) = end(dom.hi)?;
    if sa == sb {
        return Err(Error::SingularCurvature("equal endpoint slopes: f is linear".into()));
    }
    // the endpoint whose slope is smaller supplies the left line
    let (left, right) = if sa < sb { ((a, fa, sa), (b, fb, sb)) } else { ((b, fb, sb), (a, fa, sa)) };
    let left_piece = line_piece(left.0, left.1, Interval::new(f64::NEG_INFINITY, left.2, false, true)?);
    let right_piece = line_piece(right.0, right.1, Interval::new(right.2, f64::INFINITY, true, false)?);
    let core = g_core.with_domain(Interval::open(left.2, right.2));
    let label = format!("{} extended by supporting lines", g_core.label());
    Ok(ScalarFunction::new(Body::Piecewise(vec![left_piece, right_piece, core]), Interval::real_line(), &label))
}

/// Singular solution of the Clairaut equation `y = x y' + h(y')`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClairautSolution {
    /// Points `(x, slope, y)` of the envelope, one per slope in the grid.
    pub envelope: DualCurveSample,
    /// The general solution family, `y = c x + h(c)`.
    pub general_solution: String,
    /// All grid slopes gave the same point: `h` is linear and every
    /// general solution passes through it.
    pub degenerate: bool,
}

/// The envelope is the transform of `g = -h`: `x = g'(m)`,
/// `y = m g'(m) - g(m)`.
pub fn clairaut_singular_solution(h: &ScalarFunction, m_grid: &[f64]) -> Result<ClairautSolution> {
    let mut points = Vec::with_capacity(m_grid.len());
    let mut skipped = Vec::new();
    for &m in m_grid {
        match h.jet(m, 1) {
            Ok(j) => {
                let (g, gp) = (-j.coeffs[0], -j.coeffs[1]);
                points.push((gp, m, m * gp - g));
            }
            Err(e @ Error::Domain(_)) => skipped.push((m, e.to_string())),
            Err(e) => return Err(e),
        }
    }
    if points.is_empty() {
        return Err(Error::domain(format!("no slope in the grid lies in {}", h.domain())));
    }
    let degenerate = points.len() > 1 && points.iter().all(|p| p.0 == points[0].0 && p.2 == points[0].2);
    Ok(ClairautSolution {
        envelope: DualCurveSample { points, source_label: h.label().to_string(), skipped },
        general_solution: format!("y = c*x + ({}) at m = c", h.label()),
        degenerate,
    })
}

/// Coordinate systems for a line `y = m x - d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DualCoordinates {
    /// Slope and intercept: `y = m x + b`, so `b = -d`.
    Mb,
    /// `u x + v y = 1`, so `m = -u/v` and `d = 1/v`.
    Uv,
}

pub fn convert_dual_coordinates(point: (f64, f64), target: DualCoordinates) -> Result<(f64, f64)> {
    let (m, d) = point;
    match target {
        DualCoordinates::Mb => Ok((m, -d)),
        DualCoordinates::Uv => {
            if d == 0.0 {
                return Err(Error::DivisionByZero("a line through the origin has no u,v form".into()));
            }
            Ok((-m / d, 1.0 / d))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn f(text: &str, dom: Interval) -> ScalarFunction {
        ScalarFunction::from_expr(text, dom).unwrap()
    }

    #[test]
    fn parametric_examples() {
        let s = f("sin(x^2)", Interval::real_line());
        let d = parametric_dual(&s, &[FRAC_PI_2.sqrt(), 0.0]);
        let (x, m, dd) = d.points[0];
        assert!((x - FRAC_PI_2.sqrt()).abs() < 1e-15 && m.abs() < 1e-15 && (dd + 1.0).abs() < 1e-15);
        assert_eq!(d.points[1], (0.0, 0.0, 0.0));
        let c = f("x^3/3", Interval::open(0.0, f64::INFINITY));
        let d = parametric_dual(&c, &[1.0, -1.0]);
        assert_eq!(d.points.len(), 1);
        assert!((d.points[0].2 - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(d.skipped.len(), 1);
    }

    #[test]
    fn explicit_examples() {
        let pos = Interval::open(0.0, f64::INFINITY);
        let g = method1_explicit(&f("x^3/3", pos), &f("sqrt(m)", pos), 4.0).unwrap();
        assert!((g - 16.0 / 3.0).abs() < 1e-14);
        let r = Interval::real_line();
        assert_eq!(method1_explicit(&f("x^2/2", r), &f("m", r), 0.0).unwrap(), 0.0);
        let g = method1_explicit(&f("exp(x)", r), &f("ln(m)", pos), 1.0).unwrap();
        assert_eq!(g, -1.0);
    }

    #[test]
    fn integral_examples() {
        let inv = f("-asin(m)", Interval::closed(-1.0, 1.0));
        let g = integral_transform(&inv, 0.0, -1.0, 0.5).unwrap();
        assert!((g - (-0.5 * 0.5f64.asin() - 0.75f64.sqrt())).abs() < 1e-12);
        assert_eq!(integral_transform(&inv, 0.0, -1.0, 0.0).unwrap(), -1.0);
        let ln = f("ln(m)", Interval::open(0.0, f64::INFINITY));
        let g = integral_transform(&ln, 1.0, -1.0, std::f64::consts::E).unwrap();
        assert!(g.abs() < 1e-12);
    }

    #[test]
    fn sine_extension() {
        let sin = f("sin(x)", Interval::closed(0.0, FRAC_PI_2));
        let core = f("m*acos(m)-sqrt(1-m^2)", Interval::open(0.0, 1.0));
        let g = extend_with_support_lines(&core, &sin).unwrap();
        for m in [-3.0, -0.5, 0.0] {
            assert_eq!(g.eval(m).unwrap(), FRAC_PI_2 * m - 1.0);
        }
        for m in [1.0, 1.5, 40.0] {
            assert_eq!(g.eval(m).unwrap(), 0.0);
        }
        let m = 0.5f64.sqrt();
        assert!((g.eval(m).unwrap() - (m * m.acos() - (1.0 - m * m).sqrt())).abs() < 1e-15);
    }

    #[test]
    fn clairaut_examples() {
        let h = f("-(m*ln(m)-m)", Interval::open(0.0, f64::INFINITY));
        let s = clairaut_singular_solution(&h, &[0.5, 1.0, 2.0]).unwrap();
        for &(x, m, y) in &s.envelope.points {
            assert!((y - x.exp()).abs() < 1e-14 && (m - x.exp()).abs() < 1e-14);
        }
        let h = f("-m^2/4", Interval::real_line());
        let s = clairaut_singular_solution(&h, &[-2.0, 0.0, 3.0]).unwrap();
        for &(x, _, y) in &s.envelope.points {
            assert!((y - x * x).abs() < 1e-14);
        }
        let h = f("2*m+1", Interval::real_line());
        let s = clairaut_singular_solution(&h, &[-1.0, 0.0, PI]).unwrap();
        assert!(s.degenerate);
        assert_eq!(s.envelope.points[0].0, -2.0);
    }

    #[test]
    fn coordinate_conversions() {
        assert_eq!(convert_dual_coordinates((2.0, 1.0), DualCoordinates::Uv).unwrap(), (-2.0, 1.0));
        assert_eq!(convert_dual_coordinates((3.0, 4.0), DualCoordinates::Mb).unwrap(), (3.0, -4.0));
        assert!(matches!(convert_dual_coordinates((1.0, 0.0), DualCoordinates::Uv), Err(Error::DivisionByZero(_))));
    }
}

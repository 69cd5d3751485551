use std::sync::Arc;

use super::Interval;
use crate::error::{finite, Error, Result};
use crate::expr::{self, series, Expression, Func, Jet};
use crate::quad;

/// Default absolute tolerance for quadrature-defined functions.
pub const QUAD_TOL: f64 = 1e-10;

/// `F(x) = value_at_from + integral of integrand from `from` to x`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureDef {
    pub integrand: Expression,
    pub from: f64,
    pub value_at_from: f64,
    /// Simple pole `(location, residue)` handled as a principal value.
    pub pole: Option<(f64, f64)>,
    pub tol: f64,
}

impl QuadratureDef {
    pub fn new(integrand: &str, from: f64, value_at_from: f64) -> Result<QuadratureDef> {
        Ok(QuadratureDef {
            integrand: expr::parse(integrand)?,
            from,
            value_at_from,
            pole: None,
            tol: QUAD_TOL,
        })
    }

    /// li(x) = principal value of the integral of 1/ln t from 0 to x.
    pub fn logarithmic_integral() -> QuadratureDef {
        QuadratureDef {
            integrand: expr::parse("1/ln(t)").expect("valid integrand"),
            from: 0.0,
            value_at_from: 0.0,
            pole: Some((1.0, 1.0)),
            tol: QUAD_TOL,
        }
    }

    fn eval(&self, x: f64) -> Result<f64> {
        let h = |t: f64| self.integrand.eval(t);
        let est = match self.pole {
            Some((c, r)) => {
                if x == c {
                    return Err(Error::domain(format!("quadrature upper limit on the pole at {c}")));
                }
                quad::integrate_pv(h, self.from, x, c, r, self.tol)?
            }
            None => quad::integrate(h, self.from, x, self.tol)?,
        };
        Ok(self.value_at_from + est.value)
    }
}

/// How a [`ScalarFunction`] computes its values.
#[derive(Debug, Clone, PartialEq)]
pub enum Body {
    Expr(Expression),
    Special(Func),
    Quadrature(QuadratureDef),
    /// First piece whose domain contains the point is used.
    Piecewise(Vec<ScalarFunction>),
    /// `out_scale * inner(in_scale * x + in_shift) + lin * x + constant`
    Affine {
        inner: ScalarFunction,
        out_scale: f64,
        in_scale: f64,
        in_shift: f64,
        lin: f64,
        constant: f64,
    },
    Sum(Vec<ScalarFunction>),
    Derivative(ScalarFunction),
    /// Numeric inverse of a strictly monotone function.
    Inverse(ScalarFunction),
    /// `-m * g(1/m)`
    PerspectiveRecip(ScalarFunction),
    /// `m * h(m) - f(h(m))` with `h` the inverse of `f'`.
    LegendreExplicit { f: ScalarFunction, slope_inverse: ScalarFunction },
    /// `anchor_value + integral of integrand from anchor to x`.
    Integral { integrand: ScalarFunction, anchor: f64, anchor_value: f64, tol: f64 },
    /// `inf_t f1(x - t) + f2(t)` for convex differentiable f1, f2.
    InfConv(ScalarFunction, ScalarFunction),
    Unsupported(String),
}

/// A real function with a validity interval.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarFunction {
    body: Arc<Body>,
    domain: Interval,
    label: String,
}

/// Inputs accepted by [`make_function`].
#[derive(Debug, Clone)]
pub enum Source<'a> {
    Text(&'a str),
    Special(Func),
    Quadrature(QuadratureDef),
}

pub fn make_function(src: Source<'_>, domain: Interval, label: &str) -> Result<ScalarFunction> {
    let body = match src {
        Source::Text(t) => Body::Expr(expr::parse(t)?),
        Source::Special(f) => {
            if f.arity() != 1 {
                return Err(Error::InvalidParameter(format!("{} is not unary", f.name())));
            }
            Body::Special(f)
        }
        Source::Quadrature(q) => Body::Quadrature(q),
    };
    Ok(ScalarFunction::new(body, domain, label))
}

impl ScalarFunction {
    pub fn new(body: Body, domain: Interval, label: &str) -> ScalarFunction {
        ScalarFunction { body: Arc::new(body), domain, label: label.to_string() }
    }

    pub fn from_expr(text: &str, domain: Interval) -> Result<ScalarFunction> {
        make_function(Source::Text(text), domain, text)
    }

    pub fn body(&self) -> &Body {
        &self.body
    }

    pub fn domain(&self) -> Interval {
        self.domain
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_domain(&self, domain: Interval) -> ScalarFunction {
        ScalarFunction { body: self.body.clone(), domain, label: self.label.clone() }
    }

    pub fn with_label(&self, label: &str) -> ScalarFunction {
        ScalarFunction { body: self.body.clone(), domain: self.domain, label: label.to_string() }
    }

    pub fn is_supported(&self) -> bool {
        match &*self.body {
            Body::Unsupported(_) => false,
            Body::Piecewise(p) | Body::Sum(p) => p.iter().all(ScalarFunction::is_supported),
            _ => true,
        }
    }

    fn check(&self, x: f64) -> Result<()> {
        if self.domain.contains(x) {
            Ok(())
        } else {
            Err(Error::domain(format!("{} evaluated at {x}, outside {}", self.label, self.domain)))
        }
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        self.check(x)?;
        let v = match &*self.body {
            Body::Expr(e) => e.eval(x)?,
            Body::Special(f) => expr::apply(*f, x)?,
            Body::Quadrature(q) => q.eval(x)?,
            Body::Piecewise(pieces) => piece_at(pieces, x)?.eval(x)?,
            Body::Affine { inner, out_scale, in_scale, in_shift, lin, constant } => {
                out_scale * inner.eval(in_scale * x + in_shift)? + lin * x + constant
            }
            Body::Sum(parts) => parts.iter().map(|p| p.eval(x)).sum::<Result<f64>>()?,
            Body::Derivative(f) => f.jet(x, 1)?.coeffs[1],
            Body::Inverse(f) => solve_monotone(f, x)?,
            Body::PerspectiveRecip(g) => {
                if x == 0.0 {
                    return Err(Error::DivisionByZero("perspective at m = 0".into()));
                }
                -x * g.eval(1.0 / x)?
            }
            Body::LegendreExplicit { f, slope_inverse } => {
                let h = slope_inverse.eval(x)?;
                x * h - f.eval(h)?
            }
            Body::Integral { integrand, anchor, anchor_value, tol } => {
                anchor_value + quad::integrate(|t| integrand.eval(t), *anchor, x, *tol)?.value
            }
            Body::InfConv(f1, f2) => {
                let t = infconv_argmin(f1, f2, x)?;
                f1.eval(x - t)? + f2.eval(t)?
            }
            Body::Unsupported(what) => return Err(Error::Unsupported(what.clone())),
        };
        finite(v, &self.label)
    }

    /// Truncated Taylor expansion at `x0`.
    pub fn jet(&self, x0: f64, order: usize) -> Result<Jet> {
        self.check(x0)?;
        let n = order + 1;
        let coeffs = match &*self.body {
            Body::Expr(e) => return e.eval_jet(x0, order),
            Body::Special(f) => expr::apply_series(*f, &series::variable(x0, n))?,
            Body::Quadrature(q) => {
                let mut c = vec![q.eval(x0)?];
                if order > 0 {
                    let h = q.integrand.eval_jet(x0, order - 1)?;
                    c.extend(series::antiderivative(&h.coeffs, 0.0).into_iter().skip(1));
                }
                c
            }
            Body::Piecewise(pieces) => return Ok(piece_at(pieces, x0)?.jet(x0, order)?),
            Body::Affine { inner, out_scale, in_scale, in_shift, lin, constant } => {
                let j = inner.jet(in_scale * x0 + in_shift, order)?;
                let mut s = 1.0;
                let mut c: Vec<f64> = j
                    .coeffs
                    .iter()
                    .map(|v| {
                        let r = out_scale * v * s;
                        s *= in_scale;
                        r
                    })
                    .collect();
                c[0] += lin * x0 + constant;
                if n > 1 {
                    c[1] += lin;
                }
                c
            }
            Body::Sum(parts) => {
                let mut c = vec![0.0; n];
                for p in parts {
                    c = series::add(&c, &p.jet(x0, order)?.coeffs);
                }
                c
            }
            Body::Derivative(f) => series::derivative(&f.jet(x0, order + 1)?.coeffs),
            Body::Inverse(f) => {
                let y0 = solve_monotone(f, x0)?;
                let a = f.jet(y0, order)?.coeffs;
                let mut b = series::revert(&a)?;
                b[0] = y0;
                b
            }
            Body::PerspectiveRecip(g) => {
                if x0 == 0.0 {
                    return Err(Error::DivisionByZero("perspective at m = 0".into()));
                }
                let u = series::recip(&series::variable(x0, n))?;
                let gj = g.jet(u[0], order)?.coeffs;
                let composed = series::compose(&gj, &u);
                series::neg(&series::mul(&series::variable(x0, n), &composed))
            }
            Body::LegendreExplicit { f, slope_inverse } => {
                let h = slope_inverse.jet(x0, order)?.coeffs;
                let fj = f.jet(h[0], order)?.coeffs;
                series::sub(&series::mul(&series::variable(x0, n), &h), &series::compose(&fj, &h))
            }
            Body::Integral { integrand, .. } => {
                let mut c = vec![self.eval(x0)?];
                if order > 0 {
                    let h = integrand.jet(x0, order - 1)?;
                    c.extend(series::antiderivative(&h.coeffs, 0.0).into_iter().skip(1));
                }
                c
            }
            Body::InfConv(f1, f2) => infconv_jet(f1, f2, x0, order)?,
            Body::Unsupported(what) => return Err(Error::Unsupported(what.clone())),
        };
        Jet::new(x0, coeffs)
    }

    pub fn deriv(&self, x: f64, k: usize) -> Result<f64> {
        Ok(self.jet(x, k)?.derivative(k))
    }

    /// `f'(x)`.
    pub fn slope(&self, x: f64) -> Result<f64> {
        Ok(self.jet(x, 1)?.coeffs[1])
    }
}

fn piece_at(pieces: &[ScalarFunction], x: f64) -> Result<&ScalarFunction> {
    pieces
        .iter()
        .find(|p| p.domain.contains(x))
        .ok_or_else(|| Error::domain(format!("no piece contains {x}")))
}

/// Points walking from inside `domain` toward each end, used to bracket.
fn probe_points(domain: &Interval) -> (f64, Vec<f64>, Vec<f64>) {
    let Interval { lo, hi, .. } = *domain;
    let mid = match (lo.is_finite(), hi.is_finite()) {
        (true, true) => 0.5 * (lo + hi),
        (true, false) => lo + 1.0,
        (false, true) => hi - 1.0,
        (false, false) => 0.0,
    };
    let toward = |end: f64, closed: bool| -> Vec<f64> {
        let mut pts = Vec::new();
        if end.is_finite() {
            let gap = (end - mid).abs();
            let dir = (end - mid).signum();
            let mut k = 1.0;
            for _ in 0..1100 {
                k *= 0.5;
                let p = end - dir * gap * k;
                if p == end {
                    break;
                }
                pts.push(p);
            }
            if closed {
                pts.push(end);
            }
        } else {
            let dir = end.signum();
            let mut step = 1.0;
            for _ in 0..1100 {
                let p = mid + dir * step;
                if !p.is_finite() {
                    break;
                }
                pts.push(p);
                step *= 2.0;
            }
        }
        pts
    };
    (mid, toward(lo, domain.lo_closed), toward(hi, domain.hi_closed))
}

/// Solves `f(x) = target` for strictly monotone `f` on its domain by a
/// bracketed, safeguarded Newton iteration.
pub fn solve_monotone(f: &ScalarFunction, target: f64) -> Result<f64> {
    let g = |x: f64| f.eval(x).map(|v| v - target);
    let (mid, left, right) = probe_points(&f.domain);
    let gm = g(mid)?;
    if gm == 0.0 {
        return Ok(mid);
    }
    let mut bracket = None;
    for side in [&left, &right] {
        let mut prev = (mid, gm);
        for &p in side.iter() {
            let Ok(v) = g(p) else { continue };
            if v == 0.0 {
                return Ok(p);
            }
            if v.signum() != gm.signum() {
                bracket = Some(if p < prev.0 { (p, v, prev.0, prev.1) } else { (prev.0, prev.1, p, v) });
                break;
            }
            prev = (p, v);
        }
        if bracket.is_some() {
            break;
        }
    }
    let (mut a, mut ga, mut b, _) = bracket.ok_or_else(|| {
        Error::domain(format!("{target} is outside the range of {} on {}", f.label, f.domain))
    })?;
    let mut x = 0.5 * (a + b);
    for _ in 0..200 {
        let j = f.jet(x, 1)?;
        let gx = j.coeffs[0] - target;
        if gx == 0.0 {
            return Ok(x);
        }
        if gx.signum() == ga.signum() {
            a = x;
            ga = gx;
        } else {
            b = x;
        }
        let newton = x - gx / j.coeffs[1];
        let next = if newton > a.min(b) && newton < a.max(b) && newton.is_finite() {
            newton
        } else {
            0.5 * (a + b)
        };
        if (next - x).abs() <= 2.0 * f64::EPSILON * x.abs().max(f64::MIN_POSITIVE) || next == a || next == b {
            return Ok(next);
        }
        x = next;
    }
    Ok(x)
}

/// Minimizer `t` of `f1(x - t) + f2(t)`, found as the root of the
/// increasing function `f2'(t) - f1'(x - t)`.
fn infconv_argmin(f1: &ScalarFunction, f2: &ScalarFunction, x: f64) -> Result<f64> {
    // feasible t: t in dom f2 and x - t in dom f1
    let shifted = f1.domain.affine(-1.0, x)?;
    let feasible = f2.domain.intersect(&shifted)?;
    let phi = ScalarFunction::new(
        Body::Sum(vec![
            f2.with_label("f2").with_domain(feasible).derivative_fn(),
            ScalarFunction::new(
                Body::Affine {
                    inner: f1.derivative_fn(),
                    out_scale: -1.0,
                    in_scale: -1.0,
                    in_shift: x,
                    lin: 0.0,
                    constant: 0.0,
                },
                feasible,
                "-f1'(x-t)",
            ),
        ]),
        feasible,
        "optimality",
    );
    solve_monotone(&phi, 0.0).map_err(|_| {
        Error::EmptyFeasibleSet(format!("infimal convolution at {x}: no interior minimizer on {feasible}"))
    })
}

fn infconv_jet(f1: &ScalarFunction, f2: &ScalarFunction, x0: f64, order: usize) -> Result<Vec<f64>> {
    let t = infconv_argmin(f1, f2, x0)?;
    let value = f1.eval(x0 - t)? + f2.eval(t)?;
    if order == 0 {
        return Ok(vec![value]);
    }
    // slopes s: x(s) = (f1')^{-1}(s) + (f2')^{-1}(s); revert to get s(x)
    let d1 = series::derivative(&f1.jet(x0 - t, order)?.coeffs);
    let d2 = series::derivative(&f2.jet(t, order)?.coeffs);
    let s0 = d1[0];
    let xi = series::add(&series::revert(&d1)?, &series::revert(&d2)?);
    let mut s = series::revert(&xi)?;
    s[0] = s0;
    Ok(series::antiderivative(&s, value))
}

impl ScalarFunction {
    /// `f'` as a function on the same domain.
    pub fn derivative_fn(&self) -> ScalarFunction {
        ScalarFunction::new(Body::Derivative(self.clone()), self.domain, &format!("d/dx {}", self.label))
    }

    /// Numeric inverse on the given image interval.
    pub fn inverse_fn(&self, image: Interval) -> ScalarFunction {
        ScalarFunction::new(Body::Inverse(self.clone()), image, &format!("inverse of {}", self.label))
    }
}

//! Expression parsing, evaluation, and Taylor jets.
//!
//! Derivatives are never taken symbolically or by finite differences:
//! [`Expression::eval_jet`] pushes truncated power series through the
//! tree, so the k-th coefficient is exact up to round-off.

mod ast;
mod parser;
pub mod series;

use std::fmt;

pub use ast::{BinOp, Func, Node};
pub use parser::VARIABLES;

use crate::error::{finite, Error, Result};
use crate::specfun::{self, Branch};

/// Truncated Taylor expansion of a function at `basepoint`:
/// `coeffs[k] = f^(k)(basepoint) / k!`.
#[derive(Debug, Clone, PartialEq)]
pub struct Jet {
    pub basepoint: f64,
    pub coeffs: Vec<f64>,
}

impl Jet {
    pub fn new(basepoint: f64, coeffs: Vec<f64>) -> Result<Jet> {
        if coeffs.is_empty() {
            return Err(Error::InvalidParameter("a jet needs at least one coefficient".into()));
        }
        for (k, c) in coeffs.iter().enumerate() {
            finite(*c, &format!("jet coefficient {k}"))?;
        }
        Ok(Jet { basepoint, coeffs })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `f^(k)(basepoint)`.
    pub fn derivative(&self, k: usize) -> f64 {
        self.coeffs.get(k).map_or(0.0, |c| c * factorial(k))
    }

    /// Evaluates the Taylor polynomial at `basepoint + h`.
    pub fn eval_offset(&self, h: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * h + c)
    }

    pub fn truncate(&self, order: usize) -> Jet {
        Jet {
            basepoint: self.basepoint,
            coeffs: self.coeffs[..=order.min(self.order())].to_vec(),
        }
    }
}

pub(crate) fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

/// A parsed expression in one variable.
#[derive(Debug, Clone, PartialEq)]
pub struct Expression {
    ast: Node,
    source: String,
    var: String,
}

/// Parses `text` as an expression in one of the variables `x`, `m`, `t`.
pub fn parse(text: &str) -> Result<Expression> {
    parse_with(text, &[])
}

/// Parses with named constants substituted at parse time.
pub fn parse_with(text: &str, bindings: &[(String, f64)]) -> Result<Expression> {
    let parsed = parser::parse(text, bindings)?;
    Ok(Expression {
        ast: parsed.ast,
        source: text.to_string(),
        var: parsed.var.unwrap_or_else(|| "x".to_string()),
    })
}

impl Expression {
    pub fn from_ast(ast: Node, var: &str) -> Expression {
        let mut e = Expression { ast, source: String::new(), var: var.to_string() };
        e.source = e.to_string();
        e
    }

    pub fn ast(&self) -> &Node {
        &self.ast
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        finite(eval_node(&self.ast, x)?, &format!("{} at {x}", self.source))
    }

    /// Evaluates without rejecting infinite results (used for interval endpoints).
    pub(crate) fn eval_unchecked(&self) -> Result<f64> {
        let v = eval_node(&self.ast, 0.0)?;
        if v.is_nan() {
            return Err(Error::NonFinite(format!("{} is NaN", self.source)));
        }
        Ok(v)
    }

    pub fn eval_jet(&self, basepoint: f64, order: usize) -> Result<Jet> {
        let s = jet_node(&self.ast, &series::variable(basepoint, order + 1))?;
        Jet::new(basepoint, s)
    }

    pub fn deriv(&self, x: f64, k: usize) -> Result<f64> {
        Ok(self.eval_jet(x, k)?.derivative(k))
    }
}

impl fmt::Display for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.ast.write(&self.var, f)
    }
}

pub fn eval(e: &Expression, x: f64) -> Result<f64> {
    e.eval(x)
}

pub fn eval_jet(e: &Expression, basepoint: f64, order: usize) -> Result<Jet> {
    e.eval_jet(basepoint, order)
}

pub fn deriv(e: &Expression, x: f64, k: usize) -> Result<f64> {
    e.deriv(x, k)
}

fn eval_node(node: &Node, x: f64) -> Result<f64> {
    Ok(match node {
        Node::Const(v) => *v,
        Node::Var => x,
        Node::Neg(a) => -eval_node(a, x)?,
        Node::Binary(op, a, b) => {
            let a = eval_node(a, x)?;
            let b = eval_node(b, x)?;
            match op {
                BinOp::Add => a + b,
                BinOp::Sub => a - b,
                BinOp::Mul => a * b,
                BinOp::Div => {
                    if b == 0.0 {
                        return Err(Error::DivisionByZero(format!("{a} / 0")));
                    }
                    a / b
                }
                BinOp::Pow => pow_value(a, b)?,
            }
        }
        Node::Call(f, args) => {
            let a = eval_node(&args[0], x)?;
            if *f == Func::Log {
                let v = eval_node(&args[1], x)?;
                if a <= 0.0 || a == 1.0 || v <= 0.0 {
                    return Err(Error::domain(format!("log({a}, {v})")));
                }
                return Ok(v.ln() / a.ln());
            }
            apply(*f, a)?
        }
    })
}

fn pow_value(a: f64, b: f64) -> Result<f64> {
    if a < 0.0 && b.fract() != 0.0 {
        return Err(Error::domain(format!("{a} ^ {b}")));
    }
    if a == 0.0 && b < 0.0 {
        return Err(Error::DivisionByZero(format!("0 ^ {b}")));
    }
    Ok(a.powf(b))
}

/// Scalar value of a one-argument named function.
pub fn apply(f: Func, a: f64) -> Result<f64> {
    let dom = |ok: bool| {
        if ok {
            Ok(())
        } else {
            Err(Error::domain(format!("{}({a})", f.name())))
        }
    };
    Ok(match f {
        Func::Sin => a.sin(),
        Func::Cos => a.cos(),
        Func::Tan => a.tan(),
        Func::Asin => {
            dom(a.abs() <= 1.0)?;
            a.asin()
        }
        Func::Acos => {
            dom(a.abs() <= 1.0)?;
            a.acos()
        }
        Func::Atan => a.atan(),
        Func::Sinh => a.sinh(),
        Func::Cosh => a.cosh(),
        Func::Tanh => a.tanh(),
        Func::Asinh => a.asinh(),
        Func::Acosh => {
            dom(a >= 1.0)?;
            a.acosh()
        }
        Func::Atanh => {
            dom(a.abs() < 1.0)?;
            a.atanh()
        }
        Func::Exp => a.exp(),
        Func::Ln => {
            dom(a > 0.0)?;
            a.ln()
        }
        Func::Sqrt => {
            dom(a >= 0.0)?;
            a.sqrt()
        }
        Func::Abs => a.abs(),
        Func::Erf => specfun::erf(a),
        Func::Erfc => specfun::erfc(a),
        Func::Phi => specfun::phi(a),
        Func::LambertW0 => specfun::lambert_w(a, Branch::Principal)?,
        Func::LambertWm1 => specfun::lambert_w(a, Branch::Lower)?,
        Func::Ei => specfun::expint_ei(a)?,
        Func::Li => specfun::li(a)?,
        Func::Erfinv => specfun::erfinv(a)?,
        Func::Erfcinv => specfun::erfcinv(a)?,
        Func::Probit => specfun::probit(a)?,
        Func::WrightOmega => specfun::wright_omega(a)?,
        Func::Log => return Err(Error::domain("log takes two arguments")),
    })
}

fn jet_node(node: &Node, xs: &[f64]) -> Result<Vec<f64>> {
    let n = xs.len();
    Ok(match node {
        Node::Const(v) => series::constant(*v, n),
        Node::Var => xs.to_vec(),
        Node::Neg(a) => series::neg(&jet_node(a, xs)?),
        Node::Binary(op, a, b) => {
            if *op == BinOp::Pow {
                return pow_series(a, b, xs);
            }
            let a = jet_node(a, xs)?;
            let b = jet_node(b, xs)?;
            match op {
                BinOp::Add => series::add(&a, &b),
                BinOp::Sub => series::sub(&a, &b),
                BinOp::Mul => series::mul(&a, &b),
                BinOp::Div => series::div(&a, &b)?,
                BinOp::Pow => unreachable!(),
            }
        }
        Node::Call(Func::Log, args) => {
            let base = jet_node(&args[0], xs)?;
            let v = jet_node(&args[1], xs)?;
            if base[0] == 1.0 {
                return Err(Error::domain("log with base 1"));
            }
            series::div(&series::ln(&v)?, &series::ln(&base)?)?
        }
        Node::Call(f, args) => apply_series(*f, &jet_node(&args[0], xs)?)?,
    })
}

fn pow_series(a: &Node, b: &Node, xs: &[f64]) -> Result<Vec<f64>> {
    let u = jet_node(a, xs)?;
    if b.is_constant() {
        let p = eval_node(b, 0.0)?;
        if u[0] == 0.0 && p < 0.0 {
            return Err(Error::DivisionByZero(format!("0 ^ {p}")));
        }
        return series::powf(&u, p);
    }
    let v = jet_node(b, xs)?;
    if u[0] <= 0.0 {
        return Err(Error::domain(format!("{} ^ (variable exponent)", u[0])));
    }
    Ok(series::exp(&series::mul(&v, &series::ln(&u)?)))
}

/// Series of `f(u)` for a one-argument named function.
pub fn apply_series(f: Func, u: &[f64]) -> Result<Vec<f64>> {
    use std::f64::consts::PI;
    let n = u.len();
    let u0 = u[0];
    let v0 = apply(f, u0)?;
    if n == 1 {
        return Ok(vec![v0]);
    }
    // series of F'(u), one term shorter
    let short = &u[..n - 1];
    let one = series::constant(1.0, n - 1);
    let sq = series::mul(short, short);
    let chain = |w: Vec<f64>| Ok(series::integrate_chain(v0, u, &w));
    let singular = || Err(Error::domain(format!("{} is not differentiable at {u0}", f.name())));
    match f {
        Func::Sin => Ok(series::sin_cos(u).0),
        Func::Cos => Ok(series::sin_cos(u).1),
        Func::Tan => Ok(series::tan_like(u, v0, 1.0)),
        Func::Sinh => Ok(series::sinh_cosh(u).0),
        Func::Cosh => Ok(series::sinh_cosh(u).1),
        Func::Tanh => Ok(series::tan_like(u, v0, -1.0)),
        Func::Exp => Ok(series::exp(u)),
        Func::Ln => series::ln(u),
        Func::Sqrt => {
            if u0 == 0.0 {
                return singular();
            }
            series::sqrt(u)
        }
        Func::Abs => {
            if u0 > 0.0 {
                Ok(u.to_vec())
            } else if u0 < 0.0 {
                Ok(series::neg(u))
            } else {
                singular()
            }
        }
        Func::Asin | Func::Acos => {
            if u0.abs() >= 1.0 {
                return singular();
            }
            let w = series::powf(&series::sub(&one, &sq), -0.5)?;
            chain(if f == Func::Asin { w } else { series::neg(&w) })
        }
        Func::Atan => chain(series::recip(&series::add(&one, &sq))?),
        Func::Asinh => chain(series::powf(&series::add(&one, &sq), -0.5)?),
        Func::Acosh => {
            if u0 <= 1.0 {
                return singular();
            }
            chain(series::powf(&series::sub(&sq, &one), -0.5)?)
        }
        Func::Atanh => chain(series::recip(&series::sub(&one, &sq))?),
        Func::Erf | Func::Erfc => {
            let w = series::scale(&series::exp(&series::neg(&sq)), 2.0 / PI.sqrt());
            chain(if f == Func::Erf { w } else { series::neg(&w) })
        }
        Func::Phi => {
            let w = series::scale(&series::exp(&series::scale(&sq, -0.5)), 1.0 / (2.0 * PI).sqrt());
            chain(w)
        }
        Func::Ei => chain(series::div(&series::exp(short), short)?),
        Func::Li => {
            if u0 == 0.0 {
                return singular();
            }
            chain(series::recip(&series::ln(short)?)?)
        }
        Func::LambertW0 | Func::LambertWm1 => {
            if v0 == -1.0 {
                return singular();
            }
            // W' = e^{-W} / (1 + W)
            series::online(v0, u, |y| {
                let one = series::constant(1.0, y.len());
                series::div(&series::exp(&series::neg(y)), &series::add(&one, y))
            })
        }
        Func::WrightOmega => series::online(v0, u, |y| {
            let one = series::constant(1.0, y.len());
            series::div(y, &series::add(&one, y))
        }),
        Func::Erfinv | Func::Erfcinv => {
            let c = if f == Func::Erfinv { 0.5 } else { -0.5 } * PI.sqrt();
            series::online(v0, u, |y| Ok(series::scale(&series::exp(&series::mul(y, y)), c)))
        }
        Func::Probit => series::online(v0, u, |y| {
            Ok(series::scale(&series::exp(&series::scale(&series::mul(y, y), 0.5)), (2.0 * PI).sqrt()))
        }),
        Func::Log => Err(Error::domain("log takes two arguments")),
    }
}

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr;

/// A real interval; infinite endpoints are always open.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Interval {
    pub fn new(lo: f64, hi: f64, lo_closed: bool, hi_closed: bool) -> Result<Interval> {
        if lo.is_nan() || hi.is_nan() || lo > hi {
            return Err(Error::domain(format!("invalid interval [{lo}, {hi}]")));
        }
        if lo == f64::INFINITY || hi == f64::NEG_INFINITY {
            return Err(Error::domain(format!("empty interval [{lo}, {hi}]")));
        }
        let iv = Interval {
            lo,
            hi,
            lo_closed: lo_closed && lo.is_finite(),
            hi_closed: hi_closed && hi.is_finite(),
        };
        if lo == hi && !(iv.lo_closed && iv.hi_closed) {
            return Err(Error::domain(format!("empty interval at {lo}")));
        }
        Ok(iv)
    }

    pub fn open(lo: f64, hi: f64) -> Interval {
        Interval::new(lo, hi, false, false).expect("valid open interval")
    }

    pub fn closed(lo: f64, hi: f64) -> Interval {
        Interval::new(lo, hi, true, true).expect("valid closed interval")
    }

    pub fn real_line() -> Interval {
        Interval::open(f64::NEG_INFINITY, f64::INFINITY)
    }

    pub fn point(v: f64) -> Interval {
        Interval::closed(v, v)
    }

    pub fn contains(&self, x: f64) -> bool {
        (x > self.lo || (self.lo_closed && x == self.lo)) && (x < self.hi || (self.hi_closed && x == self.hi))
    }

    pub fn contains_interior(&self, x: f64) -> bool {
        x > self.lo && x < self.hi
    }

    pub fn is_bounded(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    /// Image under `x -> a x + b` (`a != 0`).
    pub fn affine(&self, a: f64, b: f64) -> Result<Interval> {
        if a == 0.0 || !a.is_finite() || !b.is_finite() {
            return Err(Error::InvalidParameter(format!("affine map with scale {a}, shift {b}")));
        }
        let (p, q) = (a * self.lo + b, a * self.hi + b);
        if a > 0.0 {
            Interval::new(p, q, self.lo_closed, self.hi_closed)
        } else {
            Interval::new(q, p, self.hi_closed, self.lo_closed)
        }
    }

    /// Minkowski sum.
    pub fn sum(&self, other: &Interval) -> Result<Interval> {
        Interval::new(
            self.lo + other.lo,
            self.hi + other.hi,
            self.lo_closed && other.lo_closed,
            self.hi_closed && other.hi_closed,
        )
    }

    pub fn intersect(&self, other: &Interval) -> Result<Interval> {
        let (lo, lo_closed) = if self.lo > other.lo {
            (self.lo, self.lo_closed)
        } else if other.lo > self.lo {
            (other.lo, other.lo_closed)
        } else {
            (self.lo, self.lo_closed && other.lo_closed)
        };
        let (hi, hi_closed) = if self.hi < other.hi {
            (self.hi, self.hi_closed)
        } else if other.hi < self.hi {
            (other.hi, other.hi_closed)
        } else {
            (self.hi, self.hi_closed && other.hi_closed)
        };
        Interval::new(lo, hi, lo_closed, hi_closed)
            .map_err(|_| Error::EmptyFeasibleSet(format!("{self} and {other} do not overlap")))
    }

    /// Image under `x -> 1/x`; the interval must not contain 0.
    pub fn reciprocal(&self) -> Result<Interval> {
        if self.contains(0.0) || (self.lo < 0.0 && self.hi > 0.0) {
            return Err(Error::InvalidParameter(format!("{self} contains 0")));
        }
        let inv = |v: f64| if v == 0.0 { if self.lo >= 0.0 { f64::INFINITY } else { f64::NEG_INFINITY } } else { 1.0 / v };
        let (a, b) = (inv(self.hi), inv(self.lo));
        Interval::new(a.min(b), a.max(b), self.hi_closed, self.lo_closed)
    }

    /// Parses `(lo,hi]` style text; endpoints are constant expressions that
    /// may use the given bindings and `inf`.
    pub fn parse(text: &str, bindings: &[(String, f64)]) -> Result<Interval> {
        let t = text.trim();
        let bad = || Error::Syntax { offset: 0, message: format!("malformed interval `{text}`") };
        let lo_closed = match t.chars().next() {
            Some('[') => true,
            Some('(') => false,
            _ => return Err(bad()),
        };
        let hi_closed = match t.chars().last() {
            Some(']') => true,
            Some(')') => false,
            _ => return Err(bad()),
        };
        let body = &t[1..t.len() - 1];
        let mut depth = 0i32;
        let split = body
            .char_indices()
            .find(|&(_, c)| {
                match c {
                    '(' => depth += 1,
                    ')' => depth -= 1,
                    _ => {}
                }
                c == ',' && depth == 0
            })
            .map(|(i, _)| i)
            .ok_or_else(bad)?;
        let endpoint = |s: &str| -> Result<f64> {
            let e = expr::parse_with(s, bindings)?;
            if !e.ast().is_constant() {
                return Err(Error::Syntax { offset: 0, message: format!("endpoint `{s}` is not constant") });
            }
            e.eval_unchecked()
        };
        Interval::new(endpoint(&body[..split])?, endpoint(&body[split + 1..])?, lo_closed, hi_closed)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let end = |v: f64| {
            if v == f64::INFINITY {
                "inf".to_string()
            } else if v == f64::NEG_INFINITY {
                "-inf".to_string()
            } else {
                format!("{v}")
            }
        };
        write!(
            f,
            "{}{}, {}{}",
            if self.lo_closed { '[' } else { '(' },
            end(self.lo),
            end(self.hi),
            if self.hi_closed { ']' } else { ')' }
        )
    }
}

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// How a polyline continues past its outermost vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum End {
    /// A ray with the given slope.
    Ray(Rational),
    /// The domain stops at the vertex (slope of plus or minus infinity).
    Wall,
}

/// A convex piecewise-linear function held in exact rational arithmetic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiecewiseLinear {
    vertices: Vec<(Rational, Rational)>,
    left: End,
    right: End,
}

pub fn rational(v: f64) -> Result<Rational> {
    Rational::from_float(v).ok_or_else(|| Error::InvalidPolyline(format!("non-finite value {v}")))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

impl PiecewiseLinear {
    /// Validates and canonicalizes: x strictly increasing, chord slopes
    /// nondecreasing, collinear vertices dropped, and a straight line
    /// anchored at x = 0.
    pub fn new(vertices: Vec<(Rational, Rational)>, left: End, right: End) -> Result<PiecewiseLinear> {
        if vertices.is_empty() {
            return Err(Error::InvalidPolyline("no vertices".into()));
        }
        for w in vertices.windows(2) {
            if w[1].0 <= w[0].0 {
                return Err(Error::InvalidPolyline(format!(
                    "vertex x values must increase ({} then {})",
                    w[0].0, w[1].0
                )));
            }
        }
        let mut slopes: Vec<Option<Rational>> = Vec::with_capacity(vertices.len() + 1);
        slopes.push(match &left {
            End::Ray(s) => Some(s.clone()),
            End::Wall => None,
        });
        for w in vertices.windows(2) {
            slopes.push(Some((&w[1].1 - &w[0].1) / (&w[1].0 - &w[0].0)));
        }
        slopes.push(match &right {
            End::Ray(s) => Some(s.clone()),
            End::Wall => None,
        });
        let finite: Vec<&Rational> = slopes.iter().flatten().collect();
        for w in finite.windows(2) {
            if w[1] < w[0] {
                return Err(Error::InvalidPolyline(format!("chord slope decreases from {} to {}", w[0], w[1])));
            }
        }
        let keep: Vec<usize> = (0..vertices.len())
            .filter(|&i| match (&slopes[i], &slopes[i + 1]) {
                (Some(a), Some(b)) => a != b,
                _ => true,
            })
            .collect();
        let vertices = if keep.is_empty() {
            // a straight line: y = y0 + s (x - x0), anchored at x = 0
            let s = slopes[0].clone().expect("line slope");
            let (x0, y0) = &vertices[0];
            vec![(Rational::zero(), y0 - &s * x0)]
        } else {
            keep.into_iter().map(|i| vertices[i].clone()).collect()
        };
        Ok(PiecewiseLinear { vertices, left, right })
    }

    /// Builds from floating-point data (converted exactly). Infinite end
    /// slopes mark walls: `left_slope = -inf`, `right_slope = +inf`.
    pub fn from_f64(vertices: &[(f64, f64)], left_slope: f64, right_slope: f64) -> Result<PiecewiseLinear> {
        let vs = vertices
            .iter()
            .map(|&(x, y)| Ok((rational(x)?, rational(y)?)))
            .collect::<Result<Vec<_>>>()?;
        let end = |s: f64, wall: f64| -> Result<End> {
            if s == wall {
                Ok(End::Wall)
            } else {
                rational(s).map(End::Ray)
            }
        };
        PiecewiseLinear::new(vs, end(left_slope, f64::NEG_INFINITY)?, end(right_slope, f64::INFINITY)?)
    }

    /// The line `y = a x - b` on the whole real line.
    pub fn line(a: Rational, b: Rational) -> PiecewiseLinear {
        PiecewiseLinear::new(vec![(Rational::zero(), -b)], End::Ray(a.clone()), End::Ray(a)).expect("a line is convex")
    }

    pub fn vertices(&self) -> &[(Rational, Rational)] {
        &self.vertices
    }

    pub fn left(&self) -> &End {
        &self.left
    }

    pub fn right(&self) -> &End {
        &self.right
    }

    pub fn vertices_f64(&self) -> Vec<(f64, f64)> {
        self.vertices.iter().map(|(x, y)| (to_f64(x), to_f64(y))).collect()
    }

    /// Exact value at `x`; `None` outside the domain.
    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let first = &self.vertices[0];
        let last = self.vertices.last().expect("nonempty");
        if x < &first.0 {
            return match &self.left {
                End::Ray(s) => Some(&first.1 + s * (x - &first.0)),
                End::Wall => None,
            };
        }
        if x > &last.0 {
            return match &self.right {
                End::Ray(s) => Some(&last.1 + s * (x - &last.0)),
                End::Wall => None,
            };
        }
        let i = self.vertices.partition_point(|v| &v.0 <= x).max(1);
        if i >= self.vertices.len() {
            return Some(last.1.clone());
        }
        let (a, b) = (&self.vertices[i - 1], &self.vertices[i]);
        Some(&a.1 + (&b.1 - &a.1) * (x - &a.0) / (&b.0 - &a.0))
    }

    pub fn eval_f64(&self, x: f64) -> Option<f64> {
        self.eval(&rational(x).ok()?).map(|v| to_f64(&v))
    }
}

/// Exact conjugate polyline: every line of support `y = s x - d` becomes the
/// vertex `(s, d)`, and every vertex becomes a segment.
pub fn piecewise_linear_dual(p: &PiecewiseLinear) -> PiecewiseLinear {
    let first = &p.vertices[0];
    let last = p.vertices.last().expect("nonempty");
    let mut duals: Vec<(Rational, Rational)> = Vec::new();
    let mut push = |s: Rational, (x, y): &(Rational, Rational)| {
        let d = &s * x - y;
        if duals.last().map_or(true, |(ls, _)| *ls != s) {
            duals.push((s, d));
        }
    };
    if let End::Ray(s) = &p.left {
        push(s.clone(), first);
    }
    for w in p.vertices.windows(2) {
        let s = (&w[1].1 - &w[0].1) / (&w[1].0 - &w[0].0);
        push(s, &w[0]);
    }
    if let End::Ray(s) = &p.right {
        push(s.clone(), last);
    }
    let left = match p.left {
        End::Ray(_) => End::Wall,
        End::Wall => End::Ray(first.0.clone()),
    };
    let right = match p.right {
        End::Ray(_) => End::Wall,
        End::Wall => End::Ray(last.0.clone()),
    };
    if duals.is_empty() {
        // a single point with walls on both sides: its dual is a line
        let (x0, y0) = first;
        return PiecewiseLinear::line(x0.clone(), y0.clone());
    }
    PiecewiseLinear::new(duals, left, right).expect("the conjugate of a convex polyline is convex")
}

impl fmt::Display for PiecewiseLinear {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let end = |e: &End| match e {
            End::Ray(s) => format!("ray slope {s}"),
            End::Wall => "wall".to_string(),
        };
        write!(f, "{} | ", end(&self.left))?;
        for (i, (x, y)) in self.vertices.iter().enumerate() {
            if i > 0 {
                f.write_str(" -- ")?;
            }
            write!(f, "({x}, {y})")?;
        }
        write!(f, " | {}", end(&self.right))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        ratio(n, 1)
    }

    #[test]
    fn method_two_example() {
        // y = -x + 2 for x <= 1, y = 2x - 1 for x > 1
        let p = PiecewiseLinear::new(vec![(r(1), r(1))], End::Ray(r(-1)), End::Ray(r(2))).unwrap();
        let d = piecewise_linear_dual(&p);
        assert_eq!(d.vertices(), &[(r(-1), r(-2)), (r(2), r(1))]);
        assert_eq!(d.left(), &End::Wall);
        assert_eq!(d.right(), &End::Wall);
        // d = m - 1 on the segment
        assert_eq!(d.eval(&ratio(1, 2)).unwrap(), ratio(-1, 2));
        assert_eq!(piecewise_linear_dual(&d), p);
    }

    #[test]
    fn line_maps_to_point() {
        let p = PiecewiseLinear::line(r(3), r(5));
        let d = piecewise_linear_dual(&p);
        assert_eq!(d.vertices(), &[(r(3), r(5))]);
        assert_eq!((d.left(), d.right()), (&End::Wall, &End::Wall));
        assert_eq!(piecewise_linear_dual(&d), p);
    }

    #[test]
    fn abs_maps_to_flat_segment() {
        let p = PiecewiseLinear::new(vec![(r(0), r(0))], End::Ray(r(-1)), End::Ray(r(1))).unwrap();
        let d = piecewise_linear_dual(&p);
        assert_eq!(d.vertices(), &[(r(-1), r(0)), (r(1), r(0))]);
    }

    #[test]
    fn rejects_concave_and_unordered() {
        let bad = PiecewiseLinear::from_f64(&[(0.0, 0.0), (1.0, 1.0), (2.0, 1.0)], f64::NEG_INFINITY, f64::INFINITY);
        assert!(matches!(bad, Err(Error::InvalidPolyline(_))));
        let bad = PiecewiseLinear::from_f64(&[(1.0, 0.0), (0.0, 1.0)], f64::NEG_INFINITY, f64::INFINITY);
        assert!(matches!(bad, Err(Error::InvalidPolyline(_))));
        let bad = PiecewiseLinear::from_f64(&[(0.0, 0.0)], 2.0, 1.0);
        assert!(matches!(bad, Err(Error::InvalidPolyline(_))));
    }

    #[test]
    fn collinear_vertices_are_dropped() {
        let p = PiecewiseLinear::from_f64(&[(0.0, 0.0), (1.0, 1.0), (2.0, 2.0), (3.0, 4.0)], f64::NEG_INFINITY, f64::INFINITY)
            .unwrap();
        assert_eq!(p.vertices().len(), 3);
        assert_eq!(piecewise_linear_dual(&piecewise_linear_dual(&p)), p);
    }
}

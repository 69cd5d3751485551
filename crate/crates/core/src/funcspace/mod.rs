//! Functions with validity intervals, dual-curve samples, convex polylines
//! and transform pairs.

mod function;
mod interval;
mod pair;
mod polyline;
mod sample;

pub use function::{make_function, solve_monotone, Body, QuadratureDef, ScalarFunction, Source, QUAD_TOL};
pub use interval::Interval;
pub use pair::{Parameter, TransformPair};
pub use polyline::{piecewise_linear_dual, ratio, rational, End, PiecewiseLinear, Rational};
pub use sample::{hull_of, image_of, interior_samples, range_of_derivative, DualCurveSample};

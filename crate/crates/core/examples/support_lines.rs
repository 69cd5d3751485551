//! Completing the transform of sin on its convex stretch (-pi/2, 0) with
//! the supporting lines at the two endpoints.

use std::f64::consts::FRAC_PI_2;

use legendre::funcspace::{Interval, ScalarFunction};
use legendre::transform::extend_with_support_lines;

fn main() -> legendre::Result<()> {
    let f = ScalarFunction::from_expr("sin(x)", Interval::open(-FRAC_PI_2, 0.0))?;
    let core = ScalarFunction::from_expr("-m*asin(sqrt(1-m^2))+sqrt(1-m^2)", Interval::open(0.0, 1.0))?;
    let g = extend_with_support_lines(&core, &f)?;
    for m in [-1.0, -0.5, 0.0, 0.25, 0.5, 0.75, 1.0, 1.5, 3.0] {
        println!("g({m:5}) = {:.12}", g.eval(m)?);
    }
    // below slope 0 the line through (-pi/2, -1), above slope 1 the line through (0, 0)
    println!("-(pi/2) m + 1 at m = -1: {}", FRAC_PI_2 + 1.0);
    Ok(())
}

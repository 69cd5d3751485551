//! Tangent-line coordinates (x, m, d) of a function that is neither convex
//! nor concave: the dual is a curve rather than a function.

use legendre::funcspace::{Interval, ScalarFunction};
use legendre::transform::parametric_dual;

fn main() -> legendre::Result<()> {
    let f = ScalarFunction::from_expr("sin(x^2) - x^3 + exp(x)", Interval::real_line())?;
    let xs: Vec<f64> = (-4..=4).map(|i| i as f64 * 0.5).collect();
    let dual = parametric_dual(&f, &xs);
    println!("{:>6} {:>14} {:>14}", "x", "m", "d");
    for (x, m, d) in &dual.points {
        println!("{x:>6} {m:>14.6} {d:>14.6}");
    }

    // sin on (-pi/2, pi/2): x and -x share a slope but not an intercept
    let half = std::f64::consts::FRAC_PI_2;
    let s = ScalarFunction::from_expr("sin(x)", Interval::open(-half, half))?;
    let both = parametric_dual(&s, &[-0.8, 0.8]);
    println!("sin: {:?}", both.points);
    let outside = parametric_dual(&s, &[2.0]);
    println!("skipped: {:?}", outside.skipped);
    Ok(())
}

//! Singular solution of the Clairaut equation y = x y' + h(y'), traced as
//! the envelope of its straight-line solutions.

use legendre::funcspace::{Interval, ScalarFunction};
use legendre::transform::clairaut_singular_solution;

fn main() -> legendre::Result<()> {
    let h = ScalarFunction::from_expr("-m^2/4", Interval::real_line())?;
    let ms: Vec<f64> = (-4..=4).map(|i| i as f64 * 0.5).collect();
    let sol = clairaut_singular_solution(&h, &ms)?;
    println!("general solution: {}", sol.general_solution);
    for (x, m, y) in &sol.envelope.points {
        // the envelope of y = c x - c^2/4 is y = x^2
        println!("slope {m:5}: ({x}, {y})  x^2 = {}", x * x);
    }
    let line = ScalarFunction::from_expr("2*m+1", Interval::real_line())?;
    println!("h linear, degenerate = {}", clairaut_singular_solution(&line, &ms)?.degenerate);
    Ok(())
}

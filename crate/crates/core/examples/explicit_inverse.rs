//! Transform by inverting f' explicitly: g(m) = m x(m) - f(x(m)).

use legendre::funcspace::{Interval, ScalarFunction};
use legendre::transform::method1_explicit;

fn main() -> legendre::Result<()> {
    let f = ScalarFunction::from_expr("exp(x)", Interval::real_line())?;
    let inv = ScalarFunction::from_expr("ln(x)", Interval::open(0.0, f64::INFINITY))?;
    for m in [0.5, 1.0, 2.0, 10.0] {
        let g = method1_explicit(&f, &inv, m)?;
        println!("g({m}) = {g}   (m ln m - m = {})", m * m.ln() - m);
    }
    Ok(())
}

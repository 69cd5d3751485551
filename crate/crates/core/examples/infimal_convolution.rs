//! Infimal convolution: the transform of a sum is the infimal convolution
//! of the transforms.

use legendre::funcspace::{Interval, ScalarFunction};
use legendre::transform::infimal_convolution;

fn main() -> legendre::Result<()> {
    // |x| box x^2/2 is the Huber function
    let abs = ScalarFunction::from_expr("abs(x)", Interval::real_line())?;
    let sq = ScalarFunction::from_expr("x^2/2", Interval::real_line())?;
    let ts: Vec<f64> = (0..=2000).map(|i| -5.0 + i as f64 * 0.005).collect();
    for x in [-3.0, -0.5, 0.0, 0.8, 2.0] {
        let v = infimal_convolution(&abs, &sq, x, &ts)?;
        let huber = if x.abs() <= 1.0 { x * x / 2.0 } else { x.abs() - 0.5 };
        println!("({x}) = {v:.12}   huber {huber}");
    }
    Ok(())
}

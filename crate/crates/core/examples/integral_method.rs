//! g(m) = g(m0) + integral of (f')^{-1} from m0 to m.

use legendre::funcspace::{Interval, ScalarFunction};
use legendre::transform::integral_transform;

fn main() -> legendre::Result<()> {
    // f = cos x on (-pi/2, pi/2): f'(x) = -sin x, so (f')^{-1}(m) = -asin m
    let inv = ScalarFunction::from_expr("-asin(m)", Interval::closed(-1.0, 1.0))?;
    // anchor m0 = 0 at x = 0, where g(0) = -cos 0 = -1
    for m in [-0.99, -0.5, 0.0, 0.3, 0.9] {
        let g = integral_transform(&inv, 0.0, -1.0, m)?;
        let closed = -m * m.asin() - (1.0 - m * m).sqrt();
        println!("m = {m:5}: g = {g:.15}  closed form {closed:.15}");
    }
    Ok(())
}

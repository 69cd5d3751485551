//! Exact duality of convex polylines: vertices become segments and
//! segments become vertices.

use legendre::funcspace::{piecewise_linear_dual, ratio, End, PiecewiseLinear};

fn main() -> legendre::Result<()> {
    // y = -x + 2 for x <= 1, y = 2x - 1 for x > 1
    let f = PiecewiseLinear::new(vec![(ratio(1, 1), ratio(1, 1))], End::Ray(ratio(-1, 1)), End::Ray(ratio(2, 1)))?;
    let g = piecewise_linear_dual(&f);
    println!("f: {f}");
    println!("g: {g}");
    println!("g(1/2) = {}", g.eval(&ratio(1, 2)).expect("inside"));
    assert_eq!(piecewise_linear_dual(&g), f);

    let hull = PiecewiseLinear::from_f64(&[(0.0, 1.0), (1.0, 0.0), (3.0, 0.5), (4.0, 2.0)], f64::NEG_INFINITY, f64::INFINITY)?;
    println!("polygon: {hull}");
    println!("dual:    {}", piecewise_linear_dual(&hull));
    Ok(())
}

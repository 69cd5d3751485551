//! Taylor coefficients of the transform from those of f: here
//! f = x sin x at 0, whose transform starts m^2/4 + m^4/96.

use legendre::expr;
use legendre::jets::dual_jet;

fn main() -> legendre::Result<()> {
    let f = expr::parse("x*sin(x)")?;
    let fj = f.eval_jet(0.0, 6)?;
    let gj = dual_jet(&fj, 6)?;
    println!("f coefficients at x0 = 0: {:?}", fj.coeffs);
    println!("g coefficients at m0 = {}: {:?}", gj.basepoint, gj.coeffs);

    // the transform of the transform is f again
    let back = dual_jet(&gj, 6)?;
    println!("round trip: {:?}", back.coeffs);

    let flat = expr::parse("x^3")?.eval_jet(0.0, 4)?;
    if let Err(e) = dual_jet(&flat, 4) {
        println!("x^3 at 0: {e}");
    }
    Ok(())
}

//! The special functions available in expressions.

use legendre::specfun::{erf, erfc, erfinv, expint_ei, lambert_w, li, phi, probit, wright_omega, Branch};

fn main() -> legendre::Result<()> {
    for x in [-0.3, 0.5, 10.0] {
        let w = lambert_w(x, Branch::Principal)?;
        println!("W0({x}) = {w}, w e^w = {}", w * w.exp());
    }
    let w = lambert_w(-0.2, Branch::Lower)?;
    println!("W-1(-0.2) = {w}");
    println!("omega(1) = {}", wright_omega(1.0)?);
    println!("erf(0.5) + erfc(0.5) = {}", erf(0.5) + erfc(0.5));
    println!("phi(1.2) = {}, probit of it = {}", phi(1.2), probit(phi(1.2))?);
    println!("erfinv(erf(0.7)) = {}", erfinv(erf(0.7))?);
    println!("Ei(1) = {}, li(10) = {}", expint_ei(1.0)?, li(10.0)?);
    Ok(())
}

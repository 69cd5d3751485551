//! Parse an expression, evaluate it, and read derivatives off its jet.

use legendre::expr;

fn main() -> legendre::Result<()> {
    let e = expr::parse("sin(x^2) - x^3 + exp(x)")?;
    println!("f(x) = {e}");
    println!("f(0.5) = {}", e.eval(0.5)?);
    let j = e.eval_jet(0.5, 4)?;
    for k in 0..=4 {
        println!("f^({k})(0.5) = {}", j.derivative(k));
    }
    match expr::parse("sin(x") {
        Err(err) => println!("rejected: {err}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}

//! Look up a catalog pair and check x f'(x) = f(x) + g(f'(x)) at a point.

use legendre::catalog;

fn main() -> legendre::Result<()> {
    let pair = catalog::lookup("c.ex")?;
    println!("{}: f = {}, g = {}", pair.entry_id, pair.f.label(), pair.g.label());
    println!("x in {}, m in {}", pair.x_domain, pair.m_domain);
    let x = 0.7;
    let m = pair.f.slope(x)?;
    println!("at x = {x}: m = {m}, residual = {:e}", x * m - pair.f.eval(x)? - pair.g.eval(m)?);

    let p = catalog::lookup_with("b.xpp", &[("p".into(), 4.0)])?;
    println!("{} with p = 4: q = {}", p.entry_id, p.parameter("q").unwrap_or(f64::NAN));

    let parts = ["b", "c", "d", "e"];
    for part in parts {
        let n = catalog::records().iter().filter(|r| r.part == part).count();
        println!("part {part}: {n} entries");
    }
    Ok(())
}

//! New pairs from old: rescaling the cubic-plus-quadratic entry into the
//! transform of a x^3 + b x^2, and a tour of the other properties on exp.

use legendre::catalog::{self, apply_property, Property, PROPERTY_IDS};
use legendre::verify::residual_sweep;

fn main() -> legendre::Result<()> {
    let (alpha, beta) = (2.0, 3.0);
    let base = catalog::lookup("b.x3x2.b")?;
    let inner = apply_property(&base, &Property::ScaleIn { a: 3.0 * alpha / (2.0 * beta) })?;
    let pair = apply_property(&inner, &Property::ScaleOut { a: (2.0 * beta).powi(3) / (3.0 * alpha).powi(2) })?;
    for x in [0.5, 1.0, 2.0] {
        println!("f({x}) = {}  (a x^3 + b x^2 = {})", pair.f.eval(x)?, alpha * x.powi(3) + beta * x * x);
    }
    println!("{}: g(5) = {}", pair.entry_id, pair.g.eval(5.0)?);

    let ex = catalog::lookup("c.ex")?;
    for id in PROPERTY_IDS {
        let args: Vec<(String, f64)> = match id {
            "scaleout" | "scalein" | "fpa" | "shiftin" => vec![("a".into(), 2.0)],
            "combo" => ["c", "s", "t", "b", "a"].iter().map(|n| (n.to_string(), 1.5)).collect(),
            "integral" => vec![("anchor".into(), 0.0)],
            _ => Vec::new(),
        };
        let p = apply_property(&ex, &Property::from_id(id, &args)?)?;
        let r = residual_sweep(&p, 200);
        println!("{:<10} {:<40} residual {:.1e}", id, p.entry_id, r.max_abs_residual);
    }
    Ok(())
}

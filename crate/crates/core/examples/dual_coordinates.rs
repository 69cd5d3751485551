//! The same line y = m x - d written as slope and intercept, and as
//! u x + v y = 1.

use legendre::transform::{convert_dual_coordinates, DualCoordinates};

fn main() -> legendre::Result<()> {
    for (m, d) in [(2.0, 4.0), (-1.0, 0.5), (0.0, -3.0)] {
        let (_, b) = convert_dual_coordinates((m, d), DualCoordinates::Mb)?;
        let (u, v) = convert_dual_coordinates((m, d), DualCoordinates::Uv)?;
        println!("y = {m} x - {d}:  b = {b},  u = {u}, v = {v}");
    }
    if let Err(e) = convert_dual_coordinates((1.0, 0.0), DualCoordinates::Uv) {
        println!("through the origin: {e}");
    }
    Ok(())
}

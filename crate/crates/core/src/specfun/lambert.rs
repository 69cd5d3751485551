use crate::error::{Error, Result};
use std::f64::consts::E;

/// Real branch of the Lambert W function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// Principal branch W0, defined on [-1/e, inf).
    Principal,
    /// Lower branch W-1, defined on [-1/e, 0).
    Lower,
}

const INV_E: f64 = 0.367_879_441_171_442_33;

/// Solves `w e^w = x` on the requested branch by Halley iteration.
pub fn lambert_w(x: f64, branch: Branch) -> Result<f64> {
    if x.is_nan() {
        return Err(Error::domain("Lambert W of NaN"));
    }
    // distance to the branch point, measured in a way that is exact at x = -1/e
    let q = x + INV_E;
    if q < -1e-15 {
        return Err(Error::domain(format!("Lambert W undefined below -1/e (x = {x})")));
    }
    match branch {
        Branch::Principal => {
            if x == 0.0 {
                return Ok(0.0);
            }
            if x == f64::INFINITY {
                return Ok(f64::INFINITY);
            }
        }
        Branch::Lower => {
            if x >= 0.0 {
                return Err(Error::domain(format!("W-1 is defined on [-1/e, 0), got {x}")));
            }
        }
    }
    if q <= 0.0 {
        return Ok(-1.0);
    }
    let p = (2.0 * E * q).sqrt();
    let w0 = match branch {
        Branch::Principal => {
            if x < -0.32 {
                -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p
            } else if x < 3.0 {
                let l = x.ln_1p();
                l * (1.0 - (1.0 + l).ln() / (2.0 + l))
            } else {
                let l1 = x.ln();
                let l2 = l1.ln();
                l1 - l2 + l2 / l1
            }
        }
        Branch::Lower => {
            if x < -0.25 {
                -1.0 - p - p * p / 3.0 - 11.0 / 72.0 * p * p * p
            } else {
                let l1 = (-x).ln();
                let l2 = (-l1).ln();
                l1 - l2 + l2 / l1
            }
        }
    };
    Ok(halley(x, w0))
}

fn halley(x: f64, mut w: f64) -> f64 {
    for _ in 0..64 {
        let ew = w.exp();
        let f = w * ew - x;
        let wp1 = w + 1.0;
        if wp1 == 0.0 {
            break;
        }
        let denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
        if denom == 0.0 || !denom.is_finite() {
            break;
        }
        let step = f / denom;
        let next = w - step;
        if !next.is_finite() {
            break;
        }
        let done = step.abs() <= 4.0 * f64::EPSILON * (1.0 + next.abs());
        w = next;
        if done {
            break;
        }
    }
    w
}

/// Wright omega function, the solution of `w + ln w = z`; equals W0(e^z)
/// but stays finite for large z.
pub fn wright_omega(z: f64) -> Result<f64> {
    if z.is_nan() {
        return Err(Error::domain("Wright omega of NaN"));
    }
    if z < 1.0 {
        return lambert_w(z.exp(), Branch::Principal);
    }
    if z == f64::INFINITY {
        return Ok(f64::INFINITY);
    }
    let mut w = z - z.ln();
    for _ in 0..64 {
        // Halley on phi(w) = w + ln w - z
        let f = w + w.ln() - z;
        let d1 = 1.0 + 1.0 / w;
        let d2 = -1.0 / (w * w);
        let step = f / (d1 - 0.5 * f * d2 / d1);
        w -= step;
        if step.abs() <= 4.0 * f64::EPSILON * w.abs() {
            break;
        }
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn principal_values() {
        assert_eq!(lambert_w(0.0, Branch::Principal).unwrap(), 0.0);
        assert_eq!(lambert_w(-INV_E, Branch::Principal).unwrap(), -1.0);
        assert!((lambert_w(1.0, Branch::Principal).unwrap() - 0.567_143_290_409_783_8).abs() < 1e-15);
        assert!((lambert_w(E, Branch::Principal).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn lower_values() {
        assert_eq!(lambert_w(-INV_E, Branch::Lower).unwrap(), -1.0);
        let w = lambert_w(-0.1, Branch::Lower).unwrap();
        assert!((w - -3.577_152_063_957_297).abs() < 1e-13);
        assert!(lambert_w(0.5, Branch::Lower).is_err());
        assert!(lambert_w(-0.5, Branch::Principal).is_err());
    }

    #[test]
    fn wright_omega_matches_w_of_exp() {
        for z in [-5.0, 0.0, 0.5, 1.0, 3.0, 20.0] {
            let a = wright_omega(z).unwrap();
            let b = lambert_w(f64::exp(z), Branch::Principal).unwrap();
            assert!((a - b).abs() < 1e-13 * (1.0 + b.abs()), "z = {z}");
        }
        let big = wright_omega(1000.0).unwrap();
        assert!((big + big.ln() - 1000.0).abs() < 1e-12);
    }
}

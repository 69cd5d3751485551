use super::{erfc, FRAC_2_SQRT_PI};
use crate::error::{Error, Result};
use std::f64::consts::SQRT_2;

/// Inverse of the standard normal CDF.
pub fn probit(p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::domain(format!("probit needs 0 < p < 1, got {p}")));
    }
    Ok(-SQRT_2 * erfcinv_unchecked(2.0 * p))
}

/// Inverse error function on (-1, 1).
pub fn erfinv(y: f64) -> Result<f64> {
    if !(y > -1.0 && y < 1.0) {
        return Err(Error::domain(format!("erfinv needs -1 < y < 1, got {y}")));
    }
    if y == 0.0 {
        return Ok(0.0);
    }
    // 1 - |y| is exact for |y| >= 1/2, which keeps the tails accurate.
    let x = erfcinv_unchecked(1.0 - y.abs());
    Ok(x.copysign(y))
}

/// Inverse complementary error function on (0, 2).
pub fn erfcinv(z: f64) -> Result<f64> {
    if !(z > 0.0 && z < 2.0) {
        return Err(Error::domain(format!("erfcinv needs 0 < z < 2, got {z}")));
    }
    Ok(erfcinv_unchecked(z))
}

fn erfcinv_unchecked(z: f64) -> f64 {
    if z == 1.0 {
        return 0.0;
    }
    if z > 1.0 {
        return -erfcinv_unchecked(2.0 - z);
    }
    // rational first guess for the normal quantile, then Newton on erfc
    let mut x = -acklam(z / 2.0) / SQRT_2;
    for _ in 0..50 {
        let r = erfc(x) - z;
        let slope = -FRAC_2_SQRT_PI * (-x * x).exp();
        if slope == 0.0 {
            break;
        }
        // Halley correction: erfc'' = -2x erfc'
        let step = r / slope;
        let step = step / (1.0 + x * step);
        x -= step;
        if step.abs() <= 2.0 * f64::EPSILON * x.abs().max(1e-300) {
            break;
        }
    }
    x
}

// Acklam's rational approximation of the normal quantile (relative error ~1e-9).
fn acklam(p: f64) -> f64 {
    const A: [f64; 6] = [
        -3.969_683_028_665_376e1,
        2.209_460_984_245_205e2,
        -2.759_285_104_469_687e2,
        1.383_577_518_672_69e2,
        -3.066_479_806_614_716e1,
        2.506_628_277_459_239,
    ];
    const B: [f64; 5] = [
        -5.447_609_879_822_406e1,
        1.615_858_368_580_409e2,
        -1.556_989_798_598_866e2,
        6.680_131_188_771_972e1,
        -1.328_068_155_288_572e1,
    ];
    const C: [f64; 6] = [
        -7.784_894_002_430_293e-3,
        -3.223_964_580_411_365e-1,
        -2.400_758_277_161_838,
        -2.549_732_539_343_734,
        4.374_664_141_464_968,
        2.938_163_982_698_783,
    ];
    const D: [f64; 4] = [
        7.784_695_709_041_462e-3,
        3.224_671_290_700_398e-1,
        2.445_134_137_142_996,
        3.754_408_661_907_416,
    ];
    const P_LOW: f64 = 0.02425;
    let tail = |q: f64| {
        (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    };
    if p < P_LOW {
        tail((-2.0 * p.ln()).sqrt())
    } else if p <= 1.0 - P_LOW {
        let q = p - 0.5;
        let r = q * q;
        (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q
            / (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0)
    } else {
        -tail((-2.0 * (1.0 - p).ln()).sqrt())
    }
}

use super::EULER_GAMMA;
use crate::error::{Error, Result};

/// Exponential integral Ei(x) (principal value for x > 0).
pub fn expint_ei(x: f64) -> Result<f64> {
    if x.is_nan() {
        return Err(Error::domain("Ei(NaN)"));
    }
    if x == 0.0 {
        return Err(Error::domain("Ei is singular at 0"));
    }
    if x < 0.0 {
        return Ok(-e1(-x));
    }
    if x > 709.0 {
        return Ok(f64::INFINITY);
    }
    if x <= 40.0 {
        Ok(ei_series(x))
    } else {
        Ok(ei_asymptotic(x))
    }
}

/// Logarithmic integral li(x) = Ei(ln x), with li(0) = 0.
pub fn li(x: f64) -> Result<f64> {
    if x.is_nan() || x < 0.0 {
        return Err(Error::domain(format!("li({x}) needs x >= 0")));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    if x == 1.0 {
        return Err(Error::domain("li is singular at 1"));
    }
    expint_ei(x.ln())
}

// gamma + ln x + sum x^k / (k k!)
fn ei_series(x: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 0.0;
    let mut k = 0.0;
    loop {
        k += 1.0;
        term *= x / k;
        let t = term / k;
        sum += t;
        if t < 1e-17 * sum.abs() {
            break;
        }
    }
    EULER_GAMMA + x.ln() + sum
}

// e^x / x * sum k! / x^k, truncated at the smallest term.
fn ei_asymptotic(x: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..100 {
        let next = term * k as f64 / x;
        if next > term {
            break;
        }
        term = next;
        sum += term;
        if term < 1e-17 {
            break;
        }
    }
    x.exp() / x * sum
}

/// E1(z) for z > 0.
fn e1(z: f64) -> f64 {
    if z <= 1.0 {
        let mut term = 1.0;
        let mut sum = 0.0;
        let mut k = 0.0;
        loop {
            k += 1.0;
            term *= -z / k;
            let t = term / k;
            sum += t;
            if t.abs() < 1e-18 {
                break;
            }
        }
        -EULER_GAMMA - z.ln() - sum
    } else if z > 745.0 {
        0.0
    } else {
        // E1(z) = e^{-z} / (z + 1 - 1/(z + 3 - 4/(z + 5 - ...))), modified Lentz
        const TINY: f64 = 1e-300;
        let mut b = z + 1.0;
        let mut c = 1.0 / TINY;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..500 {
            let a = -((i * i) as f64);
            b += 2.0;
            d = 1.0 / (a * d + b);
            c = b + a / c;
            let del = c * d;
            h *= del;
            if (del - 1.0).abs() < 1e-16 {
                break;
            }
        }
        h * (-z).exp()
    }
}

//! Truncated power series arithmetic.
//!
//! A series is a slice `c` with `c[k]` the coefficient of `h^k`. Every
//! operation returns a series of the same length as its inputs.

use crate::error::{Error, Result};

pub fn constant(v: f64, n: usize) -> Vec<f64> {
    let mut s = vec![0.0; n];
    if n > 0 {
        s[0] = v;
    }
    s
}

/// The series of `x0 + h`.
pub fn variable(x0: f64, n: usize) -> Vec<f64> {
    let mut s = constant(x0, n);
    if n > 1 {
        s[1] = 1.0;
    }
    s
}

pub fn add(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[f64], s: f64) -> Vec<f64> {
    a.iter().map(|x| x * s).collect()
}

pub fn neg(a: &[f64]) -> Vec<f64> {
    scale(a, -1.0)
}

pub fn mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    let n = a.len();
    (0..n)
        .map(|k| (0..=k).map(|j| a[j] * b[k - j]).sum())
        .collect()
}

pub fn div(a: &[f64], b: &[f64]) -> Result<Vec<f64>> {
    let n = a.len();
    if n == 0 {
        return Ok(vec![]);
    }
    if b[0] == 0.0 {
        return Err(Error::DivisionByZero("series division by a series vanishing at the basepoint".into()));
    }
    let mut q = vec![0.0; n];
    for k in 0..n {
        let acc: f64 = (1..=k).map(|j| b[j] * q[k - j]).sum();
        q[k] = (a[k] - acc) / b[0];
    }
    Ok(q)
}

pub fn recip(b: &[f64]) -> Result<Vec<f64>> {
    div(&constant(1.0, b.len()), b)
}

/// Given `u` and the series `w` of `F'(u)` (only the first `n - 1`
/// coefficients are read), returns the series of `F(u)` with `F(u0) = f0`.
pub fn integrate_chain(f0: f64, u: &[f64], w: &[f64]) -> Vec<f64> {
    let n = u.len();
    let mut out = vec![0.0; n];
    if n == 0 {
        return out;
    }
    out[0] = f0;
    for k in 1..n {
        let acc: f64 = (1..=k).map(|j| j as f64 * u[j] * w[k - j]).sum();
        out[k] = acc / k as f64;
    }
    out
}

/// Solves `y' = u' * G(y)` term by term, where `g` maps a partial series
/// of `y` (length k) to the series of `G(y)` (same length).
pub fn online<F>(y0: f64, u: &[f64], mut g: F) -> Result<Vec<f64>>
where
    F: FnMut(&[f64]) -> Result<Vec<f64>>,
{
    let n = u.len();
    let mut y = vec![0.0; n];
    if n == 0 {
        return Ok(y);
    }
    y[0] = y0;
    for k in 1..n {
        let gk = g(&y[..k])?;
        let acc: f64 = (1..=k).map(|j| j as f64 * u[j] * gk[k - j]).sum();
        y[k] = acc / k as f64;
    }
    Ok(y)
}

pub fn exp(u: &[f64]) -> Vec<f64> {
    let e0 = u.first().map_or(1.0, |v| v.exp());
    let n = u.len();
    let mut e = vec![0.0; n];
    if n == 0 {
        return e;
    }
    e[0] = e0;
    for k in 1..n {
        let acc: f64 = (1..=k).map(|j| j as f64 * u[j] * e[k - j]).sum();
        e[k] = acc / k as f64;
    }
    e
}

pub fn ln(u: &[f64]) -> Result<Vec<f64>> {
    let n = u.len();
    if n == 0 {
        return Ok(vec![]);
    }
    if u[0] <= 0.0 {
        return Err(Error::domain(format!("ln of nonpositive value {}", u[0])));
    }
    let mut l = vec![0.0; n];
    l[0] = u[0].ln();
    for k in 1..n {
        let acc: f64 = (1..k).map(|j| j as f64 * l[j] * u[k - j]).sum();
        l[k] = (u[k] - acc / k as f64) / u[0];
    }
    Ok(l)
}

/// `u^a` for a constant exponent.
pub fn powf(u: &[f64], a: f64) -> Result<Vec<f64>> {
    let n = u.len();
    if n == 0 {
        return Ok(vec![]);
    }
    let is_int = a.fract() == 0.0 && a.abs() <= 1024.0;
    if u[0] == 0.0 {
        if is_int && a >= 0.0 {
            return Ok(powi(u, a as u32));
        }
        if n == 1 && a > 0.0 {
            return Ok(vec![0.0]);
        }
        return Err(Error::domain(format!("power {a} of a series vanishing at the basepoint")));
    }
    if u[0] < 0.0 && !is_int {
        return Err(Error::domain(format!("non-integer power {a} of negative value {}", u[0])));
    }
    let mut p = vec![0.0; n];
    p[0] = u[0].powf(a);
    for k in 1..n {
        let acc: f64 = (1..=k)
            .map(|j| (a * j as f64 - (k - j) as f64) * u[j] * p[k - j])
            .sum();
        p[k] = acc / (k as f64 * u[0]);
    }
    Ok(p)
}

pub fn powi(u: &[f64], mut e: u32) -> Vec<f64> {
    let mut result = constant(1.0, u.len());
    let mut base = u.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            result = mul(&result, &base);
        }
        e >>= 1;
        if e > 0 {
            base = mul(&base, &base);
        }
    }
    result
}

pub fn sqrt(u: &[f64]) -> Result<Vec<f64>> {
    if u.first().is_some_and(|&v| v < 0.0) {
        return Err(Error::domain(format!("sqrt of negative value {}", u[0])));
    }
    powf(u, 0.5)
}

pub fn sin_cos(u: &[f64]) -> (Vec<f64>, Vec<f64>) {
    trig_pair(u, (u0(u).sin(), u0(u).cos()), -1.0)
}

pub fn sinh_cosh(u: &[f64]) -> (Vec<f64>, Vec<f64>) {
    trig_pair(u, (u0(u).sinh(), u0(u).cosh()), 1.0)
}

fn u0(u: &[f64]) -> f64 {
    u.first().copied().unwrap_or(0.0)
}

// s' = u' c, c' = sign * u' s
fn trig_pair(u: &[f64], (s0, c0): (f64, f64), sign: f64) -> (Vec<f64>, Vec<f64>) {
    let n = u.len();
    let mut s = vec![0.0; n];
    let mut c = vec![0.0; n];
    if n == 0 {
        return (s, c);
    }
    s[0] = s0;
    c[0] = c0;
    for k in 1..n {
        let mut as_ = 0.0;
        let mut ac = 0.0;
        for j in 1..=k {
            let w = j as f64 * u[j];
            as_ += w * c[k - j];
            ac += w * s[k - j];
        }
        s[k] = as_ / k as f64;
        c[k] = sign * ac / k as f64;
    }
    (s, c)
}

/// tan and tanh share `t' = u' (1 + sign t^2)`.
pub fn tan_like(u: &[f64], t0: f64, sign: f64) -> Vec<f64> {
    let n = u.len();
    let mut t = vec![0.0; n];
    let mut w = vec![0.0; n];
    if n == 0 {
        return t;
    }
    t[0] = t0;
    w[0] = 1.0 + sign * t0 * t0;
    for k in 1..n {
        let acc: f64 = (1..=k).map(|j| j as f64 * u[j] * w[k - j]).sum();
        t[k] = acc / k as f64;
        let sq: f64 = (0..=k).map(|j| t[j] * t[k - j]).sum();
        w[k] = sign * sq;
    }
    t
}

/// `outer(inner)` where `inner[0]` is ignored (treated as the expansion
/// point of `outer`).
pub fn compose(outer: &[f64], inner: &[f64]) -> Vec<f64> {
    let n = inner.len();
    let mut v = inner.to_vec();
    if n > 0 {
        v[0] = 0.0;
    }
    let mut r = constant(0.0, n);
    for c in outer.iter().take(n).rev() {
        r = mul(&r, &v);
        if n > 0 {
            r[0] += c;
        }
    }
    r
}

/// Compositional inverse: returns `b` with `b[0] = 0` such that
/// `a(a0 + b(e)) - a0 = e`, i.e. `b` expands the inverse function around
/// `a[0]` in powers of `e`.
pub fn revert(a: &[f64]) -> Result<Vec<f64>> {
    let n = a.len();
    let mut b = vec![0.0; n];
    if n < 2 {
        return Ok(b);
    }
    if a[1] == 0.0 {
        return Err(Error::SingularCurvature(
            "series reversion needs a nonzero linear coefficient".into(),
        ));
    }
    b[1] = 1.0 / a[1];
    for k in 2..n {
        // coefficient k of sum_{j>=2} a_j b^j, with b_k still zero
        let mut pw = b.clone();
        let mut acc = 0.0;
        for aj in a.iter().take(k + 1).skip(2) {
            pw = mul(&pw, &b);
            acc += aj * pw[k];
        }
        b[k] = -acc / a[1];
    }
    Ok(b)
}

/// Derivative series: `d[k] = (k+1) c[k+1]`, one shorter than `c`.
pub fn derivative(c: &[f64]) -> Vec<f64> {
    c.iter().enumerate().skip(1).map(|(k, v)| k as f64 * v).collect()
}

/// Antiderivative with constant term `c0`, one longer than `c`.
pub fn antiderivative(c: &[f64], c0: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(c.len() + 1);
    out.push(c0);
    out.extend(c.iter().enumerate().map(|(k, v)| v / (k + 1) as f64));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn exp_at_zero_is_factorial_reciprocals() {
        let e = exp(&variable(0.0, 5));
        assert!(close(&e, &[1.0, 1.0, 0.5, 1.0 / 6.0, 1.0 / 24.0], 1e-16));
    }

    #[test]
    fn ln_inverts_exp() {
        let u = vec![0.3, -1.2, 0.7, 2.0, -0.4];
        let back = ln(&exp(&u)).unwrap();
        assert!(close(&back, &u, 1e-13));
    }

    #[test]
    fn powf_matches_integer_power() {
        let u = vec![1.5, 0.5, -0.25, 0.1];
        assert!(close(&powf(&u, 3.0).unwrap(), &powi(&u, 3), 1e-13));
    }

    #[test]
    fn revert_then_compose_is_identity() {
        let a = vec![0.0, 2.0, 0.5, -1.0, 0.25, 0.125];
        let b = revert(&a).unwrap();
        let id = compose(&a, &b);
        assert!(close(&id, &[0.0, 1.0, 0.0, 0.0, 0.0, 0.0], 1e-14));
    }

    #[test]
    fn tan_series_at_zero() {
        let t = tan_like(&variable(0.0, 6), 0.0, 1.0);
        assert!(close(&t, &[0.0, 1.0, 0.0, 1.0 / 3.0, 0.0, 2.0 / 15.0], 1e-15));
    }
}

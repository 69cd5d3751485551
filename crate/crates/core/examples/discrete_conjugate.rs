//! Sampled conjugate by maximizing m x - f(x) over a grid, with the linear
//! scan for convex samples and the brute-force scan for comparison.

use std::time::Instant;

use legendre::funcspace::{Interval, ScalarFunction};
use legendre::transform::{conjugate_samples, discrete_conjugate, Extremum, Strategy};

fn main() -> legendre::Result<()> {
    let f = ScalarFunction::from_expr("x^2/2", Interval::closed(-10.0, 10.0))?;
    let xs: Vec<f64> = (0..4096).map(|i| -10.0 + 20.0 * i as f64 / 4095.0).collect();
    let ms = [-3.0, -1.0, 0.0, 0.5, 2.0];
    for (m, g) in discrete_conjugate(&f, &xs, &ms) {
        println!("g({m}) = {g:.9}   exact {:.9}", m * m / 2.0);
    }

    let n = 1 << 16;
    let xs: Vec<f64> = (0..n).map(|i| -1.0 + 2.0 * i as f64 / (n - 1) as f64).collect();
    let fs: Vec<f64> = xs.iter().map(|x| x * x * x * x).collect();
    let ms: Vec<f64> = (0..n).map(|i| -4.0 + 8.0 * i as f64 / (n - 1) as f64).collect();
    let t = Instant::now();
    let fast = conjugate_samples(&xs, &fs, &ms, Extremum::Sup, Strategy::Auto);
    let t_fast = t.elapsed();
    let t = Instant::now();
    let slow = conjugate_samples(&xs, &fs, &ms[..n / 64], Extremum::Sup, Strategy::BruteForce);
    let t_slow = t.elapsed() * 64;
    assert_eq!(&fast[..n / 64], &slow[..]);
    println!("2^16 x 2^16: linear scan {t_fast:?}, brute force about {t_slow:?}");

    // concave samples use the infimum
    let gs = conjugate_samples(&xs, &fs.iter().map(|v| -v).collect::<Vec<_>>(), &[0.5], Extremum::Inf, Strategy::Auto);
    println!("inf variant at m = 0.5: g = {}, attained at x = {}", gs[0].g, gs[0].x);
    Ok(())
}

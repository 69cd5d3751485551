use std::f64::consts::{E, FRAC_PI_2};

use legendre::catalog::{self, apply_property, Property};
use legendre::expr::{self, Node};
use legendre::funcspace::{
    make_function, piecewise_linear_dual, range_of_derivative, ratio, End, Interval, PiecewiseLinear, QuadratureDef,
    ScalarFunction, Source, TransformPair,
};
use legendre::jets::dual_jet;
use legendre::specfun::{erf, li, lambert_w, phi, Branch};
use legendre::transform::{
    clairaut_singular_solution, convert_dual_coordinates, discrete_conjugate, extend_with_support_lines,
    infimal_convolution, integral_transform, method1_explicit, parametric_dual, DualCoordinates,
};
use legendre::verify::{residual_sweep, theorem1_checks, verify_all, Filter, Status, VerifyConfig};
use legendre::Error;

fn f(text: &str, dom: Interval) -> ScalarFunction {
    ScalarFunction::from_expr(text, dom).unwrap()
}

fn real(text: &str) -> ScalarFunction {
    f(text, Interval::real_line())
}

fn grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

#[test]
fn parse_examples() {
    let e = expr::parse("sin(x^2) - x^3 + exp(x)").unwrap();
    assert_eq!(e.ast().summands(), 3);
    assert_eq!(expr::parse("x").unwrap().ast(), &Node::Var);
    let p = expr::parse("x*sin(x)").unwrap();
    assert!(matches!(p.ast(), Node::Binary(expr::BinOp::Mul, _, _)));
    assert!(close(p.eval(FRAC_PI_2).unwrap(), FRAC_PI_2, 1e-15));
}

#[test]
fn jet_examples() {
    let j = expr::parse("x*sin(x)").unwrap().eval_jet(0.0, 4).unwrap();
    let want = [0.0, 0.0, 1.0, 0.0, -1.0 / 6.0];
    assert!(j.coeffs.iter().zip(want).all(|(a, b)| close(*a, b, 1e-15)), "{:?}", j.coeffs);
    let a = 2.5;
    assert_eq!(expr::parse("x").unwrap().eval_jet(a, 2).unwrap().coeffs, vec![a, 1.0, 0.0]);
    let j = expr::parse("exp(x)").unwrap().eval_jet(0.0, 3).unwrap();
    let want = [1.0, 1.0, 0.5, 1.0 / 6.0];
    assert!(j.coeffs.iter().zip(want).all(|(a, b)| close(*a, b, 1e-15)));
}

#[test]
fn eval_and_deriv_examples() {
    assert!(close(expr::parse("x^3/3").unwrap().deriv(1.0, 1).unwrap(), 1.0, 1e-15));
    assert_eq!(expr::parse("cos(x)").unwrap().deriv(0.0, 1).unwrap(), 0.0);
    assert_eq!(expr::parse("sin(x^2)").unwrap().eval(0.0).unwrap(), 0.0);
}

#[test]
fn make_function_examples() {
    let cubic = make_function(Source::Text("x^3/3"), Interval::open(0.0, f64::INFINITY), "cubic").unwrap();
    assert_eq!(cubic.label(), "cubic");
    assert!(close(cubic.eval(3.0).unwrap(), 9.0, 1e-14));
    let id = make_function(Source::Text("x"), Interval::real_line(), "id").unwrap();
    assert_eq!(id.eval(-4.0).unwrap(), -4.0);
    let lif = make_function(
        Source::Quadrature(QuadratureDef::logarithmic_integral()),
        Interval::open(1.0, f64::INFINITY),
        "li",
    )
    .unwrap();
    for x in [1.5, 2.0, 10.0] {
        let want = li(x).unwrap();
        assert!(close(lif.eval(x).unwrap(), want, 1e-9 * want.abs().max(1.0)), "li({x})");
    }
}

#[test]
fn range_examples() {
    let r = range_of_derivative(&real("exp(x)"), 10_000).unwrap();
    assert_eq!((r.lo, r.hi), (0.0, f64::INFINITY));
    let r = range_of_derivative(&real("x"), 100).unwrap();
    assert_eq!((r.lo, r.hi), (1.0, 1.0));
    let r = range_of_derivative(&f("sin(x)", Interval::open(-FRAC_PI_2, FRAC_PI_2)), 10_000).unwrap();
    assert!(close(r.lo, 0.0, 1e-6) && close(r.hi, 1.0, 1e-6), "{r}");
}

#[test]
fn parametric_examples() {
    let s = real("sin(x^2)");
    let d = parametric_dual(&s, &[FRAC_PI_2.sqrt(), 0.0]);
    assert!(close(d.points[0].1, 0.0, 1e-15) && close(d.points[0].2, -1.0, 1e-15));
    assert_eq!((d.points[1].1, d.points[1].2), (0.0, 0.0));
    let c = f("x^3/3", Interval::open(0.0, f64::INFINITY));
    let d = parametric_dual(&c, &[1.0]);
    assert!(close(d.points[0].1, 1.0, 1e-15) && close(d.points[0].2, 2.0 / 3.0, 1e-15));
}

#[test]
fn method1_examples() {
    let pos = Interval::open(0.0, f64::INFINITY);
    let g = method1_explicit(&f("x^3/3", pos), &f("sqrt(m)", pos), 4.0).unwrap();
    assert!(close(g, 16.0 / 3.0, 1e-14));
    assert!(close(g, 2.0 * 4f64.powf(1.5) / 3.0, 1e-14));
    assert_eq!(method1_explicit(&real("x^2/2"), &real("m"), 0.0).unwrap(), 0.0);
    assert!(close(method1_explicit(&real("exp(x)"), &f("ln(m)", pos), 1.0).unwrap(), -1.0, 1e-15));
}

#[test]
fn polyline_examples() {
    let p = PiecewiseLinear::new(vec![(ratio(1, 1), ratio(1, 1))], End::Ray(ratio(-1, 1)), End::Ray(ratio(2, 1))).unwrap();
    let d = piecewise_linear_dual(&p);
    assert_eq!(d.vertices(), &[(ratio(-1, 1), ratio(-2, 1)), (ratio(2, 1), ratio(1, 1))]);
    assert_eq!((d.left(), d.right()), (&End::Wall, &End::Wall));

    let line = PiecewiseLinear::line(ratio(3, 2), ratio(-7, 3));
    let pt = piecewise_linear_dual(&line);
    assert_eq!(pt.vertices(), &[(ratio(3, 2), ratio(-7, 3))]);

    let abs = PiecewiseLinear::new(vec![(ratio(0, 1), ratio(0, 1))], End::Ray(ratio(-1, 1)), End::Ray(ratio(1, 1))).unwrap();
    let seg = piecewise_linear_dual(&abs);
    assert_eq!(seg.vertices(), &[(ratio(-1, 1), ratio(0, 1)), (ratio(1, 1), ratio(0, 1))]);
}

#[test]
fn integral_examples() {
    let inv = f("-asin(m)", Interval::closed(-1.0, 1.0));
    let g = integral_transform(&inv, 0.0, -1.0, 0.5).unwrap();
    assert!(close(g, -0.5 * 0.5f64.asin() - 0.75f64.sqrt(), 1e-10));
    assert_eq!(integral_transform(&inv, 0.3, 7.0, 0.3).unwrap(), 7.0);
    let ln = f("ln(m)", Interval::open(0.0, f64::INFINITY));
    assert!(close(integral_transform(&ln, 1.0, -1.0, E).unwrap(), 0.0, 1e-10));
}

#[test]
fn discrete_examples() {
    let xs = grid(-10.0, 10.0, 4001);
    let g = discrete_conjugate(&real("x^2/2"), &xs, &[0.5]);
    assert!(close(g[0].1, 0.125, 1e-5));
    let g = discrete_conjugate(&real("abs(x)"), &xs, &[0.0]);
    assert_eq!(g[0].1, 0.0);
    let g = discrete_conjugate(&real("exp(x)"), &xs, &[1.0]);
    assert!(close(g[0].1, -1.0, 1e-4));
}

#[test]
fn support_line_examples() {
    let sin = f("sin(x)", Interval::open(-FRAC_PI_2, 0.0));
    let core = f("-m*asin(sqrt(1-m^2))+sqrt(1-m^2)", Interval::open(0.0, 1.0));
    let g = extend_with_support_lines(&core, &sin).unwrap();
    for m in [-3.0, -1.0, -0.2, 0.0] {
        assert_eq!(g.eval(m).unwrap(), m * -FRAC_PI_2 - -1.0);
    }
    for m in [1.0, 1.5, 10.0] {
        assert_eq!(g.eval(m).unwrap(), 0.0);
    }
    let m = 0.5f64.sqrt();
    let want = -m * (1.0 - m * m).sqrt().asin() + (1.0 - m * m).sqrt();
    assert!(close(g.eval(m).unwrap(), want, 1e-12));
}

#[test]
fn infimal_convolution_examples() {
    let q = real("x^2/2");
    let ts = grid(-10.0, 10.0, 2001);
    assert!(close(infimal_convolution(&q, &q, 2.0, &ts).unwrap(), 1.0, 1e-12));
    // a steep quadratic acts as the identity element
    let steep = real("1e6*x^2");
    let v = infimal_convolution(&q, &steep, 1.5, &ts).unwrap();
    assert!(close(v, 1.125, 1e-5), "{v}");
    // the conjugate of q box q is m^2
    let xs = grid(-20.0, 20.0, 2001);
    let conv = |x: f64| infimal_convolution(&q, &q, x, &ts).unwrap();
    for m in [-1.0, 0.5, 2.0] {
        let g = xs.iter().map(|&x| m * x - conv(x)).fold(f64::NEG_INFINITY, f64::max);
        assert!(close(g, m * m, 1e-3), "{m}: {g}");
    }
}

#[test]
fn clairaut_examples() {
    let h = f("-(m*ln(m)-m)", Interval::open(0.0, f64::INFINITY));
    let sol = clairaut_singular_solution(&h, &[0.5, 1.0, 2.0, 5.0]).unwrap();
    for &(x, _, y) in &sol.envelope.points {
        assert!(close(y, x.exp(), 1e-12 * y), "({x}, {y})");
    }
    let sol = clairaut_singular_solution(&real("-m^2/4"), &grid(-2.0, 2.0, 9)).unwrap();
    assert!(sol.envelope.points.iter().all(|&(x, _, y)| close(y, x * x, 1e-15)));
    let sol = clairaut_singular_solution(&real("3*m-1"), &grid(-2.0, 2.0, 9)).unwrap();
    assert!(sol.degenerate);
}

#[test]
fn coordinate_examples() {
    assert_eq!(convert_dual_coordinates((2.0, 1.0), DualCoordinates::Uv).unwrap(), (-2.0, 1.0));
    assert_eq!(convert_dual_coordinates((0.7, -1.3), DualCoordinates::Mb).unwrap(), (0.7, 1.3));
    assert!(matches!(convert_dual_coordinates((1.0, 0.0), DualCoordinates::Uv), Err(Error::DivisionByZero(_))));
}

#[test]
fn dual_jet_examples() {
    let g = dual_jet(&expr::parse("x*sin(x)").unwrap().eval_jet(0.0, 4).unwrap(), 4).unwrap();
    let want = [0.0, 0.0, 0.25, 0.0, 1.0 / 96.0];
    assert!(g.coeffs.iter().zip(want).all(|(a, b)| close(*a, b, 1e-15)), "{:?}", g.coeffs);
    let a = -1.5;
    let g = dual_jet(&expr::parse("x^2/2").unwrap().eval_jet(a, 4).unwrap(), 4).unwrap();
    assert_eq!(g.basepoint, a);
    let want = [a * a / 2.0, a, 0.5, 0.0, 0.0];
    assert!(g.coeffs.iter().zip(want).all(|(x, y)| close(*x, y, 1e-15)));
    let g = dual_jet(&expr::parse("exp(x)").unwrap().eval_jet(0.0, 4).unwrap(), 4).unwrap();
    assert_eq!(g.basepoint, 1.0);
    let want = [-1.0, 0.0, 0.5, -1.0 / 6.0, 1.0 / 12.0];
    assert!(g.coeffs.iter().zip(want).all(|(x, y)| close(*x, y, 1e-14)), "{:?}", g.coeffs);
}

#[test]
fn special_function_examples() {
    assert_eq!(lambert_w(0.0, Branch::Principal).unwrap(), 0.0);
    assert!(close(lambert_w(-1.0 / E, Branch::Principal).unwrap(), -1.0, 1e-7));
    assert!(close(lambert_w(1.0, Branch::Principal).unwrap(), 0.567_143_290_409_783_8, 1e-15));
    assert_eq!(erf(0.0), 0.0);
    assert_eq!(phi(0.0), 0.5);
    assert!(close(erf(1.0), 0.842_700_792_949_714_9, 1e-15));
    assert_eq!(li(0.0).unwrap(), 0.0);
    let big_li = catalog::lookup("e.Li").unwrap();
    assert!(close(big_li.f.eval(2.0).unwrap(), 0.0, 1e-12));
}

#[test]
fn catalog_examples() {
    let all = catalog::all_entries();
    assert!(all.len() > 100);
    assert!(all.iter().any(|p| p.entry_id == "c.ex"));
    let xpp = catalog::lookup("b.xpp").unwrap();
    assert_eq!(xpp.f.label(), "x^p/p");
    assert!(matches!(catalog::lookup("no.such"), Err(Error::NotFound(_))));
}

#[test]
fn property_examples() {
    let ex = catalog::lookup("c.ex").unwrap();
    let p = apply_property(&ex, &Property::ScaleOut { a: 2.0 }).unwrap();
    assert_eq!(residual_sweep(&p, 1000).status, Status::Pass);
    for x in [-1.0, 0.0, 2.0] {
        assert!(close(p.f.eval(x).unwrap(), 2.0 * f64::exp(x), 1e-14));
    }
    for m in [0.5, 3.0] {
        assert!(close(p.g.eval(m).unwrap(), 2.0 * ((m / 2.0) * (m / 2.0).ln() - m / 2.0), 1e-14));
    }
    let p = apply_property(&ex, &Property::ShiftIn { a: -1.0 }).unwrap();
    let xln = catalog::lookup("c.xln").unwrap();
    for m in [0.2, 1.0, 4.0] {
        assert!(close(p.g.eval(m).unwrap(), m * m.ln(), 1e-14));
        assert!(close(xln.g.eval(m).unwrap(), (m - 1.0).exp(), 1e-14));
    }
}

#[test]
fn reversed_examples() {
    let xln = catalog::lookup("c.xln").unwrap();
    let r = catalog::reversed(&xln);
    assert!(close(r.f.eval(2.0).unwrap(), E, 1e-15));
    assert_eq!(residual_sweep(&r, 500).status, Status::Pass);
}

#[test]
fn residual_sweep_examples() {
    let r = residual_sweep(&catalog::lookup("c.ex").unwrap(), 1000);
    assert_eq!(r.status, Status::Pass);
    assert!(r.max_abs_residual <= 1e-10);

    let line = TransformPair::new("line", real("x"), f("0*m", Interval::point(1.0)));
    let r = residual_sweep(&line, 100);
    assert_eq!(r.max_abs_residual, 0.0);

    let wrong = TransformPair::new("wrong", real("exp(x)"), f("m*ln(m)", Interval::open(0.0, f64::INFINITY)));
    let r = residual_sweep(&wrong, 1000);
    assert_eq!(r.status, Status::Fail);
    let x = r.worst_x.unwrap();
    assert!(close(r.max_abs_residual, x.exp(), 1e-9 * x.exp()));
}

#[test]
fn theorem1_examples() {
    let t = theorem1_checks(&catalog::lookup("b.xpp").unwrap(), 1000);
    assert!(t.slope_dev.unwrap() < 1e-8 && t.curvature_dev.unwrap() < 1e-8, "{t:?}");
    assert!(t.involution_dev.unwrap() < 1e-3);
    let q = catalog::lookup_with("b.quadratic", &[("a".into(), 1.0), ("b".into(), 0.0), ("c".into(), 0.0)]).unwrap();
    assert!(theorem1_checks(&q, 200).curvature_dev.unwrap() < 1e-15);
    let t = theorem1_checks(&catalog::lookup("c.cosh").unwrap(), 200);
    assert!(t.critical_point_dev.unwrap() < 1e-12, "{t:?}");
}

#[test]
fn verify_all_examples() {
    let cfg = VerifyConfig { n_points: 200, draws: 1, ..VerifyConfig::default() };
    let c = verify_all(&Filter::parse("part=c").unwrap(), &cfg);
    assert!(c.len() >= 20);
    assert!(c.iter().all(|r| r.status == Status::Pass), "{:?}", c.iter().filter(|r| r.status != Status::Pass).collect::<Vec<_>>());
    let e = verify_all(&Filter::parse("id=e.elliptic_F").unwrap(), &cfg);
    assert_eq!(e.len(), 1);
    assert_eq!(e[0].status, Status::Skipped);
    assert!(e[0].diagnostics[0].contains("unverified: special function out of scope"));
}

use crate::error::{Error, Result};
use crate::funcspace::{
    image_of, range_of_derivative, Body, Interval, ScalarFunction, TransformPair,
};

/// Samples used when a property needs the range of a function numerically.
const RANGE_SAMPLES: usize = 2000;

pub const PROPERTY_IDS: [&str; 12] = [
    "scaleout", "scalein", "fpa", "shiftin", "combo", "inverse", "derivative", "integral", "sumfs", "px2", "even", "odd",
];

/// Operations on a pair that give another pair.
#[derive(Debug, Clone, PartialEq)]
pub enum Property {
    /// `a f(x)` and `a g(m/a)`.
    ScaleOut { a: f64 },
    /// `f(a x)` and `g(m/a)`.
    ScaleIn { a: f64 },
    /// `f(x) + a` and `g(m) - a`.
    Fpa { a: f64 },
    /// `f(x + a)` and `g(m) - a m`.
    ShiftIn { a: f64 },
    /// `c f(s x + t) + b x + a` and `c g((m - b)/(c s)) - t (m - b)/s - a`.
    Combo { c: f64, s: f64, t: f64, b: f64, a: f64 },
    /// `f^{-1}(x)` and `-m g(1/m)`.
    Inverse,
    /// `f'(x)` and `m h(m) - f'(h(m))` with `h` the inverse of `f''`;
    /// `h` is found numerically when not supplied.
    Derivative { second_derivative_inverse: Option<ScalarFunction> },
    /// `integral of f from anchor to x` and
    /// `m f^{-1}(m) - integral of f from anchor to f^{-1}(m)`.
    Integral { anchor: f64 },
    /// Infimal convolution `f1 box f2` and `g1 + g2`; `f2` defaults to `f1`.
    SumFs { other: Option<Box<TransformPair>> },
    /// `f(x) + x^2/2` and `g box m^2/2`.
    Px2,
    /// Reflection `f(-x)` on `-D` and `g(-m)` on `-M`.
    Even,
    /// Point reflection `-f(-x)` on `-D` and `-g(m)` on `M`.
    Odd,
}

impl Property {
    pub fn id(&self) -> &'static str {
        match self {
            Property::ScaleOut { .. } => "scaleout",
            Property::ScaleIn { .. } => "scalein",
            Property::Fpa { .. } => "fpa",
            Property::ShiftIn { .. } => "shiftin",
            Property::Combo { .. } => "combo",
            Property::Inverse => "inverse",
            Property::Derivative { .. } => "derivative",
            Property::Integral { .. } => "integral",
            Property::SumFs { .. } => "sumfs",
            Property::Px2 => "px2",
            Property::Even => "even",
            Property::Odd => "odd",
        }
    }

    /// Builds a property from its id and named numeric arguments, e.g.
    /// `("combo", [("c", 2.0), ("s", -1.0)])`. Missing arguments take the
    /// neutral value (1 for scales, 0 for shifts).
    pub fn from_id(id: &str, args: &[(String, f64)]) -> Result<Property> {
        let known: &[&str] = match id {
            "scaleout" | "scalein" | "fpa" | "shiftin" => &["a"],
            "combo" => &["c", "s", "t", "b", "a"],
            "integral" => &["anchor"],
            "inverse" | "derivative" | "sumfs" | "px2" | "even" | "odd" => &[],
            _ => return Err(Error::NotFound(format!("no property `{id}`; known: {}", PROPERTY_IDS.join(", ")))),
        };
        for (name, _) in args {
            if !known.contains(&name.as_str()) {
                return Err(Error::InvalidParameter(format!("property {id} takes no argument `{name}`")));
            }
        }
        let arg = |name: &str, default: f64| args.iter().find(|(n, _)| n == name).map_or(default, |(_, v)| *v);
        Ok(match id {
            "scaleout" => Property::ScaleOut { a: arg("a", 1.0) },
            "scalein" => Property::ScaleIn { a: arg("a", 1.0) },
            "fpa" => Property::Fpa { a: arg("a", 0.0) },
            "shiftin" => Property::ShiftIn { a: arg("a", 0.0) },
            "combo" => Property::Combo {
                c: arg("c", 1.0),
                s: arg("s", 1.0),
                t: arg("t", 0.0),
                b: arg("b", 0.0),
                a: arg("a", 0.0),
            },
            "inverse" => Property::Inverse,
            "derivative" => Property::Derivative { second_derivative_inverse: None },
            "integral" => Property::Integral { anchor: arg("anchor", 0.0) },
            "sumfs" => Property::SumFs { other: None },
            "px2" => Property::Px2,
            "even" => Property::Even,
            _ => Property::Odd,
        })
    }

    fn describe(&self) -> String {
        let p = |v: f64| format!("{v}");
        match self {
            Property::ScaleOut { a } | Property::ScaleIn { a } | Property::Fpa { a } | Property::ShiftIn { a } => {
                format!("{}(a={})", self.id(), p(*a))
            }
            Property::Combo { c, s, t, b, a } => format!("combo(c={c},s={s},t={t},b={b},a={a})"),
            Property::Integral { anchor } => format!("integral(anchor={anchor})"),
            Property::SumFs { other: Some(o) } => format!("sumfs({})", o.entry_id),
            _ => self.id().to_string(),
        }
    }
}

fn combo(pair: &TransformPair, c: f64, s: f64, t: f64, b: f64, a: f64) -> Result<(ScalarFunction, ScalarFunction)> {
    if c == 0.0 || s == 0.0 || ![c, s, t, b, a].iter().all(|v| v.is_finite()) {
        return Err(Error::InvalidParameter(format!("combo needs finite c != 0, s != 0 (c = {c}, s = {s})")));
    }
    let x_domain = pair.x_domain.affine(1.0 / s, -t / s)?;
    let m_domain = pair.m_domain.affine(c * s, b)?;
    let f = ScalarFunction::new(
        Body::Affine { inner: pair.f.clone(), out_scale: c, in_scale: s, in_shift: t, lin: b, constant: a },
        x_domain,
        &format!("{c}*f({s}*x+{t})+{b}*x+{a} with f = {}", pair.f.label()),
    );
    let g = ScalarFunction::new(
        Body::Affine {
            inner: pair.g.clone(),
            out_scale: c,
            in_scale: 1.0 / (c * s),
            in_shift: -b / (c * s),
            lin: -t / s,
            constant: t * b / s - a,
        },
        m_domain,
        &format!("{c}*g((m-{b})/({c}*{s}))-{t}*(m-{b})/{s}-{a} with g = {}", pair.g.label()),
    );
    Ok((f, g))
}

fn quadratic_half(domain: Interval, var: &str) -> ScalarFunction {
    ScalarFunction::from_expr(&format!("{var}^2/2"), domain).expect("valid quadratic")
}

/// Applies a property to a pair. The result keeps the pair's verification
/// tier and records the operation in its id.
pub fn apply_property(pair: &TransformPair, property: &Property) -> Result<TransformPair> {
    if !pair.f.is_supported() || !pair.g.is_supported() {
        return Err(Error::Unsupported(format!("{} has no evaluatable formulas", pair.entry_id)));
    }
    let (f, g) = match property {
        Property::ScaleOut { a } => combo(pair, *a, 1.0, 0.0, 0.0, 0.0)?,
        Property::ScaleIn { a } => combo(pair, 1.0, *a, 0.0, 0.0, 0.0)?,
        Property::Fpa { a } => combo(pair, 1.0, 1.0, 0.0, 0.0, *a)?,
        Property::ShiftIn { a } => combo(pair, 1.0, 1.0, *a, 0.0, 0.0)?,
        Property::Combo { c, s, t, b, a } => combo(pair, *c, *s, *t, *b, *a)?,
        Property::Even => combo(pair, 1.0, -1.0, 0.0, 0.0, 0.0)?,
        Property::Odd => combo(pair, -1.0, -1.0, 0.0, 0.0, 0.0)?,
        Property::Inverse => {
            if pair.m_domain.contains(0.0) || (pair.m_domain.lo < 0.0 && pair.m_domain.hi > 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "inverse needs a strictly monotone f: m-domain {} contains 0",
                    pair.m_domain
                )));
            }
            let image = image_of(&pair.f, RANGE_SAMPLES)?;
            let m_domain = pair.m_domain.reciprocal()?;
            let f = pair.f.inverse_fn(image);
            let g = ScalarFunction::new(
                Body::PerspectiveRecip(pair.g.clone()),
                m_domain,
                &format!("-m*g(1/m) with g = {}", pair.g.label()),
            );
            (f, g)
        }
        Property::Derivative { second_derivative_inverse } => {
            let fp = pair.f.derivative_fn();
            let fpp = fp.derivative_fn();
            let m_domain = range_of_derivative(&fp, RANGE_SAMPLES)?;
            if m_domain.is_point() {
                return Err(Error::SingularCurvature("f'' is constant, so f' is linear".into()));
            }
            let h = match second_derivative_inverse {
                Some(h) => h.clone(),
                None => fpp.inverse_fn(m_domain),
            };
            let g = ScalarFunction::new(
                Body::LegendreExplicit { f: fp.clone(), slope_inverse: h },
                m_domain,
                &format!("transform of the derivative of {}", pair.f.label()),
            );
            (fp, g)
        }
        Property::Integral { anchor } => {
            let closure = Interval::new(pair.x_domain.lo, pair.x_domain.hi, true, true)
                .unwrap_or(pair.x_domain);
            if !closure.contains(*anchor) && !(anchor.is_finite() && (*anchor == pair.x_domain.lo || *anchor == pair.x_domain.hi)) {
                return Err(Error::InvalidParameter(format!("anchor {anchor} is outside {}", pair.x_domain)));
            }
            let big_f = ScalarFunction::new(
                Body::Integral { integrand: pair.f.clone(), anchor: *anchor, anchor_value: 0.0, tol: 1e-12 },
                pair.x_domain,
                &format!("integral of {} from {anchor}", pair.f.label()),
            );
            let image = image_of(&pair.f, RANGE_SAMPLES)?;
            let g = ScalarFunction::new(
                Body::LegendreExplicit { f: big_f.clone(), slope_inverse: pair.f.inverse_fn(image) },
                image,
                &format!("transform of the integral of {}", pair.f.label()),
            );
            (big_f, g)
        }
        Property::SumFs { other } => {
            let other = other.as_deref().unwrap_or(pair);
            let x_domain = pair.x_domain.sum(&other.x_domain)?;
            let m_domain = pair.m_domain.intersect(&other.m_domain)?;
            let f = ScalarFunction::new(
                Body::InfConv(pair.f.clone(), other.f.clone()),
                x_domain,
                &format!("({}) box ({})", pair.f.label(), other.f.label()),
            );
            let g = ScalarFunction::new(
                Body::Sum(vec![pair.g.with_domain(m_domain), other.g.with_domain(m_domain)]),
                m_domain,
                &format!("({}) + ({})", pair.g.label(), other.g.label()),
            );
            (f, g)
        }
        Property::Px2 => {
            // f' + x is increasing, so its range is the Minkowski sum
            let m_domain = pair.m_domain.sum(&pair.x_domain)?;
            let f = ScalarFunction::new(
                Body::Sum(vec![pair.f.clone(), quadratic_half(pair.x_domain, "x")]),
                pair.x_domain,
                &format!("{} + x^2/2", pair.f.label()),
            );
            let g = ScalarFunction::new(
                Body::InfConv(pair.g.clone(), quadratic_half(Interval::real_line(), "m")),
                m_domain,
                &format!("({}) box m^2/2", pair.g.label()),
            );
            (f, g)
        }
    };
    Ok(TransformPair {
        entry_id: format!("{}[{}]", property.describe(), pair.entry_id),
        title: format!("{} of {}", property.id(), pair.title),
        x_domain: f.domain(),
        m_domain: g.domain(),
        f,
        g,
        parameters: pair.parameters.clone(),
        notes: pair.notes.clone(),
        verified: pair.verified,
        quadrature_backed: pair.quadrature_backed,
        reversed: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::lookup;

    fn residual(p: &TransformPair, x: f64) -> f64 {
        let m = p.f.slope(x).unwrap();
        x * m - p.f.eval(x).unwrap() - p.g.eval(m).unwrap()
    }

    #[test]
    fn shiftin_reproduces_x_ln_x() {
        let p = apply_property(&lookup("c.ex").unwrap(), &Property::ShiftIn { a: -1.0 }).unwrap();
        assert!((p.f.eval(1.0).unwrap() - 1.0).abs() < 1e-15);
        let m = 2.5;
        assert!((p.g.eval(m).unwrap() - m * f64::ln(m)).abs() < 1e-14);
    }

    #[test]
    fn scaleout_example() {
        let p = apply_property(&lookup("c.ex").unwrap(), &Property::ScaleOut { a: 2.0 }).unwrap();
        let m: f64 = 3.0;
        let want = 2.0 * ((m / 2.0) * (m / 2.0).ln() - m / 2.0);
        assert!((p.g.eval(m).unwrap() - want).abs() < 1e-14);
    }

    #[test]
    fn all_properties_on_exp() {
        let base = lookup("c.ex").unwrap();
        for id in PROPERTY_IDS {
            let args: Vec<(String, f64)> = match id {
                "combo" => vec![("c".into(), 2.0), ("s".into(), -0.5), ("t".into(), 0.3), ("b".into(), 1.0), ("a".into(), 4.0)],
                "scaleout" | "scalein" => vec![("a".into(), 3.0)],
                "fpa" | "shiftin" => vec![("a".into(), 0.7)],
                _ => vec![],
            };
            let p = apply_property(&base, &Property::from_id(id, &args).unwrap()).unwrap();
            let dom = p.x_domain;
            let x = if dom.contains_interior(0.4) { 0.4 } else { dom.lo + 0.5 };
            let r = residual(&p, x);
            assert!(r.abs() < 1e-9, "{id}: {r}");
        }
    }

    #[test]
    fn bad_parameters() {
        let base = lookup("c.ex").unwrap();
        assert!(matches!(apply_property(&base, &Property::ScaleIn { a: 0.0 }), Err(Error::InvalidParameter(_))));
        assert!(matches!(Property::from_id("twist", &[]), Err(Error::NotFound(_))));
        let abs = lookup("b.quadratic").unwrap();
        assert!(matches!(apply_property(&abs, &Property::Inverse), Err(Error::InvalidParameter(_))));
    }
}

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr;
use crate::funcspace::{Body, Interval, Parameter, QuadratureDef, ScalarFunction, TransformPair, QUAD_TOL};

/// The embedded catalog document.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CatalogFile {
    pub version: u32,
    pub entries: Vec<EntryRecord>,
}

/// One row of the catalog as stored on disk.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EntryRecord {
    pub id: String,
    pub part: String,
    pub title: String,
    pub f: Formula,
    pub g: Formula,
    pub x_domain: String,
    pub m_domain: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub parameters: Vec<ParameterRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub derived: Vec<DerivedRecord>,
    /// Expressions in the parameters that must vanish.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub identities: Vec<String>,
    pub notes: String,
    pub verified: bool,
    #[serde(default)]
    pub quadrature_backed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub printed_f: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub printed_g: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub printed_m_domain: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub audit: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Formula {
    Text(String),
    Piecewise { piecewise: Vec<Piece> },
    Quadrature { quadrature: QuadratureRecord },
    Unsupported { unsupported: String },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Piece {
    pub on: String,
    pub expr: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuadratureRecord {
    /// Integrand in the variable `t`.
    pub integrand: String,
    pub from: String,
    pub value_at_from: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pole: Option<PoleRecord>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PoleRecord {
    pub at: f64,
    pub residue: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ParameterRecord {
    pub name: String,
    pub default: f64,
    /// Admissible range for randomized draws.
    pub sample: [f64; 2],
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DerivedRecord {
    pub name: String,
    pub expr: String,
}

impl Formula {
    pub fn describe(&self) -> String {
        match self {
            Formula::Text(t) => t.clone(),
            Formula::Piecewise { piecewise } => piecewise
                .iter()
                .map(|p| format!("{} on {}", p.expr, p.on))
                .collect::<Vec<_>>()
                .join("; "),
            Formula::Quadrature { quadrature: q } => {
                let mut s = format!("{} + integral of {} dt from {}", q.value_at_from, q.integrand, q.from);
                if let Some(p) = &q.pole {
                    s.push_str(&format!(" (principal value at t = {})", p.at));
                }
                s
            }
            Formula::Unsupported { unsupported } => format!("unsupported: {unsupported}"),
        }
    }

    fn build(&self, domain: Interval, label: &str, bindings: &[(String, f64)]) -> Result<ScalarFunction> {
        let body = match self {
            Formula::Text(t) => Body::Expr(expr::parse_with(t, bindings)?),
            Formula::Piecewise { piecewise } => Body::Piecewise(
                piecewise
                    .iter()
                    .map(|p| {
                        let on = Interval::parse(&p.on, bindings)?;
                        Ok(ScalarFunction::new(Body::Expr(expr::parse_with(&p.expr, bindings)?), on, &p.expr))
                    })
                    .collect::<Result<Vec<_>>>()?,
            ),
            Formula::Quadrature { quadrature: q } => {
                let from = expr::parse_with(&q.from, bindings)?;
                if !from.ast().is_constant() {
                    return Err(Error::Syntax { offset: 0, message: format!("`{}` is not constant", q.from) });
                }
                Body::Quadrature(QuadratureDef {
                    integrand: expr::parse_with(&q.integrand, bindings)?,
                    from: from.eval_unchecked()?,
                    value_at_from: q.value_at_from,
                    pole: q.pole.as_ref().map(|p| (p.at, p.residue)),
                    tol: QUAD_TOL,
                })
            }
            Formula::Unsupported { unsupported } => Body::Unsupported(unsupported.clone()),
        };
        Ok(ScalarFunction::new(body, domain, label))
    }
}

impl EntryRecord {
    pub fn defaults(&self) -> Vec<(String, f64)> {
        self.parameters.iter().map(|p| (p.name.clone(), p.default)).collect()
    }

    /// One uniform draw of every parameter within its admissible range.
    pub fn draw<R: Rng>(&self, rng: &mut R) -> Vec<(String, f64)> {
        self.parameters
            .iter()
            .map(|p| (p.name.clone(), rng.gen_range(p.sample[0]..=p.sample[1])))
            .collect()
    }

    /// Builds the pair with parameter values from `values` (falling back
    /// to defaults), derived constants evaluated and identities checked.
    pub fn instantiate(&self, values: &[(String, f64)]) -> Result<TransformPair> {
        for (name, _) in values {
            if !self.parameters.iter().any(|p| &p.name == name) {
                return Err(Error::InvalidParameter(format!("{} has no parameter `{name}`", self.id)));
            }
        }
        let mut bindings: Vec<(String, f64)> = Vec::new();
        let mut parameters = Vec::new();
        for p in &self.parameters {
            let v = values.iter().find(|(n, _)| n == &p.name).map_or(p.default, |(_, v)| *v);
            if !v.is_finite() {
                return Err(Error::InvalidParameter(format!("{} = {v}", p.name)));
            }
            bindings.push((p.name.clone(), v));
            parameters.push(Parameter { name: p.name.clone(), value: v, range: Some((p.sample[0], p.sample[1])) });
        }
        for d in &self.derived {
            let v = expr::parse_with(&d.expr, &bindings)?.eval(0.0).map_err(|e| {
                Error::InvalidParameter(format!("{} = {} is undefined: {e}", d.name, d.expr))
            })?;
            bindings.push((d.name.clone(), v));
            parameters.push(Parameter { name: d.name.clone(), value: v, range: None });
        }
        for id in &self.identities {
            let v = expr::parse_with(id, &bindings)?.eval(0.0)?;
            if v.abs() > 1e-12 {
                return Err(Error::InvalidParameter(format!("{}: identity {id} = 0 fails ({v})", self.id)));
            }
        }
        // stubs may state domains with constants the grammar cannot express
        let domain = |text: &str| match Interval::parse(text, &bindings) {
            Err(_) if !self.verified => Ok(Interval::real_line()),
            other => other,
        };
        let x_domain = domain(&self.x_domain)?;
        let m_domain = domain(&self.m_domain)?;
        let f = self.f.build(x_domain, &self.f.describe(), &bindings)?;
        let g = self.g.build(m_domain, &self.g.describe(), &bindings)?;
        Ok(TransformPair {
            entry_id: self.id.clone(),
            title: self.title.clone(),
            f,
            g,
            x_domain,
            m_domain,
            parameters,
            notes: self.notes.clone(),
            verified: self.verified,
            quadrature_backed: self.quadrature_backed,
            reversed: false,
        })
    }
}

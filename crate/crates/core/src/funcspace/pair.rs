use serde::Serialize;

use super::{Interval, ScalarFunction};

/// A named real constant of a parametric family, with its admissible
/// sampling range when it is a free parameter.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Parameter {
    pub name: String,
    pub value: f64,
    pub range: Option<(f64, f64)>,
}

/// A function and its Legendre transform with their domains.
#[derive(Debug, Clone, PartialEq)]
pub struct TransformPair {
    pub entry_id: String,
    pub title: String,
    pub f: ScalarFunction,
    pub g: ScalarFunction,
    pub x_domain: Interval,
    pub m_domain: Interval,
    pub parameters: Vec<Parameter>,
    pub notes: String,
    pub verified: bool,
    pub quadrature_backed: bool,
    /// True when the roles of f and g have been swapped.
    pub reversed: bool,
}

impl TransformPair {
    pub fn new(entry_id: &str, f: ScalarFunction, g: ScalarFunction) -> TransformPair {
        TransformPair {
            entry_id: entry_id.to_string(),
            title: String::new(),
            x_domain: f.domain(),
            m_domain: g.domain(),
            f,
            g,
            parameters: Vec::new(),
            notes: String::new(),
            verified: true,
            quadrature_backed: false,
            reversed: false,
        }
    }

    /// Reads the pair right to left: g becomes the function, f its transform.
    pub fn reversed(&self) -> TransformPair {
        TransformPair {
            f: self.g.clone(),
            g: self.f.clone(),
            x_domain: self.m_domain,
            m_domain: self.x_domain,
            reversed: !self.reversed,
            ..self.clone()
        }
    }

    pub fn parameter(&self, name: &str) -> Option<f64> {
        self.parameters.iter().find(|p| p.name == name).map(|p| p.value)
    }
}

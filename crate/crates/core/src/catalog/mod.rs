//! The embedded table of transform pairs and the property combinators that
//! derive new pairs from it.

mod property;
mod record;

pub use property::{apply_property, Property, PROPERTY_IDS};
pub use record::{CatalogFile, DerivedRecord, EntryRecord, Formula, ParameterRecord, Piece, PoleRecord, QuadratureRecord};

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::funcspace::TransformPair;

const ENTRIES_JSON: &str = include_str!("../../data/entries.json");

pub fn catalog_file() -> &'static CatalogFile {
    static FILE: OnceLock<CatalogFile> = OnceLock::new();
    FILE.get_or_init(|| serde_json::from_str(ENTRIES_JSON).expect("embedded catalog is valid"))
}

pub fn records() -> &'static [EntryRecord] {
    &catalog_file().entries
}

pub fn record(id: &str) -> Result<&'static EntryRecord> {
    records()
        .iter()
        .find(|r| r.id == id)
        .ok_or_else(|| Error::NotFound(format!("no catalog entry `{id}`")))
}

/// Every entry at its default parameters, in catalog order.
pub fn all_entries() -> Vec<TransformPair> {
    records()
        .iter()
        .map(|r| r.instantiate(&[]).expect("catalog defaults instantiate"))
        .collect()
}

pub fn lookup(id: &str) -> Result<TransformPair> {
    record(id)?.instantiate(&[])
}

pub fn lookup_with(id: &str, values: &[(String, f64)]) -> Result<TransformPair> {
    record(id)?.instantiate(values)
}

/// The pair read right to left.
pub fn reversed(pair: &TransformPair) -> TransformPair {
    pair.reversed()
}

/// Stable 64-bit hash of an entry id, used to give every entry its own
/// random stream.
pub fn id_hash(id: &str) -> u64 {
    id.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_instantiates() {
        let all = all_entries();
        assert!(all.len() >= 55);
        let mut ids: Vec<&str> = all.iter().map(|p| p.entry_id.as_str()).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), all.len());
    }

    #[test]
    fn power_entry() {
        let p = lookup("b.xpp").unwrap();
        assert_eq!(p.parameter("p"), Some(3.0));
        assert_eq!(p.parameter("q"), Some(1.5));
        assert!((p.f.eval(2.0).unwrap() - 8.0 / 3.0).abs() < 1e-15);
        assert!((p.g.eval(4.0).unwrap() - 16.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn exp_entry_and_reversal() {
        let p = lookup("c.ex").unwrap();
        assert_eq!(p.g.eval(1.0).unwrap(), -1.0);
        let r = reversed(&p);
        assert_eq!(r.x_domain, p.m_domain);
        assert_eq!(r.f.eval(1.0).unwrap(), -1.0);
        assert_eq!(reversed(&r), p);
    }

    #[test]
    fn huber_is_piecewise() {
        let p = lookup("b.huber").unwrap();
        assert_eq!(p.f.eval(0.5).unwrap(), 0.125);
        assert_eq!(p.f.eval(3.0).unwrap(), 2.5);
    }

    #[test]
    fn unknown_ids_and_parameters() {
        assert!(matches!(lookup("z.nothing"), Err(Error::NotFound(_))));
        assert!(matches!(lookup_with("c.ex", &[("p".into(), 1.0)]), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn stubs_are_unverified() {
        for id in ["e.elliptic_F", "e.elliptic_E", "e.bessel_J0", "e.student_general", "e.lower_gamma", "e.upper_gamma"] {
            let p = lookup(id).unwrap();
            assert!(!p.verified && !p.f.is_supported(), "{id}");
        }
    }
}

use std::fmt::Write as _;

use polyuniv::constructions::{family_xqj, xq_plus_x2};
use polyuniv::poly::parse_polynomial;
use polyuniv::{FieldSpec, Polynomial};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::CliError;

/// Everything that determines a run's output. Worker count and file paths
/// are deliberately absent: they must not change results.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub command: String,
    pub p: u32,
    pub a: usize,
    pub modulus: Option<Vec<u32>>,
    pub poly: Option<String>,
    pub family: Option<String>,
    pub j: Option<u64>,
    pub d: usize,
    pub mode: String,
    pub budget: Option<u64>,
    pub seed: u64,
}

impl ExperimentConfig {
    /// Fixed-order `key=value` lines.
    pub fn canonical_text(&self) -> String {
        let opt = |v: Option<String>| v.unwrap_or_else(|| "-".into());
        let mut s = String::new();
        writeln!(s, "command={}", self.command).unwrap();
        writeln!(s, "p={}", self.p).unwrap();
        writeln!(s, "a={}", self.a).unwrap();
        writeln!(
            s,
            "modulus={}",
            opt(self.modulus.as_ref().map(|m| format!("{m:?}")))
        )
        .unwrap();
        writeln!(s, "poly={}", opt(self.poly.clone())).unwrap();
        writeln!(s, "family={}", opt(self.family.clone())).unwrap();
        writeln!(s, "j={}", opt(self.j.map(|j| j.to_string()))).unwrap();
        writeln!(s, "d={}", self.d).unwrap();
        writeln!(s, "mode={}", self.mode).unwrap();
        writeln!(s, "budget={}", opt(self.budget.map(|b| b.to_string()))).unwrap();
        writeln!(s, "seed={}", self.seed).unwrap();
        s
    }

    pub fn hash(&self) -> String {
        hex::encode(Sha256::digest(self.canonical_text().as_bytes()))
    }

    pub fn field(&self) -> Result<FieldSpec, CliError> {
        build_field(self.p, self.a, self.modulus.as_deref())
    }

    pub fn polynomial(&self, spec: &FieldSpec) -> Result<Polynomial, CliError> {
        resolve_polynomial(spec, self.poly.as_deref(), self.family.as_deref(), self.j)
    }
}

pub fn build_field(p: u32, a: usize, modulus: Option<&[u32]>) -> Result<FieldSpec, CliError> {
    if a == 0 {
        return Err(CliError::config("a", "extension degree must be at least 1"));
    }
    FieldSpec::create(p, a, modulus, 0).map_err(|e| {
        let field = match e {
            polyuniv::Error::NotPrime(_) | polyuniv::Error::CharacteristicTooLarge(_) => "p",
            polyuniv::Error::InvalidModulus(_) | polyuniv::Error::ReducibleModulus => "modulus",
            _ => "a",
        };
        CliError::config(field, e.to_string())
    })
}

pub fn resolve_polynomial(
    spec: &FieldSpec,
    poly: Option<&str>,
    family: Option<&str>,
    j: Option<u64>,
) -> Result<Polynomial, CliError> {
    match (poly, family) {
        (Some(_), Some(_)) => Err(CliError::config("poly", "give either --poly or --family, not both")),
        (Some(text), None) => {
            parse_polynomial(text, spec).map_err(|e| CliError::config("poly", e.to_string()))
        }
        (None, Some("xqj")) => {
            let j = j.ok_or_else(|| CliError::config("j", "--family xqj needs --j"))?;
            family_xqj(spec, j)
                .map(|f| f.polynomial)
                .map_err(|e| CliError::config("j", e.to_string()))
        }
        (None, Some("xq2")) => xq_plus_x2(spec)
            .map(|f| f.polynomial)
            .map_err(|e| CliError::config("family", e.to_string())),
        (None, Some(other)) => Err(CliError::config(
            "family",
            format!("unknown family {other:?} (expected xqj or xq2)"),
        )),
        (None, None) => Err(CliError::config("poly", "missing --poly or --family")),
    }
}

pub fn parse_modulus(text: &str) -> Result<Vec<u32>, CliError> {
    text.trim_matches(|c| c == '[' || c == ']')
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .map_err(|e| CliError::config("modulus", format!("{t:?}: {e}")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> ExperimentConfig {
        ExperimentConfig {
            command: "universality".into(),
            p: 5,
            a: 1,
            modulus: None,
            poly: None,
            family: Some("xqj".into()),
            j: Some(2),
            d: 3,
            mode: "random".into(),
            budget: None,
            seed: 0,
        }
    }

    #[test]
    fn hash_tracks_every_field() {
        let base = cfg();
        let mut other = base.clone();
        assert_eq!(base.hash(), other.hash());
        other.seed = 1;
        assert_ne!(base.hash(), other.hash());
        let mut other = base.clone();
        other.budget = Some(10);
        assert_ne!(base.hash(), other.hash());
    }

    #[test]
    fn resolves_sources() {
        let c = cfg();
        let spec = c.field().unwrap();
        assert_eq!(c.polynomial(&spec).unwrap().degree(), Some(7));
        assert!(resolve_polynomial(&spec, None, None, None).is_err());
        let e = build_field(4, 1, None).unwrap_err();
        assert!(e.to_string().contains("--p"));
    }
}

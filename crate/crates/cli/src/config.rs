//! Session configuration: signature, coefficient ring, named bicharacter
//! tables, and an optional lattice, loaded from TOML or JSON.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;

use bichar_core::coeff::LaurentPoly;
use bichar_core::hopf::AlgebraSignature;
use bichar_core::lattice::{flm_series, lattice_bicharacter, lattice_signature, Lattice};
use bichar_core::parse::{parse_coeff, parse_rational};
use bichar_core::{BicharSpec, Error, Result, SigRef};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoefficientRing {
    Rationals,
    Polynomials,
    LaurentPolynomials,
}

impl CoefficientRing {
    fn parse(text: &str) -> Result<Self> {
        match text {
            "Q" => Ok(CoefficientRing::Rationals),
            "Q[z]" => Ok(CoefficientRing::Polynomials),
            "Q[z,z^-1]" => Ok(CoefficientRing::LaurentPolynomials),
            other => Err(Error::Invalid(format!(
                "unknown coefficient ring `{other}` (expected Q, Q[z] or Q[z,z^-1])"
            ))),
        }
    }

    fn admits(&self, value: &LaurentPoly) -> bool {
        match self {
            CoefficientRing::Rationals => value.as_constant().is_some(),
            CoefficientRing::Polynomials => value.iter().all(|(e, _)| e >= 0),
            CoefficientRing::LaurentPolynomials => true,
        }
    }
}

#[derive(Debug, Deserialize)]
struct RawSignature {
    grouplike: usize,
    #[serde(default)]
    primitives: Vec<String>,
}

#[derive(Debug, Deserialize)]
struct RawGpEntry {
    i: usize,
    m: usize,
    value: String,
}

#[derive(Debug, Deserialize)]
struct RawPpEntry {
    m: usize,
    n: usize,
    value: String,
}

#[derive(Debug, Deserialize)]
struct RawBichar {
    #[serde(default)]
    gg: Vec<Vec<String>>,
    #[serde(default)]
    gp: Vec<RawGpEntry>,
    #[serde(default)]
    pg: Vec<RawGpEntry>,
    #[serde(default)]
    pp: Vec<RawPpEntry>,
}

#[derive(Debug, Deserialize)]
struct RawLattice {
    rank: usize,
    gram: Vec<Vec<String>>,
}

#[derive(Debug, Deserialize)]
struct RawConfig {
    coefficient_ring: Option<String>,
    series_order: Option<u32>,
    depth: Option<u32>,
    signature: Option<RawSignature>,
    #[serde(default)]
    bicharacters: BTreeMap<String, RawBichar>,
    lattice: Option<RawLattice>,
}

/// A fully validated session.
#[derive(Debug)]
pub struct SessionConfig {
    pub signature: SigRef,
    pub bicharacters: BTreeMap<String, BicharSpec>,
    pub lattice: Option<Lattice>,
}

impl SessionConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))?;
        let raw: RawConfig = if path.extension().map(|e| e == "json").unwrap_or(false) {
            serde_json::from_str(&text)
                .map_err(|e| Error::Invalid(format!("invalid JSON config: {e}")))?
        } else {
            toml::from_str(&text)
                .map_err(|e| Error::Invalid(format!("invalid TOML config: {e}")))?
        };
        Self::from_raw(raw)
    }

    fn from_raw(raw: RawConfig) -> Result<Self> {
        let ring = match &raw.coefficient_ring {
            Some(text) => CoefficientRing::parse(text)?,
            None => CoefficientRing::LaurentPolynomials,
        };
        let depth = raw.depth.unwrap_or(1);

        let lattice = raw
            .lattice
            .map(|l| {
                let gram = l
                    .gram
                    .iter()
                    .map(|row| row.iter().map(|v| parse_rational(v)).collect())
                    .collect::<Result<Vec<Vec<_>>>>()?;
                Lattice::new(l.rank, gram)
            })
            .transpose()?;

        let signature = match (&raw.signature, &lattice) {
            (Some(sig), _) => AlgebraSignature::new(sig.grouplike, sig.primitives.clone())?,
            (None, Some(lat)) => lattice_signature(lat.rank(), depth),
            (None, None) => {
                return Err(Error::Invalid(
                    "config needs a [signature] section or a [lattice] section".into(),
                ))
            }
        };

        let mut bicharacters = BTreeMap::new();
        for (name, spec) in raw.bicharacters {
            bicharacters.insert(name, build_spec(&signature, &ring, spec)?);
        }

        // a lattice session gets the induced table under the name `r`
        // unless the config defines one explicitly
        if let Some(lat) = &lattice {
            if !bicharacters.contains_key("r") {
                let order = raw.series_order.unwrap_or(0).max(2 * depth);
                let spec = lattice_bicharacter(lat, &flm_series(order), depth)?;
                if spec.signature().compatible(&signature) {
                    bicharacters.insert("r".to_string(), spec);
                }
            }
        }

        Ok(SessionConfig {
            signature,
            bicharacters,
            lattice,
        })
    }

    pub fn bicharacter(&self, name: &str) -> Result<&BicharSpec> {
        self.bicharacters
            .get(name)
            .ok_or_else(|| Error::Invalid(format!("no bicharacter named `{name}` in the config")))
    }
}

fn check_index(value: usize, count: usize, what: &str) -> Result<usize> {
    if value >= 1 && value <= count {
        Ok(value - 1)
    } else {
        Err(Error::Invalid(format!(
            "{what} index {value} out of range 1..={count}"
        )))
    }
}

fn build_spec(sig: &SigRef, ring: &CoefficientRing, raw: RawBichar) -> Result<BicharSpec> {
    let l = sig.num_grouplike();
    let p = sig.num_primitives();
    let mut spec = BicharSpec::identity(sig.clone());
    if !raw.gg.is_empty() {
        if raw.gg.len() != l || raw.gg.iter().any(|row| row.len() != l) {
            return Err(Error::Invalid(format!("gg table must be {l}x{l}")));
        }
        for (i, row) in raw.gg.iter().enumerate() {
            for (j, text) in row.iter().enumerate() {
                spec.set_gg(i, j, parse_rational(text)?)?;
            }
        }
    }
    let coeff = |text: &str| -> Result<LaurentPoly> {
        let value = parse_coeff(text)?;
        if !ring.admits(&value) {
            return Err(Error::Invalid(format!(
                "value `{text}` lies outside the configured coefficient ring"
            )));
        }
        Ok(value)
    };
    for e in raw.gp {
        let i = check_index(e.i, l, "grouplike")?;
        let m = check_index(e.m, p, "primitive")?;
        spec.set_gp(i, m, coeff(&e.value)?);
    }
    for e in raw.pg {
        let i = check_index(e.i, l, "grouplike")?;
        let m = check_index(e.m, p, "primitive")?;
        spec.set_pg(m, i, coeff(&e.value)?);
    }
    for e in raw.pp {
        let m = check_index(e.m, p, "primitive")?;
        let n = check_index(e.n, p, "primitive")?;
        spec.set_pp(m, n, coeff(&e.value)?);
    }
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn load_toml(text: &str) -> Result<SessionConfig> {
        let raw: RawConfig = toml::from_str(text).unwrap();
        SessionConfig::from_raw(raw)
    }

    #[test]
    fn plain_session() {
        let cfg = load_toml(
            r#"
            [signature]
            grouplike = 1
            primitives = ["x1", "x2"]

            [bicharacters.r]
            gg = [["4"]]
            pp = [{ m = 1, n = 2, value = "1/16*z^-2" }]
            "#,
        )
        .unwrap();
        let r = cfg.bicharacter("r").unwrap();
        assert_eq!(r.gg(0, 0), bichar_core::coeff::rat(4, 1));
        assert_eq!(
            r.pp(0, 1),
            LaurentPoly::monomial(-2, bichar_core::coeff::rat(1, 16))
        );
    }

    #[test]
    fn lattice_session_autobuilds_r() {
        let cfg = load_toml(
            r#"
            [lattice]
            rank = 2
            gram = [["2", "-1"], ["-1", "2"]]
            "#,
        )
        .unwrap();
        let r = cfg.bicharacter("r").unwrap();
        assert_eq!(cfg.signature.num_primitives(), 2);
        assert_eq!(
            r.pp(0, 0),
            LaurentPoly::monomial(-2, bichar_core::coeff::rat(1, 8))
        );
    }

    #[test]
    fn non_constant_grouplike_value_rejected() {
        let err = load_toml(
            r#"
            [signature]
            grouplike = 1
            primitives = []

            [bicharacters.s]
            gg = [["1/2*z^-1"]]
            "#,
        )
        .unwrap_err();
        assert_eq!(err, Error::NonConstantGrouplikeValue);
    }

    #[test]
    fn ring_restriction_enforced() {
        let err = load_toml(
            r#"
            coefficient_ring = "Q"

            [signature]
            grouplike = 0
            primitives = ["x1"]

            [bicharacters.r]
            pp = [{ m = 1, n = 1, value = "1/4*z^-1" }]
            "#,
        )
        .unwrap_err();
        assert!(matches!(err, Error::Invalid(_)));
    }
}

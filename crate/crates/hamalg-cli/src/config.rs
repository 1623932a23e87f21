//! Strict configuration schema and its translation into library objects.
//!
//! Configs are TOML with four sections: `[algebra]` (the signature data),
//! an optional `[module]` (weights xi and the character f), `[window]` (the
//! probe box and degree cap), and `[run]` (seed, samples, iteration cap).
//! Every scalar is exact: integers, `"p/q"` fractions, or finite decimals
//! in strings. Floating point values and unknown keys are rejected.

use std::fmt;

use hamalg::algebra::Algebra;
use hamalg::closure::Window;
use hamalg::lattice::{AlgebraSignature, Character, ModuleSignature, SemigroupSlot, SkewForm};
use hamalg::rational::{parse_rational, Int, Rational};
use serde::de::{self, Deserializer, Visitor};
use serde::Deserialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("config is not valid TOML: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("[{section}] {detail}")]
    Shape { section: &'static str, detail: String },
    #[error("[algebra] rejected: {0}")]
    Signature(#[from] hamalg::lattice::SignatureError),
    #[error("[window] rejected: {0}")]
    Window(#[from] hamalg::closure::WindowError),
}

/// An exact scalar: a TOML integer, or a string holding an integer, a
/// fraction `p/q`, or a finite decimal. TOML floats are refused.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Exact(pub Rational);

impl<'de> Deserialize<'de> for Exact {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct ExactVisitor;
        impl Visitor<'_> for ExactVisitor {
            type Value = Exact;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or an exact scalar string like \"-3/2\" or \"0.25\"")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Exact, E> {
                Ok(Exact(Rational::from(Int::from(v))))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Exact, E> {
                Ok(Exact(Rational::from(Int::from(v))))
            }
            fn visit_f64<E: de::Error>(self, _: f64) -> Result<Exact, E> {
                Err(E::custom(
                    "floating point values are not exact; write the scalar as a string",
                ))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Exact, E> {
                parse_rational(v).map(Exact).map_err(E::custom)
            }
        }
        deserializer.deserialize_any(ExactVisitor)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SlotName {
    Point,
    Nat,
}

impl From<SlotName> for SemigroupSlot {
    fn from(name: SlotName) -> SemigroupSlot {
        match name {
            SlotName::Point => SemigroupSlot::Point,
            SlotName::Nat => SemigroupSlot::Nat,
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSection {
    /// Number of derivation pairs.
    pub n: usize,
    /// Group rank.
    pub m: usize,
    /// Skew form matrix, m rows of m exact entries.
    pub phi: Vec<Vec<Exact>>,
    /// Character weight rows, 2n rows of m exact entries.
    pub char_p: Vec<Vec<Exact>>,
    /// Index slot kinds, 2n entries of "point" or "nat".
    pub mask: Vec<SlotName>,
    /// Pair shift vectors, n - 1 rows of m integers.
    pub sigma: Vec<Vec<i64>>,
    /// Distinguished central shift, m integers.
    pub epsilon: Vec<i64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSection {
    /// Derivation weights, 2n exact entries.
    pub xi: Vec<Exact>,
    /// Weight row of the character f, m exact entries.
    pub f: Vec<Exact>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WindowSection {
    /// Inclusive [lo, hi] bounds, one pair per group coordinate.
    #[serde(rename = "box")]
    pub bounds: Vec<[i64; 2]>,
    pub degree_cap: u32,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunSection {
    pub seed: u64,
    pub samples: usize,
    pub max_iter: u32,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigDocument {
    pub algebra: AlgebraSection,
    pub module: Option<ModuleSection>,
    pub window: WindowSection,
    pub run: RunSection,
}

impl ConfigDocument {
    pub fn parse(text: &str) -> Result<ConfigDocument, ConfigError> {
        Ok(toml::from_str(text)?)
    }
}

/// Hex SHA-256 of the raw config bytes, echoed in every report.
pub fn config_digest(raw: &str) -> String {
    let mut hasher = Sha256::new();
    hasher.update(raw.as_bytes());
    let out = hasher.finalize();
    out.iter().map(|b| format!("{b:02x}")).collect()
}

fn shape(section: &'static str, detail: impl Into<String>) -> ConfigError {
    ConfigError::Shape {
        section,
        detail: detail.into(),
    }
}

fn scalar_rows(rows: &[Vec<Exact>]) -> Vec<Vec<Rational>> {
    rows.iter()
        .map(|row| row.iter().map(|e| e.0.clone()).collect())
        .collect()
}

fn int_vec(vals: &[i64]) -> Vec<Int> {
    vals.iter().map(|&v| Int::from(v)).collect()
}

/// The library-side objects a config denotes.
pub struct Built {
    pub algebra: Algebra,
    pub module: Option<ModuleSignature>,
    pub probe: Window,
    pub run: RunSection,
}

pub fn build(doc: ConfigDocument) -> Result<Built, ConfigError> {
    let a = &doc.algebra;
    if a.char_p.len() != 2 * a.n {
        return Err(shape(
            "algebra",
            format!("char_p has {} rows but n = {} needs {}", a.char_p.len(), a.n, 2 * a.n),
        ));
    }
    if a.mask.len() != 2 * a.n {
        return Err(shape(
            "algebra",
            format!("mask has {} entries but n = {} needs {}", a.mask.len(), a.n, 2 * a.n),
        ));
    }
    if a.phi.len() != a.m || a.phi.iter().any(|row| row.len() != a.m) {
        return Err(shape("algebra", format!("phi must be a {0} x {0} matrix", a.m)));
    }
    if a.char_p.iter().any(|row| row.len() != a.m) {
        return Err(shape("algebra", format!("every char_p row needs {} entries", a.m)));
    }
    let characters = scalar_rows(&a.char_p).into_iter().map(Character::new).collect();
    let slots = a.mask.iter().map(|&s| s.into()).collect();
    let sigmas = a.sigma.iter().map(|row| int_vec(row)).collect();
    let signature = AlgebraSignature::new(
        a.m,
        SkewForm::new(scalar_rows(&a.phi))?,
        characters,
        slots,
        sigmas,
        int_vec(&a.epsilon),
    )?;

    let module = match &doc.module {
        None => None,
        Some(ms) => {
            let xi: Vec<Rational> = ms.xi.iter().map(|e| e.0.clone()).collect();
            let f: Vec<Rational> = ms.f.iter().map(|e| e.0.clone()).collect();
            Some(ModuleSignature::new(xi, Character::new(f)))
        }
    };

    if doc.window.bounds.len() != a.m {
        return Err(shape(
            "window",
            format!("box has {} coordinate ranges but m = {}", doc.window.bounds.len(), a.m),
        ));
    }
    let bounds = doc
        .window
        .bounds
        .iter()
        .map(|&[lo, hi]| (Int::from(lo), Int::from(hi)))
        .collect();
    let probe = Window::new(bounds, doc.window.degree_cap)?;

    Ok(Built {
        algebra: Algebra::new(signature),
        module,
        probe,
        run: doc.run,
    })
}

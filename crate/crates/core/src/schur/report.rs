use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::algebra::AlgebraDims;
use super::characters::{
    simple_character, standard_character, BadPrimes, Character, DecompMatrix, JantzenCheck,
};
use super::det::DetComparison;
use super::{RingelDatum, SchurError};
use crate::exterior::identities::IdentityReport;
use crate::matroid::subset;
use crate::xalg::{Field, PrimeField, Rationals};

/// Serde adapter writing rationals as `"num/den"`.
pub(crate) mod rational_string {
    use num_rational::BigRational;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    use crate::xalg::{format_rational, parse_rational};

    pub fn serialize<S: Serializer>(q: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).ok_or_else(|| D::Error::custom(format!("bad rational {text:?}")))
    }
}

/// Machine-readable record of one run. Every section beyond the header is optional so a
/// subcommand fills in only what it computed. Fields are declared in alphabetical order,
/// which is also the serialized key order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<AlgebraDims>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub axioms: Option<IdentityReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bad_primes: Option<BadPrimes>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<DecompMatrix>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub determinants: Vec<DetComparison>,
    pub field: String,
    pub flats: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub identities: Option<IdentityReport>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub jantzen: Vec<JantzenCheck>,
    pub matroid: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    /// `p ↦` whether the algebra is semisimple over `𝔽_p`
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub semisimple: BTreeMap<u64, bool>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub simple_characters: BTreeMap<String, Character>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub standard_characters: BTreeMap<String, Character>,
    pub weights: Vec<i64>,
}

impl Report {
    /// Header of a report over `ℚ` (`p = None`) or `𝔽_p`.
    pub fn new<F: Field>(name: &str, d: &RingelDatum<F>) -> Self {
        let p = d.field().characteristic();
        Report {
            field: if p == 0 { "Q" } else { "Fp" }.to_string(),
            p: (p != 0).then_some(p),
            flats: d
                .flats()
                .iter()
                .map(|&f| subset::elements(f).collect())
                .collect(),
            matroid: name.to_string(),
            weights: d.weights().to_vec(),
            ..Report::default()
        }
    }

    /// Whether every identity and axiom section that is present passed.
    pub fn passed(&self) -> bool {
        self.axioms.as_ref().is_none_or(IdentityReport::passed)
            && self.identities.as_ref().is_none_or(IdentityReport::passed)
            && self.determinants.iter().all(|d| d.holds)
            && self.jantzen.iter().all(|j| j.dominated)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterRow {
    pub flat: Vec<usize>,
    pub standard: Character,
    pub simple: Option<Character>,
}

/// Standard characters over `ℚ` and, optionally, simple characters over `𝔽_p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterTable {
    pub p: Option<u64>,
    pub rows: Vec<CharacterRow>,
}

impl CharacterTable {
    pub fn build(
        rational: &RingelDatum<Rationals>,
        modular: Option<&RingelDatum<PrimeField>>,
    ) -> Result<Self, SchurError> {
        let mut rows = Vec::new();
        for &e in rational.flats() {
            rows.push(CharacterRow {
                flat: subset::elements(e).collect(),
                standard: standard_character(rational, e)?,
                simple: modular.map(|d| simple_character(d, e)).transpose()?,
            });
        }
        Ok(CharacterTable {
            p: modular.map(|d| d.field().modulus()),
            rows,
        })
    }

    /// Plain-text table, one flat per line.
    pub fn render(&self) -> String {
        let flat_width = self
            .rows
            .iter()
            .map(|r| subset::format(subset::from_elements(r.flat.iter().copied())).len())
            .max()
            .unwrap_or(0)
            .max(4);
        let mut out = String::new();
        let _ = write!(out, "{:<flat_width$}  ch Δ", "flat");
        if let Some(p) = self.p {
            let _ = write!(out, "  |  ch L (p = {p})");
        }
        out.push('\n');
        for r in &self.rows {
            let name = subset::format(subset::from_elements(r.flat.iter().copied()));
            let _ = write!(out, "{name:<flat_width$}  {}", r.standard.display());
            if let Some(s) = &r.simple {
                let _ = write!(out, "  |  {}", s.display());
            }
            out.push('\n');
        }
        out
    }
}

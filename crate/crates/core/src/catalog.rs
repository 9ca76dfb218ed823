//! Unit types and the data-driven catalog that holds them.
//!
//! A unit is reduced to a handful of numbers: one health figure (hit points
//! plus shields, scaled by armor), one damage-per-second figure (scaled by the
//! maximum number of targets an area attack can reach), and an optional bonus
//! damage figure that applies against targets carrying specific attributes.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Multiplier applied to health once per point of armor.
pub const ARMOR_HEALTH_FACTOR: f64 = 1.5;

const BUILTIN_CATALOG: &str = include_str!("../data/units.toml");

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Race {
    Protoss,
    Terran,
    Zerg,
}

impl Race {
    pub fn letter(self) -> char {
        match self {
            Race::Protoss => 'P',
            Race::Terran => 'T',
            Race::Zerg => 'Z',
        }
    }
}

impl fmt::Display for Race {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Race::Protoss => "protoss",
            Race::Terran => "terran",
            Race::Zerg => "zerg",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Attribute {
    Light,
    Armored,
    Biological,
    Mechanical,
    Massive,
    Psionic,
}

impl Attribute {
    pub const ALL: [Attribute; 6] = [
        Attribute::Light,
        Attribute::Armored,
        Attribute::Biological,
        Attribute::Mechanical,
        Attribute::Massive,
        Attribute::Psionic,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Attribute::Light => "light",
            Attribute::Armored => "armored",
            Attribute::Biological => "biological",
            Attribute::Mechanical => "mechanical",
            Attribute::Massive => "massive",
            Attribute::Psionic => "psionic",
        }
    }

    fn bit(self) -> u8 {
        1 << (self as u8)
    }
}

impl FromStr for Attribute {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Attribute::ALL
            .into_iter()
            .find(|a| a.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse(format!("unknown attribute `{s}`")))
    }
}

/// Compact set of attributes used on the hot path of the engine.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct AttributeMask(u8);

impl AttributeMask {
    pub fn intersects(self, other: AttributeMask) -> bool {
        self.0 & other.0 != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }
}

impl<'a> FromIterator<&'a Attribute> for AttributeMask {
    fn from_iter<I: IntoIterator<Item = &'a Attribute>>(iter: I) -> Self {
        AttributeMask(iter.into_iter().fold(0, |acc, a| acc | a.bit()))
    }
}

/// Immutable stats for one unit type.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UnitClass {
    pub name: String,
    pub race: Race,
    #[serde(rename = "health")]
    pub base_health: u32,
    pub shields: u32,
    pub armor: u32,
    #[serde(rename = "dps")]
    pub base_dps: f64,
    pub aoe_area: f64,
    pub ranged: bool,
    #[serde(default)]
    pub attributes: BTreeSet<Attribute>,
    #[serde(rename = "bonus_dps", default)]
    pub bonus_base_dps: f64,
    #[serde(default = "unit_area")]
    pub bonus_aoe_area: f64,
    #[serde(default)]
    pub bonus_vs: BTreeSet<Attribute>,
}

fn unit_area() -> f64 {
    1.0
}

impl UnitClass {
    /// Hit points plus shields, scaled by `1.5^armor`.
    pub fn effective_health(&self) -> f64 {
        let raw = f64::from(self.base_health) + f64::from(self.shields);
        raw * ARMOR_HEALTH_FACTOR.powi(self.armor as i32)
    }

    /// Damage per second with the area multiplier folded in.
    pub fn effective_dps(&self) -> f64 {
        self.base_dps * self.aoe_area
    }

    pub fn effective_bonus_dps(&self) -> f64 {
        self.bonus_base_dps * self.bonus_aoe_area
    }

    pub fn attribute_mask(&self) -> AttributeMask {
        self.attributes.iter().collect()
    }

    pub fn bonus_mask(&self) -> AttributeMask {
        self.bonus_vs.iter().collect()
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |reason: &str| {
            Err(Error::InvalidUnit {
                name: self.name.clone(),
                reason: reason.to_owned(),
            })
        };
        if self.name.trim().is_empty() {
            return fail("empty name");
        }
        if self.base_health == 0 && self.shields == 0 {
            return fail("health + shields must be positive");
        }
        if !(self.base_dps.is_finite() && self.base_dps >= 0.0) {
            return fail("dps must be a non-negative number");
        }
        if !(self.bonus_base_dps.is_finite() && self.bonus_base_dps >= 0.0) {
            return fail("bonus_dps must be a non-negative number");
        }
        if !(self.aoe_area.is_finite() && self.aoe_area >= 1.0) {
            return fail("aoe_area must be at least 1");
        }
        if !(self.bonus_aoe_area.is_finite() && self.bonus_aoe_area >= 1.0) {
            return fail("bonus_aoe_area must be at least 1");
        }
        if self.bonus_vs.is_empty() != (self.bonus_base_dps == 0.0) {
            return fail("bonus_vs must be empty exactly when bonus_dps is 0");
        }
        if self.armor > 64 {
            return fail("armor out of range");
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct CatalogDocument {
    #[serde(rename = "unit", default)]
    units: Vec<UnitClass>,
}

/// Name-indexed collection of unit types. Read-only after load.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct UnitCatalog {
    entries: BTreeMap<String, UnitClass>,
}

impl UnitCatalog {
    /// The catalog shipped with the crate (`data/units.toml`).
    pub fn builtin() -> Self {
        Self::from_toml_str(BUILTIN_CATALOG).expect("shipped unit catalog is valid")
    }

    pub fn builtin_source() -> &'static str {
        BUILTIN_CATALOG
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml_str(&text)
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        let doc: CatalogDocument = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_units(doc.units)
    }

    pub fn from_units(units: impl IntoIterator<Item = UnitClass>) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for unit in units {
            unit.validate()?;
            if entries.contains_key(&unit.name) {
                return Err(Error::DuplicateUnit(unit.name));
            }
            entries.insert(unit.name.clone(), unit);
        }
        Ok(UnitCatalog { entries })
    }

    pub fn to_toml_string(&self) -> String {
        let doc = CatalogDocument {
            units: self.entries.values().cloned().collect(),
        };
        toml::to_string(&doc).expect("catalog serializes")
    }

    pub fn get(&self, name: &str) -> Option<&UnitClass> {
        self.entries.get(name)
    }

    pub fn resolve(&self, name: &str) -> Result<&UnitClass> {
        self.get(name)
            .ok_or_else(|| Error::UnknownUnit(name.to_owned()))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &UnitClass> {
        self.entries.values()
    }
}

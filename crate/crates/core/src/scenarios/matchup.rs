use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::catalog::{Race, UnitCatalog};
use crate::error::{Error, Result};

const BUILTIN_MATCHUPS: &str = include_str!("../../data/matchups.toml");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Pairing {
    PvT,
    TvZ,
    PvZ,
}

impl Pairing {
    pub const ALL: [Pairing; 3] = [Pairing::PvT, Pairing::TvZ, Pairing::PvZ];

    pub fn races(self) -> (Race, Race) {
        match self {
            Pairing::PvT => (Race::Protoss, Race::Terran),
            Pairing::TvZ => (Race::Terran, Race::Zerg),
            Pairing::PvZ => (Race::Protoss, Race::Zerg),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Pairing::PvT => "PvT",
            Pairing::TvZ => "TvZ",
            Pairing::PvZ => "PvZ",
        }
    }
}

impl fmt::Display for Pairing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Pairing {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Pairing::ALL
            .into_iter()
            .find(|p| p.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                Error::Parse(format!("unknown pairing `{s}` (expected PvT, TvZ or PvZ)"))
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MatchupId {
    pub round: u8,
    pub pairing: Pairing,
}

impl fmt::Display for MatchupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R{} {}", self.round, self.pairing)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArmyEntry {
    pub unit: String,
    pub count: u32,
}

impl ArmyEntry {
    pub fn new(unit: impl Into<String>, count: u32) -> Self {
        ArmyEntry {
            unit: unit.into(),
            count,
        }
    }
}

/// Two armies to fight, optionally tagged with a benchmark id.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchupSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<MatchupId>,
    pub army1: Vec<ArmyEntry>,
    pub army2: Vec<ArmyEntry>,
}

impl MatchupSpec {
    pub fn new(army1: Vec<ArmyEntry>, army2: Vec<ArmyEntry>) -> Self {
        MatchupSpec {
            id: None,
            army1,
            army2,
        }
    }

    pub fn army_pairs(army: &[ArmyEntry]) -> Vec<(String, u32)> {
        army.iter().map(|e| (e.unit.clone(), e.count)).collect()
    }

    /// Checks counts and army shape, that every unit resolves, and for
    /// benchmark matchups that unit races match the pairing.
    pub fn validate(&self, catalog: &UnitCatalog) -> Result<()> {
        for (side, army) in [(1, &self.army1), (2, &self.army2)] {
            if army.is_empty() {
                return Err(Error::InvalidScenario(format!("army {side} is empty")));
            }
            let mut seen = BTreeSet::new();
            for entry in army {
                if entry.count == 0 {
                    return Err(Error::InvalidScenario(format!(
                        "army {side}: count for `{}` must be at least 1",
                        entry.unit
                    )));
                }
                if !seen.insert(entry.unit.as_str()) {
                    return Err(Error::InvalidScenario(format!(
                        "army {side}: `{}` listed twice",
                        entry.unit
                    )));
                }
                catalog.resolve(&entry.unit)?;
            }
        }
        if let Some(id) = self.id {
            let (race1, race2) = id.pairing.races();
            for (race, army) in [(race1, &self.army1), (race2, &self.army2)] {
                for entry in army {
                    let unit = catalog.resolve(&entry.unit)?;
                    if unit.race != race {
                        return Err(Error::InvalidScenario(format!(
                            "{id}: `{}` is {} but the pairing expects {race}",
                            entry.unit, unit.race
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Deserialize)]
struct MatchupDocument {
    matchup: Vec<MatchupRecord>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MatchupRecord {
    round: u8,
    pairing: Pairing,
    army1: Vec<ArmyEntry>,
    army2: Vec<ArmyEntry>,
}

/// The twelve benchmark matchups, in round order.
pub fn builtin_matchups() -> Vec<MatchupSpec> {
    let doc: MatchupDocument = toml::from_str(BUILTIN_MATCHUPS).expect("shipped matchups parse");
    doc.matchup
        .into_iter()
        .map(|r| MatchupSpec {
            id: Some(MatchupId {
                round: r.round,
                pairing: r.pairing,
            }),
            army1: r.army1,
            army2: r.army2,
        })
        .collect()
}

pub fn find_matchup(round: u8, pairing: Pairing) -> Result<MatchupSpec> {
    builtin_matchups()
        .into_iter()
        .find(|m| m.id == Some(MatchupId { round, pairing }))
        .ok_or_else(|| Error::UnknownMatchup {
            round,
            pairing: pairing.to_string(),
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counts(army: &[ArmyEntry]) -> Vec<(&str, u32)> {
        army.iter().map(|e| (e.unit.as_str(), e.count)).collect()
    }

    #[test]
    fn twelve_matchups_three_per_round() {
        let all = builtin_matchups();
        assert_eq!(all.len(), 12);
        for round in 1..=4 {
            let ids: Vec<_> = all
                .iter()
                .filter_map(|m| m.id)
                .filter(|id| id.round == round)
                .map(|id| id.pairing)
                .collect();
            assert_eq!(ids, Pairing::ALL);
        }
    }

    #[test]
    fn round_one_pvt() {
        let m = find_matchup(1, Pairing::PvT).unwrap();
        assert_eq!(counts(&m.army1), [("zealot", 8), ("stalker", 2)]);
        assert_eq!(counts(&m.army2), [("marine", 12), ("marauder", 4)]);
    }

    #[test]
    fn round_three_pvz_has_archon_and_ultralisk() {
        let m = find_matchup(3, Pairing::PvZ).unwrap();
        assert!(m.army1.contains(&ArmyEntry::new("archon", 1)));
        assert!(m.army2.contains(&ArmyEntry::new("ultralisk", 1)));
    }

    #[test]
    fn round_four_tvz() {
        let m = find_matchup(4, Pairing::TvZ).unwrap();
        assert_eq!(
            counts(&m.army1),
            [
                ("marine", 30),
                ("marauder", 10),
                ("siege_tank", 4),
                ("thor", 2)
            ]
        );
        assert_eq!(
            counts(&m.army2),
            [
                ("zergling", 40),
                ("roach", 10),
                ("hydralisk", 10),
                ("ultralisk", 4)
            ]
        );
    }

    #[test]
    fn builtins_validate_against_builtin_catalog() {
        let catalog = UnitCatalog::builtin();
        for m in builtin_matchups() {
            m.validate(&catalog).unwrap();
            assert!(m.army1.len() <= 4 && m.army2.len() <= 4);
        }
    }

    #[test]
    fn race_mismatch_rejected() {
        let catalog = UnitCatalog::builtin();
        let mut m = find_matchup(1, Pairing::PvT).unwrap();
        m.army1.push(ArmyEntry::new("zergling", 1));
        assert!(matches!(
            m.validate(&catalog),
            Err(Error::InvalidScenario(_))
        ));
        m.id = None;
        assert!(m.validate(&catalog).is_ok());
    }

    #[test]
    fn unknown_matchup() {
        assert!(find_matchup(5, Pairing::PvT).is_err());
    }
}

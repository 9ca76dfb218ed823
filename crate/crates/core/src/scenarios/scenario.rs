//! User-defined matchups in the same TOML family as the unit catalog:
//!
//! ```toml
//! model = "apx4"      # optional
//! trials = 1000       # optional
//! seed = 42           # optional
//! army1 = [{ unit = "zealot", count = 8 }, { unit = "stalker", count = 2 }]
//! army2 = [{ unit = "marine", count = 12 }, { unit = "marauder", count = 4 }]
//! ```

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::matchup::{ArmyEntry, MatchupSpec};
use crate::catalog::UnitCatalog;
use crate::engine::ModelId;
use crate::error::{Error, Result};
use crate::montecarlo::ExperimentSpec;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    model: Option<ModelId>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    trials: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    army1: Vec<ArmyEntry>,
    army2: Vec<ArmyEntry>,
}

/// A resolved matchup plus whichever experiment settings the document set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scenario {
    pub matchup: MatchupSpec,
    pub model: Option<ModelId>,
    pub trials: Option<u32>,
    pub seed: Option<u64>,
}

impl Scenario {
    /// Fills unset fields from the given defaults.
    pub fn experiment(&self, model: ModelId, trials: u32, seed: u64) -> ExperimentSpec {
        ExperimentSpec {
            matchup: self.matchup.clone(),
            model: self.model.unwrap_or(model),
            trials: self.trials.unwrap_or(trials),
            master_seed: self.seed.unwrap_or(seed),
        }
    }

    pub fn to_toml_string(&self) -> String {
        let doc = ScenarioDocument {
            model: self.model,
            trials: self.trials,
            seed: self.seed,
            army1: self.matchup.army1.clone(),
            army2: self.matchup.army2.clone(),
        };
        toml::to_string(&doc).expect("scenario serializes")
    }
}

pub fn load_scenario(text: &str, catalog: &UnitCatalog) -> Result<Scenario> {
    let doc: ScenarioDocument = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if doc.trials == Some(0) {
        return Err(Error::InvalidScenario("trials must be at least 1".into()));
    }
    let matchup = MatchupSpec::new(doc.army1, doc.army2);
    matchup.validate(catalog)?;
    Ok(Scenario {
        matchup,
        model: doc.model,
        trials: doc.trials,
        seed: doc.seed,
    })
}

pub fn load_scenario_file(path: impl AsRef<Path>, catalog: &UnitCatalog) -> Result<Scenario> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    load_scenario(&text, catalog)
}

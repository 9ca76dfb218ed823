//! The approximation models as interchangeable strategies.
//!
//! Every model runs on the same round-stepped engine. A model only decides
//! three things: whether the opening round is restricted to ranged attackers,
//! whether bonus damage is pooled in, and how targets are picked. The four
//! built-in models enable these features one at a time.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::army::ArmyState;
use super::pool::{bonus_pool, DamagePool};
use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelId {
    Apx1,
    Apx2,
    Apx3,
    Apx4,
}

impl ModelId {
    pub const ALL: [ModelId; 4] = [ModelId::Apx1, ModelId::Apx2, ModelId::Apx3, ModelId::Apx4];

    pub fn as_str(self) -> &'static str {
        match self {
            ModelId::Apx1 => "apx1",
            ModelId::Apx2 => "apx2",
            ModelId::Apx3 => "apx3",
            ModelId::Apx4 => "apx4",
        }
    }

    /// Upper-case label used in report tables ("APX3").
    pub fn label(self) -> &'static str {
        match self {
            ModelId::Apx1 => "APX1",
            ModelId::Apx2 => "APX2",
            ModelId::Apx3 => "APX3",
            ModelId::Apx4 => "APX4",
        }
    }

    pub fn model(self) -> &'static dyn CombatModel {
        match self {
            ModelId::Apx1 => &Apx1,
            ModelId::Apx2 => &Apx2,
            ModelId::Apx3 => &Apx3,
            ModelId::Apx4 => &Apx4,
        }
    }
}

impl fmt::Display for ModelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ModelId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        ModelId::ALL
            .into_iter()
            .find(|m| m.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownModel(s.to_owned()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TargetPolicy {
    /// Any alive unit, uniformly over unit instances.
    UniformRandom,
    /// Alive melee units first; ranged units only once no melee unit is left.
    MeleeFirst,
}

pub trait CombatModel: Send + Sync {
    fn name(&self) -> &str;

    /// Only ranged units deal damage in the first round.
    fn ranged_opening(&self) -> bool;

    /// Bonus damage is added to the pool, scaled by the vulnerable fraction
    /// of the defending army.
    fn bonus_damage(&self) -> bool;

    fn target_policy(&self) -> TargetPolicy;

    /// Total damage the attacker deals this round, from start-of-round state.
    fn damage_pool(
        &self,
        attacker: &ArmyState<'_>,
        defender: &ArmyState<'_>,
        first_round: bool,
    ) -> DamagePool {
        let ranged_only = first_round && self.ranged_opening();
        let mut total: f64 = attacker
            .slots()
            .iter()
            .filter(|s| s.alive > 0 && (!ranged_only || s.class.ranged))
            .map(|s| s.dps() * f64::from(s.alive))
            .sum();
        if self.bonus_damage() && !defender.is_defeated() {
            total += bonus_pool(attacker, defender, ranged_only);
        }
        DamagePool::new(total)
    }
}

impl fmt::Debug for dyn CombatModel + '_ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CombatModel")
            .field("name", &self.name())
            .field("ranged_opening", &self.ranged_opening())
            .field("bonus_damage", &self.bonus_damage())
            .field("target_policy", &self.target_policy())
            .finish()
    }
}

/// Random focus fire with every unit's full damage from the first round.
#[derive(Debug, Clone, Copy, Default)]
pub struct Apx1;

/// Adds a free opening round for ranged units.
#[derive(Debug, Clone, Copy, Default)]
pub struct Apx2;

/// Adds pooled bonus damage.
#[derive(Debug, Clone, Copy, Default)]
pub struct Apx3;

/// Adds melee-first targeting.
#[derive(Debug, Clone, Copy, Default)]
pub struct Apx4;

macro_rules! builtin_model {
    ($ty:ty, $name:expr, $ranged:expr, $bonus:expr, $policy:expr) => {
        impl CombatModel for $ty {
            fn name(&self) -> &str {
                $name
            }
            fn ranged_opening(&self) -> bool {
                $ranged
            }
            fn bonus_damage(&self) -> bool {
                $bonus
            }
            fn target_policy(&self) -> TargetPolicy {
                $policy
            }
        }
    };
}

builtin_model!(Apx1, "apx1", false, false, TargetPolicy::UniformRandom);
builtin_model!(Apx2, "apx2", true, false, TargetPolicy::UniformRandom);
builtin_model!(Apx3, "apx3", true, true, TargetPolicy::UniformRandom);
builtin_model!(Apx4, "apx4", true, true, TargetPolicy::MeleeFirst);

/// Models registered by name, selected at runtime.
#[derive(Clone)]
pub struct ModelRegistry {
    models: BTreeMap<String, Arc<dyn CombatModel>>,
}

impl Default for ModelRegistry {
    fn default() -> Self {
        Self::builtin()
    }
}

impl fmt::Debug for ModelRegistry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.models.keys()).finish()
    }
}

impl ModelRegistry {
    pub fn empty() -> Self {
        ModelRegistry {
            models: BTreeMap::new(),
        }
    }

    pub fn builtin() -> Self {
        let mut registry = Self::empty();
        registry.register(Arc::new(Apx1));
        registry.register(Arc::new(Apx2));
        registry.register(Arc::new(Apx3));
        registry.register(Arc::new(Apx4));
        registry
    }

    /// Registers a model under its own name, replacing any previous entry.
    pub fn register(&mut self, model: Arc<dyn CombatModel>) {
        self.models.insert(model.name().to_ascii_lowercase(), model);
    }

    pub fn get(&self, name: &str) -> Result<Arc<dyn CombatModel>, Error> {
        self.models
            .get(&name.to_ascii_lowercase())
            .cloned()
            .ok_or_else(|| Error::UnknownModel(name.to_owned()))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.models.keys().map(String::as_str)
    }
}

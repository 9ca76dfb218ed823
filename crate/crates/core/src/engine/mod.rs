//! Round-stepped damage-pool combat engine shared by all models.

mod army;
mod model;
mod pool;
mod trial;

pub use army::{ArmyState, Slot};
pub use model::{Apx1, Apx2, Apx3, Apx4, CombatModel, ModelId, ModelRegistry, TargetPolicy};
pub use pool::{apply_pool, bonus_pool, compute_pool, DamagePool, LETHAL_EPSILON};
pub use trial::{run_trial, step_round, Stalemate, TrialOutcome, Winner, ROUND_CAP};

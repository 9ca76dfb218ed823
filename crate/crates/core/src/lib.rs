//! Fast approximation models for predicting the outcome of RTS battles
//! between two armies, with a seeded Monte Carlo harness, an exact
//! enumeration oracle, benchmark matchups and reference results.

pub mod catalog;
pub mod engine;
pub mod error;
pub mod montecarlo;
pub mod report;
pub mod scenarios;

pub use catalog::{Attribute, Race, UnitCatalog, UnitClass};
pub use engine::{
    ArmyState, CombatModel, ModelId, ModelRegistry, TargetPolicy, TrialOutcome, Winner,
};
pub use error::{Error, Result};
pub use montecarlo::{run_experiment, AggregateResult, ExperimentSpec};

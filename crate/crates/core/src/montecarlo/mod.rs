//! Seeded Monte Carlo experiments and the exact-enumeration oracle.

mod exact;
mod experiment;

pub use exact::{enumerate_exact, ExactDistribution, ExactLimits, OutcomeKey};
pub use experiment::{
    aggregate, run_experiment, run_experiment_with, simulate_trials, trial_rng, AggregateResult,
    Execution, ExperimentSpec, TrialRecord, DEFAULT_TRIALS,
};

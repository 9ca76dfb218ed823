use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::UnitCatalog;
use crate::engine::{run_trial, ArmyState, CombatModel, ModelId, TrialOutcome, Winner};
use crate::error::{Error, Result};
use crate::scenarios::MatchupSpec;

pub const DEFAULT_TRIALS: u32 = 1000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentSpec {
    pub matchup: MatchupSpec,
    pub model: ModelId,
    pub trials: u32,
    pub master_seed: u64,
}

impl ExperimentSpec {
    pub fn new(matchup: MatchupSpec, model: ModelId, trials: u32, master_seed: u64) -> Self {
        ExperimentSpec {
            matchup,
            model,
            trials,
            master_seed,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Serial,
    #[default]
    Parallel,
}

/// Random stream for trial `index`: the master seed keys the generator and
/// the trial index selects an independent ChaCha stream, so a trial's draws
/// never depend on which other trials ran or in what order.
pub fn trial_rng(master_seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(index);
    rng
}

/// Per-trial record as seen by the aggregator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialRecord {
    pub outcome: TrialOutcome,
    pub stalemate: bool,
}

/// Summary of `trials` independent battles.
///
/// Raw fractions keep draws separate; the `reported_*` pair splits draws
/// evenly between the armies so the two sum to one. Survivor means are
/// taken over the trials each army won and are absent if it never won.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AggregateResult {
    pub spec: ExperimentSpec,
    pub wins1: u32,
    pub wins2: u32,
    /// Includes stalemates.
    pub draws: u32,
    pub stalemates: u32,
    pub win1: f64,
    pub win2: f64,
    pub draw: f64,
    pub reported_win1: f64,
    pub reported_win2: f64,
    pub mean_survivors1: Option<Vec<f64>>,
    pub mean_survivors2: Option<Vec<f64>>,
    pub mean_rounds: f64,
}

fn resolve_armies<'c>(
    matchup: &MatchupSpec,
    catalog: &'c UnitCatalog,
) -> Result<(ArmyState<'c>, ArmyState<'c>)> {
    matchup.validate(catalog)?;
    let army1 = ArmyState::resolve(&MatchupSpec::army_pairs(&matchup.army1), catalog)?;
    let army2 = ArmyState::resolve(&MatchupSpec::army_pairs(&matchup.army2), catalog)?;
    Ok((army1, army2))
}

/// Runs every trial and returns the records in trial-index order.
pub fn simulate_trials(
    spec: &ExperimentSpec,
    catalog: &UnitCatalog,
    model: &dyn CombatModel,
    execution: Execution,
) -> Result<Vec<TrialRecord>> {
    if spec.trials == 0 {
        return Err(Error::InvalidScenario("trials must be at least 1".into()));
    }
    let (army1, army2) = resolve_armies(&spec.matchup, catalog)?;
    let one = |i: u32| {
        let mut rng = trial_rng(spec.master_seed, u64::from(i));
        match run_trial(army1.clone(), army2.clone(), model, &mut rng) {
            Ok(outcome) => TrialRecord {
                outcome,
                stalemate: false,
            },
            Err(stalled) => TrialRecord {
                outcome: stalled.outcome,
                stalemate: true,
            },
        }
    };
    Ok(match execution {
        Execution::Serial => (0..spec.trials).map(one).collect(),
        Execution::Parallel => (0..spec.trials).into_par_iter().map(one).collect(),
    })
}

fn conditional_mean(sums: &[u64], wins: u32) -> Option<Vec<f64>> {
    (wins > 0).then(|| sums.iter().map(|&s| s as f64 / f64::from(wins)).collect())
}

pub fn aggregate(spec: &ExperimentSpec, records: &[TrialRecord]) -> AggregateResult {
    let n1 = spec.matchup.army1.len();
    let n2 = spec.matchup.army2.len();
    let mut sums1 = vec![0u64; n1];
    let mut sums2 = vec![0u64; n2];
    let (mut wins1, mut wins2, mut draws, mut stalemates) = (0u32, 0u32, 0u32, 0u32);
    let mut rounds = 0u64;
    for record in records {
        let outcome = &record.outcome;
        rounds += u64::from(outcome.rounds);
        stalemates += u32::from(record.stalemate);
        match outcome.winner {
            Winner::Army1 => {
                wins1 += 1;
                for (sum, &n) in sums1.iter_mut().zip(&outcome.survivors1) {
                    *sum += u64::from(n);
                }
            }
            Winner::Army2 => {
                wins2 += 1;
                for (sum, &n) in sums2.iter_mut().zip(&outcome.survivors2) {
                    *sum += u64::from(n);
                }
            }
            Winner::Draw => draws += 1,
        }
    }
    let total = f64::from(wins1 + wins2 + draws).max(1.0);
    let half_draws = f64::from(draws) / 2.0;
    AggregateResult {
        spec: spec.clone(),
        wins1,
        wins2,
        draws,
        stalemates,
        win1: f64::from(wins1) / total,
        win2: f64::from(wins2) / total,
        draw: f64::from(draws) / total,
        reported_win1: (f64::from(wins1) + half_draws) / total,
        reported_win2: (f64::from(wins2) + half_draws) / total,
        mean_survivors1: conditional_mean(&sums1, wins1),
        mean_survivors2: conditional_mean(&sums2, wins2),
        mean_rounds: rounds as f64 / total,
    }
}

/// Runs `spec` with its built-in model, in parallel.
pub fn run_experiment(spec: &ExperimentSpec, catalog: &UnitCatalog) -> Result<AggregateResult> {
    run_experiment_with(spec, catalog, spec.model.model(), Execution::Parallel)
}

/// Runs `spec` with an explicit model (for instance one taken from a
/// [`ModelRegistry`](crate::engine::ModelRegistry)); `spec.model` is echoed
/// but not consulted.
pub fn run_experiment_with(
    spec: &ExperimentSpec,
    catalog: &UnitCatalog,
    model: &dyn CombatModel,
    execution: Execution,
) -> Result<AggregateResult> {
    let records = simulate_trials(spec, catalog, model, execution)?;
    Ok(aggregate(spec, &records))
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use rand::RngCore;

    use super::*;
    use crate::catalog::tests::unit;
    use crate::scenarios::{find_matchup, ArmyEntry, Pairing};

    fn duel_catalog() -> UnitCatalog {
        UnitCatalog::from_units([
            unit("a", 10, 0, 10.0, true),
            unit("b", 10, 0, 5.0, true),
            unit("idle", 10, 0, 0.0, true),
        ])
        .unwrap()
    }

    fn duel(x: &str, y: &str, trials: u32, seed: u64) -> ExperimentSpec {
        ExperimentSpec::new(
            MatchupSpec::new(vec![ArmyEntry::new(x, 1)], vec![ArmyEntry::new(y, 1)]),
            ModelId::Apx1,
            trials,
            seed,
        )
    }

    #[test]
    fn mirror_is_always_a_draw() {
        let catalog = duel_catalog();
        for seed in [0, 1, 12345] {
            let r = run_experiment(&duel("a", "a", 1000, seed), &catalog).unwrap();
            assert_eq!(r.draws, 1000);
            assert_eq!(r.draw, 1.0);
            assert_eq!(r.reported_win1, 0.5);
            assert_eq!(r.reported_win2, 0.5);
            assert_eq!(r.mean_survivors1, None);
            assert_eq!(r.mean_survivors2, None);
        }
    }

    #[test]
    fn lopsided_duel_statistics() {
        let catalog = duel_catalog();
        let n = 10_000;
        let r = run_experiment(&duel("a", "b", n, 3), &catalog).unwrap();
        let tol = 3.0 * (0.25 / f64::from(n)).sqrt();
        assert_eq!(r.wins2, 0);
        assert!((r.win1 - 0.5).abs() < tol, "{}", r.win1);
        assert!((r.draw - 0.5).abs() < tol, "{}", r.draw);
        assert_eq!(r.mean_survivors1, Some(vec![1.0]));
        assert_eq!(r.wins1 + r.wins2 + r.draws, n);
        assert!((r.reported_win1 + r.reported_win2 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn stalemates_are_counted_not_fatal() {
        let catalog = duel_catalog();
        let r = run_experiment(&duel("idle", "idle", 3, 0), &catalog).unwrap();
        assert_eq!(r.stalemates, 3);
        assert_eq!(r.draws, 3);
    }

    #[test]
    fn serial_and_parallel_agree() {
        let catalog = UnitCatalog::builtin();
        let spec = ExperimentSpec::new(
            find_matchup(2, Pairing::TvZ).unwrap(),
            ModelId::Apx3,
            300,
            9,
        );
        let serial =
            run_experiment_with(&spec, &catalog, spec.model.model(), Execution::Serial).unwrap();
        let parallel =
            run_experiment_with(&spec, &catalog, spec.model.model(), Execution::Parallel).unwrap();
        assert_eq!(
            serde_json::to_string(&serial).unwrap(),
            serde_json::to_string(&parallel).unwrap()
        );
    }

    #[test]
    fn trial_streams_are_distinct() {
        let firsts: BTreeSet<u64> = (0..100).map(|i| trial_rng(5, i).next_u64()).collect();
        assert_eq!(firsts.len(), 100);
        assert_eq!(trial_rng(5, 17).next_u64(), trial_rng(5, 17).next_u64());
        assert_ne!(trial_rng(5, 17).next_u64(), trial_rng(6, 17).next_u64());
    }

    #[test]
    fn errors_propagate() {
        let catalog = duel_catalog();
        assert!(matches!(
            run_experiment(&duel("a", "ghost", 10, 0), &catalog),
            Err(Error::UnknownUnit(_))
        ));
        assert!(run_experiment(&duel("a", "b", 0, 0), &catalog).is_err());
    }
}

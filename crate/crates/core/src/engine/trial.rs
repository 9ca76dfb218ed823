use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::army::ArmyState;
use super::model::CombatModel;
use super::pool::{apply_pool, compute_pool};

/// Rounds after which a battle with no defeated army is declared a stalemate.
pub const ROUND_CAP: u32 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Winner {
    Army1,
    Army2,
    Draw,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialOutcome {
    pub winner: Winner,
    pub survivors1: Vec<u32>,
    pub survivors2: Vec<u32>,
    pub rounds: u32,
}

#[derive(Debug, Clone, Error)]
#[error("stalemate: both armies still alive after {} rounds", .outcome.rounds)]
pub struct Stalemate {
    /// Final state; the winner is always `Draw`.
    pub outcome: TrialOutcome,
}

/// One simultaneous round: both pools come from the start-of-round state,
/// then each is spent on the opposing army.
pub fn step_round<R: Rng + ?Sized>(
    army1: &mut ArmyState<'_>,
    army2: &mut ArmyState<'_>,
    model: &dyn CombatModel,
    first_round: bool,
    rng: &mut R,
) {
    let pool1 = compute_pool(army1, army2, model, first_round);
    let pool2 = compute_pool(army2, army1, model, first_round);
    let policy = model.target_policy();
    apply_pool(pool1, army2, policy, rng);
    apply_pool(pool2, army1, policy, rng);
}

/// Steps rounds until one army is defeated or [`ROUND_CAP`] is reached.
pub fn run_trial<R: Rng + ?Sized>(
    mut army1: ArmyState<'_>,
    mut army2: ArmyState<'_>,
    model: &dyn CombatModel,
    rng: &mut R,
) -> Result<TrialOutcome, Stalemate> {
    let mut rounds = 0;
    while !army1.is_defeated() && !army2.is_defeated() {
        if rounds == ROUND_CAP {
            return Err(Stalemate {
                outcome: TrialOutcome {
                    winner: Winner::Draw,
                    survivors1: army1.alive_counts(),
                    survivors2: army2.alive_counts(),
                    rounds,
                },
            });
        }
        step_round(&mut army1, &mut army2, model, rounds == 0, rng);
        rounds += 1;
    }
    let winner = match (army1.is_defeated(), army2.is_defeated()) {
        (false, true) => Winner::Army1,
        (true, false) => Winner::Army2,
        _ => Winner::Draw,
    };
    Ok(TrialOutcome {
        winner,
        survivors1: army1.alive_counts(),
        survivors2: army2.alive_counts(),
        rounds,
    })
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::catalog::tests::unit;
    use crate::engine::model::ModelId;

    #[test]
    fn lopsided_duel_round_one() {
        let a = unit("a", 10, 0, 10.0, true);
        let b = unit("b", 10, 0, 5.0, true);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let n = 10_000;
        let mut a_dead = 0;
        for _ in 0..n {
            let mut x = ArmyState::new([(&a, 1)]);
            let mut y = ArmyState::new([(&b, 1)]);
            step_round(&mut x, &mut y, ModelId::Apx1.model(), true, &mut rng);
            assert!(y.is_defeated());
            a_dead += u32::from(x.is_defeated());
        }
        let p = f64::from(a_dead) / f64::from(n);
        assert!((p - 0.5).abs() < 3.0 * (0.25 / f64::from(n)).sqrt());
    }

    #[test]
    fn zero_dps_round_changes_nothing() {
        let a = unit("a", 10, 0, 0.0, true);
        let mut x = ArmyState::new([(&a, 2)]);
        let mut y = ArmyState::new([(&a, 3)]);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        step_round(&mut x, &mut y, ModelId::Apx4.model(), false, &mut rng);
        assert_eq!((x.total_alive(), y.total_alive()), (2, 3));
    }

    #[test]
    fn ranged_opening_wipes_melee_untouched() {
        let gun = unit("gun", 10, 0, 50.0, true);
        let claw = unit("claw", 10, 0, 50.0, false);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut x = ArmyState::new([(&gun, 1)]);
        let mut y = ArmyState::new([(&claw, 4)]);
        step_round(&mut x, &mut y, ModelId::Apx2.model(), true, &mut rng);
        assert!(y.is_defeated());
        assert_eq!(x.total_alive(), 1);
    }

    #[test]
    fn overwhelming_pair_beats_single() {
        let a = unit("a", 5, 0, 10.0, true);
        let b = unit("b", 20, 0, 4.0, true);
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let n = 10_000;
        let mut one_left = 0;
        for _ in 0..n {
            let out = run_trial(
                ArmyState::new([(&a, 2)]),
                ArmyState::new([(&b, 1)]),
                ModelId::Apx1.model(),
                &mut rng,
            )
            .unwrap();
            assert_eq!(out.winner, Winner::Army1);
            assert_eq!(out.rounds, 1);
            one_left += u32::from(out.survivors1 == [1]);
        }
        let p = f64::from(one_left) / f64::from(n);
        assert!(
            (p - 0.8).abs() < 3.0 * (0.16 / f64::from(n)).sqrt(),
            "p = {p}"
        );
    }

    #[test]
    fn symmetric_exact_lethal_is_draw() {
        let a = unit("a", 10, 0, 10.0, false);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for model in ModelId::ALL.into_iter().filter(|m| *m == ModelId::Apx1) {
            let out = run_trial(
                ArmyState::new([(&a, 1)]),
                ArmyState::new([(&a, 1)]),
                model.model(),
                &mut rng,
            )
            .unwrap();
            assert_eq!(out.winner, Winner::Draw);
            assert_eq!(out.survivors1, [0]);
        }
    }

    #[test]
    fn zero_damage_hits_round_cap() {
        let a = unit("a", 10, 0, 0.0, true);
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let err = run_trial(
            ArmyState::new([(&a, 1)]),
            ArmyState::new([(&a, 2)]),
            ModelId::Apx1.model(),
            &mut rng,
        )
        .unwrap_err();
        assert_eq!(err.outcome.rounds, ROUND_CAP);
        assert_eq!(err.outcome.winner, Winner::Draw);
        assert_eq!(err.outcome.survivors2, [2]);
    }

    #[test]
    fn same_seed_same_trial() {
        let catalog = crate::catalog::UnitCatalog::builtin();
        let run = || {
            let mut rng = ChaCha8Rng::seed_from_u64(99);
            let a = ArmyState::resolve(&[("zealot".into(), 8), ("stalker".into(), 2)], &catalog)
                .unwrap();
            let b = ArmyState::resolve(&[("marine".into(), 12), ("marauder".into(), 4)], &catalog)
                .unwrap();
            run_trial(a, b, ModelId::Apx4.model(), &mut rng).unwrap()
        };
        assert_eq!(run(), run());
    }
}

use rand::Rng;

use super::army::ArmyState;
use super::model::{CombatModel, TargetPolicy};

/// Slack used when comparing a pool against a unit's health, so that sums
/// like `4 * 16.0` cover four units of 16 health despite rounding.
pub const LETHAL_EPSILON: f64 = 1e-9;

/// Damage an army has available for one one-second round.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct DamagePool(f64);

impl DamagePool {
    pub fn new(damage: f64) -> Self {
        DamagePool(damage.max(0.0))
    }

    pub fn remaining(self) -> f64 {
        self.0
    }

    pub fn is_exhausted(self) -> bool {
        self.0 <= LETHAL_EPSILON
    }
}

/// Pool for `attacker` this round under `model`.
pub fn compute_pool(
    attacker: &ArmyState<'_>,
    defender: &ArmyState<'_>,
    model: &dyn CombatModel,
    first_round: bool,
) -> DamagePool {
    model.damage_pool(attacker, defender, first_round)
}

/// Bonus damage scaled by the share of alive defenders each attacker class
/// is effective against.
pub fn bonus_pool(attacker: &ArmyState<'_>, defender: &ArmyState<'_>, ranged_only: bool) -> f64 {
    let defenders = defender.total_alive();
    if defenders == 0 {
        return 0.0;
    }
    attacker
        .slots()
        .iter()
        .filter(|s| s.alive > 0 && !s.bonus_vs().is_empty() && (!ranged_only || s.class.ranged))
        .map(|s| {
            let vulnerable: u32 = defender
                .slots()
                .iter()
                .filter(|d| d.attributes().intersects(s.bonus_vs()))
                .map(|d| d.alive)
                .sum();
            let fraction = f64::from(vulnerable) / f64::from(defenders);
            s.bonus_dps() * f64::from(s.alive) * fraction
        })
        .sum()
}

fn pick_target<R: Rng + ?Sized>(
    defender: &ArmyState<'_>,
    policy: TargetPolicy,
    rng: &mut R,
) -> Option<usize> {
    let melee_only = policy == TargetPolicy::MeleeFirst && defender.alive_melee() > 0;
    let eligible = |i: &usize| {
        let slot = &defender.slots()[*i];
        slot.alive > 0 && (!melee_only || slot.is_melee())
    };
    let slots = 0..defender.slots().len();
    let candidates: u32 = slots
        .clone()
        .filter(eligible)
        .map(|i| defender.slots()[i].alive)
        .sum();
    if candidates == 0 {
        return None;
    }
    let mut pick = rng.gen_range(0..candidates);
    for i in slots.filter(eligible) {
        let alive = defender.slots()[i].alive;
        if pick < alive {
            return Some(i);
        }
        pick -= alive;
    }
    unreachable!("target index within candidate count")
}

/// Spends `pool` on randomly selected defenders and returns the number of
/// kills.
///
/// Each selected unit dies outright if the remaining pool covers its
/// effective health. Otherwise it dies with probability `pool / health` and
/// the pool is spent either way.
pub fn apply_pool<R: Rng + ?Sized>(
    pool: DamagePool,
    defender: &mut ArmyState<'_>,
    policy: TargetPolicy,
    rng: &mut R,
) -> u32 {
    let mut remaining = pool.remaining();
    let mut kills = 0;
    while remaining > LETHAL_EPSILON {
        let Some(target) = pick_target(defender, policy, rng) else {
            break;
        };
        let health = defender.slots()[target].health();
        if remaining >= health - LETHAL_EPSILON {
            defender.kill(target);
            kills += 1;
            remaining -= health;
        } else {
            if rng.gen::<f64>() < remaining / health {
                defender.kill(target);
                kills += 1;
            }
            remaining = 0.0;
        }
    }
    kills
}

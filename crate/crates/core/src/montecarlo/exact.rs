//! Exact outcome distribution for small matchups.
//!
//! The battle is a Markov chain over alive-count vectors. Counts never grow,
//! so the only cycles are self-loops (rounds where nobody dies). For each
//! state the oracle enumerates every target selection and probabilistic kill
//! of both pools, then removes the self-loop analytically:
//!
//! `P(end | s) = sum over s' != s of P(s -> s') * P(end | s') / (1 - P(s -> s))`
//!
//! so no round limit is needed. States with no way out are stalemates and
//! end as draws with both armies alive.
//!
//! This is a separate implementation of the round rules from the engine and
//! is meant to be checked against it.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::catalog::{AttributeMask, UnitCatalog, UnitClass};
use crate::engine::{CombatModel, TargetPolicy, Winner, LETHAL_EPSILON};
use crate::error::{Error, Result};
use crate::scenarios::MatchupSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactLimits {
    pub max_units_per_side: u32,
    pub max_states: usize,
}

impl Default for ExactLimits {
    fn default() -> Self {
        ExactLimits {
            max_units_per_side: 4,
            max_states: 100_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct OutcomeKey {
    pub winner: Winner,
    pub survivors1: Vec<u32>,
    pub survivors2: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExactDistribution {
    pub outcomes: BTreeMap<OutcomeKey, f64>,
}

impl ExactDistribution {
    pub fn total(&self) -> f64 {
        self.outcomes.values().sum()
    }

    pub fn winner_probability(&self, winner: Winner) -> f64 {
        self.outcomes
            .iter()
            .filter(|(k, _)| k.winner == winner)
            .map(|(_, p)| p)
            .sum()
    }

    pub fn probability(&self, key: &OutcomeKey) -> f64 {
        self.outcomes.get(key).copied().unwrap_or(0.0)
    }

    /// The same distribution with army labels exchanged.
    pub fn swapped(&self) -> ExactDistribution {
        let outcomes = self
            .outcomes
            .iter()
            .map(|(k, &p)| {
                let winner = match k.winner {
                    Winner::Army1 => Winner::Army2,
                    Winner::Army2 => Winner::Army1,
                    Winner::Draw => Winner::Draw,
                };
                let key = OutcomeKey {
                    winner,
                    survivors1: k.survivors2.clone(),
                    survivors2: k.survivors1.clone(),
                };
                (key, p)
            })
            .collect();
        ExactDistribution { outcomes }
    }
}

#[derive(Debug, Clone)]
struct Kind {
    health: f64,
    dps: f64,
    bonus_dps: f64,
    ranged: bool,
    attributes: AttributeMask,
    bonus_vs: AttributeMask,
}

impl Kind {
    fn of(u: &UnitClass) -> Kind {
        Kind {
            health: u.effective_health(),
            dps: u.effective_dps(),
            bonus_dps: u.effective_bonus_dps(),
            ranged: u.ranged,
            attributes: u.attribute_mask(),
            bonus_vs: u.bonus_mask(),
        }
    }
}

type Counts = Vec<u32>;

struct Rules {
    ranged_opening: bool,
    bonus: bool,
    policy: TargetPolicy,
}

struct Oracle<'a> {
    side1: &'a [Kind],
    side2: &'a [Kind],
    rules: Rules,
    limits: ExactLimits,
    memo: HashMap<(Counts, Counts, bool), BTreeMap<OutcomeKey, f64>>,
    visited: usize,
}

fn round_damage(
    att: &[Kind],
    att_n: &[u32],
    def: &[Kind],
    def_n: &[u32],
    rules: &Rules,
    first: bool,
) -> f64 {
    let ranged_only = first && rules.ranged_opening;
    let defenders: u32 = def_n.iter().sum();
    let mut damage = 0.0;
    for (kind, &n) in att.iter().zip(att_n) {
        if n == 0 || (ranged_only && !kind.ranged) {
            continue;
        }
        damage += kind.dps * f64::from(n);
        if rules.bonus && defenders > 0 && !kind.bonus_vs.is_empty() {
            let exposed: u32 = def
                .iter()
                .zip(def_n)
                .filter(|(d, _)| d.attributes.intersects(kind.bonus_vs))
                .map(|(_, &m)| m)
                .sum();
            damage += kind.bonus_dps * f64::from(n) * f64::from(exposed) / f64::from(defenders);
        }
    }
    damage
}

/// Every way `damage` can land on `counts`, with probabilities.
fn spread(
    damage: f64,
    kinds: &[Kind],
    counts: &mut Counts,
    policy: TargetPolicy,
    weight: f64,
    out: &mut BTreeMap<Counts, f64>,
) {
    let alive: u32 = counts.iter().sum();
    if damage <= LETHAL_EPSILON || alive == 0 {
        *out.entry(counts.clone()).or_insert(0.0) += weight;
        return;
    }
    let melee_left = kinds
        .iter()
        .zip(counts.iter())
        .any(|(k, &n)| !k.ranged && n > 0);
    let allowed = |i: usize| !(policy == TargetPolicy::MeleeFirst && melee_left && kinds[i].ranged);
    let pool: u32 = (0..kinds.len())
        .filter(|&i| allowed(i))
        .map(|i| counts[i])
        .sum();
    for i in 0..kinds.len() {
        if counts[i] == 0 || !allowed(i) {
            continue;
        }
        let pick = weight * f64::from(counts[i]) / f64::from(pool);
        let health = kinds[i].health;
        if damage >= health - LETHAL_EPSILON {
            counts[i] -= 1;
            spread(damage - health, kinds, counts, policy, pick, out);
            counts[i] += 1;
        } else {
            let kill = damage / health;
            *out.entry(counts.clone()).or_insert(0.0) += pick * (1.0 - kill);
            counts[i] -= 1;
            *out.entry(counts.clone()).or_insert(0.0) += pick * kill;
            counts[i] += 1;
        }
    }
}

impl Oracle<'_> {
    fn solve(&mut self, c1: Counts, c2: Counts, first: bool) -> Result<BTreeMap<OutcomeKey, f64>> {
        let alive1: u32 = c1.iter().sum();
        let alive2: u32 = c2.iter().sum();
        if alive1 == 0 || alive2 == 0 {
            let winner = match (alive1 == 0, alive2 == 0) {
                (false, true) => Winner::Army1,
                (true, false) => Winner::Army2,
                _ => Winner::Draw,
            };
            let key = OutcomeKey {
                winner,
                survivors1: c1,
                survivors2: c2,
            };
            return Ok(BTreeMap::from([(key, 1.0)]));
        }
        let memo_key = (c1.clone(), c2.clone(), first);
        if let Some(hit) = self.memo.get(&memo_key) {
            return Ok(hit.clone());
        }
        self.visited += 1;
        if self.visited > self.limits.max_states {
            return Err(Error::Explosion(format!(
                "more than {} reachable states",
                self.limits.max_states
            )));
        }

        let dmg1 = round_damage(self.side1, &c1, self.side2, &c2, &self.rules, first);
        let dmg2 = round_damage(self.side2, &c2, self.side1, &c1, &self.rules, first);
        let mut next2 = BTreeMap::new();
        spread(
            dmg1,
            self.side2,
            &mut c2.clone(),
            self.rules.policy,
            1.0,
            &mut next2,
        );
        let mut next1 = BTreeMap::new();
        spread(
            dmg2,
            self.side1,
            &mut c1.clone(),
            self.rules.policy,
            1.0,
            &mut next1,
        );

        let mut stay = 0.0;
        let mut result: BTreeMap<OutcomeKey, f64> = BTreeMap::new();
        for (n1, p1) in &next1 {
            for (n2, p2) in &next2 {
                let p = p1 * p2;
                if !first && *n1 == c1 && *n2 == c2 {
                    stay += p;
                    continue;
                }
                for (key, q) in self.solve(n1.clone(), n2.clone(), false)? {
                    *result.entry(key).or_insert(0.0) += p * q;
                }
            }
        }
        if stay > 0.0 {
            let leave = 1.0 - stay;
            if leave <= 1e-15 {
                result.clear();
                let key = OutcomeKey {
                    winner: Winner::Draw,
                    survivors1: c1,
                    survivors2: c2,
                };
                result.insert(key, 1.0);
            } else {
                for p in result.values_mut() {
                    *p /= leave;
                }
            }
        }
        self.memo.insert(memo_key, result.clone());
        Ok(result)
    }
}

/// Exhaustively computes the outcome distribution of `matchup` under `model`.
pub fn enumerate_exact(
    matchup: &MatchupSpec,
    model: &dyn CombatModel,
    catalog: &UnitCatalog,
    limits: ExactLimits,
) -> Result<ExactDistribution> {
    matchup.validate(catalog)?;
    let side = |army: &[crate::scenarios::ArmyEntry]| -> Result<(Vec<Kind>, Counts)> {
        let total: u32 = army.iter().map(|e| e.count).sum();
        if total > limits.max_units_per_side {
            return Err(Error::Explosion(format!(
                "{total} units on one side, limit is {}",
                limits.max_units_per_side
            )));
        }
        let kinds = army
            .iter()
            .map(|e| catalog.resolve(&e.unit).map(Kind::of))
            .collect::<Result<Vec<_>>>()?;
        Ok((kinds, army.iter().map(|e| e.count).collect()))
    };
    let (side1, c1) = side(&matchup.army1)?;
    let (side2, c2) = side(&matchup.army2)?;
    let mut oracle = Oracle {
        side1: &side1,
        side2: &side2,
        rules: Rules {
            ranged_opening: model.ranged_opening(),
            bonus: model.bonus_damage(),
            policy: model.target_policy(),
        },
        limits,
        memo: HashMap::new(),
        visited: 0,
    };
    let mut outcomes = oracle.solve(c1, c2, true)?;
    outcomes.retain(|_, p| *p > 0.0);
    Ok(ExactDistribution { outcomes })
}

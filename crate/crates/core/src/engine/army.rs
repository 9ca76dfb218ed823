use crate::catalog::{AttributeMask, UnitCatalog, UnitClass};
use crate::error::Result;

/// One unit type within an army and how many of it are still alive.
#[derive(Debug, Clone)]
pub struct Slot<'c> {
    pub class: &'c UnitClass,
    pub initial: u32,
    pub alive: u32,
    health: f64,
    dps: f64,
    bonus_dps: f64,
    attributes: AttributeMask,
    bonus_vs: AttributeMask,
}

impl<'c> Slot<'c> {
    fn new(class: &'c UnitClass, count: u32) -> Self {
        Slot {
            class,
            initial: count,
            alive: count,
            health: class.effective_health(),
            dps: class.effective_dps(),
            bonus_dps: class.effective_bonus_dps(),
            attributes: class.attribute_mask(),
            bonus_vs: class.bonus_mask(),
        }
    }

    pub fn health(&self) -> f64 {
        self.health
    }

    pub fn dps(&self) -> f64 {
        self.dps
    }

    pub fn bonus_dps(&self) -> f64 {
        self.bonus_dps
    }

    pub fn attributes(&self) -> AttributeMask {
        self.attributes
    }

    pub fn bonus_vs(&self) -> AttributeMask {
        self.bonus_vs
    }

    pub fn is_melee(&self) -> bool {
        !self.class.ranged
    }
}

/// Alive-unit counts per class for one side of a trial.
///
/// Units are either alive at full effective health or dead; no partial
/// damage is carried between or within rounds.
#[derive(Debug, Clone)]
pub struct ArmyState<'c> {
    slots: Vec<Slot<'c>>,
}

impl<'c> ArmyState<'c> {
    pub fn new(units: impl IntoIterator<Item = (&'c UnitClass, u32)>) -> Self {
        ArmyState {
            slots: units.into_iter().map(|(c, n)| Slot::new(c, n)).collect(),
        }
    }

    pub fn resolve(units: &[(String, u32)], catalog: &'c UnitCatalog) -> Result<Self> {
        let classes = units
            .iter()
            .map(|(name, n)| Ok((catalog.resolve(name)?, *n)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(classes))
    }

    pub fn slots(&self) -> &[Slot<'c>] {
        &self.slots
    }

    pub fn total_alive(&self) -> u32 {
        self.slots.iter().map(|s| s.alive).sum()
    }

    pub fn total_initial(&self) -> u32 {
        self.slots.iter().map(|s| s.initial).sum()
    }

    pub fn total_effective_health(&self) -> f64 {
        self.slots
            .iter()
            .map(|s| s.health * f64::from(s.alive))
            .sum()
    }

    pub fn is_defeated(&self) -> bool {
        self.total_alive() == 0
    }

    pub fn alive_counts(&self) -> Vec<u32> {
        self.slots.iter().map(|s| s.alive).collect()
    }

    pub fn alive_melee(&self) -> u32 {
        self.slots
            .iter()
            .filter(|s| s.is_melee())
            .map(|s| s.alive)
            .sum()
    }

    pub(crate) fn kill(&mut self, slot: usize) {
        let s = &mut self.slots[slot];
        debug_assert!(s.alive > 0);
        s.alive -= 1;
    }

    /// Resets the alive counts to the given values. Counts above a slot's
    /// initial size are clamped.
    pub fn set_alive(&mut self, counts: &[u32]) {
        for (slot, &n) in self.slots.iter_mut().zip(counts) {
            slot.alive = n.min(slot.initial);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::tests::unit;

    #[test]
    fn totals() {
        let a = unit("a", 10, 0, 1.0, true);
        let b = unit("b", 20, 1, 1.0, false);
        let mut army = ArmyState::new([(&a, 2), (&b, 1)]);
        assert_eq!(army.total_alive(), 3);
        assert_eq!(army.total_effective_health(), 50.0);
        assert_eq!(army.alive_melee(), 1);
        army.kill(1);
        assert_eq!(army.alive_melee(), 0);
        army.kill(0);
        army.kill(0);
        assert!(army.is_defeated());
        assert_eq!(army.total_effective_health(), 0.0);
        army.set_alive(&[5, 1]);
        assert_eq!(army.alive_counts(), [2, 1]);
    }

    #[test]
    fn resolve_unknown() {
        let catalog = UnitCatalog::builtin();
        assert!(ArmyState::resolve(&[("wraith".into(), 1)], &catalog).is_err());
        let army =
            ArmyState::resolve(&[("zealot".into(), 8), ("stalker".into(), 2)], &catalog).unwrap();
        assert_eq!(army.total_alive(), 10);
    }
}

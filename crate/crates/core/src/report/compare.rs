use serde::{Deserialize, Serialize};

use crate::engine::ModelId;
use crate::error::{Error, Result};
use crate::montecarlo::AggregateResult;
use crate::scenarios::{find_row, MatchupId, ReferenceRow, RowKind};

/// Simulated army 1 win rate next to the published model and test values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub id: MatchupId,
    pub model: ModelId,
    pub simulated_win1: f64,
    pub reference_win1: f64,
    pub test_win1: f64,
}

impl ComparisonRow {
    pub fn from_result(result: &AggregateResult, reference: &[ReferenceRow]) -> Result<Self> {
        let id = result
            .spec
            .matchup
            .id
            .ok_or_else(|| Error::Reference("custom matchups have no reference rows".into()))?;
        let model = result.spec.model;
        let lookup = |kind| {
            find_row(reference, id, kind)
                .map(ReferenceRow::win1)
                .ok_or_else(|| Error::Reference(format!("missing {kind} row for {id}")))
        };
        Ok(ComparisonRow {
            id,
            model,
            simulated_win1: result.reported_win1,
            reference_win1: lookup(RowKind::Model(model))?,
            test_win1: lookup(RowKind::Test)?,
        })
    }

    pub fn delta_reference(&self) -> f64 {
        (self.simulated_win1 - self.reference_win1).abs()
    }

    pub fn delta_test(&self) -> f64 {
        (self.simulated_win1 - self.test_win1).abs()
    }

    /// Published model error against the test battles.
    pub fn reference_delta_test(&self) -> f64 {
        (self.reference_win1 - self.test_win1).abs()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::montecarlo::{aggregate, ExperimentSpec};
    use crate::scenarios::{find_matchup, reference_table, Pairing};

    #[test]
    fn deltas_follow_fields() {
        let spec = ExperimentSpec::new(find_matchup(1, Pairing::TvZ).unwrap(), ModelId::Apx4, 1, 0);
        let mut result = aggregate(&spec, &[]);
        result.reported_win1 = 0.25;
        let mut row = ComparisonRow::from_result(&result, &reference_table()).unwrap();
        assert_eq!((row.reference_win1, row.test_win1), (0.55, 0.70));
        assert!((row.delta_reference() - 0.30).abs() < 1e-12);
        assert!((row.delta_test() - 0.45).abs() < 1e-12);
        assert!((row.reference_delta_test() - 0.15).abs() < 1e-12);
        row.simulated_win1 = 0.70;
        assert!(row.delta_test().abs() < 1e-12);
    }
}

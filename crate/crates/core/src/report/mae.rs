use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::engine::ModelId;
use crate::error::{Error, Result};
use crate::montecarlo::AggregateResult;
use crate::scenarios::{find_row, MatchupId, ReferenceRow, RowKind};

/// Mean absolute difference in army 1 win rate between a model and the
/// test battles, over the matchups it was measured on.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelError {
    pub model: ModelId,
    pub matches: usize,
    pub mae: f64,
    /// Sum of absolute differences in hundredths, when every input was a
    /// reference row (so the total is exact).
    pub total_abs_hundredths: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct ModelErrorSummary {
    pub models: BTreeMap<ModelId, ModelError>,
}

impl ModelErrorSummary {
    pub fn get(&self, model: ModelId) -> Option<&ModelError> {
        self.models.get(&model)
    }

    pub fn mae(&self, model: ModelId) -> Option<f64> {
        self.get(model).map(|e| e.mae)
    }
}

fn test_rows(reference: &[ReferenceRow]) -> BTreeMap<MatchupId, &ReferenceRow> {
    reference
        .iter()
        .filter(|r| r.kind == RowKind::Test)
        .map(|r| (r.id(), r))
        .collect()
}

/// Error of each model against the test rows.
///
/// Without `simulated`, each model's published rows are scored and every
/// matchup with a test row must have a row for all four models. With
/// `simulated`, the fresh results are scored instead (using the win rate
/// with draws split evenly) and each simulated matchup must have a test row.
pub fn mae_by_model(
    reference: &[ReferenceRow],
    simulated: Option<&[AggregateResult]>,
) -> Result<ModelErrorSummary> {
    let tests = test_rows(reference);
    if tests.is_empty() {
        return Err(Error::Reference("no test rows to compare against".into()));
    }
    let mut summary = ModelErrorSummary::default();
    match simulated {
        None => {
            for model in ModelId::ALL {
                let mut total = 0u64;
                for (&id, test) in &tests {
                    let row = find_row(reference, id, RowKind::Model(model)).ok_or_else(|| {
                        Error::Reference(format!("missing {} row for {id}", model.label()))
                    })?;
                    total += u64::from(row.win1_pct.abs_diff(test.win1_pct));
                }
                let matches = tests.len();
                summary.models.insert(
                    model,
                    ModelError {
                        model,
                        matches,
                        mae: total as f64 / 100.0 / matches as f64,
                        total_abs_hundredths: Some(total),
                    },
                );
            }
        }
        Some(results) => {
            let mut seen = BTreeSet::new();
            let mut sums: BTreeMap<ModelId, (f64, usize)> = BTreeMap::new();
            for result in results {
                let id = result.spec.matchup.id.ok_or_else(|| {
                    Error::Reference("simulated result is not a benchmark matchup".into())
                })?;
                let test = tests
                    .get(&id)
                    .ok_or_else(|| Error::Reference(format!("no test row for {id}")))?;
                if !seen.insert((id, result.spec.model)) {
                    return Err(Error::Reference(format!(
                        "duplicate simulated result for {id} {}",
                        result.spec.model.label()
                    )));
                }
                let entry = sums.entry(result.spec.model).or_insert((0.0, 0));
                entry.0 += (result.reported_win1 - test.win1()).abs();
                entry.1 += 1;
            }
            for (model, (total, matches)) in sums {
                summary.models.insert(
                    model,
                    ModelError {
                        model,
                        matches,
                        mae: total / matches as f64,
                        total_abs_hundredths: None,
                    },
                );
            }
        }
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::montecarlo::{aggregate, ExperimentSpec};
    use crate::scenarios::{find_matchup, reference_table, Pairing};

    #[test]
    fn published_table_favours_apx3_over_apx4() {
        let summary = mae_by_model(&reference_table(), None).unwrap();
        assert_eq!(summary.models.len(), 4);
        let total = |m| summary.get(m).unwrap().total_abs_hundredths.unwrap();
        assert_eq!(total(ModelId::Apx1), 484);
        assert_eq!(total(ModelId::Apx2), 390);
        assert_eq!(total(ModelId::Apx3), 346);
        assert_eq!(total(ModelId::Apx4), 357);
        assert!(summary.mae(ModelId::Apx3).unwrap() < summary.mae(ModelId::Apx4).unwrap());
    }

    #[test]
    fn perfect_models_have_zero_error() {
        let mut rows = reference_table();
        let tests: BTreeMap<_, _> = rows
            .iter()
            .filter(|r| r.kind == RowKind::Test)
            .map(|r| (r.id(), (r.win1_pct, r.win2_pct)))
            .collect();
        for row in &mut rows {
            (row.win1_pct, row.win2_pct) = tests[&row.id()];
        }
        let summary = mae_by_model(&rows, None).unwrap();
        for model in ModelId::ALL {
            assert_eq!(summary.mae(model), Some(0.0));
        }
    }

    #[test]
    fn single_match_is_its_own_delta() {
        let rows: Vec<_> = reference_table()
            .into_iter()
            .filter(|r| r.round == 2 && r.pairing == Pairing::TvZ)
            .collect();
        let summary = mae_by_model(&rows, None).unwrap();
        assert_eq!(
            summary.get(ModelId::Apx3).unwrap().total_abs_hundredths,
            Some(7)
        );
        assert!((summary.mae(ModelId::Apx3).unwrap() - 0.07).abs() < 1e-12);
        assert!((summary.mae(ModelId::Apx1).unwrap() - 0.50).abs() < 1e-12);
    }

    #[test]
    fn incomplete_reference_rejected() {
        let rows: Vec<_> = reference_table()
            .into_iter()
            .filter(|r| r.kind != RowKind::Model(ModelId::Apx2) || r.round != 3)
            .collect();
        assert!(matches!(
            mae_by_model(&rows, None),
            Err(Error::Reference(_))
        ));
        let no_tests: Vec<_> = reference_table()
            .into_iter()
            .filter(|r| r.kind != RowKind::Test)
            .collect();
        assert!(mae_by_model(&no_tests, None).is_err());
    }

    #[test]
    fn simulated_results_scored_against_tests() {
        let matchup = find_matchup(1, Pairing::PvT).unwrap();
        let spec = ExperimentSpec::new(matchup, ModelId::Apx2, 4, 0);
        let mut result = aggregate(&spec, &[]);
        result.reported_win1 = 0.5;
        let summary = mae_by_model(&reference_table(), Some(&[result.clone()])).unwrap();
        assert_eq!(summary.models.len(), 1);
        assert!((summary.mae(ModelId::Apx2).unwrap() - 0.42).abs() < 1e-12);

        assert!(mae_by_model(&reference_table(), Some(&[result.clone(), result.clone()])).is_err());
        result.spec.matchup.id = None;
        assert!(mae_by_model(&reference_table(), Some(&[result])).is_err());
    }
}

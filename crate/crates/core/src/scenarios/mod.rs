//! Benchmark matchups, published reference results, and the scenario file
//! format for user-defined matchups.

mod matchup;
mod reference;
mod scenario;

pub use matchup::{builtin_matchups, find_matchup, ArmyEntry, MatchupId, MatchupSpec, Pairing};
pub use reference::{
    check_complete, find_row, parse_reference, reference_table, ReferenceRow, RowKind,
    REFERENCE_ROWS,
};
pub use scenario::{load_scenario, load_scenario_file, Scenario};

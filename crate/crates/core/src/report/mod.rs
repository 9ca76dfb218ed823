//! Comparison against published results, per-model error, and report
//! rendering (text table, CSV, JSON).

mod compare;
mod mae;
mod render;

pub use compare::ComparisonRow;
pub use mae::{mae_by_model, ModelError, ModelErrorSummary};
pub use render::{
    parse_results_csv, render_comparison, render_mae, render_results, Format, ResultRow,
    SURVIVOR_COLUMNS,
};

use thiserror::Error;

use crate::model::Issue;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("row {row}: {message}")]
    Csv { row: usize, message: String },

    #[error("row {row}, column `{column}`: cannot parse {value:?} as a number")]
    NotNumeric {
        row: usize,
        column: String,
        value: String,
    },

    #[error("missing required column `{0}`")]
    MissingColumn(String),

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("degenerate design: {0}")]
    DegenerateDesign(String),

    #[error("infeasible k = {k}: only {distinct} distinct points")]
    InfeasibleK { k: usize, distinct: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("validation failed: {}", summarize(.0))]
    Validation(Vec<Issue>),
}

fn summarize(issues: &[Issue]) -> String {
    issues
        .iter()
        .map(|i| i.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

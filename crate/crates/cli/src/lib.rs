//! Report generation behind the `tarifflab` binary.

pub mod charts;
pub mod report;
pub mod svg;

pub use report::{cmd_cld, cmd_cluster, cmd_regress, cmd_simulate, Artifact, ReportBundle};

//! Reciprocal-tariff impact analysis.
//!
//! The crate covers the whole analysis chain:
//!
//! - [`model`]: country records, CSV ingestion and validation.
//! - [`regress`]: ordinary least squares of the US reciprocal tariff on the
//!   partner tariff, and the "discounted reciprocity" assessment.
//! - [`cluster`]: K-means typologies in (reciprocal tariff, ECI) space with
//!   convex hulls and quadrant labels.
//! - [`tariff_sim`]: pass-through pricing, elasticity responses and the
//!   proportional market-share redistribution of a tariff shock.
//! - [`cld`]: a discrete-time realization of the tariff / trade volume /
//!   exporter revenue / political pressure balancing loops.

pub mod cld;
pub mod cluster;
pub mod error;
pub mod model;
pub mod regress;
pub mod tariff_sim;

pub use cld::{CldModel, CldState};
pub use cluster::{ClusterModel, FeatureSet, FeaturePoint, QuadrantLabel};
pub use error::{Error, Result};
pub use model::{CountryRecord, Dataset, Issue, ValidationReport};
pub use regress::{DiscountAssessment, RegressionFit};
pub use tariff_sim::{
    ElasticityParams, MarketShareProjection, Origin, Redistribution, ScenarioState,
    TariffScenario,
};

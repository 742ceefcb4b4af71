//! Country typologies in (reciprocal tariff, ECI) space.
//!
//! Both axes are z-scored before clustering so that tariff percentages do
//! not swamp the ECI axis. Hulls and quadrant labels are reported in raw
//! units.

mod hull;
mod kmeans;
mod labels;
mod standardize;

use serde::Serialize;

pub use hull::convex_hull;
pub use kmeans::{kmeans, lloyd, LloydRun, DEFAULT_RESTARTS, MAX_ITERATIONS};
pub use labels::{label_quadrants, median};
pub use standardize::{standardize, Standardized};

/// Which raw columns feed the clustering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FeatureSet {
    /// US reciprocal tariff and ECI.
    #[default]
    ReciprocalEci,
    /// Adds the tariff charged to the USA as a third axis.
    WithChargedTariff,
}

/// A country in feature space. The first two coordinates are always the
/// reciprocal tariff and the ECI; a third (tariff charged to the USA) is
/// present only for [`FeatureSet::WithChargedTariff`].
#[derive(Debug, Clone, PartialEq)]
pub struct FeaturePoint {
    pub country: String,
    /// z-scores, one per axis.
    pub coords: Vec<f64>,
    /// Raw values in the same axis order.
    pub raw: Vec<f64>,
}

impl FeaturePoint {
    pub fn x(&self) -> f64 {
        self.coords[0]
    }

    pub fn y(&self) -> f64 {
        self.coords[1]
    }

    pub fn raw_x(&self) -> f64 {
        self.raw[0]
    }

    pub fn raw_y(&self) -> f64 {
        self.raw[1]
    }

    pub fn raw_xy(&self) -> [f64; 2] {
        [self.raw[0], self.raw[1]]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum QuadrantLabel {
    #[serde(rename = "High ECI / Low Tariff")]
    HighEciLowTariff,
    #[serde(rename = "High ECI / High Tariff")]
    HighEciHighTariff,
    #[serde(rename = "Low ECI / High Tariff")]
    LowEciHighTariff,
    #[serde(rename = "Low ECI / Low Tariff")]
    LowEciLowTariff,
}

impl QuadrantLabel {
    pub fn from_flags(high_eci: bool, high_tariff: bool) -> Self {
        match (high_eci, high_tariff) {
            (true, false) => Self::HighEciLowTariff,
            (true, true) => Self::HighEciHighTariff,
            (false, true) => Self::LowEciHighTariff,
            (false, false) => Self::LowEciLowTariff,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::HighEciLowTariff => "High ECI / Low Tariff",
            Self::HighEciHighTariff => "High ECI / High Tariff",
            Self::LowEciHighTariff => "Low ECI / High Tariff",
            Self::LowEciLowTariff => "Low ECI / Low Tariff",
        }
    }
}

impl std::fmt::Display for QuadrantLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Assignment {
    pub country: String,
    pub cluster: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClusterModel {
    pub k: usize,
    /// Centroids in standardized space.
    pub centroids: Vec<Vec<f64>>,
    /// One entry per input point, in input order.
    pub assignments: Vec<Assignment>,
    pub inertia: f64,
    /// Mean raw (reciprocal tariff, ECI) of each cluster's members.
    pub centroids_raw: Vec<[f64; 2]>,
    /// Counterclockwise hull of each cluster in raw (tariff, ECI) units.
    pub hulls: Vec<Vec<[f64; 2]>>,
    /// Filled in by [`label_quadrants`].
    pub labels: Option<Vec<QuadrantLabel>>,
    /// Lloyd iterations of the winning restart.
    pub iterations: usize,
    /// Index of the winning restart.
    pub restart: usize,
}

impl ClusterModel {
    pub fn members(&self, cluster: usize) -> Vec<&str> {
        self.assignments
            .iter()
            .filter(|a| a.cluster == cluster)
            .map(|a| a.country.as_str())
            .collect()
    }

    pub fn cluster_of(&self, country: &str) -> Option<usize> {
        self.assignments
            .iter()
            .find(|a| a.country == country)
            .map(|a| a.cluster)
    }

    pub fn summary(&self) -> ClusterSummary {
        ClusterSummary {
            k: self.k,
            inertia: self.inertia,
            clusters: (0..self.k)
                .map(|c| ClusterEntry {
                    label: self.labels.as_ref().map(|l| l[c]),
                    centroid_raw: self.centroids_raw[c],
                    members: self.members(c).into_iter().map(str::to_owned).collect(),
                    hull: self.hulls[c].clone(),
                })
                .collect(),
        }
    }
}

/// Serialized form written to `clusters.json`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClusterSummary {
    pub k: usize,
    pub inertia: f64,
    pub clusters: Vec<ClusterEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClusterEntry {
    pub label: Option<QuadrantLabel>,
    pub centroid_raw: [f64; 2],
    pub members: Vec<String>,
    pub hull: Vec<[f64; 2]>,
}

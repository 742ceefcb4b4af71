use crate::error::{Error, Result};
use crate::model::Dataset;

use super::{FeaturePoint, FeatureSet};

#[derive(Debug, Clone, PartialEq)]
pub struct Standardized {
    pub points: Vec<FeaturePoint>,
    /// Countries dropped for lacking an ECI value.
    pub excluded: Vec<String>,
    /// Axes whose raw values were all equal; their z-scores are all 0.
    pub constant_axes: Vec<usize>,
}

/// Population z-scores per axis over the records that carry an ECI.
pub fn standardize(dataset: &Dataset, features: FeatureSet) -> Result<Standardized> {
    let mut excluded = Vec::new();
    let mut rows = Vec::new();
    for r in dataset.records() {
        let Some(eci) = r.eci else {
            excluded.push(r.name.clone());
            continue;
        };
        let mut raw = vec![r.usa_reciprocal_tariff, eci];
        if features == FeatureSet::WithChargedTariff {
            raw.push(r.tariff_charged_to_usa);
        }
        rows.push((r.name.clone(), raw));
    }
    if rows.is_empty() {
        return Err(Error::InsufficientData(
            "no records carry both a reciprocal tariff and an ECI".into(),
        ));
    }

    let dims = rows[0].1.len();
    let n = rows.len() as f64;
    let mut coords: Vec<Vec<f64>> = vec![vec![0.0; dims]; rows.len()];
    let mut constant_axes = Vec::new();
    for axis in 0..dims {
        let first = rows[0].1[axis];
        if rows.iter().all(|(_, raw)| raw[axis] == first) {
            constant_axes.push(axis);
            continue;
        }
        let mean = rows.iter().map(|(_, raw)| raw[axis]).sum::<f64>() / n;
        let var = rows
            .iter()
            .map(|(_, raw)| (raw[axis] - mean).powi(2))
            .sum::<f64>()
            / n;
        let sd = var.sqrt();
        for (c, (_, raw)) in coords.iter_mut().zip(&rows) {
            c[axis] = (raw[axis] - mean) / sd;
        }
    }

    let points = rows
        .into_iter()
        .zip(coords)
        .map(|((country, raw), coords)| FeaturePoint {
            country,
            coords,
            raw,
        })
        .collect();
    Ok(Standardized {
        points,
        excluded,
        constant_axes,
    })
}

use super::{ClusterModel, FeaturePoint, QuadrantLabel};

/// Median of a slice; mean of the two middle values for even lengths.
/// Returns `None` for an empty slice.
pub fn median(values: &[f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let mid = v.len() / 2;
    Some(if v.len().is_multiple_of(2) {
        (v[mid - 1] + v[mid]) / 2.0
    } else {
        v[mid]
    })
}

/// Labels each cluster by where its raw centroid falls relative to the
/// dataset medians of reciprocal tariff and ECI. Values at the median
/// count as "High". Labels may repeat across clusters.
pub fn label_quadrants(model: &ClusterModel, points: &[FeaturePoint]) -> ClusterModel {
    let tariffs: Vec<f64> = points.iter().map(FeaturePoint::raw_x).collect();
    let ecis: Vec<f64> = points.iter().map(FeaturePoint::raw_y).collect();
    let (Some(tariff_median), Some(eci_median)) = (median(&tariffs), median(&ecis)) else {
        return model.clone();
    };

    let labels = model
        .centroids_raw
        .iter()
        .map(|&[tariff, eci]| QuadrantLabel::from_flags(eci >= eci_median, tariff >= tariff_median))
        .collect();
    ClusterModel {
        labels: Some(labels),
        ..model.clone()
    }
}

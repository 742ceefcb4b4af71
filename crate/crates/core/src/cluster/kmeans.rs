//! Lloyd's algorithm with seeded restarts.
//!
//! Points are processed in a canonical order (sorted by country name) so
//! that permuting the input changes nothing: the seeded initial centroids
//! index into that order and every floating-point sum runs over it.

use std::collections::HashSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

use super::{convex_hull, Assignment, ClusterModel, FeaturePoint};

pub const DEFAULT_RESTARTS: usize = 10;
pub const MAX_ITERATIONS: usize = 300;

fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Nearest centroid, lowest index on ties.
fn nearest(p: &[f64], centroids: &[Vec<f64>]) -> (usize, f64) {
    let mut best = (0, sq_dist(p, &centroids[0]));
    for (j, c) in centroids.iter().enumerate().skip(1) {
        let d = sq_dist(p, c);
        if d < best.1 {
            best = (j, d);
        }
    }
    best
}

fn assign(points: &[Vec<f64>], centroids: &[Vec<f64>]) -> (Vec<usize>, f64) {
    let mut inertia = 0.0;
    let labels = points
        .iter()
        .map(|p| {
            let (j, d) = nearest(p, centroids);
            inertia += d;
            j
        })
        .collect();
    (labels, inertia)
}

/// Recomputes centroids as member means. An empty cluster is reseeded with
/// the point farthest from its own (updated) centroid.
fn update(points: &[Vec<f64>], labels: &[usize], k: usize, dims: usize) -> Vec<Vec<f64>> {
    let mut sums = vec![vec![0.0; dims]; k];
    let mut counts = vec![0usize; k];
    for (p, &l) in points.iter().zip(labels) {
        counts[l] += 1;
        for (s, v) in sums[l].iter_mut().zip(p) {
            *s += v;
        }
    }
    let mut centroids: Vec<Vec<f64>> = sums
        .into_iter()
        .zip(&counts)
        .map(|(s, &c)| {
            if c == 0 {
                s
            } else {
                s.into_iter().map(|v| v / c as f64).collect()
            }
        })
        .collect();

    let empty: Vec<usize> = (0..k).filter(|&j| counts[j] == 0).collect();
    if !empty.is_empty() {
        let mut order: Vec<(usize, f64)> = points
            .iter()
            .zip(labels)
            .enumerate()
            .map(|(i, (p, &l))| (i, sq_dist(p, &centroids[l])))
            .collect();
        // farthest first, lowest index on ties
        order.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
        for (j, (i, _)) in empty.into_iter().zip(order) {
            centroids[j] = points[i].clone();
        }
    }
    centroids
}

/// Output of a single Lloyd descent.
#[derive(Debug, Clone, PartialEq)]
pub struct LloydRun {
    pub centroids: Vec<Vec<f64>>,
    pub labels: Vec<usize>,
    pub inertia: f64,
    /// Inertia after each assignment step, starting with the initial one.
    pub history: Vec<f64>,
    pub iterations: usize,
}

/// Runs Lloyd's iterations from `init` until the assignment is stable or
/// `max_iter` updates have been made.
pub fn lloyd(points: &[Vec<f64>], init: Vec<Vec<f64>>, max_iter: usize) -> LloydRun {
    let k = init.len();
    let dims = points.first().map_or(0, Vec::len);
    let mut centroids = init;
    let (mut labels, mut inertia) = assign(points, &centroids);
    let mut history = vec![inertia];
    let mut iterations = 0;

    while iterations < max_iter {
        iterations += 1;
        centroids = update(points, &labels, k, dims);
        let (next, next_inertia) = assign(points, &centroids);
        history.push(next_inertia);
        let stable = next == labels;
        labels = next;
        inertia = next_inertia;
        if stable {
            break;
        }
    }

    LloydRun {
        centroids,
        labels,
        inertia,
        history,
        iterations,
    }
}

fn canonical_key(p: &[f64]) -> Vec<u64> {
    // +0.0 folds -0.0 into 0.0
    p.iter().map(|v| (v + 0.0).to_bits()).collect()
}

/// K-means over the standardized coordinates of `points`.
///
/// Each restart `r` draws `k` distinct points without replacement using
/// the sub-seed `seed + r`. The restart with the lowest inertia wins, the
/// lowest restart index on ties.
pub fn kmeans(
    points: &[FeaturePoint],
    k: usize,
    seed: u64,
    restarts: usize,
) -> Result<ClusterModel> {
    if k == 0 {
        return Err(Error::Domain("k must be positive".into()));
    }
    if restarts == 0 {
        return Err(Error::Domain("restarts must be positive".into()));
    }

    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| points[a].country.cmp(&points[b].country).then(a.cmp(&b)));
    let coords: Vec<Vec<f64>> = order.iter().map(|&i| points[i].coords.clone()).collect();

    let mut seen = HashSet::new();
    let distinct: Vec<usize> = (0..coords.len())
        .filter(|&i| seen.insert(canonical_key(&coords[i])))
        .collect();
    if k > distinct.len() {
        return Err(Error::InfeasibleK {
            k,
            distinct: distinct.len(),
        });
    }

    let mut best: Option<(usize, LloydRun)> = None;
    for r in 0..restarts {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(r as u64));
        let init = rand::seq::index::sample(&mut rng, distinct.len(), k)
            .into_iter()
            .map(|i| coords[distinct[i]].clone())
            .collect();
        let run = lloyd(&coords, init, MAX_ITERATIONS);
        if best.as_ref().is_none_or(|(_, b)| run.inertia < b.inertia) {
            best = Some((r, run));
        }
    }
    let (restart, run) = best.expect("restarts >= 1");

    let mut labels = vec![0; points.len()];
    for (pos, &orig) in order.iter().enumerate() {
        labels[orig] = run.labels[pos];
    }
    let assignments = points
        .iter()
        .zip(&labels)
        .map(|(p, &cluster)| Assignment {
            country: p.country.clone(),
            cluster,
        })
        .collect();

    let mut centroids_raw = Vec::with_capacity(k);
    let mut hulls = Vec::with_capacity(k);
    for c in 0..k {
        // canonical order keeps the raw means permutation invariant
        let members: Vec<[f64; 2]> = order
            .iter()
            .filter(|&&i| labels[i] == c)
            .map(|&i| points[i].raw_xy())
            .collect();
        let m = members.len().max(1) as f64;
        centroids_raw.push([
            members.iter().map(|p| p[0]).sum::<f64>() / m,
            members.iter().map(|p| p[1]).sum::<f64>() / m,
        ]);
        hulls.push(convex_hull(&members));
    }

    Ok(ClusterModel {
        k,
        centroids: run.centroids,
        assignments,
        inertia: run.inertia,
        centroids_raw,
        hulls,
        labels: None,
        iterations: run.iterations,
        restart,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(name: &str, x: f64, y: f64) -> FeaturePoint {
        FeaturePoint {
            country: name.into(),
            coords: vec![x, y],
            raw: vec![x, y],
        }
    }

    #[test]
    fn k1_is_the_mean() {
        let pts = vec![fp("a", 0.0, 0.0), fp("b", 2.0, 0.0), fp("c", 1.0, 3.0)];
        let m = kmeans(&pts, 1, 7, 3).unwrap();
        assert!((m.centroids[0][0] - 1.0).abs() < 1e-12);
        assert!((m.centroids[0][1] - 1.0).abs() < 1e-12);
        // per-axis population variance times n
        let expected = (1.0 + 1.0 + 0.0) + (1.0 + 1.0 + 4.0);
        assert!((m.inertia - expected).abs() < 1e-12);
    }

    #[test]
    fn separated_pairs() {
        let pts = vec![
            fp("a", -5.0, -5.0),
            fp("b", -5.1, -5.0),
            fp("c", 5.0, 5.0),
            fp("d", 5.1, 5.0),
        ];
        for seed in 0..20 {
            let m = kmeans(&pts, 2, seed, 1).unwrap();
            assert_eq!(m.cluster_of("a"), m.cluster_of("b"));
            assert_eq!(m.cluster_of("c"), m.cluster_of("d"));
            assert_ne!(m.cluster_of("a"), m.cluster_of("c"));
        }
    }

    #[test]
    fn infeasible_k() {
        let pts = vec![fp("a", 1.0, 1.0), fp("b", 1.0, 1.0), fp("c", 2.0, 2.0)];
        assert!(matches!(
            kmeans(&pts, 3, 0, 1),
            Err(Error::InfeasibleK { k: 3, distinct: 2 })
        ));
        assert!(kmeans(&pts, 2, 0, 1).is_ok());
        assert!(matches!(kmeans(&pts, 0, 0, 1), Err(Error::Domain(_))));
        assert!(matches!(kmeans(&pts, 1, 0, 0), Err(Error::Domain(_))));
    }

    #[test]
    fn empty_cluster_is_reseeded() {
        let points = vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![10.0, 0.0]];
        // second centroid starts far from everything and loses all points
        let run = lloyd(&points, vec![vec![0.0, 0.0], vec![100.0, 100.0]], 300);
        let mut used: Vec<usize> = run.labels.clone();
        used.sort();
        used.dedup();
        assert_eq!(used, vec![0, 1]);
        assert!((run.inertia - 0.5).abs() < 1e-12);
    }

    #[test]
    fn hulls_are_in_raw_units() {
        let pts = vec![
            FeaturePoint {
                country: "a".into(),
                coords: vec![-1.0, -1.0],
                raw: vec![10.0, -1.5],
            },
            FeaturePoint {
                country: "b".into(),
                coords: vec![1.0, 1.0],
                raw: vec![40.0, 2.0],
            },
        ];
        let m = kmeans(&pts, 1, 0, 1).unwrap();
        assert_eq!(m.hulls[0], vec![[10.0, -1.5], [40.0, 2.0]]);
        assert_eq!(m.centroids_raw[0], [25.0, 0.25]);
    }
}

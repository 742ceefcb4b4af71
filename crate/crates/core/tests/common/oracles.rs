//! Reference computations used only by tests. Each one follows a different
//! route from the library code it checks.

#![allow(dead_code)]

/// Least squares by solving the raw 2×2 normal equations
/// `[n Σx; Σx Σx²] [a b]ᵀ = [Σy Σxy]ᵀ` with Gaussian elimination and
/// partial pivoting. Returns `(slope, intercept)`.
pub fn normal_equations(points: &[(f64, f64)]) -> (f64, f64) {
    let n = points.len() as f64;
    let sx: f64 = points.iter().map(|p| p.0).sum();
    let sxx: f64 = points.iter().map(|p| p.0 * p.0).sum();
    let sy: f64 = points.iter().map(|p| p.1).sum();
    let sxy: f64 = points.iter().map(|p| p.0 * p.1).sum();

    let mut m = [[n, sx, sy], [sx, sxx, sxy]];
    if m[1][0].abs() > m[0][0].abs() {
        m.swap(0, 1);
    }
    let f = m[1][0] / m[0][0];
    let pivot = m[0];
    for (cell, p) in m[1].iter_mut().zip(pivot) {
        *cell -= f * p;
    }
    let slope = m[1][2] / m[1][1];
    let intercept = (m[0][2] - m[0][1] * slope) / m[0][0];
    (slope, intercept)
}

/// `1 - SSR/SST` recomputed from scratch for a given line.
pub fn r_squared(points: &[(f64, f64)], slope: f64, intercept: f64) -> f64 {
    let n = points.len() as f64;
    let mean = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sst: f64 = points.iter().map(|p| (p.1 - mean).powi(2)).sum();
    let ssr: f64 = points
        .iter()
        .map(|p| (p.1 - intercept - slope * p.0).powi(2))
        .sum();
    1.0 - ssr / sst
}

/// Sum of squared distances to each group's mean.
pub fn partition_inertia(points: &[Vec<f64>], labels: &[usize], k: usize) -> f64 {
    let dims = points[0].len();
    let mut total = 0.0;
    for c in 0..k {
        let members: Vec<&Vec<f64>> = points
            .iter()
            .zip(labels)
            .filter(|(_, &l)| l == c)
            .map(|(p, _)| p)
            .collect();
        if members.is_empty() {
            continue;
        }
        for d in 0..dims {
            let mean = members.iter().map(|p| p[d]).sum::<f64>() / members.len() as f64;
            total += members.iter().map(|p| (p[d] - mean).powi(2)).sum::<f64>();
        }
    }
    total
}

/// Global K-means optimum by enumerating every labeling of the points into
/// exactly `k` nonempty groups. Only feasible for tiny inputs.
pub fn exhaustive_kmeans_optimum(points: &[Vec<f64>], k: usize) -> f64 {
    let n = points.len();
    let total = k.pow(n as u32);
    let mut best = f64::INFINITY;
    let mut labels = vec![0usize; n];
    for code in 0..total {
        let mut c = code;
        let mut used = vec![false; k];
        for l in labels.iter_mut() {
            *l = c % k;
            used[*l] = true;
            c /= k;
        }
        if used.iter().all(|&u| u) {
            best = best.min(partition_inertia(points, &labels, k));
        }
    }
    best
}

/// Brute-force containment: `p` lies on the inner side of every directed
/// edge of a counterclockwise polygon, within `tol`. Degenerate hulls of
/// one or two vertices contain only points on that point or segment.
pub fn hull_contains(hull: &[[f64; 2]], p: [f64; 2], tol: f64) -> bool {
    match hull.len() {
        0 => false,
        1 => (hull[0][0] - p[0]).abs() <= tol && (hull[0][1] - p[1]).abs() <= tol,
        2 => {
            let [a, b] = [hull[0], hull[1]];
            let cross = (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0]);
            let within = |i: usize| {
                p[i] >= a[i].min(b[i]) - tol && p[i] <= a[i].max(b[i]) + tol
            };
            cross.abs() <= tol && within(0) && within(1)
        }
        n => (0..n).all(|i| {
            let a = hull[i];
            let b = hull[(i + 1) % n];
            let cross = (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0]);
            cross >= -tol
        }),
    }
}

/// Every consecutive vertex triple turns strictly left.
pub fn is_strictly_convex_ccw(hull: &[[f64; 2]]) -> bool {
    let n = hull.len();
    if n < 3 {
        return true;
    }
    (0..n).all(|i| {
        let a = hull[i];
        let b = hull[(i + 1) % n];
        let c = hull[(i + 2) % n];
        (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]) > 0.0
    })
}

/// Spreadsheet-style projection of the focal-loss redistribution.
///
/// Columns: price change, cost index, eligibility, gain, projected share.
/// Shares are assumed to already sum to 100.
pub struct CoffeeSheet {
    pub names: Vec<String>,
    pub price_change: Vec<f64>,
    pub cost_index: Vec<f64>,
    pub projected: Vec<f64>,
    pub focal_loss: f64,
    pub weighted_price_change: f64,
}

pub fn coffee_sheet(
    origins: &[(&str, f64, f64)],
    focal: &str,
    ped: f64,
    pass_through: f64,
    cheaper_only: bool,
) -> CoffeeSheet {
    let names: Vec<String> = origins.iter().map(|o| o.0.to_string()).collect();
    let share: Vec<f64> = origins.iter().map(|o| o.1).collect();
    let price_change: Vec<f64> = origins.iter().map(|o| o.2 / 100.0 * pass_through).collect();
    let cost_index: Vec<f64> = price_change.iter().map(|d| 100.0 * (1.0 + d)).collect();
    let f = names.iter().position(|n| n == focal).unwrap();

    let drop = (ped * price_change[f]).min(1.0);
    let loss = share[f] * drop;

    let mut eligible = vec![false; origins.len()];
    for i in 0..origins.len() {
        if i != f {
            eligible[i] = !cheaper_only || cost_index[i] < cost_index[f];
        }
    }
    let pool: f64 = (0..origins.len()).filter(|&i| eligible[i]).map(|i| share[i]).sum();

    let mut projected = share.clone();
    let mut focal_loss = 0.0;
    if pool > 0.0 {
        focal_loss = loss;
        for i in 0..origins.len() {
            if eligible[i] {
                projected[i] = share[i] + loss * (share[i] / pool);
            }
        }
        projected[f] = share[f] - loss;
    }

    let weighted_price_change = (0..origins.len())
        .map(|i| projected[i] * price_change[i])
        .sum::<f64>()
        / 100.0;

    CoffeeSheet {
        names,
        price_change,
        cost_index,
        projected,
        focal_loss,
        weighted_price_change,
    }
}

/// Dominant eigenvalue magnitude by power iteration.
pub fn power_iteration_radius(m: [[f64; 2]; 2]) -> f64 {
    let mut v = [1.0_f64, 0.7];
    let mut norm = 1.0;
    for _ in 0..5000 {
        let w = [
            m[0][0] * v[0] + m[0][1] * v[1],
            m[1][0] * v[0] + m[1][1] * v[1],
        ];
        norm = (w[0] * w[0] + w[1] * w[1]).sqrt();
        if norm == 0.0 {
            return 0.0;
        }
        v = [w[0] / norm, w[1] / norm];
    }
    norm
}

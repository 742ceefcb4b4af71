use tarifflab_core::cld::CldState;
use tarifflab_core::cluster::{ClusterModel, FeaturePoint};
use tarifflab_core::model::Dataset;
use tarifflab_core::regress::RegressionFit;
use tarifflab_core::tariff_sim::MarketShareProjection;

use crate::svg::{Axis, Plot, PALETTE};

/// Partner tariff vs US reciprocal tariff, with the fitted line and the
/// `y = x` and `y = 0.5x` guides.
pub fn fit_chart(dataset: &Dataset, fit: &RegressionFit, run_id: &str) -> String {
    let pts = dataset.tariff_pairs();
    let hi = pts.iter().flat_map(|p| [p.0, p.1]).fold(0.0f64, f64::max);
    let x = Axis::from_zero(pts.iter().map(|p| p.0));
    let y = Axis::from_zero(pts.iter().map(|p| p.1).chain([hi * 0.5]));
    let mut plot = Plot::new(x, y);

    let x_max = x.max;
    plot.polyline(&[(0.0, 0.0), (x_max.min(y.max), x_max.min(y.max))], "#555555", 1.5, Some("6 4"));
    plot.polyline(&[(0.0, 0.0), (x_max, 0.5 * x_max)], "#2f6fd0", 2.0, None);
    plot.polyline(
        &[(0.0, fit.predict(0.0)), (x_max, fit.predict(x_max))],
        "#d9534f",
        2.0,
        None,
    );
    for r in dataset.records() {
        plot.circle(
            r.tariff_charged_to_usa,
            r.usa_reciprocal_tariff,
            4.0,
            "#333333",
            Some(&r.name),
        );
        plot.text(r.tariff_charged_to_usa, r.usa_reciprocal_tariff, &r.name, 9.0);
    }

    let legend = vec![
        ("#555555".to_string(), "equal tariffs (y = x)".to_string()),
        ("#2f6fd0".to_string(), "discounted (y = 0.5x)".to_string()),
        (
            "#d9534f".to_string(),
            format!("fit: y = {:.3}x + {:.2}", fit.slope, fit.intercept),
        ),
        ("#d9534f".to_string(), format!("R² = {:.3}", fit.r_squared)),
    ];
    plot.render(
        "Tariffs charged to the USA vs. US reciprocal tariffs",
        "Tariff charged to USA (%)",
        "US reciprocal tariff (%)",
        &legend,
        run_id,
        true,
    )
}

/// Reciprocal tariff vs export value on a log axis. Returns the SVG and
/// the countries dropped for a missing or nonpositive export value.
pub fn export_chart(dataset: &Dataset, run_id: &str) -> (Option<String>, Vec<String>) {
    let mut kept = Vec::new();
    let mut dropped = Vec::new();
    for r in dataset.records() {
        match r.export_value_usd_billions {
            Some(v) if v > 0.0 => kept.push((r, v)),
            _ => dropped.push(r.name.clone()),
        }
    }
    if kept.is_empty() {
        return (None, dropped);
    }

    let x = Axis::linear(kept.iter().map(|(r, _)| r.usa_reciprocal_tariff));
    let y = Axis::log10(kept.iter().map(|(_, v)| *v));
    let mut plot = Plot::new(x, y);
    let max_charged = kept
        .iter()
        .map(|(r, _)| r.tariff_charged_to_usa)
        .fold(1.0f64, f64::max);
    for (r, v) in &kept {
        // marker size tracks the tariff charged to the USA
        let radius = 3.0 + 7.0 * r.tariff_charged_to_usa / max_charged;
        plot.circle(r.usa_reciprocal_tariff, *v, radius, "#2f6fd0", Some(&r.name));
        plot.text(r.usa_reciprocal_tariff, *v, &r.name, 9.0);
    }
    let svg = plot.render(
        "US reciprocal tariff vs. export value to the USA",
        "US reciprocal tariff (%)",
        "Export value to USA ($B, log scale)",
        &[("#2f6fd0".into(), "marker size: tariff charged to USA".into())],
        run_id,
        true,
    );
    (Some(svg), dropped)
}

pub fn cluster_chart(points: &[FeaturePoint], model: &ClusterModel, run_id: &str) -> String {
    let x = Axis::linear(points.iter().map(|p| p.raw_x()));
    let y = Axis::linear(points.iter().map(|p| p.raw_y()));
    let mut plot = Plot::new(x, y);
    let mut legend = Vec::new();
    for c in 0..model.k {
        let color = PALETTE[c % PALETTE.len()];
        if model.hulls[c].len() >= 3 {
            plot.polygon(&model.hulls[c], color);
        } else {
            let line: Vec<(f64, f64)> = model.hulls[c].iter().map(|p| (p[0], p[1])).collect();
            plot.polyline(&line, color, 1.5, None);
        }
        let label = model
            .labels
            .as_ref()
            .map(|l| l[c].as_str().to_string())
            .unwrap_or_else(|| format!("cluster {}", c + 1));
        legend.push((color.to_string(), format!("Group {}: {label}", c + 1)));
    }
    for (p, a) in points.iter().zip(&model.assignments) {
        plot.circle(p.raw_x(), p.raw_y(), 4.5, PALETTE[a.cluster % PALETTE.len()], Some(&p.country));
        plot.text(p.raw_x(), p.raw_y(), &p.country, 9.0);
    }
    plot.render(
        &format!("Country clusters with convex hulls (reciprocal tariff vs ECI, k={})", model.k),
        "US reciprocal tariff (%)",
        "Economic Complexity Index",
        &legend,
        run_id,
        true,
    )
}

fn slots(plot: &Plot, n: usize) -> (f64, f64) {
    let width = plot.width - plot.left - plot.right;
    (plot.left, width / n.max(1) as f64)
}

/// Before/after import shares, grouped by origin.
pub fn shares_chart(p: &MarketShareProjection, run_id: &str) -> String {
    let values = p
        .origins
        .iter()
        .flat_map(|o| [o.baseline_share, o.projected_share]);
    let mut plot = Plot::new(Axis::linear([0.0, 1.0]), Axis::from_zero(values));
    let (left, slot) = slots(&plot, p.origins.len());
    let bar = slot * 0.35;
    let mut labels = Vec::new();
    for (i, o) in p.origins.iter().enumerate() {
        let x0 = left + i as f64 * slot + slot * 0.15;
        plot.bar(x0, bar, o.baseline_share, "#9db8e0", &format!("{} before: {:.1}%", o.name, o.baseline_share));
        plot.bar(
            x0 + bar,
            bar,
            o.projected_share,
            "#2f6fd0",
            &format!("{} after: {:.1}%", o.name, o.projected_share),
        );
        labels.push((x0 + bar, o.name.clone()));
    }
    plot.category_labels(&labels);
    let legend = vec![
        ("#9db8e0".to_string(), "before".to_string()),
        ("#2f6fd0".to_string(), "after".to_string()),
        (
            "#ffffff".to_string(),
            format!("focal origin: {}", p.focal),
        ),
        (
            "#ffffff".to_string(),
            format!("avg price change: {:.1}%", p.weighted_price_change * 100.0),
        ),
    ];
    plot.render(
        "Projected shift in US import shares",
        "Origin",
        "Share of US imports (%)",
        &legend,
        run_id,
        false,
    )
}

/// Cost index of each substitute origin, with the focal origin's index as a
/// dashed red reference line.
pub fn cost_chart(p: &MarketShareProjection, run_id: &str) -> String {
    let focal = p.origin(&p.focal).expect("projection carries its focal origin");
    let others: Vec<_> = p.origins.iter().filter(|o| o.name != p.focal).collect();
    let y = Axis::from_zero(others.iter().map(|o| o.cost_index).chain([focal.cost_index]));
    let mut plot = Plot::new(Axis::linear([0.0, 1.0]), y);
    let (left, slot) = slots(&plot, others.len());
    let mut labels = Vec::new();
    for (i, o) in others.iter().enumerate() {
        let x0 = left + i as f64 * slot + slot * 0.2;
        let color = if o.cost_index < focal.cost_index {
            "#2e9e4f"
        } else {
            "#7f7f7f"
        };
        plot.bar(x0, slot * 0.6, o.cost_index, color, &format!("{}: {:.1}", o.name, o.cost_index));
        labels.push((x0 + slot * 0.3, o.name.clone()));
    }
    plot.hline(
        focal.cost_index,
        "#d9534f",
        Some("8 5"),
        &format!("{} {:.1}", focal.name, focal.cost_index),
    );
    plot.category_labels(&labels);
    plot.render(
        &format!("Relative cost of coffee origins vs. {}", focal.name),
        "Substitute origin",
        "Cost index (base 100)",
        &[
            ("#2e9e4f".into(), format!("cheaper than {}", focal.name)),
            ("#7f7f7f".into(), "not cheaper".into()),
        ],
        run_id,
        false,
    )
}

pub fn trajectory_chart(states: &[CldState], run_id: &str) -> String {
    let x = Axis::linear(states.iter().map(|s| s.t as f64));
    let y = Axis::from_zero(states.iter().flat_map(|s| [s.tariff, s.trade_volume]));
    let mut plot = Plot::new(x, y);
    let tariff: Vec<(f64, f64)> = states.iter().map(|s| (s.t as f64, s.tariff)).collect();
    let volume: Vec<(f64, f64)> = states.iter().map(|s| (s.t as f64, s.trade_volume)).collect();
    plot.polyline(&tariff, "#d9534f", 2.0, None);
    plot.polyline(&volume, "#2f6fd0", 2.0, None);
    plot.render(
        "Tariff shock under balancing loops B1 and B2",
        "Step",
        "Tariff (%) / trade volume index",
        &[
            ("#d9534f".into(), "tariff".into()),
            ("#2f6fd0".into(), "trade volume".into()),
        ],
        run_id,
        true,
    )
}

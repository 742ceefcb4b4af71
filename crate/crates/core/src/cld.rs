//! Discrete-time causal loop: tariff → trade volume → exporter revenue →
//! political pressure → tariff relief.
//!
//! Two balancing loops feed the pressure term. B1 runs through exporter
//! revenue, B2 directly through the trade volume shortfall. Each step
//! updates the variables in that order, with clamps so volumes and revenue
//! stay nonnegative and the tariff never drops below its baseline.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::Issue;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CldModel {
    /// Tariff level the system relaxes toward, percent.
    pub baseline_tariff: f64,
    /// Volume index points lost per tariff point above baseline.
    pub trade_sensitivity: f64,
    /// Revenue index per volume index.
    pub revenue_coefficient: f64,
    /// Pressure per unit revenue shortfall (loop B1).
    pub pressure_gain_b1: f64,
    /// Pressure per unit volume shortfall (loop B2).
    pub pressure_gain_b2: f64,
    /// Tariff points removed per unit pressure each step.
    pub relief_rate: f64,
}

impl Default for CldModel {
    fn default() -> Self {
        default_model()
    }
}

/// Defaults give a linearized contraction factor of 0.98 per step.
pub fn default_model() -> CldModel {
    CldModel {
        baseline_tariff: 0.0,
        trade_sensitivity: 1.0,
        revenue_coefficient: 1.0,
        pressure_gain_b1: 0.02,
        pressure_gain_b2: 0.02,
        relief_rate: 0.5,
    }
}

impl CldModel {
    pub fn issues(&self) -> Vec<Issue> {
        let mut out = Vec::new();
        let mut check = |field: &str, value: f64, ok: bool, rule: &str| {
            if !value.is_finite() || !ok {
                out.push(Issue::new(None, field, format!("{value} must be {rule}")));
            }
        };
        check("baseline_tariff", self.baseline_tariff, self.baseline_tariff >= 0.0, "nonnegative");
        check("trade_sensitivity", self.trade_sensitivity, self.trade_sensitivity > 0.0, "positive");
        check(
            "revenue_coefficient",
            self.revenue_coefficient,
            self.revenue_coefficient > 0.0,
            "positive",
        );
        check("pressure_gain_b1", self.pressure_gain_b1, self.pressure_gain_b1 >= 0.0, "nonnegative");
        check("pressure_gain_b2", self.pressure_gain_b2, self.pressure_gain_b2 >= 0.0, "nonnegative");
        check(
            "relief_rate",
            self.relief_rate,
            (0.0..=1.0).contains(&self.relief_rate),
            "within [0, 1]",
        );
        out
    }

    pub fn validate(&self) -> Result<()> {
        let issues = self.issues();
        if issues.is_empty() {
            Ok(())
        } else {
            Err(Error::Validation(issues))
        }
    }

    /// The fixed point reached with the tariff at its baseline.
    pub fn baseline_state(&self) -> CldState {
        let seed = CldState {
            t: 0,
            tariff: self.baseline_tariff,
            trade_volume: 100.0,
            exporter_revenue: 100.0,
            pressure: 0.0,
        };
        CldState { t: 0, ..step(&seed, self) }
    }

    /// Jacobian of `(tariff deviation, pressure)` just above the baseline,
    /// where the volume clamp is inactive.
    pub fn linearization(&self) -> [[f64; 2]; 2] {
        // B1 only sees a shortfall near baseline when revenue starts at or below 100
        let b1 = if self.revenue_coefficient <= 1.0 {
            self.pressure_gain_b1 * self.revenue_coefficient
        } else {
            0.0
        };
        let gain = self.trade_sensitivity * (b1 + self.pressure_gain_b2);
        [[1.0 - self.relief_rate * gain, 0.0], [gain, 0.0]]
    }

    pub fn spectral_radius(&self) -> f64 {
        spectral_radius_2x2(self.linearization())
    }

    pub fn is_linearly_stable(&self) -> bool {
        self.spectral_radius() < 1.0
    }
}

fn spectral_radius_2x2(m: [[f64; 2]; 2]) -> f64 {
    let trace = m[0][0] + m[1][1];
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let disc = trace * trace / 4.0 - det;
    if disc >= 0.0 {
        let r = disc.sqrt();
        (trace / 2.0 + r).abs().max((trace / 2.0 - r).abs())
    } else {
        // complex pair: |λ|² = det
        det.sqrt()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CldState {
    pub t: usize,
    pub tariff: f64,
    pub trade_volume: f64,
    pub exporter_revenue: f64,
    pub pressure: f64,
}

pub fn step(state: &CldState, model: &CldModel) -> CldState {
    let trade_volume =
        (100.0 - model.trade_sensitivity * (state.tariff - model.baseline_tariff)).max(0.0);
    let exporter_revenue = (model.revenue_coefficient * trade_volume).max(0.0);
    let pressure = model.pressure_gain_b1 * (100.0 - exporter_revenue).max(0.0)
        + model.pressure_gain_b2 * (100.0 - trade_volume).max(0.0);
    let tariff = (state.tariff - model.relief_rate * pressure).max(model.baseline_tariff);
    CldState {
        t: state.t + 1,
        tariff,
        trade_volume,
        exporter_revenue,
        pressure,
    }
}

/// Trajectory of `horizon + 1` states. State 0 is the baseline with the
/// tariff raised by `shock` points.
pub fn simulate(model: &CldModel, shock: f64, horizon: usize) -> Result<Vec<CldState>> {
    if horizon == 0 {
        return Err(Error::Domain("horizon must be at least 1".into()));
    }
    if !shock.is_finite() {
        return Err(Error::Domain(format!("shock {shock} is not finite")));
    }
    model.validate()?;

    let mut state = CldState {
        tariff: model.baseline_tariff + shock,
        ..model.baseline_state()
    };
    let mut out = Vec::with_capacity(horizon + 1);
    out.push(state);
    for _ in 0..horizon {
        state = step(&state, model);
        out.push(state);
    }
    Ok(out)
}

pub const TRAJECTORY_HEADER: &str = "t,tariff,trade_volume,exporter_revenue,pressure";

pub fn trajectory_csv(states: &[CldState]) -> String {
    let mut out = String::from(TRAJECTORY_HEADER);
    out.push('\n');
    for s in states {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            s.t, s.tariff, s.trade_volume, s.exporter_revenue, s.pressure
        ));
    }
    out
}

pub const DEFAULT_SHOCK: f64 = 46.0;
pub const DEFAULT_HORIZON: usize = 200;

/// The `cld` section of a scenario file. Missing keys take the defaults.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CldConfig {
    pub baseline_tariff: f64,
    pub trade_sensitivity: f64,
    pub revenue_coefficient: f64,
    pub pressure_gain_b1: f64,
    pub pressure_gain_b2: f64,
    pub relief_rate: f64,
    pub shock: f64,
    pub horizon: usize,
}

impl Default for CldConfig {
    fn default() -> Self {
        let m = default_model();
        Self {
            baseline_tariff: m.baseline_tariff,
            trade_sensitivity: m.trade_sensitivity,
            revenue_coefficient: m.revenue_coefficient,
            pressure_gain_b1: m.pressure_gain_b1,
            pressure_gain_b2: m.pressure_gain_b2,
            relief_rate: m.relief_rate,
            shock: DEFAULT_SHOCK,
            horizon: DEFAULT_HORIZON,
        }
    }
}

impl CldConfig {
    /// Reads the `cld` key of a JSON document; defaults when it is absent.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: serde_json::Value =
            serde_json::from_str(text).map_err(|e| Error::Domain(format!("config JSON: {e}")))?;
        match doc.get("cld") {
            None => Ok(Self::default()),
            Some(v) => serde_json::from_value(v.clone())
                .map_err(|e| Error::Domain(format!("`cld` section: {e}"))),
        }
    }

    pub fn model(&self) -> CldModel {
        CldModel {
            baseline_tariff: self.baseline_tariff,
            trade_sensitivity: self.trade_sensitivity,
            revenue_coefficient: self.revenue_coefficient,
            pressure_gain_b1: self.pressure_gain_b1,
            pressure_gain_b2: self.pressure_gain_b2,
            relief_rate: self.relief_rate,
        }
    }

    pub fn simulate(&self) -> Result<Vec<CldState>> {
        simulate(&self.model(), self.shock, self.horizon)
    }
}

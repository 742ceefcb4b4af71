//! Tariff pass-through, elasticity responses and import share redistribution.
//!
//! One focal origin receives a tariff shock. Its quantity falls by
//! `|PED| × ΔP/P` (capped at 100%), and the lost share is handed to the
//! substitute origins in proportion to their baseline shares. Total demand
//! is held constant, so shares always sum to 100.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::cld::CldConfig;
use crate::error::{Error, Result};
use crate::model::{Issue, ValidationReport};

/// Shares within this distance of 100 are renormalized without a warning.
pub const SHARE_SUM_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ElasticityParams {
    /// |PED|; quantity responses apply the negative sign.
    pub ped_magnitude: f64,
    /// Fraction of the tariff passed on to the import price, in `[0, 1]`.
    pub pass_through: f64,
}

impl ElasticityParams {
    pub fn new(ped_magnitude: f64, pass_through: f64) -> Result<Self> {
        let params = Self {
            ped_magnitude,
            pass_through,
        };
        match params.issues().first() {
            Some(issue) => Err(Error::Domain(issue.message.clone())),
            None => Ok(params),
        }
    }

    fn issues(&self) -> Vec<Issue> {
        let mut out = Vec::new();
        if !(self.ped_magnitude.is_finite() && self.ped_magnitude > 0.0) {
            out.push(Issue::new(
                None,
                "ped",
                format!("elasticity magnitude {} must be positive", self.ped_magnitude),
            ));
        }
        if !(0.0..=1.0).contains(&self.pass_through) {
            out.push(Issue::new(
                None,
                "pass_through",
                format!("pass-through {} outside [0, 1]", self.pass_through),
            ));
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Redistribution {
    /// Only origins with a strictly lower cost index than the focal origin gain.
    #[default]
    CheaperOnly,
    /// Every non-focal origin gains.
    AllOthers,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Origin {
    pub name: String,
    /// Baseline share of imports, percent.
    pub share: f64,
    /// Tariff faced by this origin, percent.
    pub tariff: f64,
}

impl Origin {
    pub fn new(name: impl Into<String>, share: f64, tariff: f64) -> Self {
        Self {
            name: name.into(),
            share,
            tariff,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TariffScenario {
    pub origins: Vec<Origin>,
    pub focal: String,
    pub params: ElasticityParams,
    pub redistribution: Redistribution,
}

impl TariffScenario {
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport {
            errors: self.params.issues(),
            warnings: Vec::new(),
        };
        if self.origins.is_empty() {
            report.errors.push(Issue::new(None, "origins", "no origins given"));
        }
        let mut names = HashSet::new();
        for (i, o) in self.origins.iter().enumerate() {
            let row = Some(i);
            if o.name.trim().is_empty() {
                report.errors.push(Issue::new(row, "name", "origin name is empty"));
            } else if !names.insert(o.name.as_str()) {
                report
                    .errors
                    .push(Issue::new(row, "name", format!("duplicate origin {:?}", o.name)));
            }
            if !(o.share.is_finite() && o.share >= 0.0) {
                report
                    .errors
                    .push(Issue::new(row, "share", format!("share {} must be nonnegative", o.share)));
            }
            if !(o.tariff.is_finite() && o.tariff >= 0.0) {
                report.errors.push(Issue::new(
                    row,
                    "tariff",
                    format!("tariff {} must be nonnegative", o.tariff),
                ));
            }
        }
        if !self.origins.is_empty() && !names.contains(self.focal.as_str()) {
            report.errors.push(Issue::new(
                None,
                "focal",
                format!("focal origin {:?} is not among the origins", self.focal),
            ));
        }

        let total: f64 = self.origins.iter().map(|o| o.share).sum();
        if report.errors.is_empty() {
            if total <= 0.0 {
                report
                    .errors
                    .push(Issue::new(None, "share", "baseline shares sum to zero"));
            } else if (total - 100.0).abs() > SHARE_SUM_TOLERANCE {
                report.warnings.push(Issue::new(
                    None,
                    "share",
                    format!("baseline shares sum to {total}; renormalized to 100"),
                ));
            }
        }
        report
    }

    /// Copy with shares rescaled to sum to 100.
    fn normalized_origins(&self) -> Vec<Origin> {
        let total: f64 = self.origins.iter().map(|o| o.share).sum();
        if total == 100.0 {
            return self.origins.clone();
        }
        self.origins
            .iter()
            .map(|o| Origin {
                share: o.share * 100.0 / total,
                ..o.clone()
            })
            .collect()
    }
}

/// Scenario file layout. `ped` may be written with its sign; only the
/// magnitude is used.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub focal: String,
    pub ped: f64,
    pub pass_through: f64,
    #[serde(default)]
    pub redistribution: Redistribution,
    pub origins: Vec<Origin>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cld: Option<CldConfig>,
}

impl ScenarioFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Domain(format!("scenario JSON: {e}")))
    }

    pub fn scenario(&self) -> TariffScenario {
        TariffScenario {
            origins: self.origins.clone(),
            focal: self.focal.clone(),
            params: ElasticityParams {
                ped_magnitude: self.ped.abs(),
                pass_through: self.pass_through,
            },
            redistribution: self.redistribution,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OriginProjection {
    pub name: String,
    pub baseline_share: f64,
    pub projected_share: f64,
    pub price_change: f64,
    pub cost_index: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MarketShareProjection {
    pub focal: String,
    pub redistribution: Redistribution,
    pub origins: Vec<OriginProjection>,
    /// Share points lost by the focal origin.
    pub focal_loss: f64,
    /// Post-shift share-weighted import price change, as a fraction.
    pub weighted_price_change: f64,
    /// No origin was eligible to absorb the focal loss.
    pub no_substitute: bool,
}

impl MarketShareProjection {
    pub fn origin(&self, name: &str) -> Option<&OriginProjection> {
        self.origins.iter().find(|o| o.name == name)
    }

    pub fn total_projected(&self) -> f64 {
        self.origins.iter().map(|o| o.projected_share).sum()
    }
}

/// Base-100 price and quantity indices.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScenarioState {
    pub price_index: f64,
    pub quantity_index: f64,
}

impl ScenarioState {
    pub const BASELINE: Self = Self {
        price_index: 100.0,
        quantity_index: 100.0,
    };
}

impl Default for ScenarioState {
    fn default() -> Self {
        Self::BASELINE
    }
}

/// Import price change, as a fraction, from a tariff in percent.
pub fn price_change(tariff: f64, pass_through: f64) -> Result<f64> {
    if !(tariff.is_finite() && tariff >= 0.0) {
        return Err(Error::Domain(format!("tariff {tariff} must be nonnegative")));
    }
    if !(0.0..=1.0).contains(&pass_through) {
        return Err(Error::Domain(format!("pass-through {pass_through} outside [0, 1]")));
    }
    Ok(tariff * pass_through / 100.0)
}

/// Base-100 cost index for a fractional price change.
pub fn cost_index(price_change: f64) -> Result<f64> {
    if !(price_change.is_finite() && price_change >= -1.0) {
        return Err(Error::Domain(format!(
            "price change {price_change} would make the price negative"
        )));
    }
    Ok(100.0 + 100.0 * price_change)
}

/// Fractional quantity change, `-min(1, |PED| × ΔP/P)`.
pub fn quantity_response(params: &ElasticityParams, price_change: f64) -> Result<f64> {
    if !(price_change.is_finite() && price_change >= 0.0) {
        return Err(Error::Domain(format!(
            "price change {price_change} must be a nonnegative tariff shock"
        )));
    }
    Ok(-(params.ped_magnitude * price_change).min(1.0))
}

pub fn apply_shock(
    state: ScenarioState,
    tariff: f64,
    params: &ElasticityParams,
) -> Result<ScenarioState> {
    let dp = price_change(tariff, params.pass_through)?;
    let dq = quantity_response(params, dp)?;
    Ok(ScenarioState {
        price_index: state.price_index * (1.0 + dp),
        quantity_index: state.quantity_index * (1.0 + dq),
    })
}

pub fn demand_shift(scenario: &TariffScenario) -> Result<MarketShareProjection> {
    scenario.validate().into_result()?;
    let origins = scenario.normalized_origins();
    let params = &scenario.params;

    let mut rows = Vec::with_capacity(origins.len());
    for o in &origins {
        let dp = price_change(o.tariff, params.pass_through)?;
        rows.push(OriginProjection {
            name: o.name.clone(),
            baseline_share: o.share,
            projected_share: o.share,
            price_change: dp,
            cost_index: cost_index(dp)?,
        });
    }

    let focal = rows
        .iter()
        .position(|r| r.name == scenario.focal)
        .expect("validated focal origin");
    let focal_cost = rows[focal].cost_index;
    let eligible: Vec<usize> = (0..rows.len())
        .filter(|&i| i != focal)
        .filter(|&i| match scenario.redistribution {
            Redistribution::CheaperOnly => rows[i].cost_index < focal_cost,
            Redistribution::AllOthers => true,
        })
        .collect();
    let eligible_total: f64 = eligible.iter().map(|&i| rows[i].baseline_share).sum();

    let response = quantity_response(params, rows[focal].price_change)?;
    let mut focal_loss = rows[focal].baseline_share * response.abs();
    let no_substitute = eligible.is_empty() || eligible_total <= 0.0;
    if no_substitute {
        focal_loss = 0.0;
    } else {
        for &i in &eligible {
            rows[i].projected_share += focal_loss * rows[i].baseline_share / eligible_total;
        }
        rows[focal].projected_share = rows[focal].baseline_share - focal_loss;
    }

    let mut projection = MarketShareProjection {
        focal: scenario.focal.clone(),
        redistribution: scenario.redistribution,
        origins: rows,
        focal_loss,
        weighted_price_change: 0.0,
        no_substitute,
    };
    projection.weighted_price_change = consumer_price_impact(&projection);
    Ok(projection)
}

/// Share-weighted average import price change after the shift.
pub fn consumer_price_impact(projection: &MarketShareProjection) -> f64 {
    projection
        .origins
        .iter()
        .map(|o| o.projected_share / 100.0 * o.price_change)
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(ped: f64) -> ElasticityParams {
        ElasticityParams::new(ped, 0.75).unwrap()
    }

    fn abc(redistribution: Redistribution) -> TariffScenario {
        TariffScenario {
            origins: vec![
                Origin::new("A", 40.0, 46.0),
                Origin::new("B", 30.0, 10.0),
                Origin::new("C", 30.0, 10.0),
            ],
            focal: "A".into(),
            params: params(1.5),
            redistribution,
        }
    }

    #[test]
    fn price_changes() {
        assert_eq!(price_change(46.0, 0.75).unwrap(), 0.345);
        assert_eq!(price_change(0.0, 0.75).unwrap(), 0.0);
        assert_eq!(price_change(10.0, 1.0).unwrap(), 0.10);
        assert!(matches!(price_change(-1.0, 0.75), Err(Error::Domain(_))));
        assert!(matches!(price_change(10.0, 1.5), Err(Error::Domain(_))));
    }

    #[test]
    fn cost_indices() {
        assert_eq!(cost_index(0.345).unwrap(), 134.5);
        assert_eq!(cost_index(0.0).unwrap(), 100.0);
        assert_eq!(cost_index(0.5).unwrap(), 150.0);
        assert_eq!(cost_index(-1.0).unwrap(), 0.0);
        assert!(matches!(cost_index(-1.01), Err(Error::Domain(_))));
    }

    #[test]
    fn quantity_responses() {
        assert!((quantity_response(&params(1.5), 0.345).unwrap() + 0.5175).abs() < 1e-12);
        assert!((quantity_response(&params(0.5), 0.345).unwrap() + 0.1725).abs() < 1e-12);
        assert_eq!(quantity_response(&params(3.0), 0.0).unwrap(), 0.0);
        assert_eq!(quantity_response(&params(3.0), 0.5).unwrap(), -1.0);
        assert!(quantity_response(&params(3.0), -0.1).is_err());
    }

    #[test]
    fn elasticity_params_domain() {
        assert!(ElasticityParams::new(0.0, 0.5).is_err());
        assert!(ElasticityParams::new(-1.5, 0.5).is_err());
        assert!(ElasticityParams::new(1.5, 1.01).is_err());
        assert!(ElasticityParams::new(1.5, 0.0).is_ok());
    }

    #[test]
    fn shock_states() {
        let s = apply_shock(ScenarioState::BASELINE, 46.0, &params(1.5)).unwrap();
        assert!((s.price_index - 134.5).abs() < 1e-12);
        assert!((s.quantity_index - 48.25).abs() < 1e-12);

        let s = apply_shock(ScenarioState::BASELINE, 46.0, &params(0.5)).unwrap();
        assert!((s.price_index - 134.5).abs() < 1e-12);
        assert!((s.quantity_index - 82.75).abs() < 1e-12);

        let s = apply_shock(ScenarioState::default(), 0.0, &params(1.5)).unwrap();
        assert_eq!(s, ScenarioState::BASELINE);
    }

    #[test]
    fn three_origin_redistribution() {
        let p = demand_shift(&abc(Redistribution::CheaperOnly)).unwrap();
        assert!((p.focal_loss - 20.7).abs() < 1e-12);
        assert!((p.origin("A").unwrap().projected_share - 19.3).abs() < 1e-12);
        assert!((p.origin("B").unwrap().projected_share - 40.35).abs() < 1e-12);
        assert!((p.origin("C").unwrap().projected_share - 40.35).abs() < 1e-12);
        assert!(!p.no_substitute);
        assert!((p.total_projected() - 100.0).abs() < 1e-9);
    }

    #[test]
    fn equal_tariffs_have_no_substitute() {
        let mut s = abc(Redistribution::CheaperOnly);
        for o in &mut s.origins {
            o.tariff = 25.0;
        }
        let p = demand_shift(&s).unwrap();
        assert!(p.no_substitute);
        assert_eq!(p.focal_loss, 0.0);
        for o in &p.origins {
            assert_eq!(o.projected_share, o.baseline_share);
        }

        // all_others still redistributes
        s.redistribution = Redistribution::AllOthers;
        let p = demand_shift(&s).unwrap();
        assert!(!p.no_substitute);
        assert!(p.origin("A").unwrap().projected_share < 40.0);
    }

    #[test]
    fn cheaper_only_skips_dearer_origins() {
        let mut s = abc(Redistribution::CheaperOnly);
        s.origins[2].tariff = 50.0;
        let p = demand_shift(&s).unwrap();
        assert_eq!(p.origin("C").unwrap().projected_share, 30.0);
        assert!((p.origin("B").unwrap().projected_share - 50.7).abs() < 1e-12);
    }

    #[test]
    fn consumer_price_impact_of_constant_change() {
        let mut s = abc(Redistribution::AllOthers);
        for o in &mut s.origins {
            o.tariff = 20.0 / 3.0;
        }
        s.params.pass_through = 0.75;
        let p = demand_shift(&s).unwrap();
        assert!((p.weighted_price_change - 0.05).abs() < 1e-12);

        for o in &mut s.origins {
            o.tariff = 0.0;
        }
        assert_eq!(demand_shift(&s).unwrap().weighted_price_change, 0.0);
    }

    #[test]
    fn renormalizes_with_warning() {
        let mut s = abc(Redistribution::CheaperOnly);
        s.origins[0].share = 30.0; // total 90
        let report = s.validate();
        assert!(report.is_ok());
        assert_eq!(report.warnings.len(), 1);
        let p = demand_shift(&s).unwrap();
        assert!((p.origin("A").unwrap().baseline_share - 100.0 / 3.0).abs() < 1e-12);
        assert!((p.total_projected() - 100.0).abs() < 1e-9);
    }

    #[test]
    fn invalid_scenarios_list_violations() {
        let mut s = abc(Redistribution::CheaperOnly);
        s.focal = "Z".into();
        s.origins[1].share = -1.0;
        s.origins[2].name = "A".into();
        match demand_shift(&s) {
            Err(Error::Validation(issues)) => assert_eq!(issues.len(), 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn scenario_json_round_trip() {
        let text = r#"{"focal": "A", "ped": -1.5, "pass_through": 0.75,
            "origins": [{"name": "A", "share": 40.0, "tariff": 46.0},
                        {"name": "B", "share": 60.0, "tariff": 10.0}]}"#;
        let file = ScenarioFile::from_json(text).unwrap();
        assert_eq!(file.redistribution, Redistribution::CheaperOnly);
        let s = file.scenario();
        assert_eq!(s.params.ped_magnitude, 1.5);
        assert!(ScenarioFile::from_json(r#"{"focal": "A"}"#).is_err());

        let with_mode = text.replace("\"ped\"", "\"redistribution\": \"all_others\", \"ped\"");
        let file = ScenarioFile::from_json(&with_mode).unwrap();
        assert_eq!(file.redistribution, Redistribution::AllOthers);
    }
}

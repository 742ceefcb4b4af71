//! The four report commands. Each reads its inputs, writes JSON/CSV/SVG
//! artifacts plus a `bundle.json` manifest into the output directory, and
//! sends diagnostics to stderr.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::Serialize;
use sha2::{Digest, Sha256};

use tarifflab_core::cld::{trajectory_csv, CldConfig};
use tarifflab_core::cluster::{kmeans, label_quadrants, standardize, FeatureSet};
use tarifflab_core::model::{parse_dataset, validate_dataset, Dataset, Issue};
use tarifflab_core::regress::{fit_ols, FitSummary};
use tarifflab_core::tariff_sim::{demand_shift, ScenarioFile};

use crate::charts;

pub const BUNDLE_FILE: &str = "bundle.json";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Artifact {
    /// Path relative to the output directory.
    pub path: String,
    pub kind: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReportBundle {
    pub run_id: String,
    pub command: String,
    pub inputs: Vec<InputDigest>,
    pub outputs: Vec<Artifact>,
}

struct Writer {
    dir: PathBuf,
    bundle: ReportBundle,
}

impl Writer {
    fn new(command: &str, out: &Path, run_id: &str) -> Result<Self> {
        fs::create_dir_all(out)
            .with_context(|| format!("creating output directory {}", out.display()))?;
        Ok(Self {
            dir: out.to_path_buf(),
            bundle: ReportBundle {
                run_id: run_id.to_string(),
                command: command.to_string(),
                inputs: Vec::new(),
                outputs: Vec::new(),
            },
        })
    }

    fn input(&mut self, path: &Path, content: &str) {
        self.bundle.inputs.push(InputDigest {
            path: path.display().to_string(),
            sha256: hex::encode(Sha256::digest(content.as_bytes())),
        });
    }

    fn write(&mut self, name: &str, kind: &str, content: &str) -> Result<()> {
        let path = self.dir.join(name);
        fs::write(&path, content).with_context(|| format!("writing {}", path.display()))?;
        self.bundle.outputs.push(Artifact {
            path: name.to_string(),
            kind: kind.to_string(),
        });
        Ok(())
    }

    fn write_json<T: Serialize>(&mut self, name: &str, value: &T) -> Result<()> {
        let mut text = serde_json::to_string_pretty(value)?;
        text.push('\n');
        self.write(name, "json", &text)
    }

    fn finish(self) -> Result<ReportBundle> {
        let mut text = serde_json::to_string_pretty(&self.bundle)?;
        text.push('\n');
        let path = self.dir.join(BUNDLE_FILE);
        fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
        eprintln!(
            "wrote {} artifacts to {}",
            self.bundle.outputs.len(),
            self.dir.display()
        );
        Ok(self.bundle)
    }
}

fn warn(issues: &[Issue]) {
    for i in issues {
        eprintln!("warning: {i}");
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

/// Parses and validates a dataset file. Returns the dataset and its raw text.
fn load_dataset(path: &Path) -> Result<(Dataset, String)> {
    let text = read(path)?;
    let parsed = parse_dataset(&text).with_context(|| format!("parsing {}", path.display()))?;
    warn(&parsed.warnings);
    let dataset = parsed.dataset.with_provenance(path.display().to_string());
    let warnings = validate_dataset(&dataset)
        .into_result()
        .with_context(|| format!("validating {}", path.display()))?;
    warn(&warnings);
    Ok((dataset, text))
}

pub fn cmd_regress(data: &Path, out: &Path, run_id: &str) -> Result<ReportBundle> {
    let (dataset, text) = load_dataset(data)?;
    let fit = fit_ols(&dataset.tariff_pairs()).context("fitting reciprocity regression")?;
    if fit.degenerate {
        eprintln!("warning: reciprocal tariffs are constant; R² reported as 0");
    }

    let mut w = Writer::new("regress", out, run_id)?;
    w.input(data, &text);
    w.write_json("fit.json", &FitSummary::from(&fit))?;
    w.write("fit.svg", "svg", &charts::fit_chart(&dataset, &fit, run_id))?;

    let (svg, dropped) = charts::export_chart(&dataset, run_id);
    if !dropped.is_empty() {
        eprintln!(
            "warning: {} countries without a positive export value left off the log-scale plot: {}",
            dropped.len(),
            dropped.join(", ")
        );
    }
    if let Some(svg) = svg {
        w.write("export_scatter.svg", "svg", &svg)?;
    }
    w.finish()
}

pub fn cmd_cluster(
    data: &Path,
    k: usize,
    seed: u64,
    restarts: usize,
    features: FeatureSet,
    out: &Path,
    run_id: &str,
) -> Result<ReportBundle> {
    let (dataset, text) = load_dataset(data)?;
    let std = standardize(&dataset, features)?;
    if !std.excluded.is_empty() {
        eprintln!(
            "warning: {} records without ECI excluded: {}",
            std.excluded.len(),
            std.excluded.join(", ")
        );
    }
    for axis in &std.constant_axes {
        eprintln!("warning: feature axis {axis} is constant; standardized to 0");
    }
    let model = kmeans(&std.points, k, seed, restarts).context("clustering")?;
    let model = label_quadrants(&model, &std.points);

    let mut w = Writer::new("cluster", out, run_id)?;
    w.input(data, &text);
    w.write_json("clusters.json", &model.summary())?;
    w.write("clusters.svg", "svg", &charts::cluster_chart(&std.points, &model, run_id))?;
    w.finish()
}

pub fn cmd_simulate(scenario: &Path, out: &Path, run_id: &str) -> Result<ReportBundle> {
    let text = read(scenario)?;
    let file = ScenarioFile::from_json(&text)?;
    let scenario_model = file.scenario();
    let report = scenario_model.validate();
    warn(&report.warnings);
    let projection = demand_shift(&scenario_model)
        .with_context(|| format!("simulating {}", scenario.display()))?;
    if projection.no_substitute {
        eprintln!("warning: no origin is eligible to substitute for {}", projection.focal);
    }

    let mut w = Writer::new("simulate", out, run_id)?;
    w.input(scenario, &text);
    w.write_json("projection.json", &projection)?;
    w.write("shares.svg", "svg", &charts::shares_chart(&projection, run_id))?;
    w.write("cost_index.svg", "svg", &charts::cost_chart(&projection, run_id))?;
    eprintln!(
        "consumer price impact: {:.1}% share-weighted import price change",
        projection.weighted_price_change * 100.0
    );
    w.finish()
}

pub fn cmd_cld(config: Option<&Path>, out: &Path, run_id: &str) -> Result<ReportBundle> {
    let (cfg, input) = match config {
        Some(path) => {
            let text = read(path)?;
            (CldConfig::from_json(&text)?, Some((path, text)))
        }
        None => (CldConfig::default(), None),
    };
    let model = cfg.model();
    model.validate().context("invalid causal-loop parameters")?;
    if !model.is_linearly_stable() {
        eprintln!(
            "warning: linearized spectral radius {:.4} >= 1; the shock will not damp out",
            model.spectral_radius()
        );
    }
    if cfg.horizon == 0 {
        bail!("horizon must be at least 1");
    }
    let traj = cfg.simulate()?;

    let mut w = Writer::new("cld", out, run_id)?;
    if let Some((path, text)) = &input {
        w.input(path, text);
    }
    w.write("trajectory.csv", "csv", &trajectory_csv(&traj))?;
    w.write("trajectory.svg", "svg", &charts::trajectory_chart(&traj, run_id))?;
    w.finish()
}

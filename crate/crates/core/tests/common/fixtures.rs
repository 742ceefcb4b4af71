//! Shipped sample files and seeded random inputs.

#![allow(dead_code)]

use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tarifflab_core::tariff_sim::ScenarioFile;

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

pub fn sample_csv() -> String {
    std::fs::read_to_string(data_dir().join("sample_countries.csv")).unwrap()
}

pub fn vietnam_json() -> String {
    std::fs::read_to_string(data_dir().join("vietnam_coffee.json")).unwrap()
}

pub fn vietnam_scenario() -> ScenarioFile {
    ScenarioFile::from_json(&vietnam_json()).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Points with uniform x in [0, 100) and a noisy linear y.
pub fn random_regression_points(rng: &mut ChaCha8Rng, n: usize) -> Vec<(f64, f64)> {
    let slope: f64 = rng.gen_range(-2.0..2.0);
    let intercept: f64 = rng.gen_range(-20.0..20.0);
    (0..n)
        .map(|_| {
            let x: f64 = rng.gen_range(0.0..100.0);
            (x, intercept + slope * x + rng.gen_range(-15.0..15.0))
        })
        .collect()
}

pub fn random_points(rng: &mut ChaCha8Rng, n: usize, span: f64) -> Vec<[f64; 2]> {
    (0..n)
        .map(|_| [rng.gen_range(-span..span), rng.gen_range(-span..span)])
        .collect()
}

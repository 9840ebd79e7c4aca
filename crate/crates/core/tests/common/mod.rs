#![allow(dead_code)]

pub mod errata;

use dunkl_frac::dunkl1d::{gaussian, odd_gaussian_with_rate, TestFunction};

const FRAC_TABLE: &str = include_str!("../data/frac_gaussian.csv");

#[derive(Debug)]
pub struct FracRow {
    pub function: String,
    pub k: f64,
    pub d: u32,
    pub alpha: f64,
    pub x: f64,
    pub value: f64,
}

/// Frozen high-precision values of (−Δ_k)^{α/2} on e^{−|x|²/2} and x e^{−x²/2}.
pub fn frac_reference() -> Vec<FracRow> {
    FRAC_TABLE
        .lines()
        .skip(1)
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let r: Vec<&str> = l.split(',').collect();
            FracRow {
                function: r[0].to_owned(),
                k: r[1].parse().unwrap(),
                d: r[2].parse().unwrap(),
                alpha: r[3].parse().unwrap(),
                x: r[4].parse().unwrap(),
                value: r[5].parse().unwrap(),
            }
        })
        .collect()
}

pub fn reference_function(name: &str) -> TestFunction {
    match name {
        "gaussian" => gaussian(),
        "odd-gaussian" => odd_gaussian_with_rate(0.5),
        other => panic!("unknown reference function {other}"),
    }
}

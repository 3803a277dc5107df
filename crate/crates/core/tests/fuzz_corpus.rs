//! Replays the checked-in fuzz seeds through the fuzz targets' assertions.

use std::fs;
use std::path::PathBuf;

use barrier_walk::experiment::config::parse_list;
use barrier_walk::experiment::sweep::SweepSpec;
use barrier_walk::experiment::{read_curve_csv, write_curve_csv, Config, ExperimentSpec};

fn seeds(target: &str) -> Vec<String> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fuzz/corpus")
        .join(target);
    let mut out: Vec<String> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|entry| fs::read_to_string(entry.unwrap().path()).unwrap())
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn config_seeds_round_trip() {
    for seed in seeds("config_parse") {
        let config = Config::parse(&seed).unwrap();
        assert_eq!(Config::parse(&config.to_string()).unwrap(), config);
    }
}

#[test]
fn experiment_seeds_are_valid_specs() {
    for seed in seeds("experiment_spec") {
        let spec = ExperimentSpec::from_config(&Config::parse(&seed).unwrap()).unwrap();
        assert_eq!(
            ExperimentSpec::from_config(&spec.to_config()).unwrap(),
            spec
        );
    }
}

#[test]
fn sweep_seeds_are_valid() {
    for seed in seeds("sweep_spec") {
        SweepSpec::from_config(&Config::parse(&seed).unwrap()).unwrap();
    }
}

#[test]
fn list_seeds_parse() {
    for seed in seeds("parse_list") {
        assert!(!parse_list::<f64>(&seed).unwrap().is_empty());
    }
}

#[test]
fn curve_seeds_read_and_rewrite() {
    for seed in seeds("curve_csv") {
        let (axis, rows) = read_curve_csv(seed.as_bytes()).unwrap();
        let mut buf = Vec::new();
        write_curve_csv(&mut buf, axis, &rows).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), seed);
    }
}

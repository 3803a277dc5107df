#![no_main]

use barrier_walk::experiment::{Config, ExperimentSpec};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let Ok(config) = Config::parse(s) else { return };
    if let Ok(spec) = ExperimentSpec::from_config(&config) {
        let echoed = ExperimentSpec::from_config(&spec.to_config()).expect("echoed spec is valid");
        assert_eq!(echoed, spec);
    }
});

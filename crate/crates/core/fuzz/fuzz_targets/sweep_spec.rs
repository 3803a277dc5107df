#![no_main]

use barrier_walk::experiment::sweep::SweepSpec;
use barrier_walk::experiment::Config;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(config) = Config::parse(s) {
            let _ = SweepSpec::from_config(&config);
        }
    }
});

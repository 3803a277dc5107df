#![no_main]

use barrier_walk::experiment::Config;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(config) = Config::parse(s) {
            // printing and re-parsing must give the same entries
            let again = Config::parse(&config.to_string()).expect("printed config parses");
            assert_eq!(again, config);
        }
    }
});

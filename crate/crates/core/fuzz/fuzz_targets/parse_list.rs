#![no_main]

use barrier_walk::experiment::config::parse_list;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        let _ = parse_list::<usize>(s);
        let _ = parse_list::<f64>(s);
    }
});

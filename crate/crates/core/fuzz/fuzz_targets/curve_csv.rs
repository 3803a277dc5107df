#![no_main]

use barrier_walk::experiment::{read_curve_csv, write_curve_csv};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok((axis, rows)) = read_curve_csv(data) {
        for &(_, p) in &rows {
            assert!((0.0..=1.0).contains(&p));
        }
        let mut buf = Vec::new();
        write_curve_csv(&mut buf, axis, &rows).expect("accepted rows can be written");
    }
});

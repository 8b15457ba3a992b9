#![no_main]

use dpca_core::dataset::{parse_csv, to_csv};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(d) = parse_csv(text) {
        let again = parse_csv(&to_csv(&d)).expect("written CSV parses");
        assert_eq!(again, d);
    }
});

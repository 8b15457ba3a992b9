#![no_main]

use dpca_core::dataset::parse_synth_spec;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(spec) = parse_synth_spec(text) {
            spec.validate().expect("parsed specs are valid");
        }
    }
});

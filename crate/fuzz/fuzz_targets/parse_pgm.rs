#![no_main]

use dpca_core::dataset::parse_pgm;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(img) = parse_pgm(data) {
        assert_eq!(img.pixels.len(), img.width * img.height);
        assert!(img.pixels.iter().all(|&p| u16::from(p) <= img.maxval));
    }
});

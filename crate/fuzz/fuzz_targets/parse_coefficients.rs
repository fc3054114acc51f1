#![no_main]

use libfuzzer_sys::fuzz_target;
use stirling_cli::parse::parse_coefficients;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(c) = parse_coefficients(s) {
        assert!(!c.is_empty());
        assert!(c.iter().all(|x| x.is_finite()));
    }
});

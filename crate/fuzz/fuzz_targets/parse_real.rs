#![no_main]

use libfuzzer_sys::fuzz_target;
use stirling_cli::parse::parse_real;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(x) = parse_real(s) {
        assert!(x.is_finite());
    }
});

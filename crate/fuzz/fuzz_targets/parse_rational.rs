#![no_main]

use libfuzzer_sys::fuzz_target;
use stirling_core::Rational;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(r) = s.parse::<Rational>() {
        // Display output parses back to the same value.
        let again: Rational = r.to_string().parse().expect("canonical form parses");
        assert_eq!(r, again);
    }
});

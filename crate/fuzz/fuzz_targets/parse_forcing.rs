#![no_main]

use libfuzzer_sys::fuzz_target;
use stirling_core::{Forcing, SmoothFunction};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(g) = s.parse::<Forcing>() {
        let _ = g.value(1.5);
        let _ = g.derivative(3, 2.0);
        let _ = g.to_string();
    }
});

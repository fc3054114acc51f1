#![no_main]

use libfuzzer_sys::fuzz_target;

// Arguments are NUL-separated. Only subcommands with bounded work are
// allowed through so a run cannot stall on a huge --max.
fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let args: Vec<&str> = s.split('\0').collect();
    if !matches!(args.first(), Some(&("discrepancy" | "lgamma" | "stirling" | "factor-coeffs" | "verify-resum" | "oracle"))) {
        return;
    }
    if args.iter().any(|a| a.starts_with("--m") || a.starts_with("--terms")) {
        return;
    }
    let outcome = stirling_cli::run(std::iter::once("stirling").chain(args.iter().copied()));
    assert!(matches!(outcome.code, 0..=2));
    if outcome.code == 0 {
        assert!(outcome.stderr.is_empty());
    } else {
        assert!(outcome.stdout.is_empty());
    }
});

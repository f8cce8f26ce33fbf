//! Run with `cargo +nightly fuzz run parse_poly`.

#![no_main]

use heis_core::{parse_poly, Signature};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    for sig in [Signature::heisenberg(1), Signature::heisenberg(2)] {
        if let Ok(p) = parse_poly(text, &sig) {
            let printed = p.to_string();
            let again = parse_poly(&printed, &sig).expect("printer output parses");
            assert_eq!(again, p);
            assert_eq!(again.to_string(), printed);
        }
    }
});

//! Run with `cargo +nightly fuzz run parse_group_spec`.

#![no_main]

use heis_core::group::GroupSpec;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(spec) = GroupSpec::from_json(text) {
        // Degree 2 on few variables only; the kernel computation is not what is fuzzed.
        if spec.signature().len() <= 8 {
            let _ = heis_core::harmonic::harmonic_dimension(&spec, 2);
        }
        let again = GroupSpec::from_json(&spec.to_json()).expect("re-encoded spec decodes");
        assert_eq!(again.signature().names(), spec.signature().names());
        assert_eq!(again.fields(), spec.fields());
    }
});

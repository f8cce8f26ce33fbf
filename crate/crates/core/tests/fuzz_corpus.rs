//! Replays the checked-in fuzz corpus through the invariants of the fuzz
//! targets, so the seeds are exercised on a stable toolchain.

use std::path::PathBuf;

use heis_core::group::GroupSpec;
use heis_core::{parse_poly, Signature};

fn corpus(target: &str) -> Vec<(String, Vec<u8>)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<(String, Vec<u8>)> = std::fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|entry| {
            let path = entry.unwrap().path();
            (path.display().to_string(), std::fs::read(&path).unwrap())
        })
        .collect();
    out.sort();
    out
}

#[test]
fn parse_poly_seeds() {
    let seeds = corpus("parse_poly");
    assert!(seeds.len() >= 10);
    let mut accepted = 0;
    for (name, data) in seeds {
        let Ok(text) = std::str::from_utf8(&data) else { continue };
        for sig in [Signature::heisenberg(1), Signature::heisenberg(2)] {
            if let Ok(p) = parse_poly(text, &sig) {
                let printed = p.to_string();
                let again = parse_poly(&printed, &sig).unwrap_or_else(|e| panic!("{name}: {e}"));
                assert_eq!(again, p, "{name}");
                assert_eq!(again.to_string(), printed, "{name}");
                accepted += 1;
            }
        }
    }
    assert!(accepted > 0);
}

#[test]
fn group_spec_seeds() {
    let seeds = corpus("parse_group_spec");
    let mut accepted = 0;
    for (name, data) in seeds {
        let Ok(text) = std::str::from_utf8(&data) else { continue };
        if let Ok(spec) = GroupSpec::from_json(text) {
            if spec.signature().len() <= 8 {
                let _ = heis_core::harmonic::harmonic_dimension(&spec, 2);
            }
            let again = GroupSpec::from_json(&spec.to_json()).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert_eq!(again.signature().names(), spec.signature().names(), "{name}");
            assert_eq!(again.fields(), spec.fields(), "{name}");
            accepted += 1;
        }
    }
    assert_eq!(accepted, 3);
}

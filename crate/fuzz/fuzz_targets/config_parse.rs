//! Fuzz the JSON sweep-spec parser: arbitrary bytes must never panic the
//! parser or validator, and any accepted spec must survive a
//! serialize/reparse round trip unchanged.

#![no_main]

use libfuzzer_sys::fuzz_target;
use sicnet_cli::config::SweepSpec;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(spec) = SweepSpec::from_json(text) else {
        return;
    };
    let json = spec.to_json();
    let again = SweepSpec::from_json(&json)
        .expect("a validated spec must reparse after serialization");
    assert_eq!(json, again.to_json(), "serialize/reparse must be stable");
});

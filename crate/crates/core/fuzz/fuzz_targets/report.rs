#![no_main]

use libfuzzer_sys::fuzz_target;
use torusbt::runner::Report;

// Reports and cache entries are read back from disk.
fuzz_target!(|data: &[u8]| {
    if let Ok(r) = serde_json::from_slice::<Report>(data) {
        let text = r.to_json_pretty();
        let back: Report = serde_json::from_str(&text).expect("reports round-trip");
        assert_eq!(back.results.len(), r.results.len());
    }
});

#![no_main]

use libfuzzer_sys::fuzz_target;
use torusbt::manifest::Manifest;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(m) = Manifest::parse(text) {
        let _ = m.build();
        let _ = m.parsed_commands();
    }
});

#![no_main]

use libfuzzer_sys::fuzz_target;
use torusbt::manifest::parse_word;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(word) = parse_word(text) {
        let printed = if word.is_empty() {
            "e".to_string()
        } else {
            word.iter().map(|(g, k)| format!("g{g}^{k}")).collect::<Vec<_>>().join("*")
        };
        assert_eq!(parse_word(&printed).unwrap(), word);
    }
});

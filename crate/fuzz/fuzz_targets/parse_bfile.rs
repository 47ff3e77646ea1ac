#![no_main]

use libfuzzer_sys::fuzz_target;
use natave::bfile::parse_bfile;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(terms) = parse_bfile(text) {
        let lines = text
            .lines()
            .filter(|l| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
            .count();
        assert_eq!(terms.len(), lines);
    }
});

#![no_main]

use libfuzzer_sys::fuzz_target;
use natave::{matches_at, transpose, Word};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(word) = Word::parse(text) else { return };
    assert_eq!(word.to_string().parse::<Word>().unwrap(), word);
    assert_eq!(transpose(&transpose(&word)), word);
    let _ = matches_at(&word, 1);
});

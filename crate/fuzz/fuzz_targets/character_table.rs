#![no_main]

use dhb::frobenius::CharacterTable;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(t) = CharacterTable::parse(text) {
        if t.classes.len() <= 16 {
            let names: Vec<&str> = t.classes.iter().map(|c| c.name.as_str()).collect();
            let _ = t.frobenius_count(names[0], names[names.len() - 1], names[0]);
        }
    }
});

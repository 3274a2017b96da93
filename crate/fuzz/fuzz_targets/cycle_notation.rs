#![no_main]

use dhb::perm::{parse_cycle_list, Permutation};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let _ = parse_cycle_list(text);
    if let Ok(p) = Permutation::parse_cycles(text, 64) {
        let again = Permutation::parse_cycles(&p.to_string(), 64).expect("display output parses");
        assert_eq!(p, again);
    }
});

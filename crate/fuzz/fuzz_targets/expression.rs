#![no_main]

use dhb::compose::{eval_expr, parse_expr};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(e) = parse_expr(text) {
        assert_eq!(parse_expr(&e.to_string()).as_ref(), Ok(&e));
        if text.len() <= 24 && !text.bytes().any(|b| b.is_ascii_digit() && b != b'1' && b != b'2' && b != b'3') {
            let _ = eval_expr(&e);
        }
    }
});

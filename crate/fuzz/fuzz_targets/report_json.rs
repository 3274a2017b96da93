#![no_main]

use dhb::report::Report;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(reports) = Report::many_from_json(text) {
        for r in reports {
            let again = Report::from_json(&r.to_json()).expect("serialized report parses");
            assert_eq!(again, r);
        }
    }
});

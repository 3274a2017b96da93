#![no_main]

use dhb::HurwitzMap;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if text.len() > 1 << 16 {
        return;
    }
    if let Ok(m) = HurwitzMap::parse_map_file(text) {
        assert_eq!(HurwitzMap::parse_map_file(&m.to_map_file()).as_ref(), Ok(&m));
        let _ = m.w_cycles();
        let _ = m.genus();
    }
});

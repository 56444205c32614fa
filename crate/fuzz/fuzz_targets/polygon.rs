#![no_main]

use libfuzzer_sys::fuzz_target;
use multitile::json;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(p) = json::polygon_from_str(text) {
        assert_eq!(p.area().sign(), 1);
    }
});

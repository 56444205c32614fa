#![no_main]

use libfuzzer_sys::fuzz_target;
use multitile::json;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(f) = json::field_from_str(text) {
        let again = json::field_from_str(&json::encode_field(&f).to_string()).unwrap();
        assert_eq!(f, again);
    }
});

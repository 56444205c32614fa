#![no_main]

use libfuzzer_sys::fuzz_target;
use multitile::json;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(s) = json::scene_from_str(text) {
        let again = json::scene_from_str(&json::encode_scene(&s).to_string()).unwrap();
        assert_eq!(s, again);
    }
});

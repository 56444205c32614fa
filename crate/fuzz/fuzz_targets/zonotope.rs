#![no_main]

use libfuzzer_sys::fuzz_target;
use multitile::json;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(z) = json::zonotope_from_str(text) {
        let again = json::zonotope_from_str(&json::encode_zonotope(&z).to_string()).unwrap();
        assert_eq!(z, again);
        assert_eq!(z.area().sign(), 1);
    }
});

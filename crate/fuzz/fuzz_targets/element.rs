#![no_main]

use libfuzzer_sys::fuzz_target;
use multitile::json;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(e) = json::element_from_str(text) {
        let doc = json::element_document(&e);
        assert!(json::is_canonical_element(&doc["element"]));
        assert_eq!(json::element_from_str(&doc.to_string()).unwrap(), e);
        assert!((&e + &-&e).is_zero());
    }
});

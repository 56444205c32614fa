#![no_main]

use libfuzzer_sys::fuzz_target;
use multitile::json;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(l) = json::lattice_from_str(text) {
        let again = json::lattice_from_str(&json::encode_lattice(&l).to_string()).unwrap();
        assert_eq!(l, again);
        assert!(l.contains(&l.basis()[0]) && l.contains(&l.basis()[1]));
    }
});

#![no_main]

use dcover::IntPoly;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(p) = IntPoly::from_json(text) {
        assert_eq!(IntPoly::from_json(&p.to_json()).as_ref(), Ok(&p));
        let _ = p.to_string();
    }
});

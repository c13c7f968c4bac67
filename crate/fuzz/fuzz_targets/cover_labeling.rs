#![no_main]

use dcover::constructions::CoverLabeling;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Some((&n, rest)) = data.split_first() else { return };
    let Ok(text) = std::str::from_utf8(rest) else { return };
    let n = usize::from(n % 16);
    if let Ok(lab) = CoverLabeling::from_json(text, n) {
        let again = CoverLabeling::from_json(&lab.to_json(), n);
        assert_eq!(again.as_ref(), Ok(&lab));
        let _ = lab.graph();
    }
});

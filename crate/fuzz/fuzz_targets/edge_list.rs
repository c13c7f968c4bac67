#![no_main]

use dcover::io::{parse_edge_list, write_edge_list};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    for lenient in [false, true] {
        if let Ok(g) = parse_edge_list(text, lenient) {
            // Whatever parses must write back out and re-parse to the same graph.
            let out = write_edge_list(&g);
            assert_eq!(parse_edge_list(&out, false).as_ref(), Ok(&g));
        }
    }
});

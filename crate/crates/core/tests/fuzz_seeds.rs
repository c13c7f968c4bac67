//! Replays the checked-in fuzz seeds through the fuzz targets' round-trip
//! assertions, so they stay meaningful without a nightly toolchain.

use std::fs;
use std::path::PathBuf;

use dcover::constructions::CoverLabeling;
use dcover::io::{parse_edge_list, write_edge_list};
use dcover::IntPoly;

fn seeds(target: &str) -> Vec<(String, Vec<u8>)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<(String, Vec<u8>)> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| {
            let p = e.unwrap().path();
            (p.display().to_string(), fs::read(&p).unwrap())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn edge_list_seeds() {
    let mut parsed = 0;
    for (name, data) in seeds("edge_list") {
        let text = String::from_utf8(data).unwrap();
        for lenient in [false, true] {
            if let Ok(g) = parse_edge_list(&text, lenient) {
                assert_eq!(parse_edge_list(&write_edge_list(&g), false).unwrap(), g, "{name}");
                parsed += 1;
            }
        }
    }
    assert!(parsed > 0);
}

#[test]
fn cover_labeling_seeds() {
    for (name, data) in seeds("cover_labeling") {
        let n = usize::from(data[0] % 16);
        let text = std::str::from_utf8(&data[1..]).unwrap();
        let lab = CoverLabeling::from_json(text, n).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(CoverLabeling::from_json(&lab.to_json(), n).unwrap(), lab, "{name}");
    }
}

#[test]
fn poly_json_seeds() {
    for (name, data) in seeds("poly_json") {
        let p = IntPoly::from_json(std::str::from_utf8(&data).unwrap()).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(IntPoly::from_json(&p.to_json()).unwrap(), p, "{name}");
    }
}

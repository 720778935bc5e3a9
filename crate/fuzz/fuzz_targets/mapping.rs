#![no_main]

use libfuzzer_sys::fuzz_target;
use planted::io::{parse_mapping, write_mapping};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(phi) = parse_mapping(text) {
        let mut seen = phi.clone();
        seen.sort_unstable();
        seen.dedup();
        assert_eq!(seen.len(), phi.len());
        let mut out = Vec::new();
        write_mapping(&phi, &mut out).unwrap();
        assert_eq!(parse_mapping(std::str::from_utf8(&out).unwrap()).unwrap(), phi);
    }
});

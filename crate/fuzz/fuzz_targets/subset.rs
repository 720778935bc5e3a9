#![no_main]

use libfuzzer_sys::fuzz_target;
use planted::io::{parse_subset, write_subset};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(set) = parse_subset(text) {
        assert!(set.as_slice().windows(2).all(|w| w[0] < w[1]));
        let mut out = Vec::new();
        write_subset(&set, &mut out).unwrap();
        assert_eq!(parse_subset(std::str::from_utf8(&out).unwrap()).unwrap(), set);
    }
});

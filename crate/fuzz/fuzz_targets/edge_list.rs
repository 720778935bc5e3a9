#![no_main]

use libfuzzer_sys::fuzz_target;
use planted::io::{edge_list_string, parse_edge_list, parse_edge_list_with_limit};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(g) = parse_edge_list_with_limit(text, 1 << 12) {
        g.check_invariants().unwrap();
        let canonical = edge_list_string(&g);
        assert_eq!(parse_edge_list(&canonical).unwrap(), g);
    }
});

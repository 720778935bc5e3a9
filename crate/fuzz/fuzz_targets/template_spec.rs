#![no_main]

use libfuzzer_sys::fuzz_target;
use planted::generators::BaseKind;
use planted::Template;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(t) = text.parse::<Template>() {
        assert_eq!(t.to_string().parse::<Template>().unwrap(), t);
    }
    if let Ok(kind) = text.parse::<BaseKind>() {
        assert_eq!(kind.to_string().parse::<BaseKind>().unwrap(), kind);
    }
});

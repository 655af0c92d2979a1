#![no_main]

use brace_algebra::workspace::{format_rational, parse_rational};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(q) = parse_rational(text) {
        let shown = format_rational(&q);
        assert_eq!(
            parse_rational(&shown).expect("formatted rationals parse"),
            q
        );
        assert_eq!(format_rational(&parse_rational(&shown).unwrap()), shown);
    }
});

#![no_main]

use brace_cli::random::parse_degree_range;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(range) = parse_degree_range(text) {
        assert!(range.start() <= range.end());
    }
});

#![no_main]

use brace_algebra::workspace::Workspace;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(ws) = Workspace::parse(text) {
        let canonical = ws.to_canonical_string();
        let reread = Workspace::parse(&canonical).expect("canonical output parses");
        assert_eq!(reread.to_canonical_string(), canonical);
        assert_eq!(reread.maps(), ws.maps());
    }
});

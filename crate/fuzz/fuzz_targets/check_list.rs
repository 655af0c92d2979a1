#![no_main]

use brace_cli::checks::parse_check_list;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(checks) = parse_check_list(text) {
        assert!(!checks.is_empty() && checks.len() <= 12);
        let joined: Vec<&str> = checks.iter().map(|c| c.as_str()).collect();
        assert_eq!(parse_check_list(&joined.join(",")).unwrap(), checks);
    }
});

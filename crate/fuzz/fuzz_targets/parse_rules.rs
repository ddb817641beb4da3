#![no_main]
use libfuzzer_sys::fuzz_target;
use sparc_core::syntax::parse_rules_source;

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else { return };
    if let Ok(rules) = parse_rules_source(src) {
        let text: String = rules.iter().map(|r| format!("{r}\n")).collect();
        assert_eq!(parse_rules_source(&text).expect("printed rules must parse"), rules);
    }
});

#![no_main]
use libfuzzer_sys::fuzz_target;
use sparc_core::ground::format_literal_set;
use sparc_core::translate::external::parse_output;

fuzz_target!(|data: &[u8]| {
    let Ok(out) = std::str::from_utf8(data) else { return };
    if let Ok(sets) = parse_output(out) {
        let text: String = sets.iter().map(|s| format!("{}\n", format_literal_set(s))).collect();
        assert_eq!(parse_output(&text).expect("printed sets must parse"), sets);
    }
});

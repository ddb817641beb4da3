#![no_main]
use libfuzzer_sys::fuzz_target;
use sparc_core::parse_source;

// printed programs parse back to the same tree
fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else { return };
    if let Ok(program) = parse_source(src) {
        let text = program.to_string();
        let again = parse_source(&text).expect("printed program must parse");
        assert_eq!(again, program);
    }
});

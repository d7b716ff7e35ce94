#![no_main]

use libfuzzer_sys::fuzz_target;
use qchu_kit::cli_io::{parse_dictionary, save_dictionary};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(spec) = parse_dictionary(text) {
        let saved = save_dictionary(&spec);
        let again = parse_dictionary(&saved).expect("saved dictionary parses");
        assert_eq!(save_dictionary(&again), saved);
    }
});

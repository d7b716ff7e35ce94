#![no_main]

use libfuzzer_sys::fuzz_target;
use qchu_kit::cli_io::{parse_chu3, save_chu3};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(chu) = parse_chu3(text) {
        let saved = save_chu3(&chu);
        let again = parse_chu3(&saved).expect("saved chu3 parses");
        assert_eq!(save_chu3(&again), saved);
        if chu.rows().len() <= 8 && chu.tests().len() <= 4 {
            if let Ok(q) = chu.saturate().and_then(|s| s.quotient()) {
                q.check_invariants().expect("quotient invariants");
            }
        }
    }
});

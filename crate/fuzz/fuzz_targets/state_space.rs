#![no_main]

use libfuzzer_sys::fuzz_target;
use qchu_kit::cli_io::{parse_state_space, save_state_space};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(space) = parse_state_space(text) {
        let saved = save_state_space(&space);
        let again = parse_state_space(&saved).expect("saved state space parses");
        assert!(again.poset.same_as(&space.poset));
        assert_eq!(save_state_space(&again), saved);
        let _ = space.poset.pure_states();
    }
});

#![no_main]

use libfuzzer_sys::fuzz_target;
use mpd_core::Permutation;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    for degree in [1, 7, 40] {
        if let Ok(p) = Permutation::parse(text, degree) {
            let back = Permutation::parse(&p.to_string(), degree).expect("printed cycles parse");
            assert_eq!(back, p);
        }
    }
});

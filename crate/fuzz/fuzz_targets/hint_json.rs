#![no_main]

use libfuzzer_sys::fuzz_target;
use mpd_core::hint::RecognitionHint;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(hint) = RecognitionHint::from_json(text) {
        assert_eq!(RecognitionHint::from_json(&hint.to_json()).unwrap(), hint);
        if hint.q <= 64 && hint.d <= 8 {
            let _ = hint.pairs(64);
        }
    }
});

#![no_main]

use libfuzzer_sys::fuzz_target;
use mpd_core::pipeline::MuCertificate;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(cert) = MuCertificate::from_json(text) {
        let json = cert.to_json();
        assert_eq!(MuCertificate::from_json(&json).unwrap().to_json(), json);
        let _ = cert.is_consistent();
        let _ = cert.into_result();
    }
});

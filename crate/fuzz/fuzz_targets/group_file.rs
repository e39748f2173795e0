#![no_main]

use libfuzzer_sys::fuzz_target;
use mpd_core::group_file::GroupFile;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(file) = GroupFile::parse(text) {
        let again = GroupFile::parse(&file.render(&[])).expect("rendered file parses");
        assert_eq!(again, file);
        if file.degree <= 64 && file.generators.len() <= 8 {
            let _ = file.group().map(|g| g.order());
        }
    }
});

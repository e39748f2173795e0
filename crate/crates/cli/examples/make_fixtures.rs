//! Writes the fixture corpus into `crates/cli/fixtures`.

use std::fs;
use std::path::Path;

fn main() -> mpd_core::Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    fs::create_dir_all(&dir).expect("create fixtures directory");
    for f in mpd_cli::fixtures::all()? {
        fs::write(dir.join(format!("{}.grp", f.name)), f.render()).expect("write fixture");
    }
    for (name, text) in mpd_cli::fixtures::hints()? {
        fs::write(dir.join(format!("{name}.json")), text + "\n").expect("write hint");
    }
    Ok(())
}

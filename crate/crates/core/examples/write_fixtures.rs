//! Regenerates the JSON state files under fixtures/.

use std::path::Path;

fn main() -> gme_coherence::Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    for name in gme_coherence::fixtures::write_fixtures(&dir)? {
        println!("{}", dir.join(name).display());
    }
    Ok(())
}

//! Reading, converting and writing JSON state files.

use gme_coherence::fixtures::qubit_state;
use gme_coherence::io::{density_to_json, parse_state, StateFile};
use gme_coherence::uio::convert;

fn main() -> gme_coherence::Result<()> {
    let rho = qubit_state(0.5, 0.4)?;
    let text = density_to_json(&rho);
    println!("{text}");
    let StateFile::Mixed(back) = parse_state(&text)? else {
        unreachable!("density matrices round-trip as density matrices");
    };
    println!("{}", density_to_json(&convert(&back, 3)?));
    Ok(())
}

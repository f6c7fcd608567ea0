//! (p, r) sweep of the maximal Hardy value, written to hardy_sweep.csv.

use std::fs::File;
use std::io::BufWriter;

use gme_coherence::hardy::{monotonicity_warnings, sweep_hardy, write_sweep_csv};

fn main() -> gme_coherence::Result<()> {
    let rows = sweep_hardy(21, 21, 32, 0)?;
    write_sweep_csv(&rows, BufWriter::new(File::create("hardy_sweep.csv")?))?;

    let zero_line = rows.iter().filter(|r| r.r == 0.0).map(|r| r.h_max).fold(f64::MIN, f64::max);
    let off_line = rows.iter().filter(|r| r.r > 0.0).map(|r| r.h_max).fold(f64::MAX, f64::min);
    println!("{} cells  max on r=0: {zero_line:.2e}  min off r=0: {off_line:.2e}", rows.len());
    for w in monotonicity_warnings(&rows) {
        println!("warning: {w}");
    }
    println!("wrote hardy_sweep.csv");
    Ok(())
}

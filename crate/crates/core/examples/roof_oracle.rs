//! Optimizer against the exhaustive Givens-rotation grid on rank-2 qubits.

use gme_coherence::measures::ConcaveFunction;
use gme_coherence::random::random_density_matrix;
use gme_coherence::roof::{brute_force_roof, convex_roof, RoofConfig, RoofMeasure};

fn main() -> gme_coherence::Result<()> {
    let measure = RoofMeasure::Coherence(ConcaveFunction::ShannonEntropy);
    for seed in 0..5 {
        let rho = random_density_matrix(&[2], 2, seed)?;
        let opt = convex_roof(&measure, &rho, &RoofConfig::default())?.value;
        let grid = brute_force_roof(&measure, &rho, 200)?;
        println!("seed {seed}: optimizer={opt:.8}  grid={grid:.8}  diff={:+.2e}", opt - grid);
    }
    Ok(())
}

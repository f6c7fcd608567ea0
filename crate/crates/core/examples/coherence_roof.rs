//! Convex-roof coherence of a mixed qubit state, with the optimal ensemble.

use gme_coherence::fixtures::qubit_state;
use gme_coherence::measures::{l1_coherence, ConcaveFunction};
use gme_coherence::roof::{convex_roof, RoofConfig, RoofMeasure};

fn main() -> gme_coherence::Result<()> {
    let rho = qubit_state(0.5, 0.3)?;
    for f in ConcaveFunction::ALL_DEFAULT {
        let res = convex_roof(&RoofMeasure::Coherence(f), &rho, &RoofConfig::default())?;
        println!(
            "{:<12} roof={:.8}  converged={}  best restart {} of {}",
            f.name(),
            res.value,
            res.converged,
            res.best_restart,
            res.restarts.len()
        );
        for (w, psi) in res.decomposition.weights.iter().zip(&res.decomposition.states) {
            if *w > 1e-9 {
                let a = psi.amplitudes();
                println!("    {w:.6}  ({:.4}, {:.4})", a[0], a[1]);
            }
        }
    }
    println!("l1 norm of coherence: {:.8}", l1_coherence(&rho));
    Ok(())
}

//! Min-GME and geometric-mean GME roofs of random three-qubit states.
//! The geometric mean never falls below the minimum.

use gme_coherence::measures::ConcaveFunction;
use gme_coherence::random::random_density_matrix;
use gme_coherence::roof::{convex_roof, RoofConfig, RoofMeasure};

fn main() -> gme_coherence::Result<()> {
    let f = ConcaveFunction::Concurrence;
    let cfg = RoofConfig::default();
    for seed in 0..5 {
        let rho = random_density_matrix(&[2, 2, 2], 2, seed)?;
        let e = convex_roof(&RoofMeasure::MinGme(f), &rho, &cfg)?;
        let g = convex_roof(&RoofMeasure::GeoGme(f), &rho, &cfg)?;
        println!("seed {seed}: E_min={:.6}  G_geo={:.6}  G-E={:+.4}", e.value, g.value, g.value - e.value);
    }
    Ok(())
}

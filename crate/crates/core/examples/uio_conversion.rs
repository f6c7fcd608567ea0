//! Coherence to GME: convert random qubit and qutrit states and compare
//! the coherence with both GME measures of the image.

use gme_coherence::measures::{l1_coherence, ConcaveFunction};
use gme_coherence::random::random_density_matrix;
use gme_coherence::roof::RoofConfig;
use gme_coherence::uio::{build_uio, check_theorem3, compressed, convert};

fn main() -> gme_coherence::Result<()> {
    let u = build_uio(3, &[3, 3])?;
    println!(
        "U for d=3, N=3: {}x{}  permutation={}  unitarity defect={:.1e}",
        u.matrix.nrows(),
        u.matrix.ncols(),
        u.is_permutation(),
        u.unitarity_defect()
    );

    let rho = random_density_matrix(&[2], 2, 5)?;
    let image = convert(&rho, 3)?;
    println!("l1(rho)={:.6}  l1(rho')={:.6}", l1_coherence(&rho), l1_coherence(&image));
    println!("compressed block of rho' equals rho: {}", (compressed(&image) - rho.matrix()).norm() < 1e-15);

    let cfg = RoofConfig { seed: 1, ..RoofConfig::default() };
    for (d, f) in [(2, ConcaveFunction::Concurrence), (2, ConcaveFunction::ShannonEntropy), (3, ConcaveFunction::Concurrence)] {
        let rho = random_density_matrix(&[d], 2, 40 + d as u64)?;
        let rep = check_theorem3(&rho, f, 3, &cfg)?;
        println!(
            "d={d} {:<12} C={:.6}  E_min={:.6} ({:?})  G_geo={:.6}  spread={:.1e}",
            f.name(),
            rep.coherence.value,
            rep.e_min_gme.value,
            rep.e_min_gme.method,
            rep.g_geo_gme.value,
            rep.max_discrepancy
        );
    }
    Ok(())
}

//! Coherence and GME measures of a few pure states, all closed form.

use gme_coherence::measures::{
    coherence_pure, e_max_pure, e_min_gme_pure_argmin, g_geo_gme_pure, ConcaveFunction,
};
use gme_coherence::random::random_pure_state;
use gme_coherence::state::{schmidt_vector, Bipartition, PureState};
use gme_coherence::uio::convert_pure;

fn main() -> gme_coherence::Result<()> {
    let states = vec![
        ("GHZ3", PureState::ghz(3)),
        ("W3", PureState::w(3)),
        ("GHZ4", PureState::ghz(4)),
        ("random 2x3x2", random_pure_state(&[2, 3, 2], 7)?),
    ];
    for (name, psi) in &states {
        println!("{name}  dims {:?}", psi.dims());
        for f in ConcaveFunction::ALL_DEFAULT {
            let (e_min, split) = e_min_gme_pure_argmin(f, psi)?;
            println!(
                "  {:<12} C_f={:.6}  E_min={:.6} (at {split})  G_geo={:.6}  E_max={:.6}",
                f.name(),
                coherence_pure(f, psi),
                e_min,
                g_geo_gme_pure(f, psi)?,
                e_max_pure(f, psi)?,
            );
        }
    }

    let w = PureState::w(3);
    let split = Bipartition::new(&[1], 3)?;
    println!("W3 Schmidt vector across {split}: {:?}", schmidt_vector(&w, &split)?);

    // A single qudit state and its N-party image carry the same value.
    let psi = random_pure_state(&[3], 11)?;
    let image = convert_pure(&psi, 3)?;
    let f = ConcaveFunction::ShannonEntropy;
    println!(
        "qutrit: C_f={:.12}  E_min(image)={:.12}  G_geo(image)={:.12}",
        coherence_pure(f, &psi),
        e_min_gme_pure_argmin(f, &image)?.0,
        g_geo_gme_pure(f, &image)?
    );
    Ok(())
}

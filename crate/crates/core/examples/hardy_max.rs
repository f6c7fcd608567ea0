//! Maximal Hardy value for a few X-states, with the correlation flags.

use gme_coherence::hardy::{gmnl_gms_flags, maximize_hardy, MeasurementAngles, XStateParams, hardy_closed_form};

fn main() -> gme_coherence::Result<()> {
    let seed_only = maximize_hardy(XStateParams::new(0.5, 0.4)?, 1, 0)?;
    println!(
        "p=0.5 r=0.4 from the seed start: H={:.8} (H at seed itself {:.8})",
        seed_only.h_max,
        hardy_closed_form(&MeasurementAngles::seed(), seed_only.params)
    );
    for (p, r) in [(0.5, 0.5), (0.5, 0.4), (0.3, 0.1), (0.3, 0.0), (0.1, 0.02)] {
        let params = XStateParams::new(p, r)?;
        let res = maximize_hardy(params, 32, 0)?;
        let flags = gmnl_gms_flags(params, 32, 0)?;
        println!(
            "p={p} r={r}: h_max={:.3e} angles={:.4?} gmnl={} gms={} gme={}",
            res.h_max, res.angles.theta, flags.gmnl, flags.gms, flags.gme_positive
        );
    }
    Ok(())
}

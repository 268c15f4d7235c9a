//! Residuals of a circularly polarized plane wave on a periodic grid, and
//! their behaviour under F -> zF.

use num_complex::Complex64;
use ssb_lab::maxwell::{convergence_csv, convergence_study, make_helicity_wave, Snapshots, DT_OVER_H};

fn main() -> ssb_lab::Result<()> {
    let wave = make_helicity_wave([1.0, 2.0, 3.0])?;
    println!("helicity defect {:.2e}", wave.helicity_defect());

    let rows = convergence_study(&wave, &[16, 32, 64])?;
    print!("{}", convergence_csv(&rows));
    for w in rows.windows(2) {
        println!(
            "h ratio 2: div falls {:.3}x, evolution falls {:.3}x",
            w[0].div_norm / w[1].div_norm,
            w[0].evolution_norm / w[1].evolution_norm
        );
    }

    let snaps = Snapshots::of_wave(&wave, 32, DT_OVER_H)?;
    let base = snaps.residual()?;
    for z in [Complex64::new(0.0, 1.0), Complex64::new(2.0, -3.0)] {
        let r = snaps.scaled(z)?.residual()?;
        println!(
            "z = {z}: evolution residual ratio {:.15} (|z| = {:.15})",
            r.evolution_norm / base.evolution_norm,
            z.norm()
        );
    }
    Ok(())
}

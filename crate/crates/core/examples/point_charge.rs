//! Point-charge potentials in n dimensions under r -> λr.

use std::f64::consts::E;

use ssb_lab::electrostatics::{
    analytic_flux, apply_scaling, flux_integral, unit_sphere_area, PotentialSolution, ScalingTransform,
};

fn main() -> ssb_lab::Result<()> {
    let t = ScalingTransform::new(E)?;
    for n in 2..=6 {
        let sol = PotentialSolution::new(n, 1.0, None)?;
        let (_, shift) = apply_scaling(&sol, t);
        println!(
            "n = {n}: O = {:.12}, Φ(1) = {:+.12}, λ^(n-2)Φ(λ) = {:+.12}, shift {shift:+.3}, flux {:.15}",
            unit_sphere_area(n)?,
            sol.potential(1.0)?,
            E.powi(n as i32 - 2) * sol.potential(E)?,
            analytic_flux(&sol, 2.5)?,
        );
    }
    let plane = PotentialSolution::new(2, 2.0 * std::f64::consts::PI, Some(1.0))?;
    let (moved, shift) = apply_scaling(&plane, t);
    println!("2D, q = 2π, λ = e: shift {shift}, new μ = {:?}", moved.mu());
    println!("3D quadrature flux, q = 1: {:.15}", flux_integral(&PotentialSolution::new(3, 1.0, None)?, 1.0, 64)?);
    Ok(())
}

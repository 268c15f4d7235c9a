//! Roots and minima of the Z2-symmetric polynomials x² - 1 and x⁴ - x².

use ssb_lab::scalar::{critical_points, z2_verdict, Z2Problem};
use ssb_lab::tolerances::ROOT;

fn main() -> ssb_lab::Result<()> {
    for problem in Z2Problem::ALL {
        let out = z2_verdict(problem)?;
        println!(
            "{:<24} solutions {:?} -> {:?}",
            problem.name(),
            out.solutions,
            out.verdict.kind
        );
    }
    let p = Z2Problem::P1TildeRoots.polynomial();
    for c in critical_points(&p, ROOT)? {
        println!("critical point x = {:+.12} ({:?}), p = {:+.6}", c.location, c.kind, c.value);
    }
    Ok(())
}

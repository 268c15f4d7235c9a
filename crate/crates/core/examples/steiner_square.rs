//! Shortest networks joining the corners of a square.
//!
//! Run with `cargo run --example steiner_square -- [side]`.

use std::f64::consts::PI;

use ssb_lab::steiner::{self, OptimizerOptions};
use ssb_lab::symmetry::{dihedral_group, OrthoTransform};
use ssb_lab::tolerances::NETWORK_MATCH;

fn main() -> ssb_lab::Result<()> {
    let side: f64 = std::env::args().nth(1).map_or(1.0, |s| s.parse().expect("side"));
    let square = steiner::unit_square(side);
    let d4 = dihedral_group(4)?;

    let solutions = steiner::solve_steiner(&square, &OptimizerOptions::default())?;
    for (i, net) in solutions.iter().enumerate() {
        let stab = steiner::residual_symmetry(net, &d4, NETWORK_MATCH)?;
        println!("solution {}: length {:.12}", i + 1, net.total_length);
        for p in &net.steiner_points {
            println!("  junction ({:.9}, {:.9})", p[0], p[1]);
        }
        println!("  stabilizer {:?}", stab.labels());
    }

    let guess = steiner::x_guess(&square);
    println!("X guess: length {:.12}", guess.total_length);
    println!("(1+√3)·side = {:.12}", (1.0 + 3f64.sqrt()) * side);

    let r90 = OrthoTransform::rotation_2d(PI / 2.0);
    let a = solutions[0].to_centered_config()?.transformed(&r90);
    let b = solutions[1].to_centered_config()?;
    println!("r90 maps solution 1 onto solution 2: {}", a.approx_eq(&b, NETWORK_MATCH));
    Ok(())
}

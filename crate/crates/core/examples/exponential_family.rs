//! Translations acting on the solutions c·e^x of f' = f.

use ssb_lab::ode::{is_fixed_by, ode_residual, translate_solution, PROBE_SHIFTS};
use ssb_lab::tolerances::FIXED_POINT;

fn main() -> ssb_lab::Result<()> {
    let (c, a, b) = (1.5, 0.7, -2.1);
    let two_step = translate_solution(translate_solution(c, a)?, b)?;
    let one_step = translate_solution(c, a + b)?;
    println!("T_b T_a c = {two_step:.15}");
    println!("T_(a+b) c = {one_step:.15}");
    println!("residual of translated solution at x = 1: {}", ode_residual(two_step, 1.0)?);

    for c in [-1.0, 0.0, 1e-6, 2.0] {
        println!("c = {c:>8}: fixed by translations = {}", is_fixed_by(c, &PROBE_SHIFTS, FIXED_POINT)?);
    }
    Ok(())
}

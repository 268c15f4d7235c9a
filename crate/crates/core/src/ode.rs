//! The translation-symmetric equation `f' = f`.
//!
//! Solutions are `f_c(x) = c e^x`, represented by the coefficient `c`. A
//! translation `x -> x + a` maps `f_c` to `f_{c e^a}`, so the solution set is
//! closed under the symmetry while each nonzero solution moves. `c = 0` is the
//! only fixed point.

use serde::Serialize;

use crate::{Error, Result};

/// Largest `|x|` at which `e^x` is evaluated.
pub const MAX_ABS_X: f64 = 700.0;

/// `f_c(x) = c e^x`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ExpSolution {
    pub c: f64,
}

impl ExpSolution {
    pub fn new(c: f64) -> Self {
        Self { c }
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        check_range(x)?;
        Ok(self.c * x.exp())
    }

    /// Derivative `c e^x`.
    pub fn derivative(&self, x: f64) -> Result<f64> {
        check_range(x)?;
        Ok(self.c * x.exp())
    }

    pub fn translated(&self, t: Translation) -> Result<Self> {
        translate_solution(self.c, t.a).map(Self::new)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Translation {
    pub a: f64,
}

fn check_range(x: f64) -> Result<()> {
    if !x.is_finite() || x.abs() > MAX_ABS_X {
        return Err(Error::Overflow(format!("|x| = {} exceeds {MAX_ABS_X}", x.abs())));
    }
    Ok(())
}

/// `f_c'(x) - f_c(x)` from the closed form.
pub fn ode_residual(c: f64, x: f64) -> Result<f64> {
    let f = ExpSolution::new(c);
    Ok(f.derivative(x)? - f.eval(x)?)
}

/// Samples `values[i] = g(start + i * step)` of an arbitrary function.
#[derive(Clone, Debug)]
pub struct Sampled {
    pub start: f64,
    pub step: f64,
    pub values: Vec<f64>,
}

impl Sampled {
    pub fn from_fn(start: f64, step: f64, n: usize, g: impl Fn(f64) -> f64) -> Self {
        Self {
            start,
            step,
            values: (0..n).map(|i| g(start + i as f64 * step)).collect(),
        }
    }

    /// Central-difference `g'(x) - g(x)` at an interior node; error `O(step^2)`.
    pub fn ode_residual_at(&self, x: f64) -> Result<f64> {
        let pos = (x - self.start) / self.step;
        let i = pos.round();
        if (pos - i).abs() > 1e-6 {
            return Err(Error::InvalidArgument(format!("x = {x} is not a grid node")));
        }
        if i < 1.0 || i as usize + 1 >= self.values.len() {
            return Err(Error::InvalidArgument(format!(
                "x = {x} needs a neighbour on both sides"
            )));
        }
        let i = i as usize;
        let deriv = (self.values[i + 1] - self.values[i - 1]) / (2.0 * self.step);
        Ok(deriv - self.values[i])
    }
}

/// Coefficient of the translated solution: `f_c(x + a) = f_{c e^a}(x)`.
pub fn translate_solution(c: f64, a: f64) -> Result<f64> {
    let out = c * a.exp();
    if !out.is_finite() {
        return Err(Error::Overflow(format!("c e^a with c = {c}, a = {a}")));
    }
    Ok(out)
}

/// The fully translation-symmetric (vacuum) solution.
pub fn is_vacuum(c: f64) -> bool {
    c == 0.0
}

/// True when every shift in `shifts` leaves `c` unchanged within `tol`.
pub fn is_fixed_by(c: f64, shifts: &[f64], tol: f64) -> Result<bool> {
    for &a in shifts {
        if (translate_solution(c, a)? - c).abs() > tol {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Shifts used to probe the fixed points of the translation action.
pub const PROBE_SHIFTS: [f64; 4] = [1.0, -1.0, 0.1, -0.1];

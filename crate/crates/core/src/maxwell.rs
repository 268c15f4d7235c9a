//! Vacuum Maxwell equations in the form `∇·F = 0`, `∂F/∂t = -i ∇×F` with
//! `F = E + iB`, discretized with collocated central differences on the
//! periodic box `[0, 2π)^3`.
//!
//! The equations are invariant under `F -> zF` for any nonzero complex `z`,
//! which on real fields is `E' = λE - λ'B`, `B' = λB + λ'E` with `z = λ + iλ'`.
//! All stencils are linear, so residuals of `zF` are exactly `|z|` times those
//! of `F` up to rounding.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::{Error, Result};

pub type CVec3 = [Complex64; 3];

pub const BOX_LENGTH: f64 = 2.0 * PI;

/// Smallest grid that supports the central stencils with periodic wrap.
pub const MIN_GRID: usize = 4;

const I: Complex64 = Complex64::new(0.0, 1.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Complex 3-vector field on an `n^3` periodic grid with spacing `2π/n`.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexFieldGrid {
    n: usize,
    h: f64,
    time: f64,
    values: Vec<CVec3>,
}

impl ComplexFieldGrid {
    pub fn zeros(n: usize, time: f64) -> Result<Self> {
        Self::from_fn(n, time, |_| [ZERO; 3])
    }

    /// Samples `f` at the node positions.
    pub fn from_fn(n: usize, time: f64, f: impl Fn([f64; 3]) -> CVec3) -> Result<Self> {
        if n < MIN_GRID {
            return Err(Error::InvalidArgument(format!(
                "grid of {n} nodes per axis; need at least {MIN_GRID}"
            )));
        }
        let h = BOX_LENGTH / n as f64;
        let mut values = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    values.push(f([i as f64 * h, j as f64 * h, k as f64 * h]));
                }
            }
        }
        Ok(Self { n, h, time, values })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    pub fn values(&self) -> &[CVec3] {
        &self.values
    }

    pub fn at(&self, i: usize, j: usize, k: usize) -> CVec3 {
        self.values[self.index(i, j, k)]
    }

    fn index(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.n + j) * self.n + k
    }

    /// Index of the periodic neighbour one step along `axis`, forward or back.
    fn neighbour(&self, i: usize, j: usize, k: usize, axis: usize, forward: bool) -> usize {
        let n = self.n;
        let step = |c: usize| if forward { (c + 1) % n } else { (c + n - 1) % n };
        match axis {
            0 => self.index(step(i), j, k),
            1 => self.index(i, step(j), k),
            _ => self.index(i, j, step(k)),
        }
    }

    fn same_grid(&self, other: &Self) -> Result<()> {
        if self.n != other.n || self.h != other.h {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        Ok(())
    }

    /// Real and imaginary parts: `(E, B)` with `F = E + iB`.
    pub fn split_eb(&self) -> (Vec<[f64; 3]>, Vec<[f64; 3]>) {
        self.values
            .iter()
            .map(|v| (v.map(|c| c.re), v.map(|c| c.im)))
            .unzip()
    }

    pub fn max_abs(&self) -> f64 {
        self.values
            .iter()
            .flat_map(|v| v.iter().map(|c| c.norm()))
            .fold(0.0, f64::max)
    }

    /// Plain-text matrix of `Re F_component` on the plane `z = 0`, one row per `x` node.
    pub fn slice_text(&self, component: usize) -> String {
        let mut s = String::new();
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n)
                .map(|j| format!("{:.16e}", self.at(i, j, 0)[component].re))
                .collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }
}

/// A circularly polarized plane wave `amplitude * ε * exp(i(k·x - |k| t))`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PlaneWaveSpec {
    pub k: [f64; 3],
    pub amplitude: Complex64,
    pub polarization: CVec3,
}

impl PlaneWaveSpec {
    pub fn omega(&self) -> f64 {
        norm3(self.k)
    }

    pub fn with_amplitude(mut self, amplitude: Complex64) -> Self {
        self.amplitude = amplitude;
        self
    }

    /// `|k·ε|`.
    pub fn transversality(&self) -> f64 {
        (0..3)
            .map(|a| self.polarization[a] * self.k[a])
            .sum::<Complex64>()
            .norm()
    }

    /// `max |k×ε + i|k|ε|`; zero for a solution of `∂F/∂t = -i ∇×F`.
    pub fn helicity_defect(&self) -> f64 {
        let kc = self.k.map(|c| Complex64::new(c, 0.0));
        let cross = cross3(kc, self.polarization);
        (0..3)
            .map(|a| (cross[a] + I * self.omega() * self.polarization[a]).norm())
            .fold(0.0, f64::max)
    }

    pub fn sample(&self, n: usize, t: f64) -> Result<ComplexFieldGrid> {
        let omega = self.omega();
        ComplexFieldGrid::from_fn(n, t, |x| {
            let phase = self.k[0] * x[0] + self.k[1] * x[1] + self.k[2] * x[2] - omega * t;
            let f = self.amplitude * Complex64::from_polar(1.0, phase);
            self.polarization.map(|e| f * e)
        })
    }
}

/// Helicity eigenstate for wave vector `k` with unit amplitude.
///
/// With `(e1, e2, k/|k|)` a right-handed orthonormal frame, `ε = (e1 + i e2)/√2`
/// satisfies `k·ε = 0` and `k×ε = -i|k|ε`, so that `ε exp(i(k·x - |k|t))`
/// solves `∂F/∂t = -i ∇×F` exactly. Components of `k` must be integers so the
/// wave is periodic on the box.
pub fn make_helicity_wave(k: [f64; 3]) -> Result<PlaneWaveSpec> {
    let kn = norm3(k);
    if kn == 0.0 {
        return Err(Error::InvalidArgument("wave vector must be nonzero".into()));
    }
    if k.iter().any(|c| (c - c.round()).abs() > 1e-12) {
        return Err(Error::InvalidArgument(format!(
            "wave vector {k:?} is not commensurate with the periodic box"
        )));
    }
    let e3 = k.map(|c| c / kn);
    // Least-aligned coordinate axis seeds the frame.
    let axis = (0..3)
        .min_by(|&a, &b| e3[a].abs().total_cmp(&e3[b].abs()))
        .expect("three axes");
    let mut seed = [0.0; 3];
    seed[axis] = 1.0;
    let d = dot3(seed, e3);
    let e1 = normalize([seed[0] - d * e3[0], seed[1] - d * e3[1], seed[2] - d * e3[2]]);
    let e2 = cross3r(e3, e1);
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let polarization = [0, 1, 2].map(|a| Complex64::new(s * e1[a], s * e2[a]));
    Ok(PlaneWaveSpec {
        k,
        amplitude: Complex64::new(1.0, 0.0),
        polarization,
    })
}

/// Central-difference divergence.
pub fn discrete_div(f: &ComplexFieldGrid) -> Vec<Complex64> {
    let n = f.n;
    let inv = 1.0 / (2.0 * f.h);
    let mut out = Vec::with_capacity(f.values.len());
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut d = ZERO;
                for axis in 0..3 {
                    let p = f.values[f.neighbour(i, j, k, axis, true)][axis];
                    let m = f.values[f.neighbour(i, j, k, axis, false)][axis];
                    d += (p - m) * inv;
                }
                out.push(d);
            }
        }
    }
    out
}

/// Central-difference curl.
pub fn discrete_curl(f: &ComplexFieldGrid) -> Vec<CVec3> {
    let n = f.n;
    let inv = 1.0 / (2.0 * f.h);
    let mut out = Vec::with_capacity(f.values.len());
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                // d[axis][comp] = ∂_axis F_comp
                let mut d = [[ZERO; 3]; 3];
                for (axis, row) in d.iter_mut().enumerate() {
                    let p = f.values[f.neighbour(i, j, k, axis, true)];
                    let m = f.values[f.neighbour(i, j, k, axis, false)];
                    for c in 0..3 {
                        row[c] = (p[c] - m[c]) * inv;
                    }
                }
                out.push([d[1][2] - d[2][1], d[2][0] - d[0][2], d[0][1] - d[1][0]]);
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MaxwellResidual {
    /// `max |∇·F(t)|`
    pub div_norm: f64,
    /// `max |(F(t+dt) - F(t-dt))/(2dt) + i ∇×F(t)|`
    pub evolution_norm: f64,
}

pub fn maxwell_residual(
    f_t: &ComplexFieldGrid,
    f_tplus: &ComplexFieldGrid,
    f_tminus: &ComplexFieldGrid,
    dt: f64,
) -> Result<MaxwellResidual> {
    f_t.same_grid(f_tplus)?;
    f_t.same_grid(f_tminus)?;
    if dt.is_nan() || dt <= 0.0 {
        return Err(Error::InvalidArgument(format!("time step {dt} must be positive")));
    }
    let div_norm = discrete_div(f_t).iter().map(|c| c.norm()).fold(0.0, f64::max);
    let curl = discrete_curl(f_t);
    let inv = 1.0 / (2.0 * dt);
    let mut evolution_norm: f64 = 0.0;
    for ((p, m), c) in f_tplus.values.iter().zip(&f_tminus.values).zip(&curl) {
        for a in 0..3 {
            let r = (p[a] - m[a]) * inv + I * c[a];
            evolution_norm = evolution_norm.max(r.norm());
        }
    }
    Ok(MaxwellResidual {
        div_norm,
        evolution_norm,
    })
}

/// `F -> zF` for `z ≠ 0`.
pub fn scale_field(f: &ComplexFieldGrid, z: Complex64) -> Result<ComplexFieldGrid> {
    if z == ZERO || !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::InvalidArgument(
            "z = 0 is not an element of the multiplicative group".into(),
        ));
    }
    Ok(ComplexFieldGrid {
        values: f.values.iter().map(|v| v.map(|c| z * c)).collect(),
        ..f.clone()
    })
}

/// Snapshots `(F(-dt), F(0), F(dt))` of a plane wave on an `n^3` grid.
#[derive(Clone, Debug)]
pub struct Snapshots {
    pub minus: ComplexFieldGrid,
    pub now: ComplexFieldGrid,
    pub plus: ComplexFieldGrid,
    pub dt: f64,
}

impl Snapshots {
    /// `dt = h * dt_over_h`.
    pub fn of_wave(wave: &PlaneWaveSpec, n: usize, dt_over_h: f64) -> Result<Self> {
        let dt = BOX_LENGTH / n as f64 * dt_over_h;
        Ok(Self {
            minus: wave.sample(n, -dt)?,
            now: wave.sample(n, 0.0)?,
            plus: wave.sample(n, dt)?,
            dt,
        })
    }

    /// Same field at all three times.
    pub fn frozen(f: ComplexFieldGrid, dt: f64) -> Self {
        Self {
            minus: f.clone(),
            plus: f.clone(),
            now: f,
            dt,
        }
    }

    pub fn residual(&self) -> Result<MaxwellResidual> {
        maxwell_residual(&self.now, &self.plus, &self.minus, self.dt)
    }

    pub fn scaled(&self, z: Complex64) -> Result<Self> {
        Ok(Self {
            minus: scale_field(&self.minus, z)?,
            now: scale_field(&self.now, z)?,
            plus: scale_field(&self.plus, z)?,
            dt: self.dt,
        })
    }
}

/// Default time step relative to the grid spacing.
pub const DT_OVER_H: f64 = 0.1;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub n: usize,
    pub h: f64,
    pub div_norm: f64,
    pub evolution_norm: f64,
}

/// Residual norms of the wave on each grid in `grids`, `dt = h/10`.
pub fn convergence_study(wave: &PlaneWaveSpec, grids: &[usize]) -> Result<Vec<ConvergenceRow>> {
    grids
        .iter()
        .map(|&n| {
            let snaps = Snapshots::of_wave(wave, n, DT_OVER_H)?;
            let r = snaps.residual()?;
            Ok(ConvergenceRow {
                n,
                h: snaps.now.h,
                div_norm: r.div_norm,
                evolution_norm: r.evolution_norm,
            })
        })
        .collect()
}

pub fn convergence_csv(rows: &[ConvergenceRow]) -> String {
    let mut s = String::from("n,h,div_norm,evolution_norm\n");
    for r in rows {
        s.push_str(&format!(
            "{},{:.16e},{:.16e},{:.16e}\n",
            r.n, r.h, r.div_norm, r.evolution_norm
        ));
    }
    s
}

/// Time-independent superposition of transverse modes: divergence-free but
/// with nonzero curl, hence not a vacuum solution.
pub fn random_static_field(n: usize, modes: usize, seed: u64) -> Result<ComplexFieldGrid> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut terms = Vec::with_capacity(modes);
    for _ in 0..modes {
        let k = loop {
            let k = [0, 1, 2].map(|_| rng.gen_range(-3i32..=3) as f64);
            if norm3(k) > 0.0 {
                break k;
            }
        };
        let wave = make_helicity_wave(k)?;
        let amp = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        terms.push((k, wave.polarization.map(|e| amp * e)));
    }
    ComplexFieldGrid::from_fn(n, 0.0, |x| {
        let mut v = [ZERO; 3];
        for (k, pol) in &terms {
            let f = Complex64::from_polar(1.0, dot3(*k, x));
            for a in 0..3 {
                v[a] += pol[a] * f;
            }
        }
        v
    })
}

fn dot3(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn norm3(a: [f64; 3]) -> f64 {
    dot3(a, a).sqrt()
}

fn normalize(a: [f64; 3]) -> [f64; 3] {
    let n = norm3(a);
    a.map(|c| c / n)
}

fn cross3r(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn cross3(a: CVec3, b: CVec3) -> CVec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

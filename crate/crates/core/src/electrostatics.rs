//! Point charges in `n`-dimensional Euclidean space (`ε₀ = 1`).
//!
//! For `n > 2` the potential `q / ((n-2) O_{n-1} r^{n-2})` is invariant under
//! `Φ(x) -> λ^{n-2} Φ(λx)`. For `n = 2` the potential `-(q/2π) ln(r/μ)` needs
//! a length `μ`; rescaling moves `μ -> μ/λ` and shifts the potential by the
//! constant `-(q/2π) ln λ`, while the field keeps its regular scaling.

use std::f64::consts::PI;

use serde::Serialize;

use crate::special::gamma;
use crate::{Error, Result};

/// `Δ Φ = -q δ⁽ⁿ⁾` in `n >= 2` dimensions.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PointChargeProblem {
    pub n: usize,
    pub q: f64,
}

impl PointChargeProblem {
    pub fn new(n: usize, q: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!("dimension {n}; need n >= 2")));
        }
        if !q.is_finite() {
            return Err(Error::InvalidArgument("charge must be finite".into()));
        }
        Ok(Self { n, q })
    }

    /// The spherically symmetric solution; `mu` is used only for `n = 2`.
    pub fn solution(&self, mu: Option<f64>) -> Result<PotentialSolution> {
        PotentialSolution::new(self.n, self.q, if self.n == 2 { mu } else { None })
    }
}

/// Spherically symmetric potential of a point charge at the origin.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PotentialSolution {
    n: usize,
    q: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    mu: Option<f64>,
}

/// Scale used when `n = 2` and none is given.
pub const DEFAULT_MU: f64 = 1.0;

impl PotentialSolution {
    /// `mu` must be absent for `n > 2`; for `n = 2` it defaults to [`DEFAULT_MU`].
    pub fn new(n: usize, q: f64, mu: Option<f64>) -> Result<Self> {
        PointChargeProblem::new(n, q)?;
        let mu = match (n, mu) {
            (2, None) => Some(DEFAULT_MU),
            (2, Some(m)) if m > 0.0 && m.is_finite() => Some(m),
            (2, Some(m)) => {
                return Err(Error::InvalidArgument(format!("scale mu = {m} must be positive")))
            }
            (_, Some(_)) => {
                return Err(Error::InvalidArgument(format!(
                    "a length scale only appears for n = 2, not n = {n}"
                )))
            }
            (_, None) => None,
        };
        Ok(Self { n, q, mu })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn mu(&self) -> Option<f64> {
        self.mu
    }

    pub fn potential(&self, r: f64) -> Result<f64> {
        check_radius(r)?;
        Ok(if self.n == 2 {
            let mu = self.mu.expect("n = 2 always carries mu");
            // `+ 0.0` turns the -0 at r = mu into +0.
            -self.q / (2.0 * PI) * (r / mu).ln() + 0.0
        } else {
            let n = self.n as i32;
            self.q / ((n - 2) as f64 * unit_sphere_area_unchecked(self.n) * r.powi(n - 2))
        })
    }

    /// `|E(r)| = q / (O_{n-1} r^{n-1})` (signed by `q`), valid for every `n >= 2`.
    pub fn field_magnitude(&self, r: f64) -> Result<f64> {
        check_radius(r)?;
        Ok(self.q / (unit_sphere_area_unchecked(self.n) * r.powi(self.n as i32 - 1)))
    }

    pub fn potential_at(&self, x: &[f64]) -> Result<f64> {
        self.potential(self.radius_of(x)?)
    }

    /// Field vector `q x / (O_{n-1} r^n)`.
    pub fn field_at(&self, x: &[f64]) -> Result<Vec<f64>> {
        let r = self.radius_of(x)?;
        let e = self.field_magnitude(r)?;
        Ok(x.iter().map(|xi| e * xi / r).collect())
    }

    fn radius_of(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: x.len(),
            });
        }
        Ok(x.iter().map(|v| v * v).sum::<f64>().sqrt())
    }
}

fn check_radius(r: f64) -> Result<()> {
    if !(r.is_finite() && r > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "radius {r}: potential is only defined for r > 0"
        )));
    }
    Ok(())
}

/// `x -> λx` with `λ > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ScalingTransform {
    lambda: f64,
}

impl ScalingTransform {
    pub fn new(lambda: f64) -> Result<Self> {
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "scale factor {lambda}; need lambda > 0"
            )));
        }
        Ok(Self { lambda })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }
}

/// Surface area `2 π^{n/2} / Γ(n/2)` of the unit sphere in `R^n`.
pub fn unit_sphere_area(n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("dimension {n}; need n >= 2")));
    }
    Ok(unit_sphere_area_unchecked(n))
}

fn unit_sphere_area_unchecked(n: usize) -> f64 {
    let half = n as f64 / 2.0;
    2.0 * PI.powf(half) / gamma(half)
}

/// Rescaled solution and the constant it differs by.
///
/// For `n > 2`, `λ^{n-2} Φ(λx) = Φ(x)`: the solution is returned unchanged
/// with a zero shift. For `n = 2`, `Φ_μ(λx) = Φ_{μ/λ}(x) = Φ_μ(x) - (q/2π) ln λ`.
pub fn apply_scaling(sol: &PotentialSolution, t: ScalingTransform) -> (PotentialSolution, f64) {
    if sol.n == 2 {
        let mu = sol.mu.expect("n = 2 always carries mu");
        let shift = -sol.q / (2.0 * PI) * t.lambda.ln();
        (
            PotentialSolution {
                mu: Some(mu / t.lambda),
                ..*sol
            },
            shift,
        )
    } else {
        (*sol, 0.0)
    }
}

/// `λ^{n-2} Φ(λr)` for `n > 2` and `Φ(λr)` for `n = 2`.
pub fn rescaled_potential(sol: &PotentialSolution, t: ScalingTransform, r: f64) -> Result<f64> {
    let phi = sol.potential(t.lambda * r)?;
    Ok(if sol.n == 2 {
        phi
    } else {
        t.lambda.powi(sol.n as i32 - 2) * phi
    })
}

/// Central-difference Laplacian of `Φ` at an off-origin point (`2n + 1` nodes).
/// Away from the charge it should vanish; the error is `O(h²)`.
pub fn laplacian_residual(sol: &PotentialSolution, point: &[f64], h: f64) -> Result<f64> {
    let r = sol.radius_of(point)?;
    if h.is_nan() || h <= 0.0 {
        return Err(Error::InvalidArgument(format!("step {h} must be positive")));
    }
    if r <= 10.0 * h {
        return Err(Error::StencilTooClose { r, h });
    }
    let centre = sol.potential(r)?;
    let mut x = point.to_vec();
    let mut sum = 0.0;
    for j in 0..sol.n {
        let x0 = x[j];
        x[j] = x0 + h;
        let plus = sol.potential_at(&x)?;
        x[j] = x0 - h;
        let minus = sol.potential_at(&x)?;
        x[j] = x0;
        sum += plus - 2.0 * centre + minus;
    }
    Ok(sum / (h * h))
}

/// Max-norm difference between `-∇Φ` (central differences) and `E` at `point`.
pub fn gradient_mismatch(sol: &PotentialSolution, point: &[f64], h: f64) -> Result<f64> {
    let e = sol.field_at(point)?;
    let mut x = point.to_vec();
    let mut worst: f64 = 0.0;
    for j in 0..sol.n {
        let x0 = x[j];
        x[j] = x0 + h;
        let plus = sol.potential_at(&x)?;
        x[j] = x0 - h;
        let minus = sol.potential_at(&x)?;
        x[j] = x0;
        let grad = (plus - minus) / (2.0 * h);
        worst = worst.max((-grad - e[j]).abs());
    }
    Ok(worst)
}

/// Outward flux of `E` through the sphere of the given radius, by quadrature.
///
/// `n = 2`: trapezoid rule with `quad_points` nodes on the circle.
/// `n = 3`: `quad_points` Gauss-Legendre nodes in `cos θ` times
/// `2 * quad_points` uniform nodes in `φ`.
pub fn flux_integral(sol: &PotentialSolution, radius: f64, quad_points: usize) -> Result<f64> {
    check_radius(radius)?;
    if quad_points == 0 {
        return Err(Error::InvalidArgument("need at least one quadrature node".into()));
    }
    let mut sum = NeumaierSum::default();
    match sol.n {
        2 => {
            let w = 2.0 * PI / quad_points as f64 * radius;
            for k in 0..quad_points {
                let theta = 2.0 * PI * k as f64 / quad_points as f64;
                let normal = [theta.cos(), theta.sin()];
                let x = [radius * normal[0], radius * normal[1]];
                let e = sol.field_at(&x)?;
                sum.add(w * (e[0] * normal[0] + e[1] * normal[1]));
            }
        }
        3 => {
            let (nodes, weights) = gauss_legendre(quad_points);
            let n_phi = 2 * quad_points;
            let w_phi = 2.0 * PI / n_phi as f64;
            for (&u, &wu) in nodes.iter().zip(&weights) {
                let s = (1.0 - u * u).sqrt();
                for k in 0..n_phi {
                    let phi = 2.0 * PI * k as f64 / n_phi as f64;
                    let normal = [s * phi.cos(), s * phi.sin(), u];
                    let x = normal.map(|c| radius * c);
                    let e = sol.field_at(&x)?;
                    let en: f64 = e.iter().zip(&normal).map(|(a, b)| a * b).sum();
                    sum.add(wu * w_phi * radius * radius * en);
                }
            }
        }
        n => return Err(Error::UnsupportedQuadrature { n }),
    }
    Ok(sum.total())
}

/// `O_{n-1} r^{n-1} |E(r)|`, which equals `q` in every dimension.
pub fn analytic_flux(sol: &PotentialSolution, r: f64) -> Result<f64> {
    Ok(unit_sphere_area_unchecked(sol.n) * r.powi(sol.n as i32 - 1) * sol.field_magnitude(r)?)
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`, by Newton iteration on `P_m`.
pub fn gauss_legendre(m: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; m];
    let mut weights = vec![0.0; m];
    let mf = m as f64;
    for i in 0..m.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (mf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre(m, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(m, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[m - 1 - i] = x;
        weights[i] = w;
        weights[m - 1 - i] = w;
    }
    (nodes, weights)
}

/// `(P_m(x), P_m'(x))` by the three-term recurrence.
fn legendre(m: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if m == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=m {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = m as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

#[derive(Default)]
struct NeumaierSum {
    sum: f64,
    comp: f64,
}

impl NeumaierSum {
    fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    fn total(&self) -> f64 {
        self.sum + self.comp
    }
}

/// One row of a radial profile.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RadialSample {
    pub r: f64,
    pub phi: f64,
    pub e: f64,
}

/// `(r, Φ, |E|)` on a log-spaced grid over `[r_min, r_max]`; for `n = 2` the
/// grid always contains `r = μ`.
pub fn radial_profile(
    sol: &PotentialSolution,
    r_min: f64,
    r_max: f64,
    samples: usize,
) -> Result<Vec<RadialSample>> {
    check_radius(r_min)?;
    if r_max.is_nan() || r_min.is_nan() || r_max <= r_min || samples < 2 {
        return Err(Error::InvalidArgument("need r_max > r_min and >= 2 samples".into()));
    }
    let mut rs: Vec<f64> = (0..samples)
        .map(|i| r_min * (r_max / r_min).powf(i as f64 / (samples - 1) as f64))
        .collect();
    if let Some(mu) = sol.mu {
        if !rs.contains(&mu) {
            rs.push(mu);
            rs.sort_by(f64::total_cmp);
        }
    }
    rs.into_iter()
        .map(|r| {
            Ok(RadialSample {
                r,
                phi: sol.potential(r)?,
                e: sol.field_magnitude(r)?,
            })
        })
        .collect()
}

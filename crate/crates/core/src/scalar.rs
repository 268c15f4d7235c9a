//! Real roots and critical points of low-degree polynomials, and the Z2
//! verdicts for `x^2 - 1` and the double well `x^4 - x^2`.

use serde::Serialize;

use crate::symmetry::{classify_ssb, z2_group, PointConfig, SsbVerdict};
use crate::tolerances;
use crate::{Error, Result};

/// Real polynomial with coefficients in ascending degree.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

impl Polynomial {
    /// Trailing zero coefficients are dropped; the zero polynomial is rejected.
    pub fn new(mut coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidArgument("non-finite coefficient".into()));
        }
        while coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument("zero polynomial".into()));
        }
        Ok(Self { coeffs })
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    /// `None` for constants.
    pub fn derivative(&self) -> Option<Polynomial> {
        if self.degree() == 0 {
            return None;
        }
        let d = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| i as f64 * c)
            .collect();
        Polynomial::new(d).ok()
    }

    /// Largest coefficient magnitude; the reference for residual tolerances.
    pub fn scale(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// True when only even powers appear.
    pub fn is_even(&self) -> bool {
        self.coeffs.iter().skip(1).step_by(2).all(|&c| c == 0.0)
    }

    /// Cauchy bound: every real root lies in `[-b, b]`.
    pub fn root_bound(&self) -> f64 {
        let lead = self.coeffs[self.degree()].abs();
        1.0 + self.coeffs[..self.degree()]
            .iter()
            .fold(0.0, |m: f64, c| m.max(c.abs() / lead))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Root {
    pub x: f64,
    pub multiplicity: usize,
}

/// Subintervals of the sign-change scan.
const SCAN_INTERVALS: usize = 10_000;

/// Roots closer than this (relative to `max(1, |x|)`) are the same root.
const ROOT_MERGE: f64 = 1e-7;

/// A derivative counts as vanishing when below this fraction of its coefficient scale.
const VANISHING_DERIVATIVE: f64 = 1e-6;

/// All real roots in `[lo, hi]`, sorted, with multiplicities.
///
/// Odd-multiplicity roots come from sign changes on a uniform scan, refined by
/// bisection and polished by Newton. Even-multiplicity roots have no sign
/// change; they are found among the roots of `p'` where `|p| <= tol * scale`.
pub fn real_roots(p: &Polynomial, bracket: (f64, f64), tol: f64) -> Result<Vec<Root>> {
    let (lo, hi) = bracket;
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::InvalidArgument(format!("empty bracket [{lo}, {hi}]")));
    }
    if p.degree() == 0 {
        return Err(Error::InvalidArgument("constant polynomial has no roots to find".into()));
    }
    let limit = tol * p.scale();
    let mut candidates = Vec::new();

    let step = (hi - lo) / SCAN_INTERVALS as f64;
    let grid = |i: usize| if i == SCAN_INTERVALS { hi } else { lo + i as f64 * step };
    let mut prev_x = lo;
    let mut prev_v = p.eval(lo);
    if prev_v == 0.0 {
        candidates.push(lo);
    }
    for i in 1..=SCAN_INTERVALS {
        let x = grid(i);
        let v = p.eval(x);
        if v == 0.0 {
            candidates.push(x);
        } else if prev_v != 0.0 && (v < 0.0) != (prev_v < 0.0) {
            candidates.push(polish(p, bisect(p, prev_x, x, prev_v), prev_x, x));
        }
        prev_x = x;
        prev_v = v;
    }

    if p.degree() >= 2 {
        let d = p.derivative().expect("degree >= 2");
        for r in real_roots(&d, bracket, tol)? {
            if p.eval(r.x).abs() <= limit {
                candidates.push(r.x);
            }
        }
    }

    candidates.sort_by(f64::total_cmp);
    let mut roots: Vec<f64> = Vec::new();
    for x in candidates {
        if p.eval(x).abs() > limit {
            continue;
        }
        match roots.last_mut() {
            Some(last) if (x - *last).abs() <= ROOT_MERGE * last.abs().max(1.0) => {
                if p.eval(x).abs() < p.eval(*last).abs() {
                    *last = x;
                }
            }
            _ => roots.push(x),
        }
    }
    Ok(roots
        .into_iter()
        .map(|x| Root {
            x,
            multiplicity: multiplicity(p, x),
        })
        .collect())
}

fn bisect(p: &Polynomial, mut a: f64, mut b: f64, mut fa: f64) -> f64 {
    loop {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            return if fa.abs() <= p.eval(b).abs() { a } else { b };
        }
        let fm = p.eval(m);
        if fm == 0.0 {
            return m;
        }
        if (fm < 0.0) == (fa < 0.0) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
}

fn polish(p: &Polynomial, mut x: f64, lo: f64, hi: f64) -> f64 {
    let Some(d) = p.derivative() else { return x };
    for _ in 0..4 {
        let (fx, dx) = (p.eval(x), d.eval(x));
        if fx == 0.0 || dx == 0.0 {
            break;
        }
        let next = x - fx / dx;
        if !(lo..=hi).contains(&next) || p.eval(next).abs() >= fx.abs() {
            break;
        }
        x = next;
    }
    x
}

fn multiplicity(p: &Polynomial, x: f64) -> usize {
    let mut m = 1;
    let mut d = p.derivative();
    while let Some(q) = d {
        if q.eval(x).abs() > VANISHING_DERIVATIVE * q.scale() {
            break;
        }
        m += 1;
        d = q.derivative();
    }
    m
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CriticalKind {
    Min,
    Max,
    /// Stationary point that is neither a minimum nor a maximum.
    Inflection,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CriticalPoint {
    pub location: f64,
    pub kind: CriticalKind,
    pub value: f64,
}

/// Roots of `p'` classified by the first non-vanishing higher derivative.
pub fn critical_points(p: &Polynomial, tol: f64) -> Result<Vec<CriticalPoint>> {
    let Some(d) = p.derivative() else {
        return Ok(Vec::new());
    };
    if d.degree() == 0 {
        return Ok(Vec::new());
    }
    let b = d.root_bound();
    let roots = real_roots(&d, (-b, b), tol)?;
    Ok(roots
        .into_iter()
        .map(|r| CriticalPoint {
            location: r.x,
            kind: classify_stationary(&d, r.x),
            value: p.eval(r.x),
        })
        .collect())
}

/// Higher-order derivative test; `d` is the first derivative.
fn classify_stationary(d: &Polynomial, x: f64) -> CriticalKind {
    let mut order = 2;
    let mut q = d.derivative();
    while let Some(poly) = q {
        let v = poly.eval(x);
        if v.abs() > VANISHING_DERIVATIVE * poly.scale() {
            return match (order % 2 == 0, v > 0.0) {
                (true, true) => CriticalKind::Min,
                (true, false) => CriticalKind::Max,
                (false, _) => CriticalKind::Inflection,
            };
        }
        order += 1;
        q = poly.derivative();
    }
    CriticalKind::Inflection
}

/// The three Z2-symmetric problems on the real line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Z2Problem {
    /// Roots of `x^2 - 1`.
    P1,
    /// Roots of `x^4 - x^2`.
    P1TildeRoots,
    /// Stable critical points (minima only) of `x^4 - x^2`.
    P1TildeMinima,
}

impl Z2Problem {
    pub const ALL: [Z2Problem; 3] = [Z2Problem::P1, Z2Problem::P1TildeRoots, Z2Problem::P1TildeMinima];

    pub fn polynomial(self) -> Polynomial {
        match self {
            Z2Problem::P1 => Polynomial::new(vec![-1.0, 0.0, 1.0]),
            Z2Problem::P1TildeRoots | Z2Problem::P1TildeMinima => {
                Polynomial::new(vec![0.0, 0.0, -1.0, 0.0, 1.0])
            }
        }
        .expect("nonzero")
    }

    pub fn name(self) -> &'static str {
        match self {
            Z2Problem::P1 => "x^2-1 roots",
            Z2Problem::P1TildeRoots => "x^4-x^2 roots",
            Z2Problem::P1TildeMinima => "x^4-x^2 stable minima",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Z2Outcome {
    pub problem: Z2Problem,
    pub solutions: Vec<f64>,
    pub verdict: SsbVerdict,
}

/// Solves one of the Z2 problems and classifies the solution set.
///
/// For the minima problem the stability filter admits only `CriticalKind::Min`,
/// which drops the symmetric local maximum at 0.
pub fn z2_verdict(problem: Z2Problem) -> Result<Z2Outcome> {
    let p = problem.polynomial();
    let solutions: Vec<f64> = match problem {
        Z2Problem::P1 | Z2Problem::P1TildeRoots => real_roots(&p, (-10.0, 10.0), tolerances::ROOT)?
            .into_iter()
            .map(|r| r.x)
            .collect(),
        Z2Problem::P1TildeMinima => critical_points(&p, tolerances::ROOT)?
            .into_iter()
            .filter(|c| c.kind == CriticalKind::Min)
            .map(|c| c.location)
            .collect(),
    };
    let configs = solutions
        .iter()
        .map(|&x| PointConfig::from_points(1, vec![vec![x]]))
        .collect::<Result<Vec<_>>>()?;
    let verdict = classify_ssb(&z2_group(), &configs, tolerances::POINT_MATCH)?;
    Ok(Z2Outcome {
        problem,
        solutions,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symmetry::SsbKind;

    fn poly(c: &[f64]) -> Polynomial {
        Polynomial::new(c.to_vec()).unwrap()
    }

    #[test]
    fn normalization() {
        let p = poly(&[1.0, 2.0, 0.0, 0.0]);
        assert_eq!(p.degree(), 1);
        assert!(Polynomial::new(vec![0.0, 0.0]).is_err());
        assert!(Polynomial::new(vec![f64::NAN]).is_err());
        assert_eq!(poly(&[0.0, 0.0, -1.0, 0.0, 1.0]).derivative().unwrap().coeffs(), &[0.0, -2.0, 0.0, 4.0]);
    }

    #[test]
    fn roots_of_p1() {
        let r = real_roots(&poly(&[-1.0, 0.0, 1.0]), (-10.0, 10.0), 1e-10).unwrap();
        let xs: Vec<f64> = r.iter().map(|r| r.x).collect();
        assert_eq!(xs, vec![-1.0, 1.0]);
        assert!(r.iter().all(|r| r.multiplicity == 1));
    }

    #[test]
    fn roots_of_double_well() {
        let r = real_roots(&poly(&[0.0, 0.0, -1.0, 0.0, 1.0]), (-10.0, 10.0), 1e-10).unwrap();
        assert_eq!(r.len(), 3);
        assert_eq!(r[0], Root { x: -1.0, multiplicity: 1 });
        assert_eq!(r[1], Root { x: 0.0, multiplicity: 2 });
        assert_eq!(r[2], Root { x: 1.0, multiplicity: 1 });
    }

    #[test]
    fn even_root_off_grid() {
        // (x - 0.123)^2 has no sign change and its root is not a scan node.
        let a = 0.123;
        let r = real_roots(&poly(&[a * a, -2.0 * a, 1.0]), (-10.0, 10.0), 1e-10).unwrap();
        assert_eq!(r.len(), 1);
        assert!((r[0].x - a).abs() < 1e-9);
        assert_eq!(r[0].multiplicity, 2);
    }

    #[test]
    fn no_real_roots() {
        assert!(real_roots(&poly(&[1.0, 0.0, 1.0]), (-10.0, 10.0), 1e-10)
            .unwrap()
            .is_empty());
        assert!(real_roots(&poly(&[1.0, 1.0]), (1.0, 1.0), 1e-10).is_err());
        assert!(real_roots(&poly(&[1.0]), (0.0, 1.0), 1e-10).is_err());
    }

    #[test]
    fn triple_root() {
        let r = real_roots(&poly(&[0.0, 0.0, 0.0, 1.0]), (-3.0, 2.0), 1e-10).unwrap();
        assert_eq!(r.len(), 1);
        assert!(r[0].x.abs() < 1e-8);
        assert_eq!(r[0].multiplicity, 3);
    }

    #[test]
    fn critical_points_of_double_well() {
        let cps = critical_points(&poly(&[0.0, 0.0, -1.0, 0.0, 1.0]), 1e-10).unwrap();
        assert_eq!(cps.len(), 3);
        let s = 0.5f64.sqrt();
        assert_eq!(cps[0].kind, CriticalKind::Min);
        assert!((cps[0].location + s).abs() < 1e-12);
        assert!((cps[0].value + 0.25).abs() < 1e-15);
        assert_eq!(cps[1].kind, CriticalKind::Max);
        assert_eq!(cps[1].location, 0.0);
        assert_eq!(cps[1].value, 0.0);
        assert_eq!(cps[2].kind, CriticalKind::Min);
        assert!((cps[2].location - s).abs() < 1e-12);
    }

    #[test]
    fn simple_critical_points() {
        let cps = critical_points(&poly(&[0.0, 0.0, 1.0]), 1e-10).unwrap();
        assert_eq!(cps.len(), 1);
        assert_eq!(cps[0].kind, CriticalKind::Min);
        let cps = critical_points(&poly(&[0.0, 0.0, 0.0, 1.0]), 1e-10).unwrap();
        assert_eq!(cps.len(), 1);
        assert_eq!(cps[0].kind, CriticalKind::Inflection);
        let cps = critical_points(&poly(&[0.0, 0.0, 0.0, 0.0, -1.0]), 1e-10).unwrap();
        assert_eq!(cps[0].kind, CriticalKind::Max);
        assert!(critical_points(&poly(&[3.0, 1.0]), 1e-10).unwrap().is_empty());
    }

    #[test]
    fn verdicts() {
        let v = z2_verdict(Z2Problem::P1).unwrap();
        assert_eq!(v.verdict.kind, SsbKind::NarrowSsb);
        assert_eq!(v.solutions, vec![-1.0, 1.0]);

        let v = z2_verdict(Z2Problem::P1TildeRoots).unwrap();
        assert_eq!(v.verdict.kind, SsbKind::GeneralSsb);
        assert_eq!(v.solutions[v.verdict.invariant_solution.unwrap()], 0.0);

        let v = z2_verdict(Z2Problem::P1TildeMinima).unwrap();
        assert_eq!(v.verdict.kind, SsbKind::NarrowSsb);
        assert_eq!(v.solutions.len(), 2);
        for (x, want) in v.solutions.iter().zip([-0.5f64.sqrt(), 0.5f64.sqrt()]) {
            assert!((x - want).abs() < 1e-10);
        }
    }
}

//! Finite symmetry groups acting on point configurations.
//!
//! Group elements are explicit orthogonal matrices. Two elements are the same
//! when their matrices agree to [`tolerances::GROUP_ELEMENT_EQ`] in max-norm.
//! Configurations are small point sets with an optional undirected edge list;
//! a transform is a symmetry of a configuration when it permutes the points
//! and carries the edge set onto itself.

use std::collections::HashSet;
use std::f64::consts::PI;
use std::fmt;

use nalgebra::DMatrix;
use serde::Serialize;

use crate::tolerances;
use crate::{Error, Result};

/// One symmetry element: an orthogonal (possibly improper) linear map.
#[derive(Clone, Debug, PartialEq)]
pub struct OrthoTransform {
    matrix: DMatrix<f64>,
    label: Option<String>,
}

impl OrthoTransform {
    /// Validates that `matrix` is square and orthogonal with determinant ±1.
    pub fn new(matrix: DMatrix<f64>, label: Option<&str>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch {
                expected: matrix.nrows(),
                got: matrix.ncols(),
            });
        }
        let n = matrix.nrows();
        if n == 0 {
            return Err(Error::InvalidArgument("empty matrix".into()));
        }
        let deviation = (matrix.transpose() * &matrix - DMatrix::identity(n, n)).amax();
        if deviation > tolerances::ORTHOGONALITY {
            return Err(Error::NotOrthogonal { deviation });
        }
        let det = matrix.determinant();
        if (det.abs() - 1.0).abs() > tolerances::ORTHOGONALITY {
            return Err(Error::NotOrthogonal {
                deviation: (det.abs() - 1.0).abs(),
            });
        }
        Ok(Self::from_matrix(matrix, label.map(str::to_owned)))
    }

    fn from_matrix(matrix: DMatrix<f64>, label: Option<String>) -> Self {
        Self { matrix, label }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_matrix(DMatrix::identity(dim, dim), Some("id".into()))
    }

    /// Counter-clockwise rotation of the plane.
    pub fn rotation_2d(angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        let label = format!("r{}", format_degrees(angle));
        Self::from_matrix(DMatrix::from_row_slice(2, 2, &[c, -s, s, c]), Some(label))
    }

    /// Reflection across the line through the origin at `axis_angle` from the x-axis.
    pub fn reflection_2d(axis_angle: f64) -> Self {
        let (s, c) = (2.0 * axis_angle).sin_cos();
        let deg = format_degrees(axis_angle);
        let label = match deg.as_str() {
            "0" => "reflect_x".to_owned(),
            "90" => "reflect_y".to_owned(),
            _ => format!("reflect_{deg}"),
        };
        Self::from_matrix(DMatrix::from_row_slice(2, 2, &[c, s, s, -c]), Some(label))
    }

    /// Reflection across the x-axis, `(x, y) -> (x, -y)`.
    pub fn reflect_x() -> Self {
        Self::reflection_2d(0.0)
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn determinant(&self) -> f64 {
        self.matrix.determinant()
    }

    pub fn is_proper(&self) -> bool {
        self.determinant() > 0.0
    }

    /// Inverse, i.e. the transpose.
    pub fn inverse(&self) -> Self {
        let label = self.label.as_ref().map(|l| format!("{l}⁻¹"));
        Self::from_matrix(self.matrix.transpose(), label)
    }

    /// Image of a point. Panics if `p` has the wrong dimension.
    pub fn apply(&self, p: &[f64]) -> Vec<f64> {
        assert_eq!(p.len(), self.dim(), "point dimension mismatch");
        let n = self.dim();
        (0..n)
            .map(|i| (0..n).map(|j| self.matrix[(i, j)] * p[j]).sum())
            .collect()
    }

    /// Max-norm distance between matrices; infinite for mismatched dimensions.
    pub fn distance(&self, other: &Self) -> f64 {
        if self.dim() != other.dim() {
            return f64::INFINITY;
        }
        (&self.matrix - &other.matrix).amax()
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.distance(other) <= tol
    }
}

impl fmt::Display for OrthoTransform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.label {
            Some(l) => f.write_str(l),
            None => write!(f, "{}x{} orthogonal", self.dim(), self.dim()),
        }
    }
}

fn format_degrees(angle: f64) -> String {
    let mut deg = angle.to_degrees().rem_euclid(360.0);
    if (deg - 360.0).abs() < 1e-9 {
        deg = 0.0;
    }
    let s = format!("{deg:.3}");
    s.trim_end_matches('0').trim_end_matches('.').to_owned()
}

/// `(a ∘ b)(x) = a(b(x))`.
pub fn compose(a: &OrthoTransform, b: &OrthoTransform) -> Result<OrthoTransform> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            got: b.dim(),
        });
    }
    let label = match (&a.label, &b.label) {
        (Some(la), Some(lb)) => Some(format!("{la}∘{lb}")),
        _ => None,
    };
    Ok(OrthoTransform::from_matrix(&a.matrix * &b.matrix, label))
}

/// A group axiom that failed, with indices into the checked element list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomViolation {
    Empty,
    MixedDimension { index: usize },
    MissingIdentity,
    NotClosed { a: usize, b: usize },
    MissingInverse { a: usize },
    NotAssociative { a: usize, b: usize, c: usize },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub violations: Vec<AxiomViolation>,
}

impl AxiomReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return f.write_str("all axioms hold");
        }
        let parts: Vec<String> = self.violations.iter().map(|v| format!("{v:?}")).collect();
        f.write_str(&parts.join(", "))
    }
}

/// Largest order for which associativity is checked on every triple.
const ASSOCIATIVITY_CHECK_MAX_ORDER: usize = 16;

/// Checks identity, closure, inverses and (for order <= 16) associativity.
pub fn verify_group_axioms(elements: &[OrthoTransform], tol: f64) -> AxiomReport {
    let mut report = AxiomReport::default();
    let Some(first) = elements.first() else {
        report.violations.push(AxiomViolation::Empty);
        return report;
    };
    let dim = first.dim();
    for (index, e) in elements.iter().enumerate() {
        if e.dim() != dim {
            report.violations.push(AxiomViolation::MixedDimension { index });
        }
    }
    if !report.is_ok() {
        return report;
    }

    let find = |t: &OrthoTransform| elements.iter().position(|e| e.approx_eq(t, tol));
    let id = OrthoTransform::identity(dim);
    if find(&id).is_none() {
        report.violations.push(AxiomViolation::MissingIdentity);
    }
    for (a, ea) in elements.iter().enumerate() {
        for (b, eb) in elements.iter().enumerate() {
            let ab = OrthoTransform::from_matrix(&ea.matrix * &eb.matrix, None);
            if find(&ab).is_none() {
                report.violations.push(AxiomViolation::NotClosed { a, b });
            }
        }
        if find(&ea.inverse()).is_none() {
            report.violations.push(AxiomViolation::MissingInverse { a });
        }
    }
    if elements.len() <= ASSOCIATIVITY_CHECK_MAX_ORDER {
        for (a, ea) in elements.iter().enumerate() {
            for (b, eb) in elements.iter().enumerate() {
                let ab = &ea.matrix * &eb.matrix;
                for (c, ec) in elements.iter().enumerate() {
                    let left = &ab * &ec.matrix;
                    let right = &ea.matrix * (&eb.matrix * &ec.matrix);
                    if (left - right).amax() > tol {
                        report
                            .violations
                            .push(AxiomViolation::NotAssociative { a, b, c });
                    }
                }
            }
        }
    }
    report
}

/// A finite set of orthogonal transforms that satisfies the group axioms.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    elements: Vec<OrthoTransform>,
}

impl FiniteGroup {
    pub fn new(elements: Vec<OrthoTransform>, tol: f64) -> Result<Self> {
        let report = verify_group_axioms(&elements, tol);
        if !report.is_ok() {
            return Err(Error::NotAGroup(report.to_string()));
        }
        Ok(Self { elements })
    }

    pub fn elements(&self) -> &[OrthoTransform] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn dim(&self) -> usize {
        self.elements[0].dim()
    }

    pub fn contains(&self, t: &OrthoTransform, tol: f64) -> bool {
        self.elements.iter().any(|e| e.approx_eq(t, tol))
    }

    pub fn labels(&self) -> Vec<String> {
        self.elements.iter().map(ToString::to_string).collect()
    }
}

/// Dihedral group `D_k` of the plane: `k` rotations followed by `k` reflections.
pub fn dihedral_group(k: usize) -> Result<FiniteGroup> {
    if k == 0 {
        return Err(Error::InvalidArgument("dihedral group needs k >= 1".into()));
    }
    let step = 2.0 * PI / k as f64;
    let mut elements: Vec<OrthoTransform> = (0..k)
        .map(|j| rotation_or_identity(j, step))
        .collect();
    elements.extend((0..k).map(|j| OrthoTransform::reflection_2d(j as f64 * step / 2.0)));
    FiniteGroup::new(elements, tolerances::GROUP_ELEMENT_EQ)
}

/// Cyclic group `C_k` of plane rotations.
pub fn cyclic_group(k: usize) -> Result<FiniteGroup> {
    if k == 0 {
        return Err(Error::InvalidArgument("cyclic group needs k >= 1".into()));
    }
    let step = 2.0 * PI / k as f64;
    let elements = (0..k).map(|j| rotation_or_identity(j, step)).collect();
    FiniteGroup::new(elements, tolerances::GROUP_ELEMENT_EQ)
}

fn rotation_or_identity(j: usize, step: f64) -> OrthoTransform {
    if j == 0 {
        OrthoTransform::identity(2)
    } else {
        OrthoTransform::rotation_2d(j as f64 * step)
    }
}

/// `Z_2` acting on the real line as `{x -> x, x -> -x}`.
pub fn z2_group() -> FiniteGroup {
    let negate = OrthoTransform::from_matrix(DMatrix::from_element(1, 1, -1.0), Some("negate".into()));
    FiniteGroup {
        elements: vec![OrthoTransform::identity(1), negate],
    }
}

/// A finite point set with an optional list of undirected edges.
#[derive(Clone, Debug, PartialEq)]
pub struct PointConfig {
    dim: usize,
    points: Vec<Vec<f64>>,
    edges: Vec<(usize, usize)>,
}

impl PointConfig {
    pub fn new(dim: usize, points: Vec<Vec<f64>>, edges: Vec<(usize, usize)>) -> Result<Self> {
        for p in &points {
            if p.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: p.len(),
                });
            }
        }
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                if dist(&points[i], &points[j]) <= tolerances::POINT_MATCH {
                    return Err(Error::DuplicatePoint { first: i, second: j });
                }
            }
        }
        let edges = edges
            .into_iter()
            .map(|(a, b)| {
                if a >= points.len() || b >= points.len() || a == b {
                    Err(Error::EdgeOutOfRange(a, b))
                } else {
                    Ok((a.min(b), a.max(b)))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { dim, points, edges })
    }

    /// Points only, no edges.
    pub fn from_points(dim: usize, points: Vec<Vec<f64>>) -> Result<Self> {
        Self::new(dim, points, Vec::new())
    }

    pub fn empty(dim: usize) -> Self {
        Self {
            dim,
            points: Vec::new(),
            edges: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn total_edge_length(&self) -> f64 {
        self.edges
            .iter()
            .map(|&(a, b)| dist(&self.points[a], &self.points[b]))
            .sum()
    }

    /// Image under `t`, keeping the edge list (indices follow the points).
    pub fn transformed(&self, t: &OrthoTransform) -> Self {
        Self {
            dim: self.dim,
            points: self.points.iter().map(|p| t.apply(p)).collect(),
            edges: self.edges.clone(),
        }
    }

    /// Greedy nearest-neighbour matching of `self` onto `other`.
    ///
    /// Returns `perm` with `self.points[i] ≈ other.points[perm[i]]` when the
    /// point sets agree within `tol` and the edges correspond under `perm`.
    pub fn matching(&self, other: &Self, tol: f64) -> Option<Vec<usize>> {
        if self.dim != other.dim
            || self.points.len() != other.points.len()
            || self.edges.len() != other.edges.len()
        {
            return None;
        }
        let mut used = vec![false; other.points.len()];
        let mut perm = Vec::with_capacity(self.points.len());
        for p in &self.points {
            let (j, d) = other
                .points
                .iter()
                .enumerate()
                .filter(|(j, _)| !used[*j])
                .map(|(j, q)| (j, dist(p, q)))
                .min_by(|a, b| a.1.total_cmp(&b.1))?;
            if d > tol {
                return None;
            }
            used[j] = true;
            perm.push(j);
        }
        if !used.iter().all(|&u| u) {
            return None;
        }
        let target: HashSet<(usize, usize)> = other.edges.iter().copied().collect();
        let mapped: HashSet<(usize, usize)> = self
            .edges
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (perm[a], perm[b]);
                (x.min(y), x.max(y))
            })
            .collect();
        (mapped == target).then_some(perm)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.matching(other, tol).is_some()
    }
}

pub(crate) fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// True when `t` maps the points of `c` onto themselves and the edge set onto itself.
pub fn is_invariant(t: &OrthoTransform, c: &PointConfig, tol: f64) -> bool {
    if t.dim() != c.dim() {
        return false;
    }
    c.transformed(t).approx_eq(c, tol)
}

/// Elements of `g` leaving `c` invariant. The result is a subgroup of `g`.
pub fn stabilizer(g: &FiniteGroup, c: &PointConfig, tol: f64) -> FiniteGroup {
    FiniteGroup {
        elements: g
            .elements
            .iter()
            .filter(|t| is_invariant(t, c, tol))
            .cloned()
            .collect(),
    }
}

/// Distinct images of `c` under the elements of `g`, in group order.
pub fn orbit(g: &FiniteGroup, c: &PointConfig, tol: f64) -> Vec<PointConfig> {
    let mut out: Vec<PointConfig> = Vec::new();
    for t in &g.elements {
        let image = c.transformed(t);
        if !out.iter().any(|o| o.approx_eq(&image, tol)) {
            out.push(image);
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SsbKind {
    /// Every solution has the full symmetry of the problem.
    Unbroken,
    /// Some solution is less symmetric, but a fully symmetric one exists.
    GeneralSsb,
    /// No solution carries the full symmetry.
    NarrowSsb,
}

#[derive(Clone, Debug)]
pub struct SsbVerdict {
    pub kind: SsbKind,
    pub problem_order: usize,
    /// Stabilizer of each solution, in input order.
    pub stabilizers: Vec<FiniteGroup>,
    /// Index of the first fully symmetric solution, if any.
    pub invariant_solution: Option<usize>,
}

impl SsbVerdict {
    pub fn stabilizer_orders(&self) -> Vec<usize> {
        self.stabilizers.iter().map(FiniteGroup::order).collect()
    }
}

/// Compares each solution's stabilizer with the full problem group.
pub fn classify_ssb(
    problem_group: &FiniteGroup,
    solutions: &[PointConfig],
    tol: f64,
) -> Result<SsbVerdict> {
    if solutions.is_empty() {
        return Err(Error::InvalidArgument(
            "cannot classify a problem without solutions".into(),
        ));
    }
    let stabilizers: Vec<FiniteGroup> = solutions
        .iter()
        .map(|s| stabilizer(problem_group, s, tol))
        .collect();
    let full = |s: &FiniteGroup| s.order() == problem_group.order();
    let invariant_solution = stabilizers.iter().position(full);
    let kind = if stabilizers.iter().all(full) {
        SsbKind::Unbroken
    } else if invariant_solution.is_some() {
        SsbKind::GeneralSsb
    } else {
        SsbKind::NarrowSsb
    };
    Ok(SsbVerdict {
        kind,
        problem_order: problem_group.order(),
        stabilizers,
        invariant_solution,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = tolerances::GROUP_ELEMENT_EQ;

    fn r(deg: f64) -> OrthoTransform {
        OrthoTransform::rotation_2d(deg.to_radians())
    }

    fn centered_square() -> PointConfig {
        let pts = [[-0.5, -0.5], [0.5, -0.5], [0.5, 0.5], [-0.5, 0.5]];
        PointConfig::from_points(2, pts.iter().map(|p| p.to_vec()).collect()).unwrap()
    }

    /// First Steiner solution of the unit square, centred at the origin:
    /// bottom corners share one junction, top corners the other.
    fn first_solution() -> PointConfig {
        let y = 0.5 - 1.0 / (2.0 * 3f64.sqrt());
        let pts = vec![
            vec![-0.5, -0.5],
            vec![0.5, -0.5],
            vec![0.5, 0.5],
            vec![-0.5, 0.5],
            vec![0.0, -y],
            vec![0.0, y],
        ];
        PointConfig::new(2, pts, vec![(0, 4), (1, 4), (4, 5), (2, 5), (3, 5)]).unwrap()
    }

    #[test]
    fn compose_examples() {
        let r180 = compose(&r(90.0), &r(90.0)).unwrap();
        assert!(r180.approx_eq(&r(180.0), 1e-15));

        let s = OrthoTransform::reflect_x();
        let id = compose(&s, &s).unwrap();
        assert!(id.approx_eq(&OrthoTransform::identity(2), 0.0));

        // [[0,-1],[1,0]] * [[1,0],[0,-1]] = [[0,1],[1,0]]: swap of coordinates.
        let diag = compose(&r(90.0), &s).unwrap();
        let swap = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]);
        assert!((diag.matrix() - swap).amax() < 1e-15);
        assert!(!diag.is_proper());
        let on_line = diag.apply(&[0.3, 0.3]);
        assert!(dist(&on_line, &[0.3, 0.3]) < 1e-15);
    }

    #[test]
    fn compose_rejects_dimension_mismatch() {
        let err = compose(&OrthoTransform::identity(2), &OrthoTransform::identity(3));
        assert!(matches!(err, Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn new_rejects_non_orthogonal() {
        let m = DMatrix::from_row_slice(2, 2, &[1.0, 0.1, 0.0, 1.0]);
        assert!(matches!(OrthoTransform::new(m, None), Err(Error::NotOrthogonal { .. })));
        let m = DMatrix::from_row_slice(2, 3, &[1.0, 0.0, 0.0, 0.0, 1.0, 0.0]);
        assert!(OrthoTransform::new(m, None).is_err());
    }

    #[test]
    fn group_orders() {
        assert_eq!(dihedral_group(4).unwrap().order(), 8);
        assert_eq!(dihedral_group(2).unwrap().order(), 4);
        assert_eq!(dihedral_group(1).unwrap().order(), 2);
        assert_eq!(cyclic_group(4).unwrap().order(), 4);
        assert_eq!(cyclic_group(1).unwrap().order(), 1);
        assert!(dihedral_group(0).is_err());
        assert!(cyclic_group(0).is_err());
    }

    #[test]
    fn sixfold_rotation_has_order_six() {
        let g = cyclic_group(6).unwrap();
        assert_eq!(g.order(), 6);
        let r60 = &g.elements()[1];
        let mut acc = OrthoTransform::identity(2);
        for _ in 0..6 {
            acc = compose(r60, &acc).unwrap();
        }
        assert!(acc.approx_eq(&OrthoTransform::identity(2), 1e-14));
    }

    #[test]
    fn labels_follow_geometry() {
        let g = dihedral_group(4).unwrap();
        let labels = g.labels();
        assert_eq!(labels[..4], ["id", "r90", "r180", "r270"]);
        assert_eq!(labels[4], "reflect_x");
        assert_eq!(labels[6], "reflect_y");
    }

    #[test]
    fn axioms_detect_broken_sets() {
        let d4 = dihedral_group(4).unwrap();
        assert!(verify_group_axioms(d4.elements(), TOL).is_ok());

        let mut missing = d4.elements().to_vec();
        missing.remove(1);
        let report = verify_group_axioms(&missing, TOL);
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, AxiomViolation::NotClosed { .. })));

        let mut perturbed = d4.elements().to_vec();
        let mut m = perturbed[3].matrix().clone();
        m[(0, 0)] += 1e-3;
        perturbed[3] = OrthoTransform::from_matrix(m, None);
        assert!(!verify_group_axioms(&perturbed, TOL).is_ok());

        assert_eq!(verify_group_axioms(&[], TOL).violations, vec![AxiomViolation::Empty]);
        let no_id = vec![r(90.0)];
        assert!(verify_group_axioms(&no_id, TOL)
            .violations
            .contains(&AxiomViolation::MissingIdentity));
    }

    #[test]
    fn square_is_fully_symmetric() {
        let d4 = dihedral_group(4).unwrap();
        let sq = centered_square();
        assert!(is_invariant(&r(90.0), &sq, TOL));
        assert_eq!(stabilizer(&d4, &sq, TOL).order(), 8);
        assert_eq!(orbit(&d4, &sq, TOL).len(), 1);
        assert_eq!(stabilizer(&d4, &PointConfig::empty(2), TOL).order(), 8);
    }

    #[test]
    fn steiner_solution_has_d2_stabilizer() {
        let d4 = dihedral_group(4).unwrap();
        let s1 = first_solution();
        assert!(!is_invariant(&r(90.0), &s1, TOL));
        assert!(is_invariant(&r(180.0), &s1, TOL));
        let stab = stabilizer(&d4, &s1, TOL);
        assert_eq!(stab.order(), 4);
        assert!(verify_group_axioms(stab.elements(), TOL).is_ok());
        // D2: identity, r180 and the two axis reflections; all involutions.
        for e in stab.elements() {
            let sq = compose(e, e).unwrap();
            assert!(sq.approx_eq(&OrthoTransform::identity(2), 1e-14));
        }
        let orb = orbit(&d4, &s1, TOL);
        assert_eq!(orb.len(), 2);
        let rotated = s1.transformed(&r(90.0));
        assert!(orb.iter().any(|o| o.approx_eq(&rotated, TOL)));
    }

    #[test]
    fn edges_matter_for_invariance() {
        // Same points as the first solution but with the rotated wiring removed:
        // a path through the square is only symmetric under r180 and id.
        let pts = centered_square().points().to_vec();
        let path = PointConfig::new(2, pts, vec![(0, 1), (1, 2), (2, 3)]).unwrap();
        let d4 = dihedral_group(4).unwrap();
        assert_eq!(stabilizer(&d4, &path, TOL).order(), 2);
    }

    #[test]
    fn off_axis_point_has_full_orbit() {
        let d4 = dihedral_group(4).unwrap();
        let c = PointConfig::from_points(2, vec![vec![0.3, 0.1]]).unwrap();
        // Oracle: apply all eight matrices by hand and count distinct images.
        let images = [
            [0.3, 0.1],
            [-0.1, 0.3],
            [-0.3, -0.1],
            [0.1, -0.3],
            [0.3, -0.1],
            [0.1, 0.3],
            [-0.3, 0.1],
            [-0.1, -0.3],
        ];
        let orb = orbit(&d4, &c, TOL);
        assert_eq!(orb.len(), 8);
        for img in images {
            assert!(orb.iter().any(|o| dist(&o.points()[0], &img) < 1e-12));
        }
    }

    #[test]
    fn point_config_validation() {
        let dup = PointConfig::from_points(2, vec![vec![0.0, 0.0], vec![0.0, 1e-12]]);
        assert!(matches!(dup, Err(Error::DuplicatePoint { .. })));
        let bad_edge = PointConfig::new(2, vec![vec![0.0, 0.0]], vec![(0, 1)]);
        assert!(matches!(bad_edge, Err(Error::EdgeOutOfRange(0, 1))));
        let bad_dim = PointConfig::from_points(2, vec![vec![0.0]]);
        assert!(bad_dim.is_err());
    }

    #[test]
    fn classify_examples() {
        let d4 = dihedral_group(4).unwrap();
        let s1 = first_solution();
        let s2 = s1.transformed(&r(90.0));
        let v = classify_ssb(&d4, &[s1, s2], TOL).unwrap();
        assert_eq!(v.kind, SsbKind::NarrowSsb);
        assert_eq!(v.stabilizer_orders(), vec![4, 4]);
        assert_eq!(v.invariant_solution, None);

        let v = classify_ssb(&d4, &[centered_square()], TOL).unwrap();
        assert_eq!(v.kind, SsbKind::Unbroken);

        let z2 = z2_group();
        let sols: Vec<PointConfig> = [-1.0, 0.0, 1.0]
            .iter()
            .map(|&x| PointConfig::from_points(1, vec![vec![x]]).unwrap())
            .collect();
        let v = classify_ssb(&z2, &sols, TOL).unwrap();
        assert_eq!(v.kind, SsbKind::GeneralSsb);
        let idx = v.invariant_solution.unwrap();
        assert_eq!(sols[idx].points()[0][0], 0.0);

        assert!(classify_ssb(&z2, &[], TOL).is_err());
    }
}

//! Shortest networks joining three or four terminals in the plane.
//!
//! Every tree topology is optimized separately. For a fixed topology the total
//! length is convex in the free junction coordinates, so a fixed-point
//! iteration of Weiszfeld type converges to the per-topology minimum. When
//! the minimum sits on a degenerate configuration (a junction on top of a
//! terminal, or two junctions on top of each other) the points are merged and
//! the iteration continues on the reduced topology.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::symmetry::{self, FiniteGroup, PointConfig};
use crate::tolerances;
use crate::{Error, Result};

pub type Point = [f64; 2];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TopologyKind {
    /// Every terminal is a leaf and every junction has degree three.
    FullSteiner,
    /// No junctions; a spanning tree on the terminals.
    SpanningTree,
}

/// Tree structure over `terminals ++ steiner points`. Vertex `i < n_terminals`
/// is a terminal, the rest are junctions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SteinerTopology {
    pub n_terminals: usize,
    pub n_steiner: usize,
    pub edges: Vec<(usize, usize)>,
    pub kind: TopologyKind,
}

impl SteinerTopology {
    pub fn n_vertices(&self) -> usize {
        self.n_terminals + self.n_steiner
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    /// Checks that the edges form a tree, junctions have degree 3 and every
    /// terminal is attached.
    pub fn validate(&self) -> Result<()> {
        let n = self.n_vertices();
        if self.edges.len() + 1 != n {
            return Err(Error::InvalidArgument(format!(
                "{} edges on {} vertices is not a tree",
                self.edges.len(),
                n
            )));
        }
        for &(a, b) in &self.edges {
            if a >= n || b >= n || a == b {
                return Err(Error::EdgeOutOfRange(a, b));
            }
        }
        if !is_connected(n, &self.edges) {
            return Err(Error::InvalidArgument("topology is not connected".into()));
        }
        for v in 0..self.n_terminals {
            if self.degree(v) == 0 {
                return Err(Error::InvalidArgument(format!("terminal {v} is isolated")));
            }
        }
        for v in self.n_terminals..n {
            if self.degree(v) != 3 {
                return Err(Error::InvalidArgument(format!(
                    "junction {v} has degree {}",
                    self.degree(v)
                )));
            }
        }
        Ok(())
    }
}

fn is_connected(n: usize, edges: &[(usize, usize)]) -> bool {
    if n == 0 {
        return true;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &(a, b) in edges {
            let w = if a == v {
                b
            } else if b == v {
                a
            } else {
                continue;
            };
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// All candidate topologies for 3 or 4 terminals: the full Steiner topologies
/// first, then every spanning tree on the terminals.
///
/// Degenerate topologies (a junction sitting on a terminal, or two junctions
/// fused into a degree-4 point) are reached from the full ones by merging
/// during optimization.
pub fn enumerate_topologies(n_terminals: usize) -> Result<Vec<SteinerTopology>> {
    let mut out = Vec::new();
    match n_terminals {
        3 => out.push(SteinerTopology {
            n_terminals,
            n_steiner: 1,
            edges: vec![(0, 3), (1, 3), (2, 3)],
            kind: TopologyKind::FullSteiner,
        }),
        4 => {
            // Pairings of four terminals into two pairs: {01|23}, {12|30}, {02|13}.
            for [a, b, c, d] in [[0, 1, 2, 3], [1, 2, 3, 0], [0, 2, 1, 3]] {
                out.push(SteinerTopology {
                    n_terminals,
                    n_steiner: 2,
                    edges: vec![(a, 4), (b, 4), (4, 5), (c, 5), (d, 5)],
                    kind: TopologyKind::FullSteiner,
                });
            }
        }
        _ => {
            return Err(Error::InvalidArgument(format!(
                "{n_terminals} terminals; only 3 or 4 are supported"
            )))
        }
    }
    out.extend(spanning_trees(n_terminals));
    Ok(out)
}

fn spanning_trees(n: usize) -> Vec<SteinerTopology> {
    let all: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    let mut out = Vec::new();
    for mask in 0u32..(1 << all.len()) {
        if mask.count_ones() as usize != n - 1 {
            continue;
        }
        let edges: Vec<(usize, usize)> = all
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &e)| e)
            .collect();
        if is_connected(n, &edges) {
            out.push(SteinerTopology {
                n_terminals: n,
                n_steiner: 0,
                edges,
                kind: TopologyKind::SpanningTree,
            });
        }
    }
    out
}

/// A network over fixed terminals and free junctions.
#[derive(Clone, Debug, PartialEq)]
pub struct SteinerNetwork {
    pub terminals: Vec<Point>,
    pub steiner_points: Vec<Point>,
    /// Edges over `terminals ++ steiner_points`.
    pub edges: Vec<(usize, usize)>,
    pub total_length: f64,
    /// Index into [`enumerate_topologies`] this network was optimized from.
    pub topology_index: Option<usize>,
    /// Number of merge events during optimization.
    pub merges: usize,
}

impl SteinerNetwork {
    pub fn new(terminals: Vec<Point>, steiner_points: Vec<Point>, edges: Vec<(usize, usize)>) -> Self {
        let mut net = Self {
            terminals,
            steiner_points,
            edges,
            total_length: 0.0,
            topology_index: None,
            merges: 0,
        };
        net.total_length = net.edge_lengths().iter().sum();
        net
    }

    pub fn vertex(&self, i: usize) -> Point {
        if i < self.terminals.len() {
            self.terminals[i]
        } else {
            self.steiner_points[i - self.terminals.len()]
        }
    }

    pub fn vertices(&self) -> impl Iterator<Item = Point> + '_ {
        self.terminals.iter().chain(&self.steiner_points).copied()
    }

    pub fn edge_lengths(&self) -> Vec<f64> {
        self.edges
            .iter()
            .map(|&(a, b)| norm(sub(self.vertex(a), self.vertex(b))))
            .collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn kind(&self) -> Option<TopologyKind> {
        let nt = self.terminals.len();
        if self.steiner_points.is_empty() {
            Some(TopologyKind::SpanningTree)
        } else if (nt..nt + self.steiner_points.len()).all(|v| self.degree(v) == 3)
            && (0..nt).all(|v| self.degree(v) == 1)
        {
            Some(TopologyKind::FullSteiner)
        } else {
            None
        }
    }

    /// Centroid of the terminals; fixed by every symmetry of the terminal set.
    pub fn terminal_centroid(&self) -> Point {
        centroid(&self.terminals)
    }

    /// Geometric configuration in the input frame.
    pub fn to_config(&self) -> Result<PointConfig> {
        self.config_shifted([0.0, 0.0])
    }

    /// Configuration translated so the terminal centroid is the origin, which
    /// is where the linear symmetry groups act.
    pub fn to_centered_config(&self) -> Result<PointConfig> {
        self.config_shifted(self.terminal_centroid())
    }

    fn config_shifted(&self, origin: Point) -> Result<PointConfig> {
        let pts = self
            .vertices()
            .map(|p| vec![p[0] - origin[0], p[1] - origin[1]])
            .collect();
        PointConfig::new(2, pts, self.edges.clone())
    }

    /// `x1 y1 x2 y2` per edge, 17 significant digits, for gnuplot `with vectors`
    /// or `plot ... using 1:2:($3-$1):($4-$2)`.
    pub fn segments(&self) -> String {
        let mut s = String::new();
        for &(a, b) in &self.edges {
            let (p, q) = (self.vertex(a), self.vertex(b));
            s.push_str(&format!(
                "{} {} {} {}\n",
                fmt17(p[0]),
                fmt17(p[1]),
                fmt17(q[0]),
                fmt17(q[1])
            ));
        }
        s
    }

    pub fn to_json(&self) -> NetworkJson {
        let fermat_residual = match check_fermat_condition(self, tolerances::FERMAT) {
            Ok(FermatCheck::Full { max_residual, .. }) => Some(max_residual),
            _ => None,
        };
        NetworkJson {
            terminals: self.terminals.clone(),
            steiner_points: self.steiner_points.clone(),
            edges: self.edges.clone(),
            total_length: self.total_length,
            fermat_residual,
        }
    }
}

/// Serialized form of a [`SteinerNetwork`].
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct NetworkJson {
    pub terminals: Vec<Point>,
    pub steiner_points: Vec<Point>,
    pub edges: Vec<(usize, usize)>,
    pub total_length: f64,
    /// `None` when some junction does not have degree 3.
    pub fermat_residual: Option<f64>,
}

pub(crate) fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

/// Parses terminals given as a JSON array of `[x, y]` pairs.
pub fn parse_terminals(json: &str) -> Result<Vec<Point>> {
    Ok(serde_json::from_str(json)?)
}

/// Corners of the square `[0, side]^2`, counter-clockwise from the origin.
pub fn unit_square(side: f64) -> Vec<Point> {
    vec![[0.0, 0.0], [side, 0.0], [side, side], [0.0, side]]
}

/// The symmetric guess: one junction at the terminal centroid joined to every
/// terminal. For a square this is the X along both diagonals.
pub fn x_guess(terminals: &[Point]) -> SteinerNetwork {
    let c = centroid(terminals);
    let n = terminals.len();
    SteinerNetwork::new(terminals.to_vec(), vec![c], (0..n).map(|i| (i, n)).collect())
}

#[derive(Clone, Debug)]
pub struct OptimizerOptions {
    pub max_iters: usize,
    pub step_tol: f64,
    pub merge_tol: f64,
    pub degeneracy_tol: f64,
    /// Random starting points per topology, in addition to the deterministic one.
    pub restarts: usize,
    pub seed: u64,
}

impl Default for OptimizerOptions {
    fn default() -> Self {
        Self {
            max_iters: 200_000,
            step_tol: tolerances::OPTIMIZER_STEP,
            merge_tol: tolerances::MERGE,
            degeneracy_tol: tolerances::DEGENERACY,
            restarts: 16,
            seed: 0,
        }
    }
}

/// Minimizes total length over junction positions for one topology.
///
/// Starts once from neighbour centroids and `opts.restarts` times from
/// seeded random points in the terminal bounding box; returns the shortest
/// result.
pub fn optimize_topology(
    t: &SteinerTopology,
    terminals: &[Point],
    opts: &OptimizerOptions,
) -> Result<SteinerNetwork> {
    if terminals.len() != t.n_terminals {
        return Err(Error::DimensionMismatch {
            expected: t.n_terminals,
            got: terminals.len(),
        });
    }
    t.validate()?;
    if t.n_steiner == 0 {
        return Ok(SteinerNetwork::new(terminals.to_vec(), Vec::new(), t.edges.clone()));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let (lo, hi) = bounding_box(terminals);
    let mut best: Option<SteinerNetwork> = None;
    for restart in 0..=opts.restarts {
        let start: Vec<Point> = if restart == 0 {
            neighbour_centroids(t, terminals)
        } else {
            (0..t.n_steiner)
                .map(|_| [rng.gen_range(lo[0]..=hi[0]), rng.gen_range(lo[1]..=hi[1])])
                .collect()
        };
        let net = optimize_from(t, terminals, start, opts)?;
        if best.as_ref().is_none_or(|b| net.total_length < b.total_length) {
            best = Some(net);
        }
    }
    Ok(best.expect("at least one start"))
}

/// Runs the fixed-point iteration from the given junction positions.
pub fn optimize_from(
    t: &SteinerTopology,
    terminals: &[Point],
    start: Vec<Point>,
    opts: &OptimizerOptions,
) -> Result<SteinerNetwork> {
    let mut work = Work {
        terminals: terminals.to_vec(),
        free: start,
        edges: t.edges.clone(),
        merges: 0,
    };
    let mut movement = f64::INFINITY;
    for _ in 0..opts.max_iters {
        work.merge_close(opts.merge_tol);
        if work.free.is_empty() {
            movement = 0.0;
            break;
        }
        movement = work.sweep();
        if movement < opts.step_tol {
            break;
        }
    }
    work.merge_close(opts.merge_tol);
    let mut net = SteinerNetwork::new(work.terminals, work.free, work.edges);
    net.merges = work.merges;
    if movement >= opts.step_tol {
        return Err(Error::NotConverged {
            iterations: opts.max_iters,
            movement,
            best: Box::new(net),
        });
    }
    Ok(net)
}

struct Work {
    terminals: Vec<Point>,
    free: Vec<Point>,
    edges: Vec<(usize, usize)>,
    merges: usize,
}

impl Work {
    fn pos(&self, v: usize) -> Point {
        let nt = self.terminals.len();
        if v < nt {
            self.terminals[v]
        } else {
            self.free[v - nt]
        }
    }

    fn neighbours(&self, v: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect()
    }

    fn length(&self) -> f64 {
        self.edges
            .iter()
            .map(|&(a, b)| norm(sub(self.pos(a), self.pos(b))))
            .sum()
    }

    /// Collapses junctions onto terminals or onto each other until no pair is
    /// closer than `tol`.
    fn merge_close(&mut self, tol: f64) {
        'outer: loop {
            let nt = self.terminals.len();
            for i in 0..self.free.len() {
                let s = self.free[i];
                if let Some(j) = (0..nt).find(|&j| norm(sub(s, self.terminals[j])) <= tol) {
                    self.replace_vertex(nt + i, j);
                    continue 'outer;
                }
                for k in i + 1..self.free.len() {
                    if norm(sub(s, self.free[k])) <= tol {
                        self.free[i] = mid(s, self.free[k]);
                        self.replace_vertex(nt + k, nt + i);
                        continue 'outer;
                    }
                }
            }
            break;
        }
    }

    /// Removes free vertex `from` and rewires its edges to `to`.
    fn replace_vertex(&mut self, from: usize, to: usize) {
        let nt = self.terminals.len();
        self.free.remove(from - nt);
        let remap = |v: usize| {
            let v = if v == from { to } else { v };
            if v > from {
                v - 1
            } else {
                v
            }
        };
        let mut edges: Vec<(usize, usize)> = Vec::with_capacity(self.edges.len());
        for &(a, b) in &self.edges {
            let (a, b) = (remap(a), remap(b));
            if a == b {
                continue;
            }
            let e = (a.min(b), a.max(b));
            if !edges.contains(&e) {
                edges.push(e);
            }
        }
        self.edges = edges;
        self.merges += 1;
    }

    /// One Gauss-Seidel pass of the weighted-centroid update. Falls back to a
    /// backtracking gradient step if the pass fails to shorten the network.
    fn sweep(&mut self) -> f64 {
        let nt = self.terminals.len();
        let before = self.length();
        let saved = self.free.clone();
        for i in 0..self.free.len() {
            let s = self.free[i];
            let mut num = [0.0, 0.0];
            let mut den = 0.0;
            for v in self.neighbours(nt + i) {
                let p = self.pos(v);
                let d = norm(sub(s, p));
                if d == 0.0 {
                    // coincident with a neighbour; resolved by the next merge pass
                    num = p;
                    den = 1.0;
                    break;
                }
                num[0] += p[0] / d;
                num[1] += p[1] / d;
                den += 1.0 / d;
            }
            if den > 0.0 {
                self.free[i] = [num[0] / den, num[1] / den];
            }
        }
        let after = self.length();
        if after > before + 4.0 * f64::EPSILON * before {
            self.free = saved.clone();
            self.gradient_step(before);
        }
        saved
            .iter()
            .zip(&self.free)
            .map(|(a, b)| norm(sub(*a, *b)))
            .fold(0.0, f64::max)
    }

    fn gradient_step(&mut self, before: f64) {
        let nt = self.terminals.len();
        let grad: Vec<Point> = (0..self.free.len())
            .map(|i| {
                let s = self.free[i];
                self.neighbours(nt + i).into_iter().fold([0.0, 0.0], |g, v| {
                    let d = sub(s, self.pos(v));
                    let n = norm(d);
                    if n == 0.0 {
                        g
                    } else {
                        [g[0] + d[0] / n, g[1] + d[1] / n]
                    }
                })
            })
            .collect();
        let saved = self.free.clone();
        let mut alpha = 0.1 * before.max(1e-300);
        for _ in 0..60 {
            for (s, (p, g)) in self.free.iter_mut().zip(saved.iter().zip(&grad)) {
                *s = [p[0] - alpha * g[0], p[1] - alpha * g[1]];
            }
            if self.length() < before {
                return;
            }
            alpha *= 0.5;
        }
        self.free = saved;
    }
}

fn neighbour_centroids(t: &SteinerTopology, terminals: &[Point]) -> Vec<Point> {
    let all = centroid(terminals);
    (0..t.n_steiner)
        .map(|i| {
            let v = t.n_terminals + i;
            let near: Vec<Point> = t
                .edges
                .iter()
                .filter_map(|&(a, b)| {
                    let w = if a == v {
                        b
                    } else if b == v {
                        a
                    } else {
                        return None;
                    };
                    (w < t.n_terminals).then(|| terminals[w])
                })
                .collect();
            if near.is_empty() {
                all
            } else {
                centroid(&near)
            }
        })
        .collect()
}

fn bounding_box(points: &[Point]) -> (Point, Point) {
    let mut lo = [f64::INFINITY; 2];
    let mut hi = [f64::NEG_INFINITY; 2];
    for p in points {
        for k in 0..2 {
            lo[k] = lo[k].min(p[k]);
            hi[k] = hi[k].max(p[k]);
        }
    }
    (lo, hi)
}

/// Every global minimizer over all topologies, deduplicated as geometric
/// configurations and ordered by topology index.
pub fn solve_steiner(terminals: &[Point], opts: &OptimizerOptions) -> Result<Vec<SteinerNetwork>> {
    let n = terminals.len();
    if !(3..=4).contains(&n) {
        return Err(Error::InvalidArgument(format!(
            "{n} terminals; only 3 or 4 are supported"
        )));
    }
    PointConfig::from_points(2, terminals.iter().map(|p| p.to_vec()).collect())?;

    let mut candidates = Vec::new();
    for (idx, t) in enumerate_topologies(n)?.iter().enumerate() {
        let mut net = optimize_topology(t, terminals, opts)?;
        net.topology_index = Some(idx);
        candidates.push(net);
    }
    let best = candidates
        .iter()
        .map(|c| c.total_length)
        .fold(f64::INFINITY, f64::min);

    let mut out: Vec<SteinerNetwork> = Vec::new();
    let mut configs: Vec<PointConfig> = Vec::new();
    for net in candidates {
        if net.total_length - best > opts.degeneracy_tol {
            continue;
        }
        let cfg = net.to_config()?;
        if configs
            .iter()
            .any(|c| c.approx_eq(&cfg, tolerances::NETWORK_MATCH))
        {
            continue;
        }
        configs.push(cfg);
        out.push(net);
    }
    Ok(out)
}

/// First-order optimality at the junctions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum FermatCheck {
    /// Every junction has degree 3; `max_residual` is the largest norm of the
    /// sum of its three unit edge vectors.
    Full { satisfied: bool, max_residual: f64 },
    /// Junction `steiner_index` has a degree other than 3; the 120° condition
    /// does not apply.
    NonFull { steiner_index: usize, degree: usize },
}

pub fn check_fermat_condition(net: &SteinerNetwork, tol: f64) -> Result<FermatCheck> {
    for &(a, b) in &net.edges {
        if norm(sub(net.vertex(a), net.vertex(b))) == 0.0 {
            return Err(Error::ZeroLengthEdge(a, b));
        }
    }
    let nt = net.terminals.len();
    let mut max_residual: f64 = 0.0;
    for i in 0..net.steiner_points.len() {
        let v = nt + i;
        let degree = net.degree(v);
        if degree != 3 {
            return Ok(FermatCheck::NonFull {
                steiner_index: i,
                degree,
            });
        }
        let s = net.vertex(v);
        let mut sum = [0.0, 0.0];
        for &(a, b) in &net.edges {
            let w = if a == v {
                b
            } else if b == v {
                a
            } else {
                continue;
            };
            let d = sub(net.vertex(w), s);
            let n = norm(d);
            sum[0] += d[0] / n;
            sum[1] += d[1] / n;
        }
        max_residual = max_residual.max(norm(sum));
    }
    Ok(FermatCheck::Full {
        satisfied: max_residual <= tol,
        max_residual,
    })
}

/// Stabilizer of the network in `problem_group`, acting about the terminal centroid.
pub fn residual_symmetry(
    net: &SteinerNetwork,
    problem_group: &FiniteGroup,
    tol: f64,
) -> Result<FiniteGroup> {
    Ok(symmetry::stabilizer(problem_group, &net.to_centered_config()?, tol))
}

pub(crate) fn sub(a: Point, b: Point) -> Point {
    [a[0] - b[0], a[1] - b[1]]
}

pub(crate) fn norm(a: Point) -> f64 {
    a[0].hypot(a[1])
}

fn mid(a: Point, b: Point) -> Point {
    [(a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0]
}

fn centroid(points: &[Point]) -> Point {
    let n = points.len() as f64;
    let (x, y) = points
        .iter()
        .fold((0.0, 0.0), |(x, y), p| (x + p[0], y + p[1]));
    [x / n, y / n]
}

//! Check reports, run manifests and plot data for the `ssb-lab` binary.
//!
//! Each subcommand runs a fixed suite of checks against one module and
//! collects them into a [`RunManifest`]. Manifests contain no timestamps or
//! host data, so the same configuration and seed always serialize to the same
//! bytes.

use std::f64::consts::{E, PI};
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::electrostatics::{
    analytic_flux, apply_scaling, flux_integral, gradient_mismatch, laplacian_residual,
    radial_profile, rescaled_potential, unit_sphere_area, PotentialSolution, ScalingTransform,
};
use crate::maxwell::{self, make_helicity_wave, random_static_field, scale_field, Snapshots};
use crate::ode;
use crate::scalar::{self, critical_points, real_roots, CriticalKind, Z2Problem};
use crate::steiner::{self, OptimizerOptions, Point, SteinerNetwork};
use crate::symmetry::{self, classify_ssb, dihedral_group, FiniteGroup, OrthoTransform, SsbKind};
use crate::tolerances as tol;
use crate::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

/// One verified claim.
///
/// For scalar checks `pass` is exactly `|measured - expected| <= tolerance`;
/// relative checks store the absolute tolerance they imply.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    /// Short description of the property being checked.
    pub anchor: String,
    pub measured: Value,
    pub expected: Value,
    pub tolerance: f64,
    pub pass: bool,
}

impl CheckReport {
    pub fn scalar(name: &str, anchor: &str, measured: f64, expected: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            anchor: anchor.into(),
            measured: json!(measured),
            expected: json!(expected),
            tolerance,
            pass: (measured - expected).abs() <= tolerance,
        }
    }

    /// `|measured - expected| <= rel * |expected|`.
    pub fn relative(name: &str, anchor: &str, measured: f64, expected: f64, rel: f64) -> Self {
        Self::scalar(name, anchor, measured, expected, rel * expected.abs())
    }

    /// `0 <= measured <= bound`, for norms and residuals.
    pub fn at_most(name: &str, anchor: &str, measured: f64, bound: f64) -> Self {
        Self::scalar(name, anchor, measured, 0.0, bound)
    }

    /// Exact comparison of structured values.
    pub fn exact(name: &str, anchor: &str, measured: Value, expected: Value) -> Self {
        Self {
            name: name.into(),
            anchor: anchor.into(),
            pass: measured == expected,
            measured,
            expected,
            tolerance: 0.0,
        }
    }

    pub fn flag(name: &str, anchor: &str, holds: bool) -> Self {
        Self::exact(name, anchor, json!(holds), json!(true))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Subcommand {
    Steiner,
    Scalar,
    Ode,
    Maxwell,
    Potential,
    Classify,
    All,
}

impl Subcommand {
    pub const SUITES: [Subcommand; 6] = [
        Subcommand::Steiner,
        Subcommand::Scalar,
        Subcommand::Ode,
        Subcommand::Maxwell,
        Subcommand::Potential,
        Subcommand::Classify,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Subcommand::Steiner => "steiner",
            Subcommand::Scalar => "scalar",
            Subcommand::Ode => "ode",
            Subcommand::Maxwell => "maxwell",
            Subcommand::Potential => "potential",
            Subcommand::Classify => "classify",
            Subcommand::All => "all",
        }
    }
}

impl fmt::Display for Subcommand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Subcommand {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Subcommand::SUITES
            .into_iter()
            .chain([Subcommand::All])
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown subcommand `{s}`")))
    }
}

/// Fully resolved settings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Config {
    pub square: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub terminals: Option<Vec<Point>>,
    pub n: usize,
    pub q: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<f64>,
    pub lambda: f64,
    pub grid: usize,
    pub seed: u64,
    pub restarts: usize,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            square: 1.0,
            terminals: None,
            n: 3,
            q: 1.0,
            mu: None,
            lambda: 2.0,
            grid: 32,
            seed: 0,
            restarts: 16,
        }
    }
}

/// One configuration layer; unset fields fall through to the layer below.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartialConfig {
    pub square: Option<f64>,
    pub terminals: Option<Vec<Point>>,
    pub n: Option<usize>,
    pub q: Option<f64>,
    pub mu: Option<f64>,
    pub lambda: Option<f64>,
    pub grid: Option<usize>,
    pub seed: Option<u64>,
    pub restarts: Option<usize>,
}

impl PartialConfig {
    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

impl Config {
    /// Command-line flags over config file over defaults.
    pub fn resolve(file: Option<&PartialConfig>, cli: &PartialConfig) -> Self {
        let empty = PartialConfig::default();
        let file = file.unwrap_or(&empty);
        let d = Config::default();
        macro_rules! pick {
            ($f:ident) => {
                cli.$f.clone().or_else(|| file.$f.clone()).unwrap_or(d.$f)
            };
        }
        Self {
            square: pick!(square),
            terminals: cli.terminals.clone().or_else(|| file.terminals.clone()),
            n: pick!(n),
            q: pick!(q),
            mu: cli.mu.or(file.mu),
            lambda: pick!(lambda),
            grid: pick!(grid),
            seed: pick!(seed),
            restarts: pick!(restarts),
        }
    }
}

/// A data file produced by a run, written by [`emit_plot_data`].
#[derive(Clone, Debug, PartialEq)]
pub struct PlotFile {
    pub name: String,
    pub contents: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub schema_version: u32,
    pub subcommand: Subcommand,
    pub version: String,
    pub seed: u64,
    pub config: Config,
    pub reports: Vec<CheckReport>,
    /// Computed quantities per suite, keyed by suite name.
    pub results: Map<String, Value>,
    #[serde(skip)]
    pub plots: Vec<PlotFile>,
}

impl RunManifest {
    pub fn all_passed(&self) -> bool {
        self.reports.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckReport> {
        self.reports.iter().filter(|r| !r.pass)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    pub fn file_name(&self) -> String {
        format!("manifest_{}.json", self.subcommand)
    }
}

struct Suite {
    reports: Vec<CheckReport>,
    results: Value,
    plots: Vec<PlotFile>,
}

/// Runs one subcommand's suite (or all of them) under `config`.
pub fn run_subcommand(name: Subcommand, config: &Config) -> Result<RunManifest> {
    let mut manifest = RunManifest {
        schema_version: SCHEMA_VERSION,
        subcommand: name,
        version: env!("CARGO_PKG_VERSION").to_owned(),
        seed: config.seed,
        config: config.clone(),
        reports: Vec::new(),
        results: Map::new(),
        plots: Vec::new(),
    };
    let suites: Vec<Subcommand> = if name == Subcommand::All {
        Subcommand::SUITES.to_vec()
    } else {
        vec![name]
    };
    for s in suites {
        let suite = match s {
            Subcommand::Steiner => steiner_suite(config)?,
            Subcommand::Scalar => scalar_suite()?,
            Subcommand::Ode => ode_suite(config)?,
            Subcommand::Maxwell => maxwell_suite(config)?,
            Subcommand::Potential => potential_suite(config)?,
            Subcommand::Classify => classify_suite(config)?,
            Subcommand::All => unreachable!("expanded above"),
        };
        manifest.reports.extend(suite.reports);
        manifest.results.insert(s.name().to_owned(), suite.results);
        manifest.plots.extend(suite.plots);
    }
    Ok(manifest)
}

/// Writes `contents` to a temporary sibling and renames it into place.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let file_name = path
        .file_name()
        .ok_or_else(|| Error::InvalidArgument(format!("{} has no file name", path.display())))?;
    let tmp = path.with_file_name(format!(".{}.tmp", file_name.to_string_lossy()));
    fs::write(&tmp, contents)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

pub fn write_manifest(manifest: &RunManifest, out_dir: &Path) -> Result<PathBuf> {
    fs::create_dir_all(out_dir)?;
    let path = out_dir.join(manifest.file_name());
    write_atomic(&path, &manifest.to_json()?)?;
    Ok(path)
}

/// Writes the run's plot files into `out_dir` and returns their paths.
pub fn emit_plot_data(manifest: &RunManifest, out_dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(out_dir)?;
    manifest
        .plots
        .iter()
        .map(|p| {
            let path = out_dir.join(&p.name);
            write_atomic(&path, &p.contents)?;
            Ok(path)
        })
        .collect()
}

fn optimizer_options(config: &Config) -> OptimizerOptions {
    OptimizerOptions {
        restarts: config.restarts,
        seed: config.seed,
        ..Default::default()
    }
}

/// Symmetries of the terminal set among the 24 elements of `D_12`, acting
/// about the terminal centroid. Contains `D_4` for axis-aligned squares and
/// `D_3` for triangles with a vertical axis.
pub fn terminal_symmetry(terminals: &[Point]) -> Result<FiniteGroup> {
    let net = SteinerNetwork::new(terminals.to_vec(), Vec::new(), Vec::new());
    let d12 = dihedral_group(12)?;
    Ok(symmetry::stabilizer(&d12, &net.to_centered_config()?, tol::POINT_MATCH))
}

fn steiner_suite(config: &Config) -> Result<Suite> {
    let square = config.terminals.is_none();
    let side = config.square;
    if square && !(side > 0.0 && side.is_finite()) {
        return Err(Error::InvalidArgument(format!("square side {side} must be positive")));
    }
    let terminals = config
        .terminals
        .clone()
        .unwrap_or_else(|| steiner::unit_square(side));
    let group = terminal_symmetry(&terminals)?;
    let solutions = steiner::solve_steiner(&terminals, &optimizer_options(config))?;
    let guess = steiner::x_guess(&terminals);
    let best = solutions[0].total_length;

    let mut reports = Vec::new();
    let mut stabilizers = Vec::new();
    for (i, net) in solutions.iter().enumerate() {
        let stab = steiner::residual_symmetry(net, &group, tol::NETWORK_MATCH)?;
        if square {
            reports.push(CheckReport::exact(
                &format!("steiner.solution_{}.stabilizer_order", i + 1),
                "each optimal square network keeps a D2 subgroup of D4",
                json!(stab.order()),
                json!(4),
            ));
        }
        if let steiner::FermatCheck::Full { max_residual, .. } =
            steiner::check_fermat_condition(net, tol::FERMAT)?
        {
            reports.push(CheckReport::at_most(
                &format!("steiner.solution_{}.fermat_residual", i + 1),
                "unit edge vectors at each junction sum to zero (120° angles)",
                max_residual,
                tol::FERMAT,
            ));
        }
        stabilizers.push(stab);
    }

    let configs = solutions
        .iter()
        .map(SteinerNetwork::to_centered_config)
        .collect::<Result<Vec<_>>>()?;
    let closed = configs.iter().all(|c| {
        group.elements().iter().all(|g| {
            let image = c.transformed(g);
            configs.iter().any(|s| s.approx_eq(&image, tol::NETWORK_MATCH))
        })
    });
    reports.push(CheckReport::flag(
        "steiner.orbit_closure",
        "problem symmetries map optimal networks to optimal networks",
        closed,
    ));
    let verdict = classify_ssb(&group, &configs, tol::NETWORK_MATCH)?;

    if square {
        reports.push(CheckReport::exact(
            "steiner.minimizer_count",
            "the square has exactly two shortest networks",
            json!(solutions.len()),
            json!(2),
        ));
        reports.push(CheckReport::scalar(
            "steiner.best_length",
            "shortest network length is (1+√3)·side",
            best,
            (1.0 + 3f64.sqrt()) * side,
            tol::STEINER_LENGTH * side.max(1.0),
        ));
        reports.push(CheckReport::scalar(
            "steiner.x_guess_length",
            "D4-symmetric X network has length √8·side",
            guess.total_length,
            8f64.sqrt() * side,
            tol::X_GUESS_LENGTH * side.max(1.0),
        ));
        reports.push(CheckReport::flag(
            "steiner.beats_x_guess",
            "the optimal networks are strictly shorter than the symmetric guess",
            best < guess.total_length,
        ));
        if configs.len() == 2 {
            let r90 = OrthoTransform::rotation_2d(PI / 2.0);
            reports.push(CheckReport::flag(
                "steiner.rotation_maps_first_to_second",
                "rotating the first solution by 90° gives the second",
                configs[0]
                    .transformed(&r90)
                    .approx_eq(&configs[1], tol::NETWORK_MATCH),
            ));
        }
        reports.push(CheckReport::exact(
            "steiner.verdict",
            "no optimal square network has the full D4 symmetry",
            json!(verdict.kind),
            json!(SsbKind::NarrowSsb),
        ));
    }

    let mut plots: Vec<PlotFile> = solutions
        .iter()
        .enumerate()
        .map(|(i, net)| PlotFile {
            name: format!("steiner_solution_{}.seg", i + 1),
            contents: net.segments(),
        })
        .collect();
    plots.push(PlotFile {
        name: "steiner_guess_x.seg".into(),
        contents: guess.segments(),
    });

    let results = json!({
        "terminals": terminals,
        "problem_group_order": group.order(),
        "best_length": best,
        "x_guess_length": guess.total_length,
        "solutions": solutions.iter().map(SteinerNetwork::to_json).collect::<Vec<_>>(),
        "stabilizer_orders": stabilizers.iter().map(FiniteGroup::order).collect::<Vec<_>>(),
        "stabilizer_labels": stabilizers.iter().map(FiniteGroup::labels).collect::<Vec<_>>(),
        "verdict": verdict.kind,
    });
    Ok(Suite {
        reports,
        results,
        plots,
    })
}

fn scalar_suite() -> Result<Suite> {
    let mut reports = Vec::new();
    let p1 = Z2Problem::P1.polynomial();
    let well = Z2Problem::P1TildeRoots.polynomial();

    let roots_p1 = real_roots(&p1, (-10.0, 10.0), tol::ROOT)?;
    reports.push(CheckReport::exact(
        "scalar.p1_roots",
        "x² = 1 has the solutions ±1",
        json!(roots_p1.iter().map(|r| r.x).collect::<Vec<_>>()),
        json!([-1.0, 1.0]),
    ));
    let roots_well = real_roots(&well, (-10.0, 10.0), tol::ROOT)?;
    reports.push(CheckReport::exact(
        "scalar.double_well_roots",
        "x⁴ - x² = 0 has the solutions -1, 0 (double), 1",
        json!(roots_well),
        json!([
            {"x": -1.0, "multiplicity": 1},
            {"x": 0.0, "multiplicity": 2},
            {"x": 1.0, "multiplicity": 1}
        ]),
    ));

    let cps = critical_points(&well, tol::ROOT)?;
    let minima: Vec<f64> = cps
        .iter()
        .filter(|c| c.kind == CriticalKind::Min)
        .map(|c| c.location)
        .collect();
    let maxima: Vec<f64> = cps
        .iter()
        .filter(|c| c.kind == CriticalKind::Max)
        .map(|c| c.location)
        .collect();
    let s = 0.5f64.sqrt();
    reports.push(CheckReport::exact(
        "scalar.minimum_count",
        "x⁴ - x² has two minima",
        json!(minima.len()),
        json!(2),
    ));
    for (i, (&m, want)) in minima.iter().zip([-s, s]).enumerate() {
        reports.push(CheckReport::scalar(
            &format!("scalar.minimum_{}", i + 1),
            "minima of x⁴ - x² at ±1/√2",
            m,
            want,
            tol::MINIMA_LOCATION,
        ));
    }
    for c in cps.iter().filter(|c| c.kind == CriticalKind::Min) {
        reports.push(CheckReport::scalar(
            "scalar.minimum_value",
            "depth of each minimum is -1/4",
            c.value,
            -0.25,
            tol::ROOT,
        ));
    }
    reports.push(CheckReport::exact(
        "scalar.maximum",
        "the symmetric critical point 0 is a local maximum",
        json!(maxima),
        json!([0.0]),
    ));

    let mut verdicts = Map::new();
    for (problem, want) in Z2Problem::ALL.into_iter().zip([
        SsbKind::NarrowSsb,
        SsbKind::GeneralSsb,
        SsbKind::NarrowSsb,
    ]) {
        let out = scalar::z2_verdict(problem)?;
        reports.push(CheckReport::exact(
            &format!("scalar.verdict.{}", problem.name().replace(' ', "_")),
            "Z2 classification of the solution set",
            json!(out.verdict.kind),
            json!(want),
        ));
        verdicts.insert(
            problem.name().into(),
            json!({
                "solutions": out.solutions,
                "kind": out.verdict.kind,
                "stabilizer_orders": out.verdict.stabilizer_orders(),
                "invariant_solution": out.verdict.invariant_solution.map(|i| out.solutions[i]),
            }),
        );
    }

    let mut csv = String::from("x,p,dp\n");
    let dp = well.derivative().expect("quartic");
    for i in 0..=300 {
        let x = -1.5 + i as f64 * 0.01;
        csv.push_str(&format!(
            "{},{},{}\n",
            steiner::fmt17(x),
            steiner::fmt17(well.eval(x)),
            steiner::fmt17(dp.eval(x))
        ));
    }

    Ok(Suite {
        reports,
        results: json!({
            "critical_points": cps,
            "verdicts": verdicts,
        }),
        plots: vec![PlotFile {
            name: "polynomial_samples.csv".into(),
            contents: csv,
        }],
    })
}

fn ode_suite(config: &Config) -> Result<Suite> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut worst: f64 = 0.0;
    let mut closure_residual: f64 = 0.0;
    for _ in 0..1000 {
        let c: f64 = rng.gen_range(-5.0..=5.0);
        let a: f64 = rng.gen_range(-5.0..=5.0);
        let b: f64 = rng.gen_range(-5.0..=5.0);
        let two_step = ode::translate_solution(ode::translate_solution(c, a)?, b)?;
        let one_step = ode::translate_solution(c, a + b)?;
        if one_step != 0.0 {
            worst = worst.max(((two_step - one_step) / one_step).abs());
        }
        closure_residual = closure_residual.max(ode::ode_residual(two_step, a)?.abs());
    }

    let mut candidates = vec![-2.0, -1.0, -0.5, -1e-3, -1e-12, 0.0, 1e-12, 1e-3, 0.5, 1.0, 2.0];
    candidates.extend((0..100).map(|_| rng.gen_range(-5.0..=5.0)));
    let fixed: Vec<f64> = candidates
        .iter()
        .copied()
        .filter(|&c| ode::is_fixed_by(c, &ode::PROBE_SHIFTS, tol::FIXED_POINT).unwrap_or(false))
        .collect();

    let sampled = ode::Sampled::from_fn(0.0, 1e-3, 4001, |x| x);
    let linear_residual = sampled.ode_residual_at(2.0)?;

    let reports = vec![
        CheckReport::at_most(
            "ode.composition_law",
            "translating by a then b equals translating by a+b",
            worst,
            tol::COMPOSITION,
        ),
        CheckReport::exact(
            "ode.closure",
            "translated solutions still satisfy f' = f",
            json!(closure_residual),
            json!(0.0),
        ),
        CheckReport::exact(
            "ode.fixed_points",
            "c = 0 is the only translation-invariant solution",
            json!(fixed),
            json!([0.0]),
        ),
        CheckReport::flag("ode.vacuum", "f ≡ 0 is the vacuum", ode::is_vacuum(0.0)),
        CheckReport::flag(
            "ode.nonzero_not_vacuum",
            "f = e^x is not translation invariant",
            !ode::is_vacuum(1.0),
        ),
        CheckReport::relative(
            "ode.sampled_residual",
            "central-difference g' - g for g(x) = x at x = 2",
            linear_residual,
            -1.0,
            tol::SAMPLED_RESIDUAL,
        ),
    ];
    Ok(Suite {
        reports,
        results: json!({
            "composition_max_rel_error": worst,
            "fixed_points": fixed,
            "candidates_tested": candidates.len(),
        }),
        plots: Vec::new(),
    })
}

/// Wave vector of the helicity wave used by the Maxwell suite. All components
/// differ, so the discrete divergence is nonzero at order `h²`.
pub const MAXWELL_K: [f64; 3] = [1.0, 2.0, 3.0];

fn maxwell_suite(config: &Config) -> Result<Suite> {
    let n = config.grid;
    if n < 2 * maxwell::MIN_GRID {
        return Err(Error::InvalidArgument(format!(
            "grid {n}; the convergence table needs at least {}",
            2 * maxwell::MIN_GRID
        )));
    }
    let wave = make_helicity_wave(MAXWELL_K)?;
    let rows = maxwell::convergence_study(&wave, &[n / 2, n, 2 * n])?;
    let mut reports = vec![
        CheckReport::at_most(
            "maxwell.transversality",
            "k·ε = 0",
            wave.transversality(),
            tol::ORTHOGONALITY,
        ),
        CheckReport::at_most(
            "maxwell.helicity",
            "k×ε = -i|k|ε",
            wave.helicity_defect(),
            tol::ORTHOGONALITY,
        ),
    ];
    let (coarse, fine) = (rows[1], rows[2]);
    for (label, c, f) in [
        ("div", coarse.div_norm, fine.div_norm),
        ("evolution", coarse.evolution_norm, fine.evolution_norm),
    ] {
        reports.push(CheckReport::scalar(
            &format!("maxwell.order.{label}"),
            "residual falls by 4 when h is halved",
            c / f,
            4.0,
            4.0 * tol::SECOND_ORDER_RATIO,
        ));
    }
    let monotone = rows
        .windows(2)
        .all(|w| w[1].evolution_norm < w[0].evolution_norm && w[1].div_norm < w[0].div_norm);
    reports.push(CheckReport::flag(
        "maxwell.monotone",
        "residual norms decrease under refinement",
        monotone,
    ));

    let snaps = Snapshots::of_wave(&wave, n, maxwell::DT_OVER_H)?;
    let base = snaps.residual()?;
    for (label, z) in [("i", Complex64::new(0.0, 1.0)), ("2-3i", Complex64::new(2.0, -3.0))] {
        let scaled = snaps.scaled(z)?.residual()?;
        reports.push(CheckReport::relative(
            &format!("maxwell.scale_{label}.div"),
            "residuals of zF are |z| times those of F",
            scaled.div_norm,
            z.norm() * base.div_norm,
            tol::FIELD_LINEARITY,
        ));
        reports.push(CheckReport::relative(
            &format!("maxwell.scale_{label}.evolution"),
            "residuals of zF are |z| times those of F",
            scaled.evolution_norm,
            z.norm() * base.evolution_norm,
            tol::FIELD_LINEARITY,
        ));
        let (e, b) = snaps.now.split_eb();
        let (e2, b2) = scale_field(&snaps.now, z)?.split_eb();
        let (lam, lamp) = (z.re, z.im);
        let mut dev: f64 = 0.0;
        for i in 0..e.len() {
            for a in 0..3 {
                dev = dev.max((e2[i][a] - (lam * e[i][a] - lamp * b[i][a])).abs());
                dev = dev.max((b2[i][a] - (lam * b[i][a] + lamp * e[i][a])).abs());
            }
        }
        reports.push(CheckReport::at_most(
            &format!("maxwell.scale_{label}.components"),
            "zF equals (λE - λ'B) + i(λB + λ'E)",
            dev,
            tol::FIELD_COMPONENTS,
        ));
    }

    let vacuum = maxwell::ComplexFieldGrid::zeros(n, 0.0)?;
    let vr = Snapshots::frozen(vacuum, snaps.dt).residual()?;
    reports.push(CheckReport::exact(
        "maxwell.vacuum",
        "F ≡ 0 has exactly zero residuals",
        json!([vr.div_norm, vr.evolution_norm]),
        json!([0.0, 0.0]),
    ));
    let stat = Snapshots::frozen(random_static_field(n, 3, config.seed)?, snaps.dt).residual()?;
    reports.push(CheckReport::flag(
        "maxwell.static_field_rejected",
        "a static transverse field with nonzero curl is not a vacuum solution",
        stat.evolution_norm > 10.0 * base.evolution_norm,
    ));

    Ok(Suite {
        reports,
        results: json!({
            "k": MAXWELL_K,
            "polarization": wave.polarization,
            "convergence": rows,
            "residual": base,
            "static_field_residual": stat,
        }),
        plots: vec![
            PlotFile {
                name: "maxwell_convergence.csv".into(),
                contents: maxwell::convergence_csv(&rows),
            },
            PlotFile {
                name: "maxwell_slice_re_fx.txt".into(),
                contents: snaps.now.slice_text(0),
            },
        ],
    })
}

/// Direction for off-axis stencil points; avoids symmetric cancellations.
fn generic_point(n: usize, r: f64) -> Vec<f64> {
    let raw: Vec<f64> = (0..n).map(|i| 1.0 / (i as f64 + 1.0).sqrt()).collect();
    let norm = raw.iter().map(|v| v * v).sum::<f64>().sqrt();
    raw.into_iter().map(|v| r * v / norm).collect()
}

const SCALING_LAMBDAS: [f64; 3] = [0.5, 2.0, 10.0];
const ANOMALY_LAMBDAS: [f64; 4] = [0.5, 2.0, E, 10.0];
const LATTICE_RADII: [f64; 3] = [0.1, 1.0, 7.0];

fn potential_suite(config: &Config) -> Result<Suite> {
    let sol = PotentialSolution::new(config.n, config.q, if config.n == 2 { config.mu } else { None })?;
    if config.n != 2 && config.mu.is_some() {
        return Err(Error::InvalidArgument(format!(
            "--mu only applies to n = 2, not n = {}",
            config.n
        )));
    }
    let t = ScalingTransform::new(config.lambda)?;
    let (scaled, gauge_shift) = apply_scaling(&sol, t);
    let n = sol.n();
    let q = sol.q();
    let mut local = Vec::new();

    // Checks for the configured charge.
    for r in LATTICE_RADII {
        let phi = sol.potential(r)?;
        if n == 2 {
            local.push(CheckReport::scalar(
                &format!("potential.gauge_shift.r{r}"),
                "Φ_μ(λr) = Φ_μ(r) - (q/2π) ln λ",
                sol.potential(t.lambda() * r)? - phi,
                gauge_shift,
                tol::GAUGE_SHIFT,
            ));
            local.push(CheckReport::scalar(
                &format!("potential.rescaled_mu.r{r}"),
                "Φ_{μ/λ}(r) = Φ_μ(λr)",
                scaled.potential(r)?,
                sol.potential(t.lambda() * r)?,
                tol::GAUGE_SHIFT,
            ));
        } else {
            local.push(CheckReport::relative(
                &format!("potential.scaling.r{r}"),
                "λ^(n-2) Φ(λr) = Φ(r)",
                rescaled_potential(&sol, t, r)?,
                phi,
                tol::SCALING,
            ));
        }
        local.push(CheckReport::relative(
            &format!("potential.field_scaling.r{r}"),
            "|E(λr)| = λ^-(n-1) |E(r)|",
            sol.field_magnitude(t.lambda() * r)?,
            t.lambda().powi(1 - n as i32) * sol.field_magnitude(r)?,
            tol::FIELD_SCALING,
        ));
        local.push(CheckReport::relative(
            &format!("potential.gauss_identity.r{r}"),
            "O_(n-1) r^(n-1) |E(r)| = q",
            analytic_flux(&sol, r)?,
            q,
            tol::FIELD_SCALING,
        ));
    }
    if n == 2 || n == 3 {
        let (points, bound) = if n == 2 { (1000, tol::FLUX_2D) } else { (64, tol::FLUX_3D) };
        local.push(CheckReport::scalar(
            "potential.flux_quadrature",
            "flux of E through a sphere equals the enclosed charge",
            flux_integral(&sol, 1.0, points)?,
            q,
            bound,
        ));
    }
    local.push(CheckReport::at_most(
        "potential.laplacian",
        "ΔΦ = 0 away from the charge",
        laplacian_residual(&sol, &generic_point(n, 1.0), 1e-3)?.abs(),
        tol::LAPLACIAN,
    ));

    let mut reports = local.clone();
    reports.extend(dimension_sweep()?);

    let profile = radial_profile(&sol, 0.05, 20.0, 200)?;
    let mut csv = String::from("r,phi,e\n");
    for s in &profile {
        csv.push_str(&format!(
            "{},{},{}\n",
            steiner::fmt17(s.r),
            steiner::fmt17(s.phi),
            steiner::fmt17(s.e)
        ));
    }

    let mut summary = json!({
        "n": n,
        "q": q,
        "lambda": t.lambda(),
        "gauge_shift": gauge_shift,
        "checks": local
            .iter()
            .map(|c| json!({"name": c.name, "measured": c.measured, "tolerance": c.tolerance, "pass": c.pass}))
            .collect::<Vec<_>>(),
    });
    if let Some(mu) = sol.mu() {
        summary["mu"] = json!(mu);
        summary["mu_rescaled"] = json!(scaled.mu());
    }
    Ok(Suite {
        reports,
        results: summary,
        plots: vec![PlotFile {
            name: format!("phi_vs_r_n{n}.csv"),
            contents: csv,
        }],
    })
}

/// Checks across dimensions that do not depend on the configured charge.
fn dimension_sweep() -> Result<Vec<CheckReport>> {
    let mut out = vec![
        CheckReport::relative(
            "sweep.sphere_area.n3",
            "O_2 = 4π",
            unit_sphere_area(3)?,
            4.0 * PI,
            tol::GAMMA,
        ),
        CheckReport::relative(
            "sweep.sphere_area.n4",
            "O_3 = 2π²",
            unit_sphere_area(4)?,
            2.0 * PI * PI,
            tol::GAMMA,
        ),
    ];

    let mut worst_scaling: f64 = 0.0;
    for n in 3..=6 {
        let sol = PotentialSolution::new(n, 1.0, None)?;
        for lambda in SCALING_LAMBDAS {
            let t = ScalingTransform::new(lambda)?;
            for r in LATTICE_RADII {
                let phi = sol.potential(r)?;
                worst_scaling = worst_scaling.max(((rescaled_potential(&sol, t, r)? - phi) / phi).abs());
            }
        }
    }
    out.push(CheckReport::at_most(
        "sweep.scaling_identity",
        "λ^(n-2) Φ(λr) = Φ(r) for n = 3..6",
        worst_scaling,
        tol::SCALING,
    ));

    let mut worst_anomaly: f64 = 0.0;
    for q in [1.0, 2.0 * PI, -2.0] {
        let sol = PotentialSolution::new(2, q, None)?;
        for lambda in ANOMALY_LAMBDAS {
            for r in LATTICE_RADII {
                let d = sol.potential(lambda * r)? - sol.potential(r)? + q / (2.0 * PI) * lambda.ln();
                worst_anomaly = worst_anomaly.max(d.abs());
            }
        }
    }
    out.push(CheckReport::at_most(
        "sweep.anomaly",
        "Φ_μ(λr) - Φ_μ(r) + (q/2π) ln λ = 0 in two dimensions",
        worst_anomaly,
        tol::GAUGE_SHIFT,
    ));
    let unit = PotentialSolution::new(2, 2.0 * PI, None)?;
    let (_, shift) = apply_scaling(&unit, ScalingTransform::new(E)?);
    out.push(CheckReport::scalar(
        "sweep.anomaly_unit_shift",
        "q = 2π, λ = e gives a shift of -1",
        shift,
        -1.0,
        tol::GAUGE_SHIFT,
    ));

    let mut worst_field: f64 = 0.0;
    let mut worst_gauss: f64 = 0.0;
    for n in 2..=8 {
        let sol = PotentialSolution::new(n, 1.0, None)?;
        for r in LATTICE_RADII {
            let e = sol.field_magnitude(r)?;
            for lambda in ANOMALY_LAMBDAS {
                let want = lambda.powi(1 - n as i32) * e;
                worst_field = worst_field.max(((sol.field_magnitude(lambda * r)? - want) / want).abs());
            }
            worst_gauss = worst_gauss.max((analytic_flux(&sol, r)? - 1.0).abs());
        }
    }
    out.push(CheckReport::at_most(
        "sweep.field_scaling",
        "|E(λr)| = λ^-(n-1) |E(r)| for n = 2..8",
        worst_field,
        tol::FIELD_SCALING,
    ));
    out.push(CheckReport::at_most(
        "sweep.gauss_identity",
        "O_(n-1) r^(n-1) |E(r)| = q for n = 2..8",
        worst_gauss,
        tol::FIELD_SCALING,
    ));

    for (n, points, bound) in [(2, 1000, tol::FLUX_2D), (3, 64, tol::FLUX_3D)] {
        let mut worst: f64 = 0.0;
        for q in [1.0, 3.0, -2.0] {
            let sol = PotentialSolution::new(n, q, None)?;
            for radius in [0.5, 1.0, 5.0] {
                worst = worst.max((flux_integral(&sol, radius, points)? - q).abs());
            }
        }
        out.push(CheckReport::at_most(
            &format!("sweep.flux_quadrature.n{n}"),
            "quadrature flux equals the enclosed charge",
            worst,
            bound,
        ));
    }

    for n in 2..=4 {
        let sol = PotentialSolution::new(n, 1.0, None)?;
        let p = generic_point(n, 1.0);
        let coarse = laplacian_residual(&sol, &p, 0.02)?;
        let fine = laplacian_residual(&sol, &p, 0.01)?;
        out.push(CheckReport::scalar(
            &format!("sweep.laplacian_order.n{n}"),
            "off-origin Laplacian vanishes at second order",
            coarse / fine,
            4.0,
            4.0 * tol::SECOND_ORDER_RATIO,
        ));
        out.push(CheckReport::at_most(
            &format!("sweep.gradient.n{n}"),
            "E = -∇Φ",
            gradient_mismatch(&sol, &p, 1e-4)?,
            1e-6,
        ));
    }
    Ok(out)
}

fn classify_suite(config: &Config) -> Result<Suite> {
    let mut reports = Vec::new();
    let mut cases = Map::new();
    let d4 = dihedral_group(4)?;

    let square = steiner::unit_square(config.square);
    let minima = steiner::solve_steiner(&square, &optimizer_options(config))?;
    let configs = minima
        .iter()
        .map(SteinerNetwork::to_centered_config)
        .collect::<Result<Vec<_>>>()?;
    let terminals_only = SteinerNetwork::new(square, Vec::new(), Vec::new()).to_centered_config()?;

    let mut witness = None;
    let mut record = |key: &str, anchor: &str, verdict: symmetry::SsbVerdict, want: SsbKind| {
        reports.push(CheckReport::exact(
            &format!("classify.{key}"),
            anchor,
            json!(verdict.kind),
            json!(want),
        ));
        cases.insert(
            key.to_owned(),
            json!({
                "kind": verdict.kind,
                "problem_order": verdict.problem_order,
                "stabilizer_orders": verdict.stabilizer_orders(),
                "invariant_solution": verdict.invariant_solution,
            }),
        );
    };

    record(
        "d4_steiner_minima",
        "square network minima break D4 in the narrow sense",
        classify_ssb(&d4, &configs, tol::NETWORK_MATCH)?,
        SsbKind::NarrowSsb,
    );
    let mut reversed = configs.clone();
    reversed.reverse();
    record(
        "d4_steiner_minima_reversed",
        "classification does not depend on solution order",
        classify_ssb(&d4, &reversed, tol::NETWORK_MATCH)?,
        SsbKind::NarrowSsb,
    );
    record(
        "d4_square",
        "the square itself is D4 invariant",
        classify_ssb(&d4, &[terminals_only], tol::NETWORK_MATCH)?,
        SsbKind::Unbroken,
    );
    for (problem, want) in Z2Problem::ALL.into_iter().zip([
        SsbKind::NarrowSsb,
        SsbKind::GeneralSsb,
        SsbKind::NarrowSsb,
    ]) {
        let out = scalar::z2_verdict(problem)?;
        let key = format!("z2_{}", problem.name().replace([' ', '^', '-'], "_"));
        if problem == Z2Problem::P1TildeRoots {
            witness = Some(out.verdict.invariant_solution.map(|i| out.solutions[i]));
        }
        record(&key, "Z2 verdicts for the polynomial problems", out.verdict, want);
    }

    reports.push(CheckReport::exact(
        "classify.z2_double_well_witness",
        "x = 0 is the Z2-symmetric root",
        json!(witness.flatten()),
        json!(0.0),
    ));

    // Group axioms and orbit-stabilizer on every group constructed here.
    let mut groups: Vec<(String, FiniteGroup)> = vec![
        ("D4".into(), d4.clone()),
        ("Z2".into(), symmetry::z2_group()),
        ("C4".into(), symmetry::cyclic_group(4)?),
    ];
    for (i, c) in configs.iter().enumerate() {
        groups.push((format!("stab(solution_{})", i + 1), symmetry::stabilizer(&d4, c, tol::NETWORK_MATCH)));
    }
    for (name, g) in &groups {
        let report = symmetry::verify_group_axioms(g.elements(), tol::GROUP_ELEMENT_EQ);
        reports.push(CheckReport::flag(
            &format!("classify.axioms.{name}"),
            "closure, identity, inverses, associativity",
            report.is_ok(),
        ));
    }
    for (i, c) in configs.iter().enumerate() {
        let orbit = symmetry::orbit(&d4, c, tol::NETWORK_MATCH).len();
        let stab = symmetry::stabilizer(&d4, c, tol::NETWORK_MATCH).order();
        reports.push(CheckReport::exact(
            &format!("classify.orbit_stabilizer.solution_{}", i + 1),
            "|orbit| · |stabilizer| = |D4|",
            json!(orbit * stab),
            json!(d4.order()),
        ));
    }

    Ok(Suite {
        reports,
        results: Value::Object(cases),
        plots: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_report_pass_rule() {
        assert!(CheckReport::scalar("a", "", 1.0, 1.0 + 1e-10, 1e-9).pass);
        assert!(!CheckReport::scalar("a", "", 1.0, 1.1, 1e-9).pass);
        let r = CheckReport::relative("a", "", 200.0, 100.0, 0.5);
        assert_eq!(r.tolerance, 50.0);
        assert!(!r.pass);
        assert!(!CheckReport::scalar("nan", "", f64::NAN, 0.0, 1.0).pass);
        assert!(CheckReport::flag("f", "", true).pass);
        assert!(!CheckReport::flag("f", "", false).pass);
    }

    #[test]
    fn config_precedence() {
        let file = PartialConfig {
            n: Some(4),
            q: Some(2.0),
            ..Default::default()
        };
        let cli = PartialConfig {
            n: Some(2),
            ..Default::default()
        };
        let c = Config::resolve(Some(&file), &cli);
        assert_eq!(c.n, 2);
        assert_eq!(c.q, 2.0);
        assert_eq!(c.grid, Config::default().grid);
        assert!(PartialConfig::from_json(r#"{"bogus": 1}"#).is_err());
        assert_eq!(PartialConfig::from_json(r#"{"lambda": 3}"#).unwrap().lambda, Some(3.0));
    }

    #[test]
    fn subcommand_names_round_trip() {
        for s in Subcommand::SUITES.into_iter().chain([Subcommand::All]) {
            assert_eq!(s.name().parse::<Subcommand>().unwrap(), s);
        }
        assert!("nope".parse::<Subcommand>().is_err());
    }

    #[test]
    fn potential_rejects_mu_outside_two_dimensions() {
        let c = Config {
            n: 3,
            mu: Some(2.0),
            ..Default::default()
        };
        assert!(run_subcommand(Subcommand::Potential, &c).is_err());
    }

    #[test]
    fn atomic_write_replaces_file() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("x.txt");
        write_atomic(&p, "one").unwrap();
        write_atomic(&p, "two").unwrap();
        assert_eq!(fs::read_to_string(&p).unwrap(), "two");
        assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);
    }

    #[test]
    fn unwritable_directory_is_an_io_error() {
        let dir = tempfile::tempdir().unwrap();
        let blocker = dir.path().join("file");
        fs::write(&blocker, "").unwrap();
        let m = run_subcommand(Subcommand::Ode, &Config::default()).unwrap();
        let err = write_manifest(&m, &blocker.join("sub")).unwrap_err();
        assert!(matches!(err, Error::Io(_)));
    }

    #[test]
    fn electrostatics_default_mu_is_reported() {
        let c = Config {
            n: 2,
            ..Default::default()
        };
        let m = run_subcommand(Subcommand::Potential, &c).unwrap();
        assert_eq!(m.results["potential"]["mu"], json!(crate::electrostatics::DEFAULT_MU));
    }
}

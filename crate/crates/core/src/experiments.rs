//! Experiment harness: parameter grids, seeded random trials, the
//! non-unique tensor construction, CSV and heatmap emission.
//!
//! Every solver call logs its certificate verdicts next to the reported
//! distances; grid cells are independent work items distributed over a
//! worker pool and gathered in deterministic cell order.

use std::fmt::Write as _;
use std::path::PathBuf;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::indexsets::{triangle_set, IndexSet};
use crate::quasihankel::{canonical_qh_completion, exp_array_over, CanonicalQHProblem};
use crate::relaxation::{certificate, minimize_nuclear_norm, SolverConfig, SolverResult};
use crate::structure::{is_a_independent, CoefficientArray, QuasiHankelStructure, DEFAULT_RANK_TOL};
use crate::{Error, Result};

/// Which experiment to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExperimentId {
    Fig2,
    Fig3Cos,
    Fig3Double,
    Fig4Real,
    Fig4Complex,
    Fig5,
    NonUnique,
}

impl ExperimentId {
    pub fn name(&self) -> &'static str {
        match self {
            ExperimentId::Fig2 => "fig2",
            ExperimentId::Fig3Cos => "fig3-cos",
            ExperimentId::Fig3Double => "fig3-double",
            ExperimentId::Fig4Real => "fig4-real",
            ExperimentId::Fig4Complex => "fig4-complex",
            ExperimentId::Fig5 => "fig5",
            ExperimentId::NonUnique => "nonunique",
        }
    }
}

/// Experiment parameters shared across all runners.
#[derive(Debug, Clone)]
pub struct ExperimentSpec {
    pub id: ExperimentId,
    /// Grid resolution per axis (≥ 2).
    pub grid: usize,
    /// Trial count `M` (≥ 1).
    pub trials: usize,
    pub seed: u64,
    pub out_dir: PathBuf,
    /// Heatmap black threshold.
    pub threshold: f64,
    pub solver: SolverConfig,
}

impl ExperimentSpec {
    pub fn new(id: ExperimentId, out_dir: PathBuf) -> Self {
        Self {
            id,
            grid: 41,
            trials: 100,
            seed: 0,
            out_dir,
            threshold: 1e-6,
            solver: SolverConfig::default(),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.grid < 2 {
            return Err(Error::InvalidInput("grid resolution must be >= 2".into()));
        }
        if self.trials < 1 {
            return Err(Error::InvalidInput("trial count must be >= 1".into()));
        }
        Ok(())
    }
}

/// Non-unique tensor experiment configuration (d = 3, m = 2 fixed).
#[derive(Debug, Clone)]
pub struct NonUniqueConfig {
    pub scenario: NonUniqueScenario,
    /// Entries of the perturbation `E` are iid uniform on `[−scale, scale]`.
    pub perturbation_scale: f64,
    /// `(γ₁, γ₂, γ₃)` with product 1, seeding the reference completion.
    pub gamma: [f64; 3],
    /// Success threshold on the tail singular values `(σ₅..σ₁₀)`.
    pub success_threshold: f64,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NonUniqueScenario {
    /// All-threes base matrix.
    DenseA,
    /// `3·I` base matrix.
    IdentityA,
}

impl NonUniqueConfig {
    pub fn new(scenario: NonUniqueScenario, seed: u64) -> Self {
        Self {
            scenario,
            perturbation_scale: 1.0,
            gamma: [1.0, 1.0, 1.0],
            success_threshold: 1e-4,
            seed,
        }
    }

    fn validate(&self) -> Result<()> {
        let prod = self.gamma[0] * self.gamma[1] * self.gamma[2];
        if (prod - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidInput(format!(
                "gamma product must be 1, got {prod}"
            )));
        }
        Ok(())
    }
}

/// One grid-cell record; `x`/`y` are the axis coordinates of the cell.
#[derive(Debug, Clone)]
pub struct CellRow {
    pub x: f64,
    pub y: f64,
    /// Frobenius distance between completed matrices.
    pub dist_frobenius: f64,
    /// 2-norm distance between parameter vectors.
    pub dist_param: f64,
    pub iterations: usize,
    pub converged: bool,
    pub first_order: bool,
    pub unique: bool,
}

/// A completed grid run: axis names plus rows in deterministic cell order.
#[derive(Debug, Clone)]
pub struct GridResult {
    pub x_axis: &'static str,
    pub y_axis: &'static str,
    pub rows: Vec<CellRow>,
    /// Grid resolution along x (rows are x-major).
    pub width: usize,
}

impl GridResult {
    pub fn to_csv(&self) -> String {
        let mut out = format!(
            "{},{},dist_frobenius,dist_param,iterations,converged,first_order,unique\n",
            self.x_axis, self.y_axis
        );
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{:.6},{:.6},{:.12e},{:.12e},{},{},{},{}",
                r.x,
                r.y,
                r.dist_frobenius,
                r.dist_param,
                r.iterations,
                r.converged,
                r.first_order,
                r.unique
            );
        }
        out
    }
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| a + (b - a) * i as f64 / (n - 1) as f64)
        .collect()
}

/// Solves one Hankel-structure instance against a reference completion.
/// Returns the cell metrics; a non-converged run reports the partial
/// iterate.
fn solve_cell(
    st: &QuasiHankelStructure,
    reference: &[Complex64],
    config: &SolverConfig,
) -> (SolverResult, bool, f64, f64, bool, bool) {
    let (result, converged) = match minimize_nuclear_norm(st, config) {
        Ok(r) => (r, true),
        Err(Error::NoConvergence { partial, .. }) => (*partial, false),
        Err(e) => panic!("solver failed structurally: {e}"),
    };
    let dist_param: f64 = result
        .p_hat
        .iter()
        .zip(reference)
        .map(|(a, b)| (a - b).norm_sqr())
        .sum::<f64>()
        .sqrt();
    let s_hat = st.assemble(&result.p_hat).expect("length matches");
    let s_ref = st.assemble(&reference.to_vec()).expect("length matches");
    let dist_frob = (s_hat - s_ref).norm();
    let cert = certificate(st, &result.p_hat, config.rank_tol).expect("certificate");
    (
        result,
        converged,
        dist_frob,
        dist_param,
        cert.first_order,
        cert.unique,
    )
}

/// Builds the order-`d` Hankel structure for the first `d+1` values.
fn hankel_structure(values: &[Complex64]) -> QuasiHankelStructure {
    let d = values.len() - 1;
    let a = triangle_set(1, d as u32);
    let known = CoefficientArray::from_values(a.clone(), values.to_vec())
        .expect("value count matches #A");
    QuasiHankelStructure::build(&a, &known).expect("valid structure")
}

fn run_hankel_grid<F>(
    spec: &ExperimentSpec,
    x_axis: &'static str,
    y_axis: &'static str,
    xs: &[f64],
    ys: &[f64],
    cell: F,
) -> GridResult
where
    F: Fn(f64, f64) -> Vec<Complex64> + Sync,
{
    let d = 5usize; // n = 6 Hankel instances throughout fig2/fig3
    let cells: Vec<(f64, f64)> = xs
        .iter()
        .flat_map(|&x| ys.iter().map(move |&y| (x, y)))
        .collect();
    let rows: Vec<CellRow> = cells
        .par_iter()
        .map(|&(x, y)| {
            let full = cell(x, y);
            assert_eq!(full.len(), 2 * d + 1, "cell closure must cover 0..=2d");
            let st = hankel_structure(&full[..=d]);
            let reference = &full[d + 1..];
            let (result, converged, dist_frob, dist_param, first_order, unique) =
                solve_cell(&st, reference, &spec.solver);
            CellRow {
                x,
                y,
                dist_frobenius: dist_frob,
                dist_param,
                iterations: result.iterations,
                converged,
                first_order,
                unique,
            }
        })
        .collect();
    GridResult {
        x_axis,
        y_axis,
        rows,
        width: xs.len(),
    }
}

/// Fig. 2: `h_k = λ^k` with `λ = a + bi` over a grid on `(−0.95, 0.95)²`;
/// distance between solver completion and the canonical completion.
pub fn run_fig2(spec: &ExperimentSpec) -> Result<GridResult> {
    spec.validate()?;
    let axis = linspace(-0.95, 0.95, spec.grid);
    Ok(run_hankel_grid(
        spec,
        "re_lambda",
        "im_lambda",
        &axis,
        &axis.clone(),
        |a, b| {
            let lambda = Complex64::new(a, b);
            (0..=10u32).map(|k| lambda.powu(k)).collect()
        },
    ))
}

/// Fig. 3 families: damped cosine `h_t = ρ^t cos(π(ω+1)t)` over `(ρ, ω)`,
/// or damped linear (double root) `h_t = (t·tan(0.75πφ)+1)ρ^t` over
/// `(ρ, φ)` with `φ ∈ [0, 0.9]`.
pub fn run_fig3(spec: &ExperimentSpec, double_root: bool) -> Result<GridResult> {
    spec.validate()?;
    let rhos = linspace(0.0, 0.95, spec.grid);
    if double_root {
        let phis = linspace(0.0, 0.9, spec.grid);
        Ok(run_hankel_grid(spec, "rho", "phi", &rhos, &phis, |rho, phi| {
            let slope = (0.75 * std::f64::consts::PI * phi).tan();
            (0..=10usize)
                .map(|t| Complex64::new((t as f64 * slope + 1.0) * rho.powi(t as i32), 0.0))
                .collect()
        }))
    } else {
        let omegas = linspace(0.0, 1.0, spec.grid);
        Ok(run_hankel_grid(spec, "rho", "omega", &rhos, &omegas, |rho, omega| {
            (0..=10usize)
                .map(|t| {
                    let angle = std::f64::consts::PI * (omega + 1.0) * t as f64;
                    Complex64::new(rho.powi(t as i32) * angle.cos(), 0.0)
                })
                .collect()
        }))
    }
}

/// Fig. 4: `n = 9`, rank `r ∈ 1..=4`, radius grid; per cell the maximum
/// Frobenius error over `M` seeded trials with random roots of leading
/// modulus `ρ` (`real` draws roots uniform in `[−ρ, ρ]`; otherwise
/// `ρ_k e^{iπφ_k}`).
pub fn run_fig4(spec: &ExperimentSpec, real_roots: bool) -> Result<GridResult> {
    spec.validate()?;
    let d = 8usize; // n = 9
    let rhos = linspace(0.05, 0.95, spec.grid);
    let cells: Vec<(usize, f64)> = (1..=4usize)
        .flat_map(|r| rhos.iter().map(move |&rho| (r, rho)))
        .collect();
    let rows: Vec<CellRow> = cells
        .par_iter()
        .enumerate()
        .map(|(cell_idx, &(r, rho))| {
            let mut worst = CellRow {
                x: r as f64,
                y: rho,
                dist_frobenius: 0.0,
                dist_param: 0.0,
                iterations: 0,
                converged: true,
                first_order: true,
                unique: true,
            };
            for trial in 0..spec.trials {
                let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
                rng.set_stream((cell_idx * spec.trials + trial) as u64 + 1);
                let roots = draw_roots(&mut rng, r, rho, real_roots);
                let full: Vec<Complex64> = (0..=2 * d as u32)
                    .map(|k| roots.iter().map(|z| z.powu(k)).sum())
                    .collect();
                let st = hankel_structure(&full[..=d]);
                let (result, converged, dist_frob, dist_param, first_order, unique) =
                    solve_cell(&st, &full[d + 1..], &spec.solver);
                if dist_frob >= worst.dist_frobenius {
                    worst.dist_frobenius = dist_frob;
                    worst.dist_param = dist_param;
                    worst.iterations = result.iterations;
                }
                worst.converged &= converged;
                worst.first_order &= first_order;
                worst.unique &= unique;
            }
            worst
        })
        .collect();
    Ok(GridResult {
        x_axis: "rank",
        y_axis: "rho",
        rows,
        width: 4,
    })
}

/// Roots with `|λ₁| = ρ` and `|λ_k| ≤ ρ`, pairwise separated by at least
/// `1e-3` (coincident draws are rejected).
fn draw_roots(rng: &mut ChaCha8Rng, r: usize, rho: f64, real: bool) -> Vec<Complex64> {
    loop {
        let mut roots = Vec::with_capacity(r);
        for k in 0..r {
            let z = if real {
                let v = if k == 0 {
                    if rng.random::<bool>() {
                        rho
                    } else {
                        -rho
                    }
                } else {
                    (rng.random::<f64>() * 2.0 - 1.0) * rho
                };
                Complex64::new(v, 0.0)
            } else {
                let radius = if k == 0 { rho } else { rng.random::<f64>() * rho };
                let angle = std::f64::consts::PI * rng.random::<f64>();
                Complex64::new(radius * angle.cos(), radius * angle.sin())
            };
            roots.push(z);
        }
        let separated = (0..r).all(|i| (0..i).all(|j| (roots[i] - roots[j]).norm() > 1e-3));
        if separated {
            return roots;
        }
    }
}

/// One fig5 sweep record.
#[derive(Debug, Clone)]
pub struct Fig5Row {
    pub realization: usize,
    pub rho: f64,
    pub dist_param: f64,
    pub dist_frobenius: f64,
    pub converged: bool,
    pub first_order: bool,
    pub unique: bool,
}

/// Fig. 5: `m = 2, d = 3, r = 3`; per realization the parameter-distance
/// `‖p̂ − p̃‖₂` against the canonical completion as a function of the point
/// radius `ρ ∈ (0, 1]`.
pub fn run_fig5(spec: &ExperimentSpec) -> Result<Vec<Fig5Row>> {
    spec.validate()?;
    let sweep: Vec<f64> = (1..=20).map(|i| 0.05 * i as f64).collect();
    let a = triangle_set(2, 3);
    let jobs: Vec<(usize, f64)> = (0..spec.trials)
        .flat_map(|real| sweep.iter().map(move |&rho| (real, rho)))
        .collect();
    let rows: Vec<Fig5Row> = jobs
        .par_iter()
        .map(|&(realization, rho)| {
            let y = draw_fig5_points(spec.seed, realization);
            let z: Vec<Vec<Complex64>> = y
                .iter()
                .map(|p| p.iter().map(|&v| v * rho).collect())
                .collect();
            let problem = CanonicalQHProblem::new(2, 3, z, vec![Complex64::ONE; 3])
                .expect("valid problem");
            let (completed, _) =
                canonical_qh_completion(&problem, DEFAULT_RANK_TOL).expect("independent points");
            let known = completed.restrict(&a).expect("A inside 2A");
            let st = QuasiHankelStructure::build(&a, &known).expect("valid structure");
            let p_ref: Vec<Complex64> = st
                .missing_set()
                .iter()
                .map(|beta| completed.get(beta).expect("2A covered"))
                .collect();
            let (result, converged, dist_frob, dist_param, first_order, unique) =
                solve_cell(&st, &p_ref, &spec.solver);
            let _ = result;
            Fig5Row {
                realization,
                rho,
                dist_param,
                dist_frobenius: dist_frob,
                converged,
                first_order,
                unique,
            }
        })
        .collect();
    Ok(rows)
}

/// Seeded draw of 3 generic points with entries uniform on
/// `[−0.5, 0.5]²` (re and im), redrawn until `B = T(2,1)`-independent.
fn draw_fig5_points(seed: u64, realization: usize) -> Vec<Vec<Complex64>> {
    let b = triangle_set(2, 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(0xF15_0000 + realization as u64);
    loop {
        let pts: Vec<Vec<Complex64>> = (0..3)
            .map(|_| {
                (0..2)
                    .map(|_| {
                        Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
                    })
                    .collect()
            })
            .collect();
        if is_a_independent(&b, &pts, DEFAULT_RANK_TOL).unwrap_or(false) {
            return pts;
        }
    }
}

pub fn fig5_csv(rows: &[Fig5Row]) -> String {
    let mut out =
        String::from("realization,rho,dist_param,dist_frobenius,converged,first_order,unique\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{:.6},{:.12e},{:.12e},{},{},{}",
            r.realization, r.rho, r.dist_param, r.dist_frobenius, r.converged, r.first_order, r.unique
        );
    }
    out
}

/// One non-unique trial record.
#[derive(Debug, Clone)]
pub struct NonUniqueTrial {
    pub trial: usize,
    /// 2-norm of the tail singular values `(σ₅..σ₁₀)` of `S(p̂)`.
    pub tail_norm: f64,
    pub success: bool,
    /// Frobenius distance of `S(p̂)` to the rank-4 reference completion.
    pub dist_reference: f64,
    pub matches_reference: bool,
    pub redraws: usize,
    pub converged: bool,
}

/// Aggregate of a non-unique run.
#[derive(Debug, Clone)]
pub struct NonUniqueResult {
    pub trials: Vec<NonUniqueTrial>,
    pub success_count: usize,
}

/// §7.3.2 construction: from `v₁,v₂,v₃` builds the rank-≤4 symmetric
/// array `h` over `T(2,3)` as an exponential array with nodes `λ_ε` and
/// weights `c_ε` for the four sign patterns `ε = (ε₂, ε₃)`.
pub fn nonunique_array(
    v: &[DVector<f64>; 3],
    gamma: &[f64; 3],
) -> Result<(CoefficientArray, CoefficientArray)> {
    let d = 3u32;
    let mut points = Vec::with_capacity(4);
    let mut coeffs = Vec::with_capacity(4);
    let factor = 1.0 / (2f64.powi(d as i32 - 1) * 6.0); // 1/(2^{d−1} d!)
    for (e2, e3) in [(0i32, 0i32), (0, 1), (1, 0), (1, 1)] {
        let s2 = if e2 == 0 { 1.0 } else { -1.0 };
        let s3 = if e3 == 0 { 1.0 } else { -1.0 };
        let b: Vec<f64> = (0..3)
            .map(|i| gamma[0] * v[0][i] + s2 * gamma[1] * v[1][i] + s3 * gamma[2] * v[2][i])
            .collect();
        if b[0].abs() < 1e-9 {
            return Err(Error::InvalidInput(
                "vanishing leading component b_1".into(),
            ));
        }
        let c = factor * s2 * s3 * b[0].powi(d as i32);
        points.push(vec![
            Complex64::new(b[1] / b[0], 0.0),
            Complex64::new(b[2] / b[0], 0.0),
        ]);
        coeffs.push(Complex64::new(c, 0.0));
    }
    let full = exp_array_over(triangle_set(2, 2 * d), &points, &coeffs)?;
    let known = full.restrict(&triangle_set(2, d))?;
    Ok((known, full))
}

/// Runs the non-unique experiment: `M` trials of perturbed base vectors,
/// nuclear-norm completion of the `T(2,3)` structure, success judged on
/// the tail singular values.
pub fn run_nonunique(
    config: &NonUniqueConfig,
    trials: usize,
    solver: &SolverConfig,
) -> Result<NonUniqueResult> {
    config.validate()?;
    let a = triangle_set(2, 3);
    let results: Vec<NonUniqueTrial> = (0..trials)
        .into_par_iter()
        .map(|trial| run_nonunique_trial(config, trial, solver, &a))
        .collect();
    let success_count = results.iter().filter(|t| t.success).count();
    Ok(NonUniqueResult {
        trials: results,
        success_count,
    })
}

fn base_matrix(scenario: NonUniqueScenario) -> DMatrix<f64> {
    match scenario {
        NonUniqueScenario::DenseA => DMatrix::from_element(3, 3, 3.0),
        NonUniqueScenario::IdentityA => DMatrix::identity(3, 3) * 3.0,
    }
}

fn run_nonunique_trial(
    config: &NonUniqueConfig,
    trial: usize,
    solver: &SolverConfig,
    a: &IndexSet,
) -> NonUniqueTrial {
    let base = base_matrix(config.scenario);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(0x20_0000 + trial as u64);
    let mut redraws = 0usize;
    let (known, full) = loop {
        let e = DMatrix::from_fn(3, 3, |_, _| {
            (rng.random::<f64>() * 2.0 - 1.0) * config.perturbation_scale
        });
        let vm = &base + e;
        let v: [DVector<f64>; 3] = [
            vm.column(0).into_owned(),
            vm.column(1).into_owned(),
            vm.column(2).into_owned(),
        ];
        // Near-singular triples distort the construction; redraw.
        let sv = vm.singular_values();
        let cond = sv.max() / sv.min().max(1e-300);
        if cond > 1e8 {
            redraws += 1;
            continue;
        }
        match nonunique_array(&v, &config.gamma) {
            Ok(pair) => break pair,
            Err(_) => {
                redraws += 1;
                continue;
            }
        }
    };
    let st = QuasiHankelStructure::build(a, &known).expect("valid structure");
    let (result, converged) = match minimize_nuclear_norm(&st, solver) {
        Ok(r) => (r, true),
        Err(Error::NoConvergence { partial, .. }) => (*partial, false),
        Err(e) => panic!("solver failed structurally: {e}"),
    };
    let tail_norm: f64 = result.singular_values[4..]
        .iter()
        .map(|s| s * s)
        .sum::<f64>()
        .sqrt();
    let p_ref: Vec<Complex64> = st
        .missing_set()
        .iter()
        .map(|beta| full.get(beta).expect("2A covered"))
        .collect();
    let s_hat = st.assemble(&result.p_hat).expect("length matches");
    let s_ref = st.assemble(&p_ref).expect("length matches");
    let dist_reference = (s_hat - s_ref).norm();
    NonUniqueTrial {
        trial,
        tail_norm,
        success: tail_norm < config.success_threshold,
        dist_reference,
        matches_reference: dist_reference < 1e-4,
        redraws,
        converged,
    }
}

pub fn nonunique_csv(result: &NonUniqueResult) -> String {
    let mut out = String::from(
        "trial,tail_norm,success,dist_reference,matches_reference,redraws,converged\n",
    );
    for t in &result.trials {
        let _ = writeln!(
            out,
            "{},{:.12e},{},{:.12e},{},{},{}",
            t.trial, t.tail_norm, t.success, t.dist_reference, t.matches_reference, t.redraws, t.converged
        );
    }
    out
}

/// Renders a value grid as an 8-bit binary portable graymap: cells below
/// `threshold` are black, the rest log-scaled toward white.
pub fn emit_heatmap(values: &[f64], width: usize, threshold: f64) -> Vec<u8> {
    assert!(width > 0 && values.len() % width == 0, "ragged grid");
    let height = values.len() / width;
    let vmax = values.iter().copied().fold(0.0f64, f64::max);
    let mut out = format!("P5\n{width} {height}\n255\n").into_bytes();
    let span = if vmax > threshold {
        (vmax / threshold).log10()
    } else {
        1.0
    };
    for &v in values {
        let pixel = if v < threshold {
            0u8
        } else {
            let t = ((v / threshold).log10() / span).clamp(0.0, 1.0);
            // Keep nonblack cells visually distinct from the black region.
            (64.0 + 191.0 * t).round() as u8
        };
        out.push(pixel);
    }
    out
}

/// Writes `grid.csv`, a `meta.txt` key-value file, and (for grid
/// experiments) a `grid.pgm` heatmap into the spec's output directory.
pub fn write_outputs(spec: &ExperimentSpec, csv: &str, heat: Option<(&[f64], usize)>) -> Result<PathBuf> {
    std::fs::create_dir_all(&spec.out_dir)?;
    let csv_path = spec.out_dir.join("grid.csv");
    std::fs::write(&csv_path, csv)?;
    std::fs::write(spec.out_dir.join("meta.txt"), meta_text(spec))?;
    if let Some((values, width)) = heat {
        std::fs::write(
            spec.out_dir.join("grid.pgm"),
            emit_heatmap(values, width, spec.threshold),
        )?;
    }
    Ok(csv_path)
}

fn meta_text(spec: &ExperimentSpec) -> String {
    format!(
        "experiment={}\nseed={}\ngrid={}\ntrials={}\nthreshold={:e}\nmu={:e}\nprimal_tol={:e}\ndual_tol={:e}\nmax_iters={}\nreal_extension={}\ngamma=1,1,1\nversion={}\n",
        spec.id.name(),
        spec.seed,
        spec.grid,
        spec.trials,
        spec.threshold,
        spec.solver.mu,
        spec.solver.primal_tol,
        spec.solver.dual_tol,
        spec.solver.max_iters,
        spec.solver.use_real_extension,
        env!("CARGO_PKG_VERSION"),
    )
}

/// Convenience used by the CLI and tests: writes a `meta.txt` describing a
/// non-unique run next to its CSV.
pub fn write_nonunique_outputs(
    spec: &ExperimentSpec,
    config: &NonUniqueConfig,
    result: &NonUniqueResult,
) -> Result<PathBuf> {
    std::fs::create_dir_all(&spec.out_dir)?;
    let csv_path = spec.out_dir.join("grid.csv");
    std::fs::write(&csv_path, nonunique_csv(result))?;
    let mut meta = meta_text(spec);
    let _ = writeln!(
        meta,
        "scenario={}\nsuccess_count={}\nsuccess_threshold={:e}",
        match config.scenario {
            NonUniqueScenario::DenseA => "dense-A",
            NonUniqueScenario::IdentityA => "identity-A",
        },
        result.success_count,
        config.success_threshold
    );
    std::fs::write(spec.out_dir.join("meta.txt"), meta)?;
    Ok(csv_path)
}

/// Dispatches a spec to its runner and writes outputs under `out_dir`.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<()> {
    match spec.id {
        ExperimentId::Fig2 => {
            let grid = run_fig2(spec)?;
            let values: Vec<f64> = grid.rows.iter().map(|r| r.dist_frobenius).collect();
            write_outputs(spec, &grid.to_csv(), Some((&values, grid.width)))?;
        }
        ExperimentId::Fig3Cos | ExperimentId::Fig3Double => {
            let grid = run_fig3(spec, spec.id == ExperimentId::Fig3Double)?;
            let values: Vec<f64> = grid.rows.iter().map(|r| r.dist_frobenius).collect();
            write_outputs(spec, &grid.to_csv(), Some((&values, grid.width)))?;
        }
        ExperimentId::Fig4Real | ExperimentId::Fig4Complex => {
            let grid = run_fig4(spec, spec.id == ExperimentId::Fig4Real)?;
            let values: Vec<f64> = grid.rows.iter().map(|r| r.dist_frobenius).collect();
            write_outputs(spec, &grid.to_csv(), Some((&values, grid.width)))?;
        }
        ExperimentId::Fig5 => {
            let rows = run_fig5(spec)?;
            write_outputs(spec, &fig5_csv(&rows), None)?;
        }
        ExperimentId::NonUnique => {
            let config = NonUniqueConfig::new(NonUniqueScenario::IdentityA, spec.seed);
            let result = run_nonunique(&config, spec.trials, &spec.solver)?;
            write_nonunique_outputs(spec, &config, &result)?;
        }
    }
    Ok(())
}

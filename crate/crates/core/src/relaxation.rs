//! The convex side: nuclear-norm minimization over the affine quasi-Hankel
//! structure by alternating splitting with singular-value thresholding, the
//! real 2n×2n embedding, and the subdifferential-based optimality and
//! uniqueness certificate.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::indexsets::IndexSet;
use crate::structure::{numerical_rank, QuasiHankelStructure};
use crate::{Error, Result};

/// Above this matrix size the `N×n²` certificate operator is not
/// materialized; rank and σ_min come from its (exact) `N×N` Gram matrix.
pub const DENSE_CERTIFICATE_LIMIT: usize = 32;

/// Splitting-solver configuration.
#[derive(Debug, Clone)]
pub struct SolverConfig {
    /// Penalty parameter μ of the augmented term.
    pub mu: f64,
    pub max_iters: usize,
    pub primal_tol: f64,
    pub dual_tol: f64,
    /// Run the proximal step through the real 2n×2n embedding instead of
    /// the complex SVD.
    pub use_real_extension: bool,
    /// Relative tolerance for numerical ranks reported with the result.
    pub rank_tol: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            mu: 1.0,
            max_iters: 50_000,
            primal_tol: 1e-9,
            dual_tol: 1e-9,
            use_real_extension: false,
            rank_tol: crate::structure::DEFAULT_RANK_TOL,
        }
    }
}

impl SolverConfig {
    fn validate(&self) -> Result<()> {
        if self.mu <= 0.0 || self.primal_tol <= 0.0 || self.dual_tol <= 0.0 || self.rank_tol <= 0.0
        {
            return Err(Error::InvalidInput(
                "penalty and tolerances must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// Outcome of a solver run.
#[derive(Debug, Clone)]
pub struct SolverResult {
    /// Estimated missing parameters `p̂_1..p̂_N` in ≺-order of `2A \ A`.
    pub p_hat: Vec<Complex64>,
    /// Singular values of `S(p̂)`, descending.
    pub singular_values: Vec<f64>,
    pub iterations: usize,
    pub primal_residual: f64,
    pub dual_residual: f64,
    pub nuclear_norm: f64,
}

/// Optimality/uniqueness certificate at a parameter vector `p`.
#[derive(Debug, Clone)]
pub struct Certificate {
    /// `B = U V^H` from a rank-`r` truncated SVD of `S(p)`.
    pub b: DMatrix<Complex64>,
    /// Orthogonal projector `P = U U^H` on the column space.
    pub p: DMatrix<Complex64>,
    pub rank: usize,
    /// Rank of the `N×n²` operator `A(P)`.
    pub rank_ap: usize,
    pub sigma_min_ap: f64,
    /// Minimum-Frobenius-norm multiplier solving `A(P) vec(M) = −A*(B)`.
    pub m_star: DMatrix<Complex64>,
    pub spectral_norm_m: f64,
    /// `max_k |⟨S_k, B + Q M* Qᵀ⟩|`.
    pub residual: f64,
    pub first_order: bool,
    pub unique: bool,
}

/// Slack on `‖M*‖₂ ≤ 1` for the first-order verdict.
pub const FIRST_ORDER_SLACK: f64 = 1e-4;
/// First-order residual tolerance.
pub const FIRST_ORDER_RESIDUAL_TOL: f64 = 1e-6;
/// Margin on the strict inequality `‖M*‖₂ < 1` for the uniqueness verdict.
pub const UNIQUE_MARGIN: f64 = 1e-3;
/// Lower bound on `σ_min(A(P))` for the uniqueness verdict.
pub const UNIQUE_SIGMA_MIN: f64 = 1e-6;

/// Sum of singular values.
pub fn nuclear_norm(x: &DMatrix<Complex64>) -> f64 {
    x.clone().singular_values().iter().sum()
}

/// The real 2n×2n embedding `[[Re X, −Im X], [Im X, Re X]]`; its singular
/// values are the complex ones, each doubled in multiplicity.
pub fn real_extension(x: &DMatrix<Complex64>) -> DMatrix<f64> {
    let n = x.nrows();
    let m = x.ncols();
    let mut out = DMatrix::zeros(2 * n, 2 * m);
    for i in 0..n {
        for j in 0..m {
            let v = x[(i, j)];
            out[(i, j)] = v.re;
            out[(i, j + m)] = -v.im;
            out[(i + n, j)] = v.im;
            out[(i + n, j + m)] = v.re;
        }
    }
    out
}

/// Reassembles the complex matrix from a real embedding (averaging the two
/// copies of each block).
fn complex_from_extension(ext: &DMatrix<f64>) -> DMatrix<Complex64> {
    let n = ext.nrows() / 2;
    let m = ext.ncols() / 2;
    DMatrix::from_fn(n, m, |i, j| {
        Complex64::new(
            0.5 * (ext[(i, j)] + ext[(i + n, j + m)]),
            0.5 * (ext[(i + n, j)] - ext[(i, j + m)]),
        )
    })
}

/// Proximal operator of `τ‖·‖_*`: `U max(Σ−τ, 0) V^H`.
pub fn soft_threshold_svd(x: &DMatrix<Complex64>, tau: f64) -> DMatrix<Complex64> {
    let svd = x.clone().svd(true, true);
    let u = svd.u.as_ref().expect("requested U");
    let v_t = svd.v_t.as_ref().expect("requested V^T");
    let k = svd.singular_values.len();
    let mut acc = DMatrix::zeros(x.nrows(), x.ncols());
    for t in 0..k {
        let s = (svd.singular_values[t] - tau).max(0.0);
        if s > 0.0 {
            acc += u.column(t) * v_t.row(t) * Complex64::new(s, 0.0);
        }
    }
    acc
}

/// Same proximal step routed through the real embedding: extend, threshold
/// the real matrix, reassemble.
fn soft_threshold_real_path(x: &DMatrix<Complex64>, tau: f64) -> DMatrix<Complex64> {
    let ext = real_extension(x);
    let svd = ext.clone().svd(true, true);
    let u = svd.u.as_ref().expect("requested U");
    let v_t = svd.v_t.as_ref().expect("requested V^T");
    let mut acc = DMatrix::zeros(ext.nrows(), ext.ncols());
    for t in 0..svd.singular_values.len() {
        let s = (svd.singular_values[t] - tau).max(0.0);
        if s > 0.0 {
            acc += u.column(t) * v_t.row(t) * s;
        }
    }
    complex_from_extension(&acc)
}

/// Minimizes `‖S(p)‖_*` by alternating a singular-value-thresholding step
/// on a free matrix variable with the least-squares projection onto the
/// affine structure, plus a scaled dual update.
pub fn minimize_nuclear_norm(
    structure: &QuasiHankelStructure,
    config: &SolverConfig,
) -> Result<SolverResult> {
    config.validate()?;
    let n = structure.size();
    let num_params = structure.num_params();

    if num_params == 0 {
        let s = structure.s0().clone();
        let sv = s.singular_values();
        return Ok(SolverResult {
            p_hat: Vec::new(),
            singular_values: sv.iter().copied().collect(),
            iterations: 0,
            primal_residual: 0.0,
            dual_residual: 0.0,
            nuclear_norm: sv.iter().sum(),
        });
    }

    let tau = 1.0 / config.mu;
    let scale = structure.s0().norm().max(1.0);
    let mut p = vec![Complex64::ZERO; num_params];
    let mut s = structure.assemble(&p)?;
    let mut u: DMatrix<Complex64> = DMatrix::zeros(n, n);
    let mut primal = f64::INFINITY;
    let mut dual = f64::INFINITY;

    for iter in 1..=config.max_iters {
        let x = if config.use_real_extension {
            soft_threshold_real_path(&(&s - &u), tau)
        } else {
            soft_threshold_svd(&(&s - &u), tau)
        };
        let p_new = structure.project_onto_structure(&(&x + &u));
        let s_new = structure.assemble(&p_new)?;
        primal = (&x - &s_new).norm();
        dual = config.mu * (&s_new - &s).norm();
        u += &x - &s_new;
        p = p_new;
        s = s_new;
        if primal <= config.primal_tol * scale && dual <= config.dual_tol * scale {
            let sv = s.clone().singular_values();
            return Ok(SolverResult {
                p_hat: p,
                singular_values: sv.iter().copied().collect(),
                iterations: iter,
                primal_residual: primal,
                dual_residual: dual,
                nuclear_norm: sv.iter().sum(),
            });
        }
    }

    let sv = s.clone().singular_values();
    Err(Error::NoConvergence {
        iterations: config.max_iters,
        primal_residual: primal,
        dual_residual: dual,
        partial: Box::new(SolverResult {
            p_hat: p,
            singular_values: sv.iter().copied().collect(),
            iterations: config.max_iters,
            primal_residual: primal,
            dual_residual: dual,
            nuclear_norm: sv.iter().sum(),
        }),
    })
}

/// The dense `N×n²` matrix of the operator `M ↦ A*(Q M Qᵀ)` for a given
/// orthogonal projector complement `Q = I − P`: row `k` is the
/// (column-major) vectorization of `C_k[a,b] = Σ_{(i,j)∈orbit(β_k)}
/// Q[i,a] Q[j,b]`.
pub fn condition_matrix(
    structure: &QuasiHankelStructure,
    q: &DMatrix<Complex64>,
) -> DMatrix<Complex64> {
    let n = structure.size();
    let num_params = structure.num_params();
    let mut out = DMatrix::zeros(num_params, n * n);
    for k in 1..=num_params {
        for a in 0..n {
            for b in 0..n {
                let mut acc = Complex64::ZERO;
                for &(i, j) in structure.orbit_of(k) {
                    acc += q[(i, a)] * q[(j, b)];
                }
                // Column-major vec: entry (a,b) of C_k sits at a + b·n.
                out[(k - 1, b * n + a)] = acc;
            }
        }
    }
    out
}

fn spectral_norm(x: &DMatrix<Complex64>) -> f64 {
    if x.nrows() == 0 || x.ncols() == 0 {
        return 0.0;
    }
    x.clone().singular_values().max()
}

/// Evaluates the first-order optimality and uniqueness certificate of the
/// nuclear-norm problem at the parameter vector `p`.
pub fn certificate(
    structure: &QuasiHankelStructure,
    p: &[Complex64],
    rank_tol: f64,
) -> Result<Certificate> {
    let n = structure.size();
    let num_params = structure.num_params();
    let s = structure.assemble(p)?;
    let svd = s.clone().svd(true, true);
    let u_full = svd.u.as_ref().expect("requested U");
    let v_t = svd.v_t.as_ref().expect("requested V^T");
    let smax = svd.singular_values.max();
    let rank = svd
        .singular_values
        .iter()
        .filter(|&&sv| smax > 0.0 && sv > rank_tol * smax)
        .count();

    // B = U_r V_r^H and P = U_r U_r^H from the rank-r truncation.
    let mut b = DMatrix::zeros(n, n);
    let mut proj = DMatrix::zeros(n, n);
    for t in 0..rank {
        b += u_full.column(t) * v_t.row(t);
        b_sym_accumulate(&mut proj, &u_full.column(t).into_owned());
    }
    let q = DMatrix::identity(n, n) - &proj;

    // Right-hand side −A*(B).
    let rhs = DVector::from_vec(
        structure
            .adjoint(&b)
            .into_iter()
            .map(|v| -v)
            .collect::<Vec<_>>(),
    );

    let (m_star, rank_ap, sigma_min_ap) = if n <= DENSE_CERTIFICATE_LIMIT {
        let ap = condition_matrix(structure, &q);
        let ap_svd = ap.clone().svd(true, true);
        let apmax = ap_svd.singular_values.max();
        let rank_ap = ap_svd
            .singular_values
            .iter()
            .filter(|&&sv| apmax > 0.0 && sv > crate::structure::DEFAULT_RANK_TOL * apmax)
            .count();
        let sigma_min = ap_svd.singular_values.min();
        let vec_m = ap_svd
            .solve(&rhs, crate::structure::DEFAULT_RANK_TOL * apmax.max(1e-300))
            .map_err(|e| Error::InvalidInput(format!("least-norm solve failed: {e}")))?;
        let m = DMatrix::from_fn(n, n, |a, bb| vec_m[bb * n + a]);
        (m, rank_ap, sigma_min)
    } else {
        // Gram path: solve A A^H y = rhs, M = unvec(A^H y). Exact, avoids
        // the n²-column materialization of the SVD.
        let ap = condition_matrix(structure, &q);
        let gram = &ap * ap.adjoint();
        let eig = nalgebra::SymmetricEigen::new(gram.clone());
        let emax = eig.eigenvalues.max().max(0.0);
        let rank_ap = eig
            .eigenvalues
            .iter()
            .filter(|&&ev| emax > 0.0 && ev > crate::structure::DEFAULT_RANK_TOL * emax)
            .count();
        let sigma_min = eig.eigenvalues.min().max(0.0).sqrt();
        // Pseudo-inverse apply through the eigenbasis.
        let coeffs = eig.eigenvectors.adjoint() * &rhs;
        let mut y = DVector::zeros(num_params);
        for t in 0..num_params {
            if eig.eigenvalues[t] > crate::structure::DEFAULT_RANK_TOL * emax {
                y += eig.eigenvectors.column(t) * (coeffs[t] / eig.eigenvalues[t]);
            }
        }
        let vec_m = ap.adjoint() * y;
        let m = DMatrix::from_fn(n, n, |a, bb| vec_m[bb * n + a]);
        (m, rank_ap, sigma_min)
    };

    // Residual of the stationarity condition A*(B + Q M* Qᵀ) = 0.
    let inner = &b + &q * &m_star * q.transpose();
    let residual = structure
        .adjoint(&inner)
        .iter()
        .map(|v| v.norm())
        .fold(0.0f64, f64::max);

    let norm_m = spectral_norm(&m_star);
    let first_order = residual <= FIRST_ORDER_RESIDUAL_TOL && norm_m <= 1.0 + FIRST_ORDER_SLACK;
    let unique = first_order
        && norm_m < 1.0 - UNIQUE_MARGIN
        && rank_ap == num_params
        && sigma_min_ap > UNIQUE_SIGMA_MIN;

    Ok(Certificate {
        b,
        p: proj,
        rank,
        rank_ap,
        sigma_min_ap,
        m_star,
        spectral_norm_m: norm_m,
        residual,
        first_order,
        unique,
    })
}

/// Rank-one Hermitian accumulation `P += u u^H`.
fn b_sym_accumulate(p: &mut DMatrix<Complex64>, u: &DVector<Complex64>) {
    let n = u.len();
    for a in 0..n {
        for b in 0..n {
            p[(a, b)] += u[a] * u[b].conj();
        }
    }
}

/// The block projector `P₀ = diag(I_s, 0)` on an `#A`-dimensional space.
pub fn simple_projector(a: &IndexSet, s: usize) -> Result<DMatrix<Complex64>> {
    let n = a.len();
    if s > n {
        return Err(Error::InvalidInput(format!(
            "block size {s} exceeds #A = {n}"
        )));
    }
    let mut p = DMatrix::zeros(n, n);
    for i in 0..s {
        p[(i, i)] = Complex64::ONE;
    }
    Ok(p)
}

/// Frobenius distance between projectors, together with the cross-check
/// identity value `sqrt(2‖(I−P₀)U‖²_F)` computed from an orthonormal basis
/// `U` of the range of `P` (valid when the projectors have equal rank).
#[derive(Debug, Clone, Copy)]
pub struct ProjectorDistance {
    pub distance: f64,
    pub identity_value: f64,
}

pub fn projector_distance(
    p: &DMatrix<Complex64>,
    p0: &DMatrix<Complex64>,
) -> Result<ProjectorDistance> {
    if p.nrows() != p0.nrows() || p.ncols() != p0.ncols() {
        return Err(Error::DimensionMismatch {
            expected: p.nrows(),
            found: p0.nrows(),
        });
    }
    let distance = (p - p0).norm();
    let u = range_basis(p, crate::structure::DEFAULT_RANK_TOL);
    let n = p.nrows();
    let residual = (DMatrix::identity(n, n) - p0) * u;
    let identity_value = (2.0 * residual.norm().powi(2)).sqrt();
    Ok(ProjectorDistance {
        distance,
        identity_value,
    })
}

/// Orthonormal basis of the range of a (near-)projector: left singular
/// vectors with singular value above `tol · σ_max`.
fn range_basis(p: &DMatrix<Complex64>, tol: f64) -> DMatrix<Complex64> {
    let svd = p.clone().svd(true, false);
    let u = svd.u.as_ref().expect("requested U");
    let smax = svd.singular_values.max();
    let r = svd
        .singular_values
        .iter()
        .filter(|&&sv| smax > 0.0 && sv > tol * smax)
        .count();
    u.columns(0, r).into_owned()
}

/// Orthogonal projector onto the column space of a matrix.
pub fn column_space_projector(v: &DMatrix<Complex64>, tol: f64) -> DMatrix<Complex64> {
    let u = range_basis(v, tol);
    &u * u.adjoint()
}

/// One row of a projector-limit table: the scaling `ρ`, the projector
/// distance to the limit, and the rank of `P(ρ)`.
#[derive(Debug, Clone, Copy)]
pub struct LimitRow {
    pub rho: f64,
    pub distance: f64,
    pub rank: usize,
}

/// For each `ρ`, the projector onto the column space of `V_A(ρy_1..ρy_r)`
/// and its Frobenius distance to the small-`ρ` block limit
/// `diag(I_K, P₂, 0)`. Returns the table and the limit projector.
pub fn projector_limit_check(
    a: &IndexSet,
    points: &[Vec<Complex64>],
    rho_list: &[f64],
    tol: f64,
) -> Result<(Vec<LimitRow>, DMatrix<Complex64>)> {
    let limit = limit_projector(a, points, tol)?;
    let mut rows = Vec::with_capacity(rho_list.len());
    for &rho in rho_list {
        if rho <= 0.0 {
            return Err(Error::InvalidInput("rho must be positive".into()));
        }
        let scaled: Vec<Vec<Complex64>> = points
            .iter()
            .map(|z| z.iter().map(|&zi| zi * rho).collect())
            .collect();
        let v = crate::structure::quasi_vandermonde(a, &scaled)?;
        let p = column_space_projector(&v, tol);
        rows.push(LimitRow {
            rho,
            distance: (&p - &limit).norm(),
            rank: numerical_rank(&p, tol),
        });
    }
    Ok((rows, limit))
}

/// The `ρ → 0` limit of the column-space projector of `V_A(ρy)`:
/// `diag(I_K, P₂, 0)` where `K = #T(m, d₀−1)`, `d₀` is the smallest degree
/// with `#T(m,d₀) ≥ r`, and `P₂` (rank `r−K`) projects onto the degree-`d₀`
/// image of the kernel of the lower-degree Vandermonde block.
pub fn limit_projector(
    a: &IndexSet,
    points: &[Vec<Complex64>],
    tol: f64,
) -> Result<DMatrix<Complex64>> {
    let m = a.dim();
    let r = points.len();
    let n = a.len();
    // Smallest d₀ with #T(m, d₀) ≥ r.
    let mut d0 = 0u32;
    while (crate::indexsets::triangle_set(m, d0).len()) < r {
        d0 += 1;
    }
    let c1 = match d0.checked_sub(1) {
        Some(t) => crate::indexsets::triangle_set(m, t),
        None => IndexSet::empty(m),
    };
    let k = c1.len();
    let layer = crate::indexsets::degree_set(m, d0);
    let l = layer.len();
    if k + l > n {
        return Err(Error::InvalidInput(
            "A does not contain the full degree-d0 layer".into(),
        ));
    }
    if k > 0 {
        let v1 = crate::structure::quasi_vandermonde(&c1, points)?;
        if numerical_rank(&v1, tol) < k {
            return Err(Error::NotIndependent);
        }
    }

    let mut limit: DMatrix<Complex64> = DMatrix::zeros(n, n);
    for i in 0..k {
        limit[(i, i)] = Complex64::ONE;
    }
    if r > k {
        // Kernel of the K×r block V_{C1}(y) via its Gram matrix; the
        // degree-d₀ rows applied to the kernel span the P₂ range.
        let v1 = if k > 0 {
            crate::structure::quasi_vandermonde(&c1, points)?
        } else {
            DMatrix::zeros(0, r)
        };
        let gram = v1.adjoint() * &v1;
        let eig = nalgebra::SymmetricEigen::new(gram);
        let emax = eig.eigenvalues.max().max(0.0);
        let mut kernel_cols = Vec::new();
        for t in 0..r {
            if emax == 0.0 || eig.eigenvalues[t] <= tol * tol * emax.max(1.0) || eig.eigenvalues[t] <= 1e-14 * emax {
                kernel_cols.push(eig.eigenvectors.column(t).into_owned());
            }
        }
        if kernel_cols.len() < r - k {
            // Loosen: take the r−K smallest eigenpairs.
            let mut order: Vec<usize> = (0..r).collect();
            order.sort_by(|&i, &j| eig.eigenvalues[i].partial_cmp(&eig.eigenvalues[j]).unwrap());
            kernel_cols = order[..r - k]
                .iter()
                .map(|&t| eig.eigenvectors.column(t).into_owned())
                .collect();
        }
        let kernel = DMatrix::from_columns(&kernel_cols[..r - k]);
        let v2 = crate::structure::quasi_vandermonde(&layer, points)?;
        let span = v2 * kernel;
        let p2 = column_space_projector(&span, tol);
        for a_i in 0..l {
            for b_i in 0..l {
                limit[(k + a_i, k + b_i)] = p2[(a_i, b_i)];
            }
        }
    }
    Ok(limit)
}

//! Exact minimal-rank completion of univariate Hankel matrices.
//!
//! A truncated sequence `h_0..h_d` has a characteristic rank `r`: the
//! smallest order of a linear recurrence `q_0 h_k + … + q_r h_{k+r} = 0`
//! holding for all admissible `k`. Continuing the recurrence past `h_d`
//! produces the canonical minimal-rank completion, which is unique whenever
//! `r < (d+2)/2`. The characteristic polynomial's roots give the explicit
//! exponential-sum form of the sequence.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::{Error, Result};

/// Default relative tolerance for kernel detection in the rank scan.
pub const DEFAULT_RECURRENCE_TOL: f64 = 1e-9;

/// Radius for clustering nearby roots of the characteristic polynomial
/// into a single root with multiplicity.
pub const DEFAULT_CLUSTER_RADIUS: f64 = 1e-6;

/// A finite sequence `h_0..h_d`.
#[derive(Debug, Clone, PartialEq)]
pub struct HankelSequence {
    values: Vec<Complex64>,
}

impl HankelSequence {
    pub fn new(values: Vec<Complex64>) -> Self {
        assert!(!values.is_empty(), "sequence must have d >= 0");
        Self { values }
    }

    /// Truncation order `d` (the sequence has `d+1` values).
    pub fn order(&self) -> usize {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }
}

/// Characteristic rank, vector and (optionally) factored roots.
#[derive(Debug, Clone)]
pub struct CharacteristicInfo {
    pub rank: usize,
    /// Coefficients `q_0..q_r`, unit 2-norm, last nonzero coefficient real
    /// positive.
    pub q: Vec<Complex64>,
    /// Roots `(λ_k, ν_k)` of the characteristic polynomial, when factored.
    pub roots: Option<Vec<(Complex64, usize)>>,
}

/// The recurrence system for order `r`: `R[k][j] = h_{k+j}`, size
/// `(d-r+1) × (r+1)`. A nonzero kernel vector of `R` is a characteristic
/// vector of order `r`.
fn recurrence_matrix(h: &HankelSequence, r: usize) -> DMatrix<Complex64> {
    let d = h.order();
    DMatrix::from_fn(d - r + 1, r + 1, |k, j| h.values[k + j])
}

/// Eigenvector of the smallest eigenvalue of the Hermitian Gram matrix
/// `R^H R` (the kernel direction when `R` is rank-deficient).
fn smallest_gram_vector(r_mat: &DMatrix<Complex64>) -> DVector<Complex64> {
    let gram = r_mat.adjoint() * r_mat;
    let eig = nalgebra::SymmetricEigen::new(gram);
    let mut min_idx = 0;
    for (i, &ev) in eig.eigenvalues.iter().enumerate() {
        if ev < eig.eigenvalues[min_idx] {
            min_idx = i;
        }
    }
    eig.eigenvectors.column(min_idx).into_owned()
}

/// True iff the recurrence system has a numerical kernel at relative
/// tolerance `tol`: either more columns than rows, or `σ_min ≤ tol·σ_max`.
fn has_kernel(h: &HankelSequence, r: usize, tol: f64) -> bool {
    let d = h.order();
    if r + 1 > d - r + 1 {
        return true;
    }
    let sv = recurrence_matrix(h, r).singular_values();
    let smax = sv.max();
    let smin = sv.min();
    smax == 0.0 || smin <= tol * smax
}

/// The characteristic rank: smallest `r` with a nonzero kernel vector of
/// the recurrence system at relative tolerance `tol`.
pub fn hankel_rank(h: &HankelSequence, tol: f64) -> usize {
    let d = h.order();
    (0..=d).find(|&r| has_kernel(h, r, tol)).unwrap_or(d + 1)
}

/// Unit-norm kernel vector of the order-`r` recurrence system, normalized
/// so the last nonzero coefficient is real positive.
pub fn characteristic_vector(h: &HankelSequence, r: usize, tol: f64) -> Result<Vec<Complex64>> {
    let d = h.order();
    if r > d || !has_kernel(h, r, tol) {
        return Err(Error::EmptyKernel { order: r });
    }
    let v = smallest_gram_vector(&recurrence_matrix(h, r));
    Ok(normalize_characteristic(v.as_slice()))
}

fn normalize_characteristic(q: &[Complex64]) -> Vec<Complex64> {
    let norm = q.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    let mut out: Vec<Complex64> = q.iter().map(|x| x / norm).collect();
    let last_nonzero = out
        .iter()
        .rposition(|x| x.norm() > 1e-14)
        .expect("kernel vector is nonzero");
    let phase = out[last_nonzero] / out[last_nonzero].norm();
    for x in &mut out {
        *x /= phase;
    }
    // Pin the exact value: the last nonzero coefficient is real.
    out[last_nonzero] = Complex64::new(out[last_nonzero].re, 0.0);
    out
}

/// Rank, characteristic vector and clustered roots in one call.
pub fn characteristic_info(h: &HankelSequence, tol: f64) -> Result<CharacteristicInfo> {
    let rank = hankel_rank(h, tol);
    let q = characteristic_vector(h, rank, tol)?;
    let roots = if q.last().map(|x| x.norm()).unwrap_or(0.0) > tol {
        Some(cluster_roots(&poly_roots(&q), DEFAULT_CLUSTER_RADIUS))
    } else {
        None
    };
    Ok(CharacteristicInfo { rank, q, roots })
}

/// Continues the recurrence to produce `h_{d+1}..h_{2d}`.
///
/// Requires `|q_r| > tol·‖q‖`; the degenerate `q_r ≈ 0` case is a typed
/// error.
pub fn canonical_completion(h: &HankelSequence, q: &[Complex64]) -> Result<Vec<Complex64>> {
    let r = q.len() - 1;
    let qnorm = q.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    let qr = q[r];
    if qr.norm() <= DEFAULT_RECURRENCE_TOL * qnorm {
        return Err(Error::DegenerateRecurrence);
    }
    let d = h.order();
    let mut ext: Vec<Complex64> = h.values.to_vec();
    for j in d + 1..=2 * d {
        // h_j = -(q_0 h_{j-r} + ... + q_{r-1} h_{j-1}) / q_r
        let mut acc = Complex64::ZERO;
        for (t, &qt) in q.iter().enumerate().take(r) {
            acc += qt * ext[j - r + t];
        }
        ext.push(-acc / qr);
    }
    Ok(ext[d + 1..].to_vec())
}

/// Evaluates the canonical representation
/// `h_k = Σ_j c_j(k) λ_j^k + Σ_l c_{1,l} δ(k,l)` for `k = 0..d`.
///
/// `coeffs[j]` holds the `ν_j` polynomial coefficients `(c_{j,0}, …,
/// c_{j,ν_j-1})` of `c_j(k) = Σ_t c_{j,t} k^t`; a zero root contributes the
/// Kronecker terms instead.
pub fn canonical_representation(
    roots: &[(Complex64, usize)],
    coeffs: &[Vec<Complex64>],
    d: usize,
) -> Result<HankelSequence> {
    if roots.len() != coeffs.len() {
        return Err(Error::DimensionMismatch {
            expected: roots.len(),
            found: coeffs.len(),
        });
    }
    for ((_, nu), cv) in roots.iter().zip(coeffs) {
        if *nu == 0 || cv.len() != *nu {
            return Err(Error::InvalidInput(
                "each root needs multiplicity >= 1 and as many coefficients".into(),
            ));
        }
    }
    let mut values = vec![Complex64::ZERO; d + 1];
    for (k, v) in values.iter_mut().enumerate() {
        for ((lambda, nu), cv) in roots.iter().zip(coeffs) {
            if lambda.norm() == 0.0 {
                // Kronecker part: c_{1,l} δ(k,l) for l = 0..ν-1.
                if k < *nu {
                    *v += cv[k];
                }
            } else {
                let poly: Complex64 = cv
                    .iter()
                    .enumerate()
                    .map(|(t, &c)| c * (k as f64).powi(t as i32))
                    .sum();
                *v += poly * lambda.powu(k as u32);
            }
        }
    }
    Ok(HankelSequence::new(values))
}

/// The banded lower Toeplitz matrix `K ∈ C^{n×(n-r)}` whose columns carry
/// `(q_0..q_r)` (normalized to `q_r = 1`); its columns span the nullspace
/// of the canonically completed Hankel matrix.
pub fn nullspace_toeplitz(q: &[Complex64], n: usize) -> Result<DMatrix<Complex64>> {
    let r = q.len() - 1;
    let qr = q[r];
    if qr.norm() == 0.0 {
        return Err(Error::DegenerateRecurrence);
    }
    if n < r {
        return Err(Error::InvalidInput(format!("n = {n} smaller than r = {r}")));
    }
    let cols = n - r;
    let mut k_mat = DMatrix::zeros(n, cols);
    for col in 0..cols {
        for (t, &qt) in q.iter().enumerate() {
            k_mat[(col + t, col)] = qt / qr;
        }
    }
    Ok(k_mat)
}

/// True iff the minimal-rank completion of `h` is unique:
/// `hrank(h) < (d+2)/2`.
pub fn is_unique_completion(h: &HankelSequence, tol: f64) -> bool {
    let r = hankel_rank(h, tol);
    (2 * r) < h.order() + 2
}

/// Roots of `q_0 + q_1 z + … + q_r z^r` (leading coefficient nonzero) by
/// Durand-Kerner iteration. Degree here never exceeds the matrix size, so
/// the fixed-point iteration converges quickly.
pub fn poly_roots(q: &[Complex64]) -> Vec<Complex64> {
    // Strip trailing (numerically) zero coefficients.
    let qnorm = q.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    let deg = match q.iter().rposition(|x| x.norm() > 1e-12 * qnorm) {
        Some(i) => i,
        None => return Vec::new(),
    };
    if deg == 0 {
        return Vec::new();
    }
    let lead = q[deg];
    let monic: Vec<Complex64> = q[..=deg].iter().map(|x| x / lead).collect();

    let eval = |z: Complex64| -> Complex64 {
        let mut acc = Complex64::ZERO;
        for &c in monic.iter().rev() {
            acc = acc * z + c;
        }
        acc
    };

    // Initial guesses on a circle of non-real angle offsets.
    let radius = 1.0
        + monic[..deg]
            .iter()
            .map(|c| c.norm())
            .fold(0.0f64, f64::max);
    let mut roots: Vec<Complex64> = (0..deg)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / deg as f64 + 0.4;
            radius * Complex64::new(theta.cos(), theta.sin())
        })
        .collect();

    for _ in 0..500 {
        let mut max_step: f64 = 0.0;
        for i in 0..deg {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..deg {
                if j != i {
                    denom *= roots[i] - roots[j];
                }
            }
            if denom.norm() == 0.0 {
                continue;
            }
            let step = eval(roots[i]) / denom;
            roots[i] -= step;
            max_step = max_step.max(step.norm());
        }
        if max_step < 1e-14 * radius {
            break;
        }
    }
    roots
}

/// Groups roots within `radius` of each other into `(center, multiplicity)`
/// pairs; centers are cluster means.
pub fn cluster_roots(roots: &[Complex64], radius: f64) -> Vec<(Complex64, usize)> {
    let mut clusters: Vec<(Complex64, usize)> = Vec::new();
    for &z in roots {
        match clusters
            .iter_mut()
            .find(|(center, _)| (*center - z).norm() <= radius)
        {
            Some((center, count)) => {
                *center = (*center * *count as f64 + z) / (*count as f64 + 1.0);
                *count += 1;
            }
            None => clusters.push((z, 1)),
        }
    }
    clusters
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn geometric(lambda: Complex64, d: usize) -> HankelSequence {
        HankelSequence::new((0..=d as u32).map(|k| lambda.powu(k)).collect())
    }

    /// Brute-force oracle: maximal numerical rank over all Hankel matrices
    /// `[h_{i+j}]` of size a×b buildable from `h_0..h_d` alone.
    pub(crate) fn max_submatrix_rank_oracle(h: &HankelSequence, tol: f64) -> usize {
        let d = h.order();
        let mut best = 0;
        for a in 1..=d + 1 {
            for b in 1..=d + 2 - a {
                let m = DMatrix::from_fn(a, b, |i, j| h.values()[i + j]);
                best = best.max(crate::structure::numerical_rank(&m, tol));
            }
        }
        best
    }

    #[test]
    fn rank_of_geometric_sequence() {
        assert_eq!(hankel_rank(&geometric(c(0.7, 0.0), 5), DEFAULT_RECURRENCE_TOL), 1);
        assert_eq!(hankel_rank(&geometric(c(0.3, -0.4), 5), DEFAULT_RECURRENCE_TOL), 1);
    }

    #[test]
    fn rank_of_zero_padded_sequence() {
        // Eq-(14)-style: (c_0, ..., c_{r-1}, 0, ..., 0) has rank r.
        for r in 1..=3usize {
            let d = 6;
            let mut v = vec![Complex64::ZERO; d + 1];
            for (l, x) in v.iter_mut().enumerate().take(r) {
                *x = c(1.0 + l as f64, -0.5);
            }
            let h = HankelSequence::new(v);
            assert_eq!(hankel_rank(&h, DEFAULT_RECURRENCE_TOL), r);
        }
    }

    #[test]
    fn rank_of_two_exponential_sum() {
        // h_k = 2^k + 1 satisfies h_{k+2} = 3h_{k+1} - 2h_k, rank 2.
        let h = HankelSequence::new(
            (0..=4u32).map(|k| c(2f64.powi(k as i32) + 1.0, 0.0)).collect(),
        );
        assert_eq!(hankel_rank(&h, DEFAULT_RECURRENCE_TOL), 2);
        let q = characteristic_vector(&h, 2, DEFAULT_RECURRENCE_TOL).unwrap();
        // q ∝ (2, -3, 1) from (z-1)(z-2).
        let scale = q[2].re / 1.0;
        assert!((q[0] - c(2.0 * scale, 0.0)).norm() < 1e-10);
        assert!((q[1] - c(-3.0 * scale, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn zero_sequence_has_rank_zero() {
        let h = HankelSequence::new(vec![Complex64::ZERO; 5]);
        assert_eq!(hankel_rank(&h, DEFAULT_RECURRENCE_TOL), 0);
        assert!(is_unique_completion(&h, DEFAULT_RECURRENCE_TOL));
    }

    #[test]
    fn characteristic_vector_geometric() {
        let lambda = c(0.4, 0.3);
        let q = characteristic_vector(&geometric(lambda, 5), 1, DEFAULT_RECURRENCE_TOL).unwrap();
        // q ∝ (-λ, 1): with unit norm and q_1 real positive.
        assert!(q[1].re > 0.0);
        assert!(q[1].im.abs() < 1e-14);
        assert!((q[0] / q[1] + lambda).norm() < 1e-10);
    }

    #[test]
    fn characteristic_vector_zero_padded() {
        let h = HankelSequence::new(vec![c(2.0, 0.0), c(-1.0, 0.0), Complex64::ZERO, Complex64::ZERO, Complex64::ZERO]);
        let r = hankel_rank(&h, DEFAULT_RECURRENCE_TOL);
        assert_eq!(r, 2);
        let q = characteristic_vector(&h, r, DEFAULT_RECURRENCE_TOL).unwrap();
        // q ∝ (0, 0, 1): q(z) = z^r.
        assert!(q[0].norm() < 1e-12);
        assert!(q[1].norm() < 1e-12);
        assert!((q[2] - c(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn characteristic_vector_wrong_rank_errors() {
        let h = HankelSequence::new((0..=6u32).map(|k| c(2f64.powi(k as i32) + 1.0, 0.0)).collect());
        assert!(characteristic_vector(&h, 1, DEFAULT_RECURRENCE_TOL).is_err());
    }

    #[test]
    fn completion_of_geometric_sequence() {
        let lambda = c(0.5, 0.0);
        let d = 5;
        let h = geometric(lambda, d);
        let q = characteristic_vector(&h, 1, DEFAULT_RECURRENCE_TOL).unwrap();
        let ext = canonical_completion(&h, &q).unwrap();
        for (k, v) in ext.iter().enumerate() {
            let expected = lambda.powu((d + 1 + k) as u32);
            assert!((v - expected).norm() < 1e-12);
        }
    }

    #[test]
    fn completion_of_zero_padded_is_zero() {
        let h = HankelSequence::new(vec![
            c(1.0, 0.0), c(2.0, 0.0), Complex64::ZERO, Complex64::ZERO,
            Complex64::ZERO, Complex64::ZERO, Complex64::ZERO,
        ]);
        let info = characteristic_info(&h, DEFAULT_RECURRENCE_TOL).unwrap();
        let ext = canonical_completion(&h, &info.q).unwrap();
        for v in ext {
            assert!(v.norm() < 1e-12);
        }
    }

    #[test]
    fn completion_of_exponential_sum() {
        // h_k = 2^k + 1, d = 4 → (33, 65, 129, 257).
        let h = HankelSequence::new(
            (0..=4u32).map(|k| c(2f64.powi(k as i32) + 1.0, 0.0)).collect(),
        );
        let q = characteristic_vector(&h, 2, DEFAULT_RECURRENCE_TOL).unwrap();
        let ext = canonical_completion(&h, &q).unwrap();
        let expected = [33.0, 65.0, 129.0, 257.0];
        for (v, &e) in ext.iter().zip(&expected) {
            assert!((v - c(e, 0.0)).norm() < 1e-9 * e);
        }
    }

    #[test]
    fn completion_rejects_degenerate_leading_coefficient() {
        let h = geometric(c(0.5, 0.0), 4);
        let q = vec![c(1.0, 0.0), Complex64::ZERO];
        assert!(matches!(
            canonical_completion(&h, &q),
            Err(Error::DegenerateRecurrence)
        ));
    }

    #[test]
    fn recurrence_residual_after_completion() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let d = 6;
            let r = rng.random_range(1..=3usize);
            let roots: Vec<Complex64> = (0..r)
                .map(|_| c(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
                .collect();
            let coeffs: Vec<Complex64> = (0..r).map(|_| c(rng.random::<f64>() + 0.5, 0.0)).collect();
            let h = HankelSequence::new(
                (0..=d)
                    .map(|k| {
                        roots
                            .iter()
                            .zip(&coeffs)
                            .map(|(l, c)| c * l.powu(k as u32))
                            .sum()
                    })
                    .collect(),
            );
            let info = characteristic_info(&h, DEFAULT_RECURRENCE_TOL).unwrap();
            assert_eq!(info.rank, r);
            let ext = canonical_completion(&h, &info.q).unwrap();
            let mut all: Vec<Complex64> = h.values().to_vec();
            all.extend(ext);
            let qn = info.q.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
            let hn = all.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
            for k in 0..=2 * d - r {
                let res: Complex64 = info.q.iter().enumerate().map(|(j, &qj)| qj * all[k + j]).sum();
                assert!(res.norm() <= 1e-10 * hn * qn, "residual {} too large", res.norm());
            }
        }
    }

    #[test]
    fn completed_matrix_has_rank_r() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let d = 6usize;
            let r = rng.random_range(1..=3usize);
            let roots: Vec<Complex64> = (0..r)
                .map(|i| c(0.3 + 0.2 * i as f64, rng.random::<f64>() * 0.2))
                .collect();
            let coeffs: Vec<Complex64> = (0..r).map(|_| c(1.0 + rng.random::<f64>(), 0.0)).collect();
            let h = HankelSequence::new(
                (0..=d)
                    .map(|k| roots.iter().zip(&coeffs).map(|(l, c)| c * l.powu(k as u32)).sum())
                    .collect(),
            );
            let info = characteristic_info(&h, DEFAULT_RECURRENCE_TOL).unwrap();
            let ext = canonical_completion(&h, &info.q).unwrap();
            let mut all: Vec<Complex64> = h.values().to_vec();
            all.extend(ext);
            let full = DMatrix::from_fn(d + 1, d + 1, |i, j| all[i + j]);
            assert_eq!(crate::structure::numerical_rank(&full, 1e-8), r);
        }
    }

    #[test]
    fn nullspace_toeplitz_stencil_and_annihilation() {
        let lambda = c(0.6, 0.0);
        let q = vec![-lambda, c(1.0, 0.0)];
        let k = nullspace_toeplitz(&q, 3).unwrap();
        assert_eq!(k.nrows(), 3);
        assert_eq!(k.ncols(), 2);
        assert_eq!(k[(0, 0)], -lambda);
        assert_eq!(k[(1, 0)], c(1.0, 0.0));
        assert_eq!(k[(2, 0)], Complex64::ZERO);
        assert_eq!(k[(1, 1)], -lambda);
        assert_eq!(k[(2, 1)], c(1.0, 0.0));

        // H_completed · K ≈ 0 for random simple-root instances.
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..10 {
            let d = 5usize;
            let r = 2;
            let roots: Vec<Complex64> = vec![
                c(rng.random::<f64>() - 0.5, rng.random::<f64>() * 0.3),
                c(rng.random::<f64>() + 0.2, -rng.random::<f64>() * 0.3),
            ];
            let coeffs = [c(1.0, 0.0), c(0.7, 0.4)];
            let h = HankelSequence::new(
                (0..=d)
                    .map(|k| roots.iter().zip(&coeffs).map(|(l, c)| c * l.powu(k as u32)).sum())
                    .collect(),
            );
            let info = characteristic_info(&h, DEFAULT_RECURRENCE_TOL).unwrap();
            if info.rank != r {
                continue;
            }
            let ext = canonical_completion(&h, &info.q).unwrap();
            let mut all: Vec<Complex64> = h.values().to_vec();
            all.extend(ext);
            let full = DMatrix::from_fn(d + 1, d + 1, |i, j| all[i + j]);
            let k_mat = nullspace_toeplitz(&info.q, d + 1).unwrap();
            let prod = &full * &k_mat;
            assert!(prod.norm() <= 1e-10 * full.norm() * k_mat.norm());
        }

        // r = n: no nullspace columns.
        let q3 = vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)];
        let empty = nullspace_toeplitz(&q3, 3).unwrap();
        assert_eq!(empty.ncols(), 0);
    }

    #[test]
    fn uniqueness_boundary_cases() {
        assert!(is_unique_completion(&geometric(c(0.5, 0.0), 3), DEFAULT_RECURRENCE_TOL));
        // d = 2 with rank 2: 2 < 2 fails.
        let h = HankelSequence::new(vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        let hr = hankel_rank(&h, DEFAULT_RECURRENCE_TOL);
        assert_eq!(hr, 1);
        let h2 = HankelSequence::new(vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
        assert_eq!(hankel_rank(&h2, DEFAULT_RECURRENCE_TOL), 2);
        assert!(!is_unique_completion(&h2, DEFAULT_RECURRENCE_TOL));
    }

    #[test]
    fn representation_forms() {
        // Single root: geometric sequence.
        let lambda = c(0.8, -0.1);
        let h = canonical_representation(&[(lambda, 1)], &[vec![c(1.0, 0.0)]], 5).unwrap();
        for (k, v) in h.values().iter().enumerate() {
            assert!((v - lambda.powu(k as u32)).norm() < 1e-14);
        }

        // Zero root of multiplicity r: the zero-padded form.
        let h = canonical_representation(
            &[(Complex64::ZERO, 3)],
            &[vec![c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)]],
            6,
        )
        .unwrap();
        let expect = [1.0, 2.0, 3.0, 0.0, 0.0, 0.0, 0.0];
        for (v, &e) in h.values().iter().zip(&expect) {
            assert_eq!(*v, c(e, 0.0));
        }

        // Double root ρ with linear polynomial (t·a + 1)·ρ^t.
        let rho = c(0.5, 0.0);
        let a = 0.7;
        let h = canonical_representation(&[(rho, 2)], &[vec![c(1.0, 0.0), c(a, 0.0)]], 5).unwrap();
        for (t, v) in h.values().iter().enumerate() {
            let expected = c(t as f64 * a + 1.0, 0.0) * rho.powu(t as u32);
            assert!((v - expected).norm() < 1e-14);
        }
    }

    #[test]
    fn representation_roundtrip() {
        // Well-separated simple roots: recover rank and roots.
        let roots = [(c(0.7, 0.0), 1usize), (c(-0.4, 0.3), 1), (c(0.1, -0.6), 1)];
        let coeffs = vec![vec![c(1.0, 0.0)], vec![c(0.5, 0.2)], vec![c(-0.8, 0.0)]];
        let h = canonical_representation(&roots, &coeffs, 7).unwrap();
        let info = characteristic_info(&h, DEFAULT_RECURRENCE_TOL).unwrap();
        assert_eq!(info.rank, 3);
        let got = info.roots.unwrap();
        assert_eq!(got.len(), 3);
        for (lambda, _) in &roots {
            let found = got.iter().any(|(z, nu)| (z - lambda).norm() < 1e-8 && *nu == 1);
            assert!(found, "root {lambda} not recovered");
        }
    }

    #[test]
    fn poly_roots_quadratic() {
        // (z-1)(z-2) = 2 - 3z + z^2
        let roots = poly_roots(&[c(2.0, 0.0), c(-3.0, 0.0), c(1.0, 0.0)]);
        let mut re: Vec<f64> = roots.iter().map(|z| z.re).collect();
        re.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((re[0] - 1.0).abs() < 1e-10);
        assert!((re[1] - 2.0).abs() < 1e-10);
    }

    #[test]
    fn oracle_equivalence_small_corpus() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let grid = [-1.0, 0.0, 1.0];
        for _ in 0..100 {
            let len = rng.random_range(1..=7usize);
            let h = HankelSequence::new(
                (0..len)
                    .map(|_| c(*grid.choose(&mut rng).unwrap(), *grid.choose(&mut rng).unwrap()))
                    .collect(),
            );
            let lhs = hankel_rank(&h, DEFAULT_RECURRENCE_TOL);
            let rhs = max_submatrix_rank_oracle(&h, DEFAULT_RECURRENCE_TOL);
            assert_eq!(lhs, rhs, "sequence {:?}", h.values());
        }
    }
}

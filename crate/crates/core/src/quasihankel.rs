//! Exact minimal-rank completion of quasi-Hankel (multivariate moment)
//! matrices: flat-extension rank tests, canonical completion of
//! exponential arrays with uniqueness flags, and generic rank bounds.

use num_complex::Complex64;

use crate::indexsets::{binomial, triangle_set, IndexSet, MultiIndex};
use crate::structure::{is_a_independent, numerical_rank, quasi_hankel, CoefficientArray};
use crate::{Error, Result};

/// The exponential array `h_α = Σ_k c_k z_k^α` evaluated on an arbitrary
/// domain (the library-wide `exp_array` always generates over a doubled
/// set; completion needs other domains too).
pub fn exp_array_over(
    domain: IndexSet,
    points: &[Vec<Complex64>],
    coeffs: &[Complex64],
) -> Result<CoefficientArray> {
    if points.len() != coeffs.len() {
        return Err(Error::DimensionMismatch {
            expected: points.len(),
            found: coeffs.len(),
        });
    }
    let eval = |alpha: &MultiIndex, z: &[Complex64]| -> Complex64 {
        alpha
            .entries()
            .iter()
            .zip(z)
            .map(|(&e, zi)| zi.powu(e))
            .product()
    };
    Ok(CoefficientArray::from_fn(domain, |alpha| {
        points.iter().zip(coeffs).map(|(z, &c)| c * eval(alpha, z)).sum()
    }))
}

/// A canonical completion problem: the array over `A = T(m,d)` is the
/// restriction of an exponential array with nodes `points` and nonzero
/// weights `coeffs`.
#[derive(Debug, Clone)]
pub struct CanonicalQHProblem {
    dim: usize,
    degree: u32,
    points: Vec<Vec<Complex64>>,
    coeffs: Vec<Complex64>,
}

impl CanonicalQHProblem {
    pub fn new(
        dim: usize,
        degree: u32,
        points: Vec<Vec<Complex64>>,
        coeffs: Vec<Complex64>,
    ) -> Result<Self> {
        if points.len() != coeffs.len() {
            return Err(Error::DimensionMismatch {
                expected: points.len(),
                found: coeffs.len(),
            });
        }
        if points.iter().any(|z| z.len() != dim) {
            return Err(Error::InvalidInput(format!(
                "all points must have {dim} coordinates"
            )));
        }
        if coeffs.iter().any(|c| c.norm() == 0.0) {
            return Err(Error::InvalidInput("zero coefficient".into()));
        }
        Ok(Self {
            dim,
            degree,
            points,
            coeffs,
        })
    }

    pub fn rank(&self) -> usize {
        self.points.len()
    }

    /// The known domain `A = T(m,d)`.
    pub fn base_set(&self) -> IndexSet {
        triangle_set(self.dim, self.degree)
    }

    /// `B = T(m, d')` with `d' = ⌊d/2⌋`.
    pub fn half_set(&self) -> IndexSet {
        triangle_set(self.dim, self.degree / 2)
    }

    /// `B⁻ = T(m, d'−1)`; empty when `d' = 0`.
    pub fn half_set_minus(&self) -> IndexSet {
        match (self.degree / 2).checked_sub(1) {
            Some(k) => triangle_set(self.dim, k),
            None => IndexSet::empty(self.dim),
        }
    }

    /// The known array: the exponential array restricted to `A`.
    pub fn known_array(&self) -> CoefficientArray {
        exp_array_over(self.base_set(), &self.points, &self.coeffs)
            .expect("lengths validated at construction")
    }

    pub fn points(&self) -> &[Vec<Complex64>] {
        &self.points
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }
}

/// Numerical ranks of `H_B(h)` and `H_{B⁺}(h)` with `B = T(m, ⌊d/2⌋−1)`,
/// and the flat-extension flag. When flat, the minimal completion rank is
/// the common value.
pub fn flat_extension_rank(
    dim: usize,
    degree: u32,
    h: &CoefficientArray,
    tol: f64,
) -> Result<(usize, usize, bool)> {
    let dprime = degree / 2;
    if dprime == 0 {
        return Err(Error::InvalidInput(
            "flat extension test needs d >= 2".into(),
        ));
    }
    let b = triangle_set(dim, dprime - 1);
    let bplus = triangle_set(dim, dprime);
    let h_b = quasi_hankel(&b, h)?;
    let h_bplus = quasi_hankel(&bplus, h)?;
    let rank_b = numerical_rank(&h_b, tol);
    let rank_bplus = numerical_rank(&h_bplus, tol);
    Ok((rank_b, rank_bplus, rank_b == rank_bplus))
}

/// The canonical completion: evaluates the exponential-array formula on
/// `2A` and reports whether the theorem certifies uniqueness (`d` odd, or
/// `d` even with `T(m, d'−1)`-independent points).
pub fn canonical_qh_completion(
    problem: &CanonicalQHProblem,
    tol: f64,
) -> Result<(CoefficientArray, bool)> {
    let b = problem.half_set();
    if !is_a_independent(&b, problem.points(), tol)? {
        return Err(Error::NotIndependent);
    }
    let double_a = triangle_set(problem.dim, 2 * problem.degree);
    let completed = exp_array_over(double_a, problem.points(), problem.coeffs())?;
    let unique = if problem.degree % 2 == 1 {
        true
    } else {
        let bm = problem.half_set_minus();
        bm.len() >= problem.rank() && is_a_independent(&bm, problem.points(), tol)?
    };
    Ok((completed, unique))
}

/// Generic rank bound of the canonical completion theorem:
/// `binom(d'+m, m)` (non-strict) or `binom(d'+m−1, m)` (strict), with
/// `d' = ⌊d/2⌋`.
pub fn generic_rank_bound(m: usize, d: u32, strict: bool) -> u64 {
    let dprime = d as u64 / 2;
    let m = m as u64;
    if strict {
        binomial(dprime + m - 1, m)
    } else {
        binomial(dprime + m, m)
    }
}

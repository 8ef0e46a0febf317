//! Quasi-Hankel and quasi-Vandermonde matrices and the affine structure map.
//!
//! A base set `A = {α_1, …, α_M}` induces the symmetric quasi-Hankel matrix
//! `[h_{α_i+α_j}]`. Positions sharing the same index sum form an orbit; the
//! orbits of the missing indices `β_k ∈ 2A \ A` are the supports of the 0/1
//! basis matrices `S_k`, and `S(p) = S_0 + Σ p_k S_k` is the affine
//! structure map. Orbits are precomputed once per structure; the `S_k` stay
//! virtual (orbit lists) and are only materialized on demand.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::indexsets::{double_set, missing_indices, IndexSet, MultiIndex};
use crate::{Error, Result};

/// Default relative tolerance for numerical rank: singular values below
/// `tol * σ_max` count as zero.
pub const DEFAULT_RANK_TOL: f64 = 1e-8;

/// Number of singular values of `x` above `tol * σ_max`.
pub fn numerical_rank(x: &DMatrix<Complex64>, tol: f64) -> usize {
    if x.nrows() == 0 || x.ncols() == 0 {
        return 0;
    }
    let sv = x.clone().singular_values();
    let smax = sv.max();
    if smax == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > tol * smax).count()
}

/// A finite map from multi-indices to complex scalars with an explicit
/// domain. Lookups outside the domain are errors, not zeros.
#[derive(Debug, Clone)]
pub struct CoefficientArray {
    domain: IndexSet,
    values: Vec<Complex64>,
}

impl CoefficientArray {
    pub fn from_fn<F>(domain: IndexSet, mut f: F) -> Self
    where
        F: FnMut(&MultiIndex) -> Complex64,
    {
        let values = domain.iter().map(|a| f(a)).collect();
        Self { domain, values }
    }

    pub fn from_values(domain: IndexSet, values: Vec<Complex64>) -> Result<Self> {
        if domain.len() != values.len() {
            return Err(Error::InvalidInput(format!(
                "expected {} values for the domain, got {}",
                domain.len(),
                values.len()
            )));
        }
        Ok(Self { domain, values })
    }

    pub fn dim(&self) -> usize {
        self.domain.dim()
    }

    pub fn domain(&self) -> &IndexSet {
        &self.domain
    }

    pub fn get(&self, idx: &MultiIndex) -> Result<Complex64> {
        match self.domain.position(idx) {
            Some(pos) => Ok(self.values[pos]),
            None => Err(Error::MissingCoefficient {
                index: idx.to_string(),
            }),
        }
    }

    /// Restriction to a subset of the domain.
    pub fn restrict(&self, subset: &IndexSet) -> Result<CoefficientArray> {
        let values: Result<Vec<Complex64>> = subset.iter().map(|a| self.get(a)).collect();
        Ok(CoefficientArray {
            domain: subset.clone(),
            values: values?,
        })
    }

    /// CSV with columns `alpha_1..alpha_m, re, im`, one row per index.
    pub fn to_csv(&self) -> String {
        let m = self.dim();
        let mut out = String::new();
        for k in 1..=m {
            out.push_str(&format!("alpha_{k},"));
        }
        out.push_str("re,im\n");
        for (a, v) in self.domain.iter().zip(&self.values) {
            for e in a.entries() {
                out.push_str(&format!("{e},"));
            }
            out.push_str(&format!("{:.17e},{:.17e}\n", v.re, v.im));
        }
        out
    }

    pub fn from_csv(m: usize, text: &str) -> Result<Self> {
        let mut indices = Vec::new();
        let mut values = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            if lineno == 0 || line.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != m + 2 {
                return Err(Error::InvalidInput(format!(
                    "line {}: expected {} fields, got {}",
                    lineno + 1,
                    m + 2,
                    fields.len()
                )));
            }
            let entries: std::result::Result<Vec<u32>, _> =
                fields[..m].iter().map(|s| s.trim().parse()).collect();
            let entries =
                entries.map_err(|e| Error::InvalidInput(format!("line {}: {e}", lineno + 1)))?;
            let re: f64 = fields[m]
                .trim()
                .parse()
                .map_err(|e| Error::InvalidInput(format!("line {}: {e}", lineno + 1)))?;
            let im: f64 = fields[m + 1]
                .trim()
                .parse()
                .map_err(|e| Error::InvalidInput(format!("line {}: {e}", lineno + 1)))?;
            indices.push(MultiIndex::new(entries));
            values.push(Complex64::new(re, im));
        }
        let domain = IndexSet::from_indices(m, indices.clone())?;
        // Reorder the values to match the sorted domain.
        let mut sorted_values = vec![Complex64::ZERO; domain.len()];
        for (idx, v) in indices.iter().zip(values) {
            let pos = domain.position(idx).expect("index was just inserted");
            sorted_values[pos] = v;
        }
        CoefficientArray::from_values(domain, sorted_values)
    }
}

/// The affine structure `S(p) = S_0 + Σ p_k S_k` realized as an orbit table.
#[derive(Debug, Clone)]
pub struct QuasiHankelStructure {
    base: IndexSet,
    full: IndexSet,
    missing: IndexSet,
    /// Positions `(i,j)` with `α_i + α_j = γ`, one orbit per element of `2A`.
    orbits: Vec<Vec<(usize, usize)>>,
    /// Orbit of `β_k`, i.e. the support of `S_k` (1-based `k` maps to entry `k-1`).
    missing_orbits: Vec<Vec<(usize, usize)>>,
    s0: DMatrix<Complex64>,
}

impl QuasiHankelStructure {
    /// Builds the structure for base set `A` from values known exactly on `A`.
    pub fn build(base: &IndexSet, known: &CoefficientArray) -> Result<Self> {
        if known.dim() != base.dim() {
            return Err(Error::DimensionMismatch {
                expected: base.dim(),
                found: known.dim(),
            });
        }
        let full = double_set(base);
        let missing = missing_indices(base);
        let n = base.len();

        let mut orbits: Vec<Vec<(usize, usize)>> = vec![Vec::new(); full.len()];
        for i in 0..n {
            for j in 0..n {
                let gamma = base.get(i).add(base.get(j))?;
                let pos = full.position(&gamma).expect("α_i + α_j lies in 2A");
                orbits[pos].push((i, j));
            }
        }

        let mut s0 = DMatrix::zeros(n, n);
        for (pos, gamma) in full.iter().enumerate() {
            if base.contains(gamma) {
                let v = known.get(gamma)?;
                for &(i, j) in &orbits[pos] {
                    s0[(i, j)] = v;
                }
            }
        }

        let missing_orbits = missing
            .iter()
            .map(|beta| {
                let pos = full.position(beta).expect("β_k lies in 2A");
                orbits[pos].clone()
            })
            .collect();

        Ok(Self {
            base: base.clone(),
            full,
            missing,
            orbits,
            missing_orbits,
            s0,
        })
    }

    /// Matrix dimension `n = #A`.
    pub fn size(&self) -> usize {
        self.base.len()
    }

    /// Number of free parameters `N = #(2A) - #A`.
    pub fn num_params(&self) -> usize {
        self.missing.len()
    }

    pub fn base_set(&self) -> &IndexSet {
        &self.base
    }

    pub fn full_set(&self) -> &IndexSet {
        &self.full
    }

    pub fn missing_set(&self) -> &IndexSet {
        &self.missing
    }

    pub fn s0(&self) -> &DMatrix<Complex64> {
        &self.s0
    }

    pub fn orbit_of(&self, k: usize) -> &[(usize, usize)] {
        &self.missing_orbits[k - 1]
    }

    /// Densifies `S_k = H_A(e^{β_k})` (1-based `k`).
    pub fn basis_matrix(&self, k: usize) -> DMatrix<f64> {
        assert!(k >= 1 && k <= self.num_params(), "k out of range");
        let n = self.size();
        let mut s = DMatrix::zeros(n, n);
        for &(i, j) in &self.missing_orbits[k - 1] {
            s[(i, j)] = 1.0;
        }
        s
    }

    /// `S(p) = S_0 + Σ p_k S_k`.
    pub fn assemble(&self, p: &[Complex64]) -> Result<DMatrix<Complex64>> {
        if p.len() != self.num_params() {
            return Err(Error::DimensionMismatch {
                expected: self.num_params(),
                found: p.len(),
            });
        }
        let mut s = self.s0.clone();
        for (k, orbit) in self.missing_orbits.iter().enumerate() {
            for &(i, j) in orbit {
                s[(i, j)] = p[k];
            }
        }
        Ok(s)
    }

    /// Adjoint of the linear part of the structure map: component `k` is the
    /// unconjugated entry sum of `x` over the orbit of `β_k` (the `S_k` are
    /// real 0/1, so `⟨S_k, X⟩_F` reduces to a plain sum).
    pub fn adjoint(&self, x: &DMatrix<Complex64>) -> Vec<Complex64> {
        self.missing_orbits
            .iter()
            .map(|orbit| orbit.iter().map(|&(i, j)| x[(i, j)]).sum())
            .collect()
    }

    /// Least-squares parameters minimizing `‖S(p) - X‖_F`: orbit means.
    pub fn project_onto_structure(&self, x: &DMatrix<Complex64>) -> Vec<Complex64> {
        self.missing_orbits
            .iter()
            .map(|orbit| {
                let sum: Complex64 = orbit.iter().map(|&(i, j)| x[(i, j)]).sum();
                sum / orbit.len() as f64
            })
            .collect()
    }

    /// Orbit sizes over all of `2A` (they partition the `n²` positions).
    pub fn orbit_sizes(&self) -> Vec<usize> {
        self.orbits.iter().map(|o| o.len()).collect()
    }
}

/// The dense matrix `[h_{α_i+α_j}]` for `h` defined on (at least) `2A`.
pub fn quasi_hankel(a: &IndexSet, h: &CoefficientArray) -> Result<DMatrix<Complex64>> {
    let n = a.len();
    let mut out = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let gamma = a.get(i).add(a.get(j))?;
            out[(i, j)] = h.get(&gamma)?;
        }
    }
    Ok(out)
}

/// The `M×r` matrix of monomials `(z_j)^{α_i}`.
pub fn quasi_vandermonde(a: &IndexSet, points: &[Vec<Complex64>]) -> Result<DMatrix<Complex64>> {
    let m = a.dim();
    for z in points {
        if z.len() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: z.len(),
            });
        }
    }
    let out = DMatrix::from_fn(a.len(), points.len(), |i, j| {
        monomial_eval(a.get(i), &points[j])
    });
    Ok(out)
}

fn monomial_eval(alpha: &MultiIndex, z: &[Complex64]) -> Complex64 {
    alpha
        .entries()
        .iter()
        .zip(z)
        .map(|(&e, zk)| zk.powu(e))
        .product()
}

/// True iff the points are `A`-independent: the quasi-Vandermonde matrix on
/// `A` has numerical rank `r` at relative tolerance `tol`.
pub fn is_a_independent(a: &IndexSet, points: &[Vec<Complex64>], tol: f64) -> Result<bool> {
    let r = points.len();
    if r > a.len() {
        return Err(Error::InvalidInput(format!(
            "{} points exceed #A = {}",
            r,
            a.len()
        )));
    }
    let v = quasi_vandermonde(a, points)?;
    Ok(numerical_rank(&v, tol) == r)
}

/// The exponential array `h_α = Σ_k c_k z_k^α` over all of `2C`.
pub fn exp_array(
    c_set: &IndexSet,
    points: &[Vec<Complex64>],
    coeffs: &[Complex64],
) -> Result<CoefficientArray> {
    if points.len() != coeffs.len() {
        return Err(Error::DimensionMismatch {
            expected: points.len(),
            found: coeffs.len(),
        });
    }
    let domain = double_set(c_set);
    Ok(CoefficientArray::from_fn(domain, |alpha| {
        points
            .iter()
            .zip(coeffs)
            .map(|(z, &c)| c * monomial_eval(alpha, z))
            .sum()
    }))
}

//! The alpha matrix of a digraph and its singular-value data.
//!
//! For a digraph D with outdegree matrix Dplus and adjacency matrix A, the
//! alpha matrix is alpha * Dplus + (1 - alpha) * A. Its singular values are
//! the square roots of the eigenvalues of the Gram matrix M Mᵀ.

use crate::alpha::AlphaParam;
use crate::digraph::Digraph;
use crate::exact::integer_rank;
use crate::linalg::{symmetric_eigenvalues, DenseMatrix, EigenError};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RankError {
    #[error("exact rank needs alpha as a rational p/q with q <= {max}, got {alpha}")]
    AlphaNotRational { alpha: String, max: u32 },
}

/// Largest denominator the exact rank path accepts.
pub const MAX_EXACT_DENOMINATOR: u32 = 64;

/// Builds the alpha matrix: entry (i, i) is alpha * outdeg(i), entry (i, j)
/// is (1 - alpha) when the arc (i, j) exists and 0 otherwise.
pub fn build_alpha_matrix(g: &Digraph, alpha: AlphaParam) -> DenseMatrix {
    let n = g.order();
    let a = alpha.value();
    let mut m = DenseMatrix::zeros(n);
    for i in 0..n {
        m.set(i, i, a * g.out_degree(i) as f64);
        for j in 0..n {
            if i != j && g.arc(i, j) {
                m.set(i, j, 1.0 - a);
            }
        }
    }
    m
}

/// Nonincreasing singular values with the norms derived from them.
#[derive(Debug, Clone, PartialEq)]
pub struct SingularSpectrum {
    values: Vec<f64>,
}

impl SingularSpectrum {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Sum of all singular values (the nuclear norm).
    pub fn trace_norm(&self) -> f64 {
        self.values.iter().sum()
    }

    /// Largest singular value.
    pub fn spectral_norm(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }

    /// Product of all singular values, which equals |det| of the matrix.
    pub fn abs_det(&self) -> f64 {
        self.values.iter().product()
    }

    /// Groups near-equal values into (value, multiplicity) pairs. Adjacent
    /// sorted values join a group when they differ by at most
    /// rel_tol * max(spectral norm, 1).
    pub fn grouped(&self, rel_tol: f64) -> Vec<(f64, usize)> {
        let tol = rel_tol * self.spectral_norm().max(1.0);
        let mut groups: Vec<(f64, usize)> = Vec::new();
        for &v in &self.values {
            match groups.last_mut() {
                Some((head, count)) if *head - v <= tol => *count += 1,
                _ => groups.push((v, 1)),
            }
        }
        groups
    }

    /// Number of values above the scaled noise floor.
    pub fn numeric_rank(&self) -> usize {
        let cutoff = self.len() as f64 * f64::EPSILON * self.spectral_norm() + 1e-12;
        self.values.iter().filter(|&&v| v > cutoff).count()
    }
}

/// Singular values of a square matrix via a symmetric eigensolve of the
/// Gram matrix. Eigenvalues below the scale-relative noise floor
/// n * eps * lambda_max are exact zeros of the Gram matrix at working
/// precision and are flattened to zero before the square root, which keeps
/// true zero singular values exactly zero instead of sqrt(noise).
pub fn singular_values(m: &DenseMatrix) -> Result<SingularSpectrum, EigenError> {
    let n = m.order();
    let mut eigen = symmetric_eigenvalues(&m.gram())?;
    let lambda_max = eigen.iter().cloned().fold(0.0f64, f64::max);
    let floor = n as f64 * f64::EPSILON * lambda_max;
    for v in eigen.iter_mut() {
        *v = if *v <= floor { 0.0 } else { *v };
    }
    let mut values: Vec<f64> = eigen.into_iter().map(f64::sqrt).collect();
    values.sort_by(|a, b| b.partial_cmp(a).expect("no NaN singular values"));
    Ok(SingularSpectrum { values })
}

/// Convenience: singular spectrum of the alpha matrix of a digraph.
pub fn alpha_spectrum(g: &Digraph, alpha: AlphaParam) -> Result<SingularSpectrum, EigenError> {
    singular_values(&build_alpha_matrix(g, alpha))
}

/// |det| of the alpha matrix by partial-pivot elimination.
pub fn abs_determinant(m: &DenseMatrix) -> f64 {
    m.abs_determinant()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RankMode {
    /// Counts singular values above the noise floor.
    Numeric,
    /// Fraction-free integer elimination on q * A_alpha with alpha = p/q.
    ExactRational,
}

/// Rank of the alpha matrix. The exact path scales the matrix by the
/// denominator of alpha, which leaves the rank unchanged and makes every
/// entry an integer.
pub fn numerical_rank(g: &Digraph, alpha: AlphaParam, mode: RankMode) -> Result<usize, RankError> {
    match mode {
        RankMode::Numeric => {
            let spectrum = alpha_spectrum(g, alpha)
                .expect("eigensolve converges at supported orders");
            Ok(spectrum.numeric_rank())
        }
        RankMode::ExactRational => {
            let (p, q) = alpha.exact_rational().ok_or_else(|| RankError::AlphaNotRational {
                alpha: alpha.to_string(),
                max: MAX_EXACT_DENOMINATOR,
            })?;
            if q > MAX_EXACT_DENOMINATOR {
                return Err(RankError::AlphaNotRational {
                    alpha: alpha.to_string(),
                    max: MAX_EXACT_DENOMINATOR,
                });
            }
            let n = g.order();
            let mut entries = vec![0i128; n * n];
            for i in 0..n {
                entries[i * n + i] = p as i128 * g.out_degree(i) as i128;
                for j in 0..n {
                    if i != j && g.arc(i, j) {
                        entries[i * n + j] = (q - p) as i128;
                    }
                }
            }
            Ok(integer_rank(n, &entries))
        }
    }
}

/// The Frobenius identity: the sum of squared singular values of the alpha
/// matrix equals (1-alpha)^2 a + alpha^2 * sum of squared outdegrees.
pub fn frobenius_target(g: &Digraph, alpha: AlphaParam) -> f64 {
    let a = alpha.value();
    (1.0 - a) * (1.0 - a) * g.arc_count() as f64
        + a * a * g.sum_sq_out_degrees() as f64
}

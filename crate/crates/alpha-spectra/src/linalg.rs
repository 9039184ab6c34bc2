//! Dense square matrices and the small symmetric eigensolver behind the
//! singular-value kernel.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EigenError {
    #[error("Jacobi eigensolver did not converge within {0} sweeps")]
    NoConvergence(usize),
}

/// Row-major square matrix of f64.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![0.0; n * n] }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let n = rows.len();
        let mut m = Self::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n, "matrix must be square");
            m.data[i * n..(i + 1) * n].copy_from_slice(row);
        }
        m
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.n + j] = value;
    }

    /// The Gram matrix M Mᵀ. Symmetric by construction; entry (i, j) is the
    /// dot product of rows i and j, computed once and mirrored.
    pub fn gram(&self) -> DenseMatrix {
        let n = self.n;
        let mut g = DenseMatrix::zeros(n);
        for i in 0..n {
            for j in i..n {
                let mut s = 0.0;
                for k in 0..n {
                    s += self.get(i, k) * self.get(j, k);
                }
                g.set(i, j, s);
                g.set(j, i, s);
            }
        }
        g
    }

    pub fn frobenius_sq(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum()
    }

    pub fn max_asymmetry(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                worst = worst.max((self.get(i, j) - self.get(j, i)).abs());
            }
        }
        worst
    }

    /// |det M| by Gaussian elimination with partial pivoting.
    pub fn abs_determinant(&self) -> f64 {
        let n = self.n;
        let mut m = self.clone();
        let mut det = 1.0f64;
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&a, &b| {
                    m.get(a, col).abs().partial_cmp(&m.get(b, col).abs()).expect("finite entries")
                })
                .expect("non-empty range");
            let p = m.get(pivot, col);
            if p == 0.0 {
                return 0.0;
            }
            if pivot != col {
                for k in 0..n {
                    let tmp = m.get(col, k);
                    m.set(col, k, m.get(pivot, k));
                    m.set(pivot, k, tmp);
                }
            }
            det *= m.get(col, col);
            for row in (col + 1)..n {
                let f = m.get(row, col) / m.get(col, col);
                if f != 0.0 {
                    for k in col..n {
                        m.set(row, k, m.get(row, k) - f * m.get(col, k));
                    }
                }
            }
        }
        det.abs()
    }
}

const MAX_SWEEPS: usize = 50;

/// Eigenvalues of a symmetric matrix by the cyclic Jacobi method
/// (Numerical Recipes section 11.1 shape). Rotations are applied until the
/// off-diagonal mass falls below a scale-relative threshold; convergence is
/// quadratic, so 50 sweeps is far beyond what any matrix here needs.
/// Returned values are unsorted.
pub fn symmetric_eigenvalues(m: &DenseMatrix) -> Result<Vec<f64>, EigenError> {
    let n = m.order();
    let mut a = m.clone();
    let mut d: Vec<f64> = (0..n).map(|i| a.get(i, i)).collect();
    if n == 1 {
        return Ok(d);
    }
    let mut b = d.clone();
    let mut z = vec![0.0f64; n];

    let scale: f64 = m.frobenius_sq().sqrt().max(f64::MIN_POSITIVE);
    let threshold = 1e-14 * scale;

    for _sweep in 0..MAX_SWEEPS {
        let mut off = 0.0;
        for p in 0..n - 1 {
            for q in (p + 1)..n {
                off += a.get(p, q).abs();
            }
        }
        if off <= threshold {
            return Ok(d);
        }

        for p in 0..n - 1 {
            for q in (p + 1)..n {
                let apq = a.get(p, q);
                if apq == 0.0 {
                    continue;
                }
                let h = d[q] - d[p];
                // Stable for any theta: t -> 1 as theta -> 0, t -> 1/(2 theta)
                // as theta grows.
                let theta = 0.5 * h / apq;
                let mut t = 1.0 / (theta.abs() + (1.0 + theta * theta).sqrt());
                if theta < 0.0 {
                    t = -t;
                }
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);
                let hh = t * apq;
                z[p] -= hh;
                z[q] += hh;
                d[p] -= hh;
                d[q] += hh;
                a.set(p, q, 0.0);
                for j in 0..p {
                    let g = a.get(j, p);
                    let h = a.get(j, q);
                    a.set(j, p, g - s * (h + g * tau));
                    a.set(j, q, h + s * (g - h * tau));
                }
                for j in (p + 1)..q {
                    let g = a.get(p, j);
                    let h = a.get(j, q);
                    a.set(p, j, g - s * (h + g * tau));
                    a.set(j, q, h + s * (g - h * tau));
                }
                for j in (q + 1)..n {
                    let g = a.get(p, j);
                    let h = a.get(q, j);
                    a.set(p, j, g - s * (h + g * tau));
                    a.set(q, j, h + s * (g - h * tau));
                }
            }
        }

        for p in 0..n {
            b[p] += z[p];
            z[p] = 0.0;
            d[p] = b[p];
        }
    }

    Err(EigenError::NoConvergence(MAX_SWEEPS))
}

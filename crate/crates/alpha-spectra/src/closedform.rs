//! Closed-form alpha singular values for the special families.

use crate::alpha::AlphaParam;
use crate::family::FamilySpec;
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ClosedFormError {
    #[error("no closed-form spectrum for family {0}")]
    UnsupportedFamily(String),
    #[error("invalid family parameters: {0}")]
    BadParameters(String),
}

/// A closed-form spectrum as (value, multiplicity) pairs; total
/// multiplicity equals the family order.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedFormSpectrum {
    pub family: FamilySpec,
    pub alpha: AlphaParam,
    pub values: Vec<(f64, usize)>,
}

impl ClosedFormSpectrum {
    /// All values expanded by multiplicity and sorted nonincreasing, for
    /// entrywise comparison against the numeric kernel.
    pub fn flattened(&self) -> Vec<f64> {
        let mut out = Vec::new();
        for &(v, m) in &self.values {
            out.extend(std::iter::repeat_n(v, m));
        }
        out.sort_by(|a, b| b.partial_cmp(a).expect("finite values"));
        out
    }

    pub fn trace_norm(&self) -> f64 {
        self.values.iter().map(|&(v, m)| v * m as f64).sum()
    }

    pub fn total_multiplicity(&self) -> usize {
        self.values.iter().map(|&(_, m)| m).sum()
    }
}

/// Cycle spectrum coefficient choice, used by the verification harness to
/// arbitrate between the two variants the source states.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CycleCoefficient {
    /// 2 alpha (1 - alpha) on the cosine; consistent with
    /// omega^j + omega^-j = 2 cos(2 pi j / n).
    Doubled,
    /// alpha (1 - alpha) on the cosine.
    Single,
}

/// Evaluates the closed-form alpha singular values of a supported family:
///
/// * directed path: 0 once, then sqrt(2a^2 - 2a + 1 + 2a(1-a) cos(j pi / n))
///   for j = 1..n-1;
/// * directed cycle: sqrt(2a^2 - 2a + 1 + 2a(1-a) cos(2 j pi / n)) for
///   j = 0..n-1;
/// * oriented complete bipartite: 0 with multiplicity s, a*s with
///   multiplicity r-1, sqrt(a^2 s^2 + (1-a)^2 s r) once;
/// * symmetric complete: n-1 once, |n a - 1| with multiplicity n-1;
/// * shrikhande: 6 once, 2 + 4a with multiplicity 6, |8a - 2| with
///   multiplicity 9.
pub fn closed_form_spectrum(
    spec: &FamilySpec,
    alpha: AlphaParam,
) -> Result<ClosedFormSpectrum, ClosedFormError> {
    let values = match spec {
        FamilySpec::DirectedPath(n) => {
            if *n == 0 {
                return Err(ClosedFormError::BadParameters("path needs n >= 1".into()));
            }
            path_values(*n, alpha)
        }
        FamilySpec::DirectedCycle(n) => {
            if *n < 2 {
                return Err(ClosedFormError::BadParameters("cycle needs n >= 2".into()));
            }
            cycle_values(*n, alpha, CycleCoefficient::Doubled)
        }
        FamilySpec::OrientedCompleteBipartite(r, s) => {
            if *r == 0 || *s == 0 {
                return Err(ClosedFormError::BadParameters("bipartite sides must be >= 1".into()));
            }
            ocb_values(*r, *s, alpha)
        }
        FamilySpec::SymmetricComplete(n) => {
            if *n == 0 {
                return Err(ClosedFormError::BadParameters("complete needs n >= 1".into()));
            }
            sym_complete_values(*n, alpha)
        }
        FamilySpec::Shrikhande => shrikhande_values(alpha),
        other => return Err(ClosedFormError::UnsupportedFamily(other.to_string())),
    };
    Ok(ClosedFormSpectrum { family: spec.clone(), alpha, values })
}

fn path_values(n: usize, alpha: AlphaParam) -> Vec<(f64, usize)> {
    let a = alpha.value();
    let base = 2.0 * a * a - 2.0 * a + 1.0;
    let coef = 2.0 * a * (1.0 - a);
    let mut values = vec![(0.0, 1)];
    for j in 1..n {
        let v = (base + coef * (j as f64 * PI / n as f64).cos()).max(0.0).sqrt();
        values.push((v, 1));
    }
    values
}

/// Cycle values with an explicit coefficient variant; the public closed
/// form uses the doubled coefficient.
pub fn cycle_values(n: usize, alpha: AlphaParam, coefficient: CycleCoefficient) -> Vec<(f64, usize)> {
    let a = alpha.value();
    let base = 2.0 * a * a - 2.0 * a + 1.0;
    let coef = match coefficient {
        CycleCoefficient::Doubled => 2.0 * a * (1.0 - a),
        CycleCoefficient::Single => a * (1.0 - a),
    };
    (0..n)
        .map(|j| {
            let v = (base + coef * (2.0 * j as f64 * PI / n as f64).cos()).max(0.0).sqrt();
            (v, 1)
        })
        .collect()
}

fn ocb_values(r: usize, s: usize, alpha: AlphaParam) -> Vec<(f64, usize)> {
    let a = alpha.value();
    let s_f = s as f64;
    let r_f = r as f64;
    let big = (a * a * s_f * s_f + (1.0 - a) * (1.0 - a) * s_f * r_f).sqrt();
    let mut values = vec![(big, 1)];
    if r > 1 {
        values.push((a * s_f, r - 1));
    }
    values.push((0.0, s));
    values
}

fn sym_complete_values(n: usize, alpha: AlphaParam) -> Vec<(f64, usize)> {
    let a = alpha.value();
    let mut values = vec![((n - 1) as f64, 1)];
    if n > 1 {
        values.push(((n as f64 * a - 1.0).abs(), n - 1));
    }
    values
}

fn shrikhande_values(alpha: AlphaParam) -> Vec<(f64, usize)> {
    let a = alpha.value();
    vec![(6.0, 1), (2.0 + 4.0 * a, 6), ((8.0 * a - 2.0).abs(), 9)]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn ocb_closed_form_shape() {
        let alpha = AlphaParam::new(0.5).unwrap();
        let cf = closed_form_spectrum(&FamilySpec::OrientedCompleteBipartite(3, 2), alpha).unwrap();
        assert_eq!(cf.total_multiplicity(), 5);
        let flat = cf.flattened();
        // sqrt(1/4 * 4 + 1/4 * 6) = sqrt(2.5), then alpha*s = 1 twice, then 0, 0.
        assert!(close(flat[0], 2.5f64.sqrt(), 1e-15));
        assert!(close(flat[1], 1.0, 1e-15));
        assert!(close(flat[2], 1.0, 1e-15));
        assert_eq!(&flat[3..], &[0.0, 0.0]);
    }

    #[test]
    fn sym_complete_at_alpha_zero() {
        let cf = closed_form_spectrum(
            &FamilySpec::SymmetricComplete(3),
            AlphaParam::new(0.0).unwrap(),
        )
        .unwrap();
        assert_eq!(cf.flattened(), vec![2.0, 1.0, 1.0]);
    }

    #[test]
    fn path_at_half_matches_frozen_values() {
        let cf = closed_form_spectrum(&FamilySpec::DirectedPath(3), AlphaParam::new(0.5).unwrap())
            .unwrap();
        let flat = cf.flattened();
        assert!(close(flat[0], 0.75f64.sqrt(), 1e-15));
        assert!(close(flat[1], 0.5, 1e-15));
        assert_eq!(flat[2], 0.0);
    }

    #[test]
    fn shrikhande_at_half() {
        let cf = closed_form_spectrum(&FamilySpec::Shrikhande, AlphaParam::new(0.5).unwrap())
            .unwrap();
        assert_eq!(cf.values, vec![(6.0, 1), (4.0, 6), (2.0, 9)]);
        assert_eq!(cf.total_multiplicity(), 16);
    }

    #[test]
    fn path_zero_multiplicity() {
        // Exactly one zero for alpha in (0, 1); n-1 ones plus one zero at 0.
        for n in [2usize, 5, 9] {
            for a in [0.1, 0.5, 0.9] {
                let cf = closed_form_spectrum(&FamilySpec::DirectedPath(n), AlphaParam::new(a).unwrap()).unwrap();
                let zeros = cf.flattened().iter().filter(|&&v| v == 0.0).count();
                assert_eq!(zeros, 1, "n = {n}, alpha = {a}");
            }
            let cf = closed_form_spectrum(&FamilySpec::DirectedPath(n), AlphaParam::new(0.0).unwrap()).unwrap();
            let flat = cf.flattened();
            assert_eq!(flat.iter().filter(|&&v| v == 0.0).count(), 1);
            assert_eq!(flat.iter().filter(|&&v| close(v, 1.0, 1e-15)).count(), n - 1);
        }
    }

    #[test]
    fn cycle_at_alpha_zero_is_flat() {
        let cf = closed_form_spectrum(&FamilySpec::DirectedCycle(8), AlphaParam::new(0.0).unwrap())
            .unwrap();
        assert!(cf.flattened().iter().all(|&v| close(v, 1.0, 1e-15)));
    }

    #[test]
    fn unsupported_families_are_rejected() {
        let alpha = AlphaParam::new(0.5).unwrap();
        assert!(matches!(
            closed_form_spectrum(&FamilySpec::Discrete(3), alpha),
            Err(ClosedFormError::UnsupportedFamily(_))
        ));
        assert!(matches!(
            closed_form_spectrum(&FamilySpec::SymmetricFromGraph(3, vec![(0, 1)]), alpha),
            Err(ClosedFormError::UnsupportedFamily(_))
        ));
    }
}

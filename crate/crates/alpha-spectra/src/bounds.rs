//! Trace-norm bounds for a (digraph, alpha) pair, with slack measurement
//! and structural equality-case classification.

use crate::alpha::AlphaParam;
use crate::alphamat::{alpha_spectrum, build_alpha_matrix, frobenius_target, SingularSpectrum};
use crate::digraph::Digraph;
use serde::Serialize;
use thiserror::Error;

/// Absolute slack below which a bound counts as attained.
pub const EQUALITY_TOL: f64 = 1e-9;
/// |det| at or below this is treated as exactly zero before the 2/n power.
pub const DET_CUTOFF: f64 = 1e-12;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BoundsError {
    #[error("operation requires n >= 2, got {0}")]
    OrderTooSmall(usize),
}

/// Which bound an equality question refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundId {
    /// Determinant-strengthened lower bound.
    LowerDet,
    /// Frobenius lower bound (the determinant bound with the det term
    /// dropped).
    LowerBasic,
    /// sqrt(n * Frobenius) upper bound.
    UpperMcclelland,
    /// a/n + sqrt((n-1)(Frobenius - a^2/n^2)) upper bound, valid under the
    /// arc-density hypothesis a >= n * beta.
    UpperKm,
}

/// Structural shape of a digraph attaining a bound with equality.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum EqualityCase {
    /// No arcs; every bound degenerates to zero.
    Discrete,
    /// alpha = 0 and every vertex has outdegree and indegree one, i.e. a
    /// direct sum of directed cycles (2-cycles included).
    CycleDirectSumAtAlphaZero,
    /// alpha = 0 and the non-isolated part is an oriented complete
    /// bipartite digraph.
    OcbAtAlphaZero { r: usize, s: usize, isolated: usize },
    /// A single source pointing at `leaves` sinks; its alpha matrix has one
    /// nonzero row, hence rank one, for every alpha.
    OutStar { leaves: usize, isolated: usize },
    /// alpha = 1/2 and the non-isolated part is one symmetric arc pair.
    SymK2AtHalf { isolated: usize },
    /// A mutually complete core of m >= 2 vertices joined to t common
    /// sinks at alpha = 1/(m + t); every core row of the alpha matrix is
    /// identical, so the rank is one.
    SaturatedCore { core: usize, sinks: usize, isolated: usize },
    /// n = 2 only: the determinant-strengthened lower bound is an identity
    /// on two singular values, so every digraph of order two attains it.
    OrderTwo,
    /// a/n-regular with singular values {a/n, sigma^[n-1]}.
    RegularTwoSingularValues { sigma1: f64, sigma: f64 },
}

/// All bound values, hypotheses, slacks, and equality flags for one
/// (digraph, alpha) pair. Bounds are reported for n >= 2 only; for n = 1
/// they stay `None` and only the norms are populated.
#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub n: usize,
    pub a: usize,
    pub alpha: f64,
    pub sum_sq_outdeg: usize,
    pub trace_norm: f64,
    pub spectral_norm: f64,
    pub abs_det: f64,
    pub spectral_floor: f64,
    pub lower_basic: Option<f64>,
    pub lower_det: Option<f64>,
    pub upper_mcclelland: Option<f64>,
    pub km_beta: f64,
    pub km_applicable: bool,
    pub upper_km: Option<f64>,
    pub slack_lower_basic: Option<f64>,
    pub slack_lower_det: Option<f64>,
    pub slack_mcclelland: Option<f64>,
    pub slack_km: Option<f64>,
    pub eq_lower_basic: bool,
    pub eq_lower_det: bool,
    pub eq_mcclelland: bool,
    pub eq_km: bool,
}

/// Evaluates every bound for the pair. The determinant enters through
/// exp((2/n) log |det|), with |det| <= 1e-12 treated as exactly zero so
/// elimination roundoff cannot lift the lower bound above the trace norm.
pub fn bound_report(g: &Digraph, alpha: AlphaParam) -> BoundReport {
    let spectrum = alpha_spectrum(g, alpha).expect("eigensolve converges at these orders");
    bound_report_with_spectrum(g, alpha, &spectrum)
}

/// Same as [`bound_report`] with a precomputed spectrum, for sweeps.
pub fn bound_report_with_spectrum(
    g: &Digraph,
    alpha: AlphaParam,
    spectrum: &SingularSpectrum,
) -> BoundReport {
    let n = g.order();
    let a = g.arc_count();
    let av = alpha.value();
    let sum_sq = g.sum_sq_out_degrees();
    let trace_norm = spectrum.trace_norm();
    let spectral_norm = spectrum.spectral_norm();
    let abs_det = build_alpha_matrix(g, alpha).abs_determinant();

    let frob = frobenius_target(g, alpha);
    let beta = (1.0 - av).max(av * g.max_out_degree() as f64);
    // Integer arc count against a float threshold; the 1e-9 pad only
    // matters when n * beta is itself inexact.
    let km_applicable = n >= 2 && a as f64 + 1e-9 >= n as f64 * beta;

    let (lower_basic, lower_det, upper_mcclelland, upper_km) = if n >= 2 {
        let det_term = if abs_det <= DET_CUTOFF {
            0.0
        } else {
            ((2.0 / n as f64) * abs_det.ln()).exp()
        };
        let lower_basic = frob.sqrt();
        let lower_det = (frob + (n * (n - 1)) as f64 * det_term).sqrt();
        let upper_mc = (n as f64 * frob).sqrt();
        let km = if km_applicable {
            let excess = (frob - (a * a) as f64 / (n * n) as f64).max(0.0);
            Some(a as f64 / n as f64 + ((n - 1) as f64 * excess).sqrt())
        } else {
            None
        };
        (Some(lower_basic), Some(lower_det), Some(upper_mc), km)
    } else {
        (None, None, None, None)
    };

    let slack_lower_basic = lower_basic.map(|b| trace_norm - b);
    let slack_lower_det = lower_det.map(|b| trace_norm - b);
    let slack_mcclelland = upper_mcclelland.map(|b| b - trace_norm);
    let slack_km = upper_km.map(|b| b - trace_norm);
    let attained = |s: Option<f64>| s.is_some_and(|s| s.abs() <= EQUALITY_TOL);

    BoundReport {
        n,
        a,
        alpha: av,
        sum_sq_outdeg: sum_sq,
        trace_norm,
        spectral_norm,
        abs_det,
        spectral_floor: a as f64 / n as f64,
        lower_basic,
        lower_det,
        upper_mcclelland,
        km_beta: beta,
        km_applicable,
        upper_km,
        slack_lower_basic,
        slack_lower_det,
        slack_mcclelland,
        slack_km,
        eq_lower_basic: attained(slack_lower_basic),
        eq_lower_det: attained(slack_lower_det),
        eq_mcclelland: attained(slack_mcclelland),
        eq_km: attained(slack_km),
    }
}

impl BoundReport {
    pub const CSV_HEADER: &'static str = "n,a,alpha,trace_norm,spectral_norm,lower_basic,lower_det,upper_mcclelland,km_applicable,upper_km,eq_lower_basic,eq_lower_det,eq_mcclelland,eq_km";

    /// One CSV row in the fixed column order, 12 significant digits.
    pub fn to_csv_row(&self) -> String {
        let opt = |v: Option<f64>| v.map(fmt_sig12).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.n,
            self.a,
            fmt_sig12(self.alpha),
            fmt_sig12(self.trace_norm),
            fmt_sig12(self.spectral_norm),
            opt(self.lower_basic),
            opt(self.lower_det),
            opt(self.upper_mcclelland),
            self.km_applicable,
            opt(self.upper_km),
            self.eq_lower_basic,
            self.eq_lower_det,
            self.eq_mcclelland,
            self.eq_km,
        )
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// Fixed 12-significant-digit rendering used by every CSV emitter, so
/// identical runs produce byte-identical files.
pub fn fmt_sig12(x: f64) -> String {
    format!("{x:.11e}")
}

/// Classifies the structural shape under which this pair attains the
/// given bound with equality, or `None` when it does not attain it. The
/// classification is extensional: it covers every shape that provably
/// attains equality, which for the lower bounds is strictly larger than
/// the strict family list the verification harness compares against
/// (out-stars and saturated cores attain them at every alpha and at
/// alpha = 1/(core + sinks) respectively).
pub fn classify_equality(g: &Digraph, alpha: AlphaParam, which: BoundId) -> Option<EqualityCase> {
    let spectrum = alpha_spectrum(g, alpha).expect("eigensolve converges at these orders");
    classify_equality_with_spectrum(g, alpha, which, &spectrum)
}

/// [`classify_equality`] with a precomputed spectrum, for sweeps.
pub fn classify_equality_with_spectrum(
    g: &Digraph,
    alpha: AlphaParam,
    which: BoundId,
    spectrum: &SingularSpectrum,
) -> Option<EqualityCase> {
    match which {
        BoundId::LowerDet => {
            if let Some(case) = rank_le_one_case(g, alpha) {
                return Some(case);
            }
            if alpha.value() == 0.0 && g.classify_structure().is_permutation_digraph {
                return Some(EqualityCase::CycleDirectSumAtAlphaZero);
            }
            (g.order() == 2).then_some(EqualityCase::OrderTwo)
        }
        BoundId::LowerBasic => rank_le_one_case(g, alpha),
        BoundId::UpperMcclelland => {
            if g.arc_count() == 0 {
                return Some(EqualityCase::Discrete);
            }
            (alpha.value() == 0.0 && g.classify_structure().is_permutation_digraph)
                .then_some(EqualityCase::CycleDirectSumAtAlphaZero)
        }
        BoundId::UpperKm => {
            if alpha.value() == 0.0 && g.classify_structure().is_permutation_digraph {
                return Some(EqualityCase::CycleDirectSumAtAlphaZero);
            }
            regular_two_value_case(g, alpha, spectrum)
        }
    }
}

/// The rank <= 1 shapes: discrete, oriented complete bipartite at
/// alpha = 0, out-stars at any alpha, and a mutually complete core joined
/// to common sinks at alpha = 1/(core + sinks), each plus isolated
/// vertices. A single symmetric pair at alpha = 1/2 is the smallest
/// saturated core and keeps its own tag.
fn rank_le_one_case(g: &Digraph, alpha: AlphaParam) -> Option<EqualityCase> {
    let a = alpha.value();
    if g.arc_count() == 0 {
        return Some(EqualityCase::Discrete);
    }
    if a == 0.0 {
        if let Some((r, s)) = g.ocb_plus_isolated() {
            return Some(EqualityCase::OcbAtAlphaZero { r, s, isolated: g.order() - r - s });
        }
        return None;
    }
    if let Some((leaves, isolated)) = g.out_star_plus_isolated() {
        return Some(EqualityCase::OutStar { leaves, isolated });
    }
    if let Some((core, sinks, isolated)) = g.complete_core_with_sinks() {
        if alpha_is_reciprocal_of(alpha, core + sinks) {
            return if core == 2 && sinks == 0 {
                Some(EqualityCase::SymK2AtHalf { isolated })
            } else {
                Some(EqualityCase::SaturatedCore { core, sinks, isolated })
            };
        }
    }
    None
}

fn alpha_is_reciprocal_of(alpha: AlphaParam, k: usize) -> bool {
    match alpha.exact_rational() {
        Some((p, q)) => p as usize * k == q as usize,
        None => (alpha.value() - 1.0 / k as f64).abs() <= 1e-12,
    }
}

fn regular_two_value_case(
    g: &Digraph,
    alpha: AlphaParam,
    spectrum: &SingularSpectrum,
) -> Option<EqualityCase> {
    let n = g.order();
    if n < 2 {
        return None;
    }
    let a = g.arc_count();
    let flags = g.classify_structure();
    if flags.regular_degree != Some(a / n) || !a.is_multiple_of(n) {
        return None;
    }
    let sigma1 = a as f64 / n as f64;
    let frob = frobenius_target(g, alpha);
    let excess = (frob - sigma1 * sigma1).max(0.0);
    let sigma = (excess / (n - 1) as f64).sqrt();
    let values = spectrum.values();
    if (values[0] - sigma1).abs() > EQUALITY_TOL {
        return None;
    }
    if values[1..].iter().any(|&v| (v - sigma).abs() > EQUALITY_TOL) {
        return None;
    }
    Some(EqualityCase::RegularTwoSingularValues { sigma1, sigma })
}

/// Lower bound a/n for the spectral norm and whether it is attained.
pub fn spectral_floor_check(g: &Digraph, alpha: AlphaParam) -> Result<(f64, bool), BoundsError> {
    let n = g.order();
    if n < 2 {
        return Err(BoundsError::OrderTooSmall(n));
    }
    let floor = g.arc_count() as f64 / n as f64;
    let spectrum = alpha_spectrum(g, alpha).expect("eigensolve converges at these orders");
    Ok((floor, (spectrum.spectral_norm() - floor).abs() <= EQUALITY_TOL))
}

/// Tests whether the adjacency matrix satisfies A Aᵀ = lambda J +
/// (k - lambda) I exactly over the integers, returning (n, k, lambda).
pub fn is_symmetric_bibd(g: &Digraph) -> Option<(usize, usize, usize)> {
    let n = g.order();
    let k = g.out_degree(0);
    let mut lambda: Option<usize> = None;
    for i in 0..n {
        for j in 0..n {
            let dot = (0..n).filter(|&w| g.arc(i, w) && g.arc(j, w)).count();
            if i == j {
                if dot != k {
                    return None;
                }
            } else {
                match lambda {
                    None => lambda = Some(dot),
                    Some(l) if l != dot => return None,
                    _ => {}
                }
            }
        }
    }
    Some((n, k, lambda.unwrap_or(0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{make_family, FamilySpec};

    fn alpha(v: f64) -> AlphaParam {
        AlphaParam::new(v).unwrap()
    }

    fn rational(p: u32, q: u32) -> AlphaParam {
        AlphaParam::from_rational(p, q).unwrap()
    }

    #[test]
    fn cycle_attains_det_lower_bound_at_alpha_zero() {
        for n in [2usize, 3, 5, 8] {
            let g = make_family(&FamilySpec::DirectedCycle(n)).unwrap();
            let r = bound_report(&g, rational(0, 1));
            assert!((r.lower_det.unwrap() - n as f64).abs() <= 1e-9);
            assert!((r.trace_norm - n as f64).abs() <= 1e-9);
            assert!(r.eq_lower_det, "n = {n}");
        }
    }

    #[test]
    fn sym_k2_attains_basic_bound_at_half() {
        let g = make_family(&FamilySpec::SymmetricComplete(2)).unwrap();
        let r = bound_report(&g, rational(1, 2));
        assert!((r.lower_basic.unwrap() - 1.0).abs() <= 1e-12);
        assert!((r.trace_norm - 1.0).abs() <= 1e-12);
        assert!(r.eq_lower_basic);
    }

    #[test]
    fn discrete_report_is_all_zero() {
        let g = Digraph::discrete(5).unwrap();
        let r = bound_report(&g, alpha(0.7));
        assert_eq!(r.trace_norm, 0.0);
        assert_eq!(r.lower_det, Some(0.0));
        assert_eq!(r.lower_basic, Some(0.0));
        assert_eq!(r.upper_mcclelland, Some(0.0));
        assert!(!r.km_applicable);
        assert!(r.eq_lower_det && r.eq_mcclelland);
    }

    #[test]
    fn sym_complete_attains_km_bound() {
        // Trace norm (n-1) + (n-1)|n alpha - 1| equals the km bound.
        for n in 3..=10usize {
            let g = make_family(&FamilySpec::SymmetricComplete(n)).unwrap();
            for a in [0.0, 0.25, 0.5, 0.75] {
                let r = bound_report(&g, alpha(a));
                assert!(r.km_applicable, "n = {n}, alpha = {a}");
                let expected = (n - 1) as f64 * (1.0 + (n as f64 * a - 1.0).abs());
                assert!((r.trace_norm - expected).abs() <= 1e-9);
                assert!((r.upper_km.unwrap() - expected).abs() <= 1e-9);
                assert!(r.eq_km);
            }
        }
    }

    #[test]
    fn n1_report_has_no_bounds() {
        let g = Digraph::discrete(1).unwrap();
        let r = bound_report(&g, alpha(0.5));
        assert_eq!(r.trace_norm, 0.0);
        assert_eq!(r.lower_basic, None);
        assert_eq!(r.upper_km, None);
        assert!(!r.km_applicable);
    }

    #[test]
    fn lower_det_equals_basic_when_det_vanishes() {
        // Any digraph with a sink row has det 0 at alpha = 0.
        let g = make_family(&FamilySpec::DirectedPath(4)).unwrap();
        let r = bound_report(&g, rational(0, 1));
        assert_eq!(r.abs_det, 0.0);
        assert_eq!(r.lower_det, r.lower_basic);
    }

    #[test]
    fn classify_ocb_with_isolated() {
        let k23 = make_family(&FamilySpec::OrientedCompleteBipartite(2, 3)).unwrap();
        let g = Digraph::direct_sum(&[k23, Digraph::discrete(1).unwrap()]).unwrap();
        assert_eq!(
            classify_equality(&g, rational(0, 1), BoundId::LowerBasic),
            Some(EqualityCase::OcbAtAlphaZero { r: 2, s: 3, isolated: 1 })
        );
        // Not attained at alpha > 0 for r >= 2.
        assert_eq!(classify_equality(&g, rational(1, 4), BoundId::LowerBasic), None);
    }

    #[test]
    fn classify_cycle_direct_sum() {
        let c3 = make_family(&FamilySpec::DirectedCycle(3)).unwrap();
        let c2 = make_family(&FamilySpec::DirectedCycle(2)).unwrap();
        let g = Digraph::direct_sum(&[c3, c2]).unwrap();
        assert_eq!(
            classify_equality(&g, rational(0, 1), BoundId::UpperMcclelland),
            Some(EqualityCase::CycleDirectSumAtAlphaZero)
        );
        assert_eq!(classify_equality(&g, rational(1, 2), BoundId::UpperMcclelland), None);
    }

    #[test]
    fn classify_out_star_any_alpha() {
        let star = make_family(&FamilySpec::OrientedCompleteBipartite(1, 3)).unwrap();
        for a in [rational(1, 4), rational(1, 2), rational(3, 4)] {
            assert_eq!(
                classify_equality(&star, a, BoundId::LowerBasic),
                Some(EqualityCase::OutStar { leaves: 3, isolated: 0 })
            );
        }
        // At alpha = 0 the same digraph is the r = 1 bipartite case.
        assert_eq!(
            classify_equality(&star, rational(0, 1), BoundId::LowerBasic),
            Some(EqualityCase::OcbAtAlphaZero { r: 1, s: 3, isolated: 0 })
        );
    }

    #[test]
    fn classify_saturated_cores() {
        // Complete symmetric on m vertices is a saturated core at 1/m.
        let k3 = make_family(&FamilySpec::SymmetricComplete(3)).unwrap();
        assert_eq!(
            classify_equality(&k3, rational(1, 3), BoundId::LowerBasic),
            Some(EqualityCase::SaturatedCore { core: 3, sinks: 0, isolated: 0 })
        );
        assert_eq!(classify_equality(&k3, rational(1, 4), BoundId::LowerBasic), None);

        // Mutual pair with one common sink saturates at alpha = 1/3.
        let g = Digraph::from_arcs(3, &[(0, 1), (1, 0), (0, 2), (1, 2)]).unwrap();
        assert_eq!(
            classify_equality(&g, rational(1, 3), BoundId::LowerBasic),
            Some(EqualityCase::SaturatedCore { core: 2, sinks: 1, isolated: 0 })
        );

        let k2 = make_family(&FamilySpec::SymmetricComplete(2)).unwrap();
        assert_eq!(
            classify_equality(&k2, rational(1, 2), BoundId::LowerBasic),
            Some(EqualityCase::SymK2AtHalf { isolated: 0 })
        );
    }

    #[test]
    fn classify_order_two_catchall() {
        // Every order-2 digraph attains the determinant lower bound.
        let k2 = make_family(&FamilySpec::SymmetricComplete(2)).unwrap();
        let r = bound_report(&k2, alpha(0.3));
        assert!(r.eq_lower_det);
        assert!(!r.eq_lower_basic);
        assert_eq!(
            classify_equality(&k2, alpha(0.3), BoundId::LowerDet),
            Some(EqualityCase::OrderTwo)
        );
        assert_eq!(classify_equality(&k2, alpha(0.3), BoundId::LowerBasic), None);
    }

    #[test]
    fn classify_regular_two_values() {
        let k4 = make_family(&FamilySpec::SymmetricComplete(4)).unwrap();
        let case = classify_equality(&k4, rational(1, 2), BoundId::UpperKm);
        match case {
            Some(EqualityCase::RegularTwoSingularValues { sigma1, sigma }) => {
                assert!((sigma1 - 3.0).abs() <= 1e-12);
                assert!((sigma - 1.0).abs() <= 1e-9);
            }
            other => panic!("unexpected case {other:?}"),
        }
        let p3 = make_family(&FamilySpec::DirectedPath(3)).unwrap();
        assert_eq!(classify_equality(&p3, rational(1, 2), BoundId::UpperKm), None);
    }

    #[test]
    fn spectral_floor_examples() {
        let c4 = make_family(&FamilySpec::DirectedCycle(4)).unwrap();
        for a in [0.0, 0.3, 0.75] {
            let (floor, attained) = spectral_floor_check(&c4, alpha(a)).unwrap();
            assert_eq!(floor, 1.0);
            assert!(attained);
        }
        let p3 = make_family(&FamilySpec::DirectedPath(3)).unwrap();
        let (floor, attained) = spectral_floor_check(&p3, rational(0, 1)).unwrap();
        assert!((floor - 2.0 / 3.0).abs() <= 1e-15);
        assert!(!attained);
        let d = Digraph::discrete(3).unwrap();
        let (floor, attained) = spectral_floor_check(&d, alpha(0.4)).unwrap();
        assert_eq!(floor, 0.0);
        assert!(attained);
        assert!(spectral_floor_check(&Digraph::discrete(1).unwrap(), alpha(0.4)).is_err());
    }

    #[test]
    fn bibd_detection() {
        let shri = make_family(&FamilySpec::Shrikhande).unwrap();
        assert_eq!(is_symmetric_bibd(&shri), Some((16, 6, 2)));
        for n in 2..=6usize {
            let g = make_family(&FamilySpec::SymmetricComplete(n)).unwrap();
            assert_eq!(is_symmetric_bibd(&g), Some((n, n - 1, n.saturating_sub(2))));
        }
        let p3 = make_family(&FamilySpec::DirectedPath(3)).unwrap();
        assert_eq!(is_symmetric_bibd(&p3), None);
    }

    #[test]
    fn csv_row_is_stable() {
        let g = make_family(&FamilySpec::DirectedCycle(3)).unwrap();
        let r = bound_report(&g, rational(1, 2));
        let row1 = r.to_csv_row();
        let row2 = bound_report(&g, rational(1, 2)).to_csv_row();
        assert_eq!(row1, row2);
        assert_eq!(row1.split(',').count(), BoundReport::CSV_HEADER.split(',').count());
        assert!(row1.starts_with("3,3,"));
    }

    #[test]
    fn json_round_trips_structurally() {
        let g = make_family(&FamilySpec::DirectedCycle(3)).unwrap();
        let r = bound_report(&g, rational(1, 2));
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["n"], 3);
        assert_eq!(v["km_applicable"], true);
        assert!(v["upper_km"].is_number());
    }
}

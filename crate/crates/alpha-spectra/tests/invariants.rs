//! Cross-module invariants, including the randomized property checks.

use alpha_spectra::*;
use proptest::prelude::*;

#[test]
fn trace_norm_zero_iff_discrete_exhaustive_n4() {
    for alpha in verify::decimal_grid() {
        for g in all_digraphs(4).unwrap() {
            let trace = alpha_spectrum(&g, alpha).unwrap().trace_norm();
            assert_eq!(
                trace <= 1e-12,
                g.arc_count() == 0,
                "encoding {} alpha {}",
                g.encoding_bits(),
                alpha
            );
        }
    }
}

#[test]
fn gram_row_sums_equal_degree_squared_for_regular_families() {
    let mut regulars: Vec<(Digraph, usize)> = Vec::new();
    for n in 2..=12 {
        regulars.push((make_family(&FamilySpec::DirectedCycle(n)).unwrap(), 1));
    }
    for n in 2..=10 {
        regulars.push((make_family(&FamilySpec::SymmetricComplete(n)).unwrap(), n - 1));
    }
    regulars.push((make_family(&FamilySpec::Shrikhande).unwrap(), 6));

    for (g, k) in regulars {
        for alpha in verify::dyadic_grid() {
            let m = build_alpha_matrix(&g, alpha);
            let gram = m.gram();
            let n = g.order();
            for i in 0..n {
                let row_sum: f64 = (0..n).map(|j| gram.get(i, j)).sum();
                assert!(
                    (row_sum - (k * k) as f64).abs() <= 1e-9,
                    "n = {n}, k = {k}, alpha = {alpha}, row {i}: {row_sum}"
                );
            }
        }
    }
}

#[test]
fn lower_det_collapses_to_basic_when_determinant_vanishes() {
    for g in all_digraphs(3).unwrap() {
        for alpha in verify::dyadic_grid() {
            let r = bound_report(&g, alpha);
            if r.abs_det <= 1e-12 {
                assert_eq!(r.lower_det, r.lower_basic, "encoding {}", g.encoding_bits());
            }
        }
    }
}

#[test]
fn determinant_agrees_with_singular_value_product_n3() {
    for g in all_digraphs(3).unwrap() {
        for alpha in verify::decimal_grid() {
            let m = build_alpha_matrix(&g, alpha);
            let s = singular_values(&m).unwrap();
            let prod = s.abs_det();
            if prod > 1e-12 {
                let det = m.abs_determinant();
                assert!(
                    (det - prod).abs() <= 1e-8 * prod,
                    "encoding {} alpha {alpha}: {det} vs {prod}",
                    g.encoding_bits()
                );
            }
        }
    }
}

#[test]
fn spectral_floor_equality_implies_regular_n3() {
    for g in all_digraphs(3).unwrap() {
        for alpha in verify::dyadic_grid() {
            let (floor, attained) = spectral_floor_check(&g, alpha).unwrap();
            let flags = g.classify_structure();
            let regular = flags.regular_degree.map(|k| k as f64) == Some(floor);
            assert_eq!(attained, regular, "encoding {} alpha {alpha}", g.encoding_bits());
        }
    }
}

#[test]
fn km_candidates_are_sound_when_recomputed() {
    let grid = verify::dyadic_grid();
    let candidates = find_km_equality_candidates(4, &grid).unwrap();
    assert!(!candidates.is_empty());
    for c in candidates {
        let code = c
            .encoding
            .chars()
            .enumerate()
            .filter(|&(_, ch)| ch == '1')
            .fold(0u64, |acc, (k, _)| acc | (1 << k));
        let g = Digraph::decode(c.n, code).unwrap();
        let alpha = AlphaParam::parse(&c.alpha).unwrap();
        let r = bound_report(&g, alpha);
        assert!(r.km_applicable);
        assert!((r.trace_norm - r.upper_km.unwrap()).abs() <= EQUALITY_TOL);
    }
}

#[test]
fn closed_form_trace_norm_consistency_sample() {
    for alpha in verify::decimal_grid() {
        for spec in [
            FamilySpec::DirectedPath(17),
            FamilySpec::DirectedCycle(24),
            FamilySpec::OrientedCompleteBipartite(5, 9),
            FamilySpec::SymmetricComplete(13),
            FamilySpec::Shrikhande,
        ] {
            let g = make_family(&spec).unwrap();
            let numeric = alpha_spectrum(&g, alpha).unwrap().trace_norm();
            let closed = closed_form_spectrum(&spec, alpha).unwrap().trace_norm();
            assert!(
                (numeric - closed).abs() <= 1e-9 * numeric.max(1.0),
                "{spec} alpha {alpha}: {numeric} vs {closed}"
            );
        }
    }
}

fn arbitrary_digraph(max_n: usize) -> impl Strategy<Value = Digraph> {
    (1..=max_n).prop_flat_map(|n| {
        let cells = n * n;
        proptest::collection::vec(any::<bool>(), cells).prop_map(move |bits| {
            let mut arcs = Vec::new();
            for u in 0..n {
                for v in 0..n {
                    if u != v && bits[u * n + v] {
                        arcs.push((u, v));
                    }
                }
            }
            Digraph::from_arcs(n, &arcs).unwrap()
        })
    })
}

fn arbitrary_alpha() -> impl Strategy<Value = AlphaParam> {
    (0u32..64, 64u32..=64).prop_map(|(p, q)| AlphaParam::from_rational(p, q).unwrap())
}

proptest! {
    #[test]
    fn edgelist_roundtrip(g in arbitrary_digraph(8)) {
        let text = emit_digraph(&g);
        prop_assert_eq!(parse_digraph(&text).unwrap(), g);
    }

    #[test]
    fn transpose_swaps_degree_sequences(g in arbitrary_digraph(8)) {
        let t = g.transpose();
        prop_assert_eq!(t.transpose(), g.clone());
        prop_assert_eq!(t.out_degrees(), g.in_degrees());
        prop_assert_eq!(t.in_degrees(), g.out_degrees());
    }

    #[test]
    fn gram_is_exactly_symmetric(g in arbitrary_digraph(7), alpha in arbitrary_alpha()) {
        let gram = build_alpha_matrix(&g, alpha).gram();
        prop_assert_eq!(gram.max_asymmetry(), 0.0);
    }

    #[test]
    fn spectrum_is_sorted_and_nonnegative(g in arbitrary_digraph(7), alpha in arbitrary_alpha()) {
        let s = alpha_spectrum(&g, alpha).unwrap();
        prop_assert_eq!(s.len(), g.order());
        for w in s.values().windows(2) {
            prop_assert!(w[0] >= w[1]);
        }
        prop_assert!(s.values().iter().all(|&v| v >= 0.0));
    }

    #[test]
    fn frobenius_identity_random(g in arbitrary_digraph(7), alpha in arbitrary_alpha()) {
        let s = alpha_spectrum(&g, alpha).unwrap();
        let sum_sq: f64 = s.values().iter().map(|v| v * v).sum();
        let target = frobenius_target(&g, alpha);
        prop_assert!((sum_sq - target).abs() <= 1e-9 * target.max(1.0));
    }

    #[test]
    fn direct_sum_trace_norm_is_additive(
        a in arbitrary_digraph(6),
        b in arbitrary_digraph(6),
        alpha in arbitrary_alpha(),
    ) {
        let sum = Digraph::direct_sum(&[a.clone(), b.clone()]).unwrap();
        let whole = alpha_spectrum(&sum, alpha).unwrap().trace_norm();
        let parts = alpha_spectrum(&a, alpha).unwrap().trace_norm()
            + alpha_spectrum(&b, alpha).unwrap().trace_norm();
        prop_assert!((whole - parts).abs() <= 1e-9 * parts.max(1.0));
    }

    #[test]
    fn numeric_rank_matches_exact_rank(g in arbitrary_digraph(5), alpha in arbitrary_alpha()) {
        let numeric = numerical_rank(&g, alpha, RankMode::Numeric).unwrap();
        let exact = numerical_rank(&g, alpha, RankMode::ExactRational).unwrap();
        prop_assert_eq!(numeric, exact);
    }
}

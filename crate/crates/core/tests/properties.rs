mod common;

use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use seidel_core::seidel::{det_bareiss_bigint, det_bareiss_hybrid};
use seidel_core::{
    det_exact, det_oracle_cofactor, eigenvalues, emit_graph6, enumerate, p_energy, parse_graph6,
    seidel_energy, seidel_matrix, semicircle_tail_closed_form, Graph, VertexSet,
};

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n, any::<u64>()).prop_map(|(n, seed)| {
        Graph::sample_uniform(n, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap()
    })
}

fn graph_and_set(max_n: usize) -> impl Strategy<Value = (Graph, VertexSet)> {
    (1..=max_n, any::<u64>()).prop_map(|(n, seed)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = Graph::sample_uniform(n, &mut rng).unwrap();
        let w = VertexSet::sample_uniform(n, &mut rng);
        (g, w)
    })
}

proptest! {
    #[test]
    fn complement_is_an_involution(g in graph_strategy(70)) {
        prop_assert_eq!(g.complement().complement(), g);
    }

    #[test]
    fn switching_is_an_involution((g, w) in graph_and_set(70)) {
        prop_assert_eq!(g.switch(&w).unwrap().switch(&w).unwrap(), g);
    }

    #[test]
    fn switching_by_complementary_sets_agrees((g, w) in graph_and_set(70)) {
        prop_assert_eq!(g.switch(&w).unwrap(), g.switch(&w.complement()).unwrap());
    }

    #[test]
    fn graph6_round_trips(g in graph_strategy(130)) {
        let text = emit_graph6(&g);
        prop_assert!(text.bytes().all(|b| (63..=126).contains(&b)));
        prop_assert_eq!(parse_graph6(text.as_bytes()).unwrap(), g);
    }

    #[test]
    fn seidel_matrix_is_j_minus_i_minus_2a(g in graph_strategy(40)) {
        let s = seidel_matrix(&g);
        let want = common::j_minus_i_minus_2a(&g);
        for (i, row) in want.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                prop_assert_eq!(i64::from(s.get(i, j)), x);
            }
        }
    }

    #[test]
    fn abs_det_invariant_under_switching_and_complement((g, w) in graph_and_set(24)) {
        let d = det_exact(&seidel_matrix(&g)).abs();
        prop_assert_eq!(det_exact(&seidel_matrix(&g.switch(&w).unwrap())).abs(), d.clone());
        prop_assert_eq!(det_exact(&seidel_matrix(&g.complement())).abs(), d);
    }

    #[test]
    fn all_bareiss_paths_agree(g in graph_strategy(40)) {
        let s = seidel_matrix(&g);
        let reference = det_bareiss_bigint(&s);
        prop_assert_eq!(det_bareiss_hybrid(&s), reference.clone());
        prop_assert_eq!(det_exact(&s).0, reference);
    }

    #[test]
    fn det_within_hadamard_bound(g in graph_strategy(60)) {
        let d = det_exact(&seidel_matrix(&g));
        let n = g.order();
        prop_assert!(d.within_hadamard_bound(n));
        // Independent check: det^2 <= n^n, computed directly.
        prop_assert!(d.abs().pow(2) <= BigInt::from(n).pow(n as u32));
    }

    #[test]
    fn det_parity_is_fixed_by_order(g in graph_strategy(30)) {
        // S = J - I (mod 2), whose determinant is n - 1 up to sign.
        let d = det_exact(&seidel_matrix(&g)).0;
        let n = g.order() as i64;
        prop_assert_eq!(&d % 2u32 == BigInt::from(0), (n - 1) % 2 == 0);
    }

    #[test]
    fn spectrum_identities(g in graph_strategy(30)) {
        let s = eigenvalues(&seidel_matrix(&g)).unwrap();
        let n = g.order() as f64;
        prop_assert!(s.trace().abs() <= 1e-8 * n.max(1.0));
        let want = n * (n - 1.0);
        prop_assert!((s.second_moment() - want).abs() <= 1e-8 * want.max(1.0));
        prop_assert!(s.values().windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn p_energy_tends_to_energy(g in graph_strategy(20)) {
        let s = eigenvalues(&seidel_matrix(&g)).unwrap();
        let e = seidel_energy(&s);
        prop_assert!((p_energy(&s, 1.0).unwrap() - e).abs() <= 1e-12 * e.max(1.0));
        let near = p_energy(&s, 1.0 + 1e-9).unwrap();
        prop_assert!((near - e).abs() <= 1e-6 * e.max(1.0));
    }

    #[test]
    fn p_energy_is_log_convex(g in graph_strategy(16), p in 0.1f64..0.9, q in 1.1f64..1.9) {
        // Lyapunov: p -> ln sum |lambda|^p is convex.
        let s = eigenvalues(&seidel_matrix(&g)).unwrap();
        let mid = 0.5 * (p + q);
        let lp = p_energy(&s, p).unwrap().ln();
        let lq = p_energy(&s, q).unwrap().ln();
        let lm = p_energy(&s, mid).unwrap().ln();
        prop_assert!(lm <= 0.5 * (lp + lq) + 1e-9);
    }
}

#[test]
fn seidel_matrix_matches_oracle_on_all_order_5_graphs() {
    for g in enumerate(5).unwrap() {
        let s = seidel_matrix(&g);
        let want = common::j_minus_i_minus_2a(&g);
        let got: Vec<Vec<i64>> = s
            .rows()
            .into_iter()
            .map(|r| r.into_iter().map(i64::from).collect())
            .collect();
        assert_eq!(got, want);
    }
}

#[test]
fn det_matches_leibniz_on_all_order_5_graphs() {
    for g in enumerate(5).unwrap() {
        let want = common::leibniz_det(&common::j_minus_i_minus_2a(&g));
        assert_eq!(det_exact(&seidel_matrix(&g)).0, BigInt::from(want));
    }
}

#[test]
fn det_matches_cofactor_oracle_on_random_graphs_of_orders_6_to_8() {
    let mut rng = ChaCha8Rng::seed_from_u64(678);
    for n in 6..=8 {
        for _ in 0..1000 {
            let g = Graph::sample_uniform(n, &mut rng).unwrap();
            let s = seidel_matrix(&g);
            assert_eq!(
                det_exact(&s),
                det_oracle_cofactor(&s).unwrap(),
                "{}",
                emit_graph6(&g)
            );
        }
    }
}

#[test]
fn cofactor_oracle_matches_leibniz_at_order_7() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..50 {
        let g = Graph::sample_uniform(7, &mut rng).unwrap();
        let want = common::leibniz_det(&common::j_minus_i_minus_2a(&g));
        let got = det_oracle_cofactor(&seidel_matrix(&g)).unwrap();
        assert_eq!(got.0, BigInt::from(want));
    }
}

#[test]
fn eigenvalues_are_roots_of_the_exact_characteristic_polynomial() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for n in 1..=6 {
        for _ in 0..40 {
            let g = Graph::sample_uniform(n, &mut rng).unwrap();
            let exact = common::char_poly(&common::j_minus_i_minus_2a(&g));
            let spectrum = eigenvalues(&seidel_matrix(&g)).unwrap();
            let rebuilt = common::poly_from_roots(spectrum.values());
            for (k, (&e, &r)) in exact.iter().zip(&rebuilt).enumerate() {
                // Coefficients are integers of size at most C(n,k) * k^(k/2).
                assert!(
                    (e as f64 - r).abs() <= 1e-8 * (e.abs() as f64).max(1.0),
                    "n={n} k={k}: exact {e}, from eigenvalues {r}"
                );
            }
            for &lambda in spectrum.values() {
                let scale = common::poly_eval(
                    &exact.iter().map(|c| c.abs()).collect::<Vec<_>>(),
                    lambda.abs(),
                );
                assert!(common::poly_eval(&exact, lambda).abs() <= 1e-9 * scale.max(1.0));
            }
        }
    }
}

#[test]
fn switching_preserves_spectrum_and_complement_negates_it() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for n in [10, 30] {
        for _ in 0..20 {
            let g = Graph::sample_uniform(n, &mut rng).unwrap();
            let w = VertexSet::sample_uniform(n, &mut rng);
            let base = eigenvalues(&seidel_matrix(&g)).unwrap();
            let switched = eigenvalues(&seidel_matrix(&g.switch(&w).unwrap())).unwrap();
            let comp = eigenvalues(&seidel_matrix(&g.complement())).unwrap();
            for (a, b) in base.values().iter().zip(switched.values()) {
                assert!((a - b).abs() <= 1e-8);
            }
            for (a, b) in base.negated().values().iter().zip(comp.values()) {
                assert!((a - b).abs() <= 1e-8);
            }
        }
    }
}

#[test]
fn closed_form_tail_matches_quadrature() {
    for k in 0..=40 {
        let b = 2.0 * k as f64 / 40.0;
        let closed = semicircle_tail_closed_form(b).unwrap();
        let quad = common::semicircle_tail_quadrature(b);
        assert!((closed - quad).abs() <= 1e-10, "b={b}: {closed} vs {quad}");
    }
}

use super::*;
use crate::graph::{make_complete, petersen, random_regular};
use crate::spectral::{adjacency, eigenvalues_sym, sorted_linf, DEFAULT_TOL};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn centered_complete_graph() {
    let b = centered_form(&make_complete(4).unwrap()).unwrap();
    let r = eigenvalues_sym(&b, DEFAULT_TOL).unwrap();
    assert!(sorted_linf(&r.eigenvalues, &[0.0, -1.0, -1.0, -1.0]) < 1e-12);
    assert!(b.matvec(&[1.0; 4]).iter().all(|x| x.abs() < 1e-12));
}

#[test]
fn centered_radius_is_lambda() {
    let g = petersen();
    let b = centered_form(&g).unwrap();
    let lambda = eigenvalues_sym(&adjacency(&g), DEFAULT_TOL).unwrap().lambda2;
    assert!((eigenvalues_sym(&b, DEFAULT_TOL).unwrap().radius - lambda).abs() < 1e-9);
    assert!(b.max_row_l1() <= 6.0);
    assert!(centered_form(&Graph::new(3, vec![(0, 1)]).unwrap()).is_err());
}

#[test]
fn converse_holds_on_small_corpus() {
    let mut rng = ChaCha8Rng::seed_from_u64(40);
    for seed in 0..20 {
        let d = rng.gen_range(3..7);
        let n = 2 * rng.gen_range(d / 2 + 2..=6);
        let g = random_regular(n, d, seed).unwrap();
        let alpha = jumbledness_alpha_exact(&g, true).unwrap().score;
        let lambda = eigenvalues_sym(&adjacency(&g), DEFAULT_TOL).unwrap().lambda2;
        assert!(lambda <= converse_bound(alpha, d as f64).unwrap());
    }
}

#[test]
fn witness_on_centered_graphs_meets_guarantee() {
    for seed in 0..10 {
        let g = random_regular(12, 3, seed).unwrap();
        let b = centered_form(&g).unwrap().without_diagonal();
        let w = discrepancy_witness(&b, 6.0, None).unwrap();
        // on disjoint sets the centred form measures the graph's deviation
        let e = g.edge_count_between(&w.u, &w.v).unwrap() as f64;
        let dev = (e - 3.0 * (w.u.len() * w.v.len()) as f64 / 12.0).abs();
        assert!((dev - w.value).abs() < 1e-9);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn witness_invariants(seed in 0u64..1000, n in 3usize..12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = SymMatrix::from_upper(n, |i, j| if i == j { 0.0 } else { rng.gen_range(-1.0..1.0) });
        let w = best_witness(&m, &(0..n).map(|i| (i as f64 + 1.0).sin()).collect::<Vec<_>>()).unwrap();
        prop_assert!(!w.u.is_empty() && !w.v.is_empty());
        prop_assert!(w.u.iter().all(|x| !w.v.contains(x)));
        prop_assert_eq!(w.value, m.indicator_form(&w.u, &w.v).abs());
        prop_assert!((w.ratio - w.value / ((w.u.len() * w.v.len()) as f64).sqrt()).abs() < 1e-15);
    }
}

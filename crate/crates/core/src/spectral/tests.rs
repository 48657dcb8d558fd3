use super::*;
use crate::graph::{cycle, make_complete, make_railway, random_regular};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Cyclic Jacobi rotations; slow but independent of the production solver.
fn jacobi_eigenvalues(m: &SymMatrix) -> Vec<f64> {
    let n = m.dim();
    let mut a: Vec<Vec<f64>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    for _ in 0..100 {
        let off: f64 = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).map(|(i, j)| a[i][j] * a[i][j]).sum();
        if off < 1e-26 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut ev: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    ev.sort_by(|x, y| y.total_cmp(x));
    ev
}

fn random_signing(m: usize, rng: &mut ChaCha8Rng) -> Signing {
    Signing::new((0..m).map(|_| if rng.gen() { 1 } else { -1 }).collect()).unwrap()
}

#[test]
fn complete_graph_spectrum() {
    let r = eigenvalues_sym(&adjacency(&make_complete(4).unwrap()), DEFAULT_TOL).unwrap();
    let want = [3.0, -1.0, -1.0, -1.0];
    assert!(sorted_linf(&r.eigenvalues, &want) < 1e-9);
    assert!((r.lambda2 - 1.0).abs() < 1e-9);
    for d in 2..8 {
        let r = eigenvalues_sym(&adjacency(&make_complete(d + 1).unwrap()), DEFAULT_TOL).unwrap();
        let mut want = vec![-1.0; d + 1];
        want[0] = d as f64;
        assert!(sorted_linf(&r.eigenvalues, &want) < 1e-9);
    }
}

#[test]
fn zero_matrix_spectrum() {
    let r = eigenvalues_sym(&SymMatrix::zeros(5), DEFAULT_TOL).unwrap();
    assert_eq!(r.eigenvalues, vec![0.0; 5]);
    assert_eq!(r.radius, 0.0);
}

#[test]
fn railway_radius_is_sqrt5() {
    for k in [2, 3, 8] {
        let (g, s) = make_railway(k).unwrap();
        let r = eigenvalues_sym(&signed_adjacency(&g, &s).unwrap(), DEFAULT_TOL).unwrap();
        assert!((r.radius - 5f64.sqrt()).abs() < 1e-9, "k={k}: {}", r.radius);
    }
}

#[test]
fn invalid_tolerance_rejected() {
    assert!(eigenvalues_sym(&SymMatrix::zeros(2), 0.0).is_err());
}

#[test]
fn agrees_with_jacobi_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let n = rng.gen_range(2..12);
        let m = SymMatrix::from_upper(n, |i, j| if i == j { 0.0 } else { rng.gen_range(-2.0..2.0) });
        let got = eigenvalues_sym(&m, DEFAULT_TOL).unwrap().eigenvalues;
        assert!(sorted_linf(&got, &jacobi_eigenvalues(&m)) < 1e-9);
        assert!((spectral_radius(&m) - eigenvalues_sym(&m, DEFAULT_TOL).unwrap().radius).abs() < 1e-10);
    }
}

#[test]
fn report_identities() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let g = random_regular(20, 5, 4).unwrap();
    let a = signed_adjacency(&g, &random_signing(g.m(), &mut rng)).unwrap();
    let r = eigenvalues_sym(&a, DEFAULT_TOL).unwrap();
    let sum: f64 = r.eigenvalues.iter().sum();
    let sq: f64 = r.eigenvalues.iter().map(|x| x * x).sum();
    assert!(sum.abs() <= DEFAULT_TOL * 20.0);
    assert!((sq - a.frobenius_sq()).abs() <= 1e-6);
    assert!(r.eigenvalues.windows(2).all(|w| w[0] >= w[1]));
}

#[test]
fn k2_negative_lift() {
    let g = make_complete(2).unwrap();
    let split = lift_spectrum_decompose(&g, &Signing::all_negative(1), DEFAULT_TOL).unwrap();
    assert!(sorted_linf(&split.old, &[1.0, -1.0]) < 1e-12);
    assert!(sorted_linf(&split.new, &[1.0, -1.0]) < 1e-12);
    assert!(sorted_linf(&split.lifted.eigenvalues, &[1.0, 1.0, -1.0, -1.0]) < 1e-12);
}

#[test]
fn k4_positive_lift_is_two_copies() {
    let g = make_complete(4).unwrap();
    let split = lift_spectrum_decompose(&g, &Signing::all_positive(6), DEFAULT_TOL).unwrap();
    let want = [3.0, 3.0, -1.0, -1.0, -1.0, -1.0, -1.0, -1.0];
    assert!(sorted_linf(&split.lifted.eigenvalues, &want) < 1e-9);
}

#[test]
fn negative_lift_spectrum_is_symmetric_union() {
    let g = make_complete(4).unwrap();
    let split = lift_spectrum_decompose(&g, &Signing::all_negative(6), DEFAULT_TOL).unwrap();
    let negated: Vec<f64> = split.old.iter().rev().map(|x| -x).collect();
    let want = merge_descending(&split.old, &negated);
    assert!(sorted_linf(&split.lifted.eigenvalues, &want) < 1e-9);
}

#[test]
fn railway_new_eigenvalues_bounded() {
    let (g, s) = make_railway(4).unwrap();
    let split = lift_spectrum_decompose(&g, &s, DEFAULT_TOL).unwrap();
    assert!(split.new.iter().all(|x| x.abs() <= 5f64.sqrt() + 1e-9));
}

#[test]
fn lift_split_on_random_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for seed in 0..30 {
        let d = rng.gen_range(2..6);
        let n = 2 * rng.gen_range(d / 2 + 1..12);
        let g = random_regular(n, d, seed).unwrap();
        let s = random_signing(g.m(), &mut rng);
        let split = lift_spectrum_decompose(&g, &s, DEFAULT_TOL).unwrap();
        assert!(split.mismatch < 1e-7);
    }
}

#[test]
fn trace_examples() {
    let g = cycle(5).unwrap();
    for mask in 0..32 {
        let s = Signing::from_mask(5, mask);
        assert_eq!(trace_power_walks(&g, &s, 2).unwrap(), 10.0);
    }
    let (r, s) = make_railway(2).unwrap();
    assert_eq!(trace_power_walks(&r, &s, 2).unwrap(), 24.0);
    assert!(trace_power_walks(&r, &s, 3).is_err());
    assert!(trace_power_walks(&r, &s, 0).is_err());
}

#[test]
fn trace_matches_eigenvalue_powers() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for seed in 0..10 {
        let g = random_regular(16, 4, seed).unwrap();
        let s = random_signing(g.m(), &mut rng);
        let ev = eigenvalues_sym(&signed_adjacency(&g, &s).unwrap(), DEFAULT_TOL).unwrap().eigenvalues;
        for l in [2, 4, 6] {
            let walks = trace_power_walks(&g, &s, l).unwrap();
            let powers: f64 = ev.iter().map(|x| x.powi(l as i32)).sum();
            assert!((walks - powers).abs() <= 1e-6 * walks.abs().max(1.0), "l={l}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn signed_spectrum_symmetries(seed in 0u64..10_000, mask in any::<u64>(), v in 0usize..12) {
        let g = random_regular(12, 4, seed).unwrap();
        let s = Signing::from_mask(g.m(), mask);
        let base = eigenvalues_sym(&signed_adjacency(&g, &s).unwrap(), DEFAULT_TOL).unwrap();
        // radius never exceeds the degree
        prop_assert!(base.radius <= 4.0 + 1e-9);
        // global flip negates the spectrum
        let flipped = eigenvalues_sym(&signed_adjacency(&g, &s.negated()).unwrap(), DEFAULT_TOL).unwrap();
        let negated: Vec<f64> = base.eigenvalues.iter().rev().map(|x| -x).collect();
        prop_assert!(sorted_linf(&flipped.eigenvalues, &negated) < 1e-9);
        // switching at a vertex conjugates by a diagonal ±1 matrix
        let switched = eigenvalues_sym(&signed_adjacency(&g, &s.switched_at(&g, v)).unwrap(), DEFAULT_TOL).unwrap();
        prop_assert!(sorted_linf(&switched.eigenvalues, &base.eigenvalues) < 1e-9);
    }
}

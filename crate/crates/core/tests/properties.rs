//! Invariants of the walk and the blow-up, over random catalog instances.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;
use qwalk::graph::{blow_up, cartesian_product};
use qwalk::spectral::support;
use qwalk::walk::{blowup_twin_amplitude, transition_matrix, unitarity_defect};
use qwalk::{decompose, Graph, GraphExpr};

const SMALL: &[&str] = &[
    "path(2)",
    "path(3)",
    "path(5)",
    "cycle(4)",
    "cycle(5)",
    "complete(4)",
    "star(3)",
    "double_star(1,2)",
    "subdivided_star(3)",
    "hypercube(2)",
    "cone(cycle(4))",
];

fn max_norm(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn graph(i: usize) -> Graph {
    GraphExpr::parse(SMALL[i % SMALL.len()]).unwrap().build().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn walk_is_unitary(i in 0usize..64, t in 0.0f64..20.0) {
        let dec = decompose(&graph(i)).unwrap();
        prop_assert!(unitarity_defect(&transition_matrix(&dec, t)) < 1e-10);
    }

    #[test]
    fn group_law(i in 0usize..64, s in 0.0f64..5.0, t in 0.0f64..5.0) {
        let dec = decompose(&graph(i)).unwrap();
        let lhs = transition_matrix(&dec, s) * transition_matrix(&dec, t);
        let rhs = transition_matrix(&dec, s + t);
        prop_assert!(max_norm(&(lhs - rhs)) < 1e-10);
    }

    #[test]
    fn cartesian_factorizes(i in 0usize..64, j in 0usize..64, t in 0.0f64..5.0) {
        let (g, h) = (graph(i), graph(j));
        let prod = decompose(&cartesian_product(&g, &h)).unwrap();
        let ug = transition_matrix(&decompose(&g).unwrap(), t);
        let uh = transition_matrix(&decompose(&h).unwrap(), t);
        let diff = max_norm(&(transition_matrix(&prod, t) - ug.kronecker(&uh)));
        prop_assert!(diff <= 1e-9, "max deviation {}", diff);
    }

    #[test]
    fn twin_amplitude_formula(i in 0usize..64, n in 2usize..4, t in 0.0f64..10.0, u in 0usize..16) {
        let g = graph(i);
        let u = u % g.n_vertices();
        let m = g.n_vertices();
        let direct = transition_matrix(&decompose(&blow_up(&g, n).unwrap()).unwrap(), t)[(u, m + u)];
        let formula = blowup_twin_amplitude(&decompose(&g).unwrap(), n, u, t).unwrap();
        prop_assert!((direct - formula).norm() <= 1e-10);
    }

    #[test]
    fn blowup_supports_scale(i in 0usize..64, n in 2usize..4) {
        let g = graph(i);
        let m = g.n_vertices();
        let base = decompose(&g).unwrap();
        let big = decompose(&blow_up(&g, n).unwrap()).unwrap();
        for v in 0..m {
            let mut want: Vec<f64> = support(&base, v).unwrap().values().iter().map(|x| n as f64 * x).collect();
            if !want.iter().any(|x| x.abs() < 1e-8) {
                want.push(0.0);
            }
            want.sort_by(|a, b| b.total_cmp(a));
            for c in 0..n {
                let got = support(&big, c * m + v).unwrap().values();
                prop_assert_eq!(got.len(), want.len());
                for (x, y) in got.iter().zip(&want) {
                    prop_assert!((x - y).abs() < 1e-8);
                }
            }
        }
    }

    #[test]
    fn blowup_idempotents(i in 0usize..64, n in 2usize..4) {
        // E_{n lambda}(n.G) = (J/n) (x) E_lambda(G) for lambda != 0
        let g = graph(i);
        let m = g.n_vertices();
        let base = decompose(&g).unwrap();
        let big = decompose(&blow_up(&g, n).unwrap()).unwrap();
        for (j, &lambda) in base.eigenvalues().iter().enumerate() {
            if lambda.abs() < 1e-8 {
                continue;
            }
            let k = big.eigenvalues().iter().position(|&x| (x - n as f64 * lambda).abs() < 1e-8).unwrap();
            let e = big.idempotent(k);
            for a in 0..n * m {
                for b in 0..n * m {
                    let want = base.idempotent(j)[(a % m, b % m)] / n as f64;
                    prop_assert!((e[(a, b)] - want).abs() < 1e-9);
                }
            }
        }
    }
}

#[test]
fn identity_and_transfer_at_known_times() {
    let dec = decompose(&GraphExpr::parse("path(2)").unwrap().build().unwrap()).unwrap();
    let u = transition_matrix(&dec, PI / 2.0);
    assert!((u[(0, 1)].norm() - 1.0).abs() < 1e-12);
}

use std::sync::Arc;

use blockdet::conditions::{commutativity_graph, cond_f, cond_f_down, cond_f_side, Named};
use blockdet::matrix::BlockMatrix;
use blockdet::ncdet::nc_row_det;
use blockdet::ring::Ring;
use blockdet::traces::{symbolic_row_det, CommRel};
use blockdet::verify::{
    check_identity, gen_satisfying, gen_satisfying_trial, matrix_m3, optimality_scan, run_campaign,
    ScanOptions,
};

#[test]
fn f_campaigns_over_small_integers() {
    for n in 2..=4 {
        let r = run_campaign(&cond_f(n), 2 * n, &Ring::Integers, 40, 3).unwrap();
        assert_eq!(r.failures, 0, "{}", r.summary_line());
        assert_eq!(r.nonvacuous, 40);
    }
}

#[test]
fn side_and_down_campaigns_over_small_integers() {
    for j in 0..3 {
        let side = cond_f_side(j, 3).unwrap();
        assert_eq!(
            run_campaign(&side, 6, &Ring::Integers, 20, 4)
                .unwrap()
                .failures,
            0
        );
        let down = cond_f_down(j, 3).unwrap();
        assert_eq!(
            run_campaign(&down, 6, &Ring::Integers, 20, 4)
                .unwrap()
                .failures,
            0
        );
    }
}

#[test]
fn text_round_trip_preserves_the_identity_values() {
    let m = matrix_m3();
    let parsed = BlockMatrix::parse(&m.to_string()).unwrap();
    assert_eq!(parsed, m);
    assert_eq!(
        check_identity(&parsed).unwrap(),
        check_identity(&m).unwrap()
    );
}

#[test]
fn symbolic_determinant_evaluates_to_numeric_one() {
    let ring = Ring::PrimeField(10007);
    for (g, m) in [
        (cond_f(3), 6),
        (Named::G5.condition(), 3),
        (cond_f_side(1, 3).unwrap(), 4),
    ] {
        for seed in 0..5 {
            let sample = gen_satisfying(&g, m, &ring, seed).unwrap().matrix;
            // the relation of the sample's actual commutation graph
            let rel = Arc::new(CommRel::from_condition(&commutativity_graph(&sample)));
            let sym = symbolic_row_det(g.size(), &rel).unwrap();
            assert_eq!(sym.evaluate(&sample).unwrap(), nc_row_det(&sample).unwrap());
        }
    }
}

#[test]
fn trial_samples_differ_but_repeat() {
    let ring = Ring::PrimeField(10007);
    let g = cond_f(3);
    let a = gen_satisfying_trial(&g, 6, &ring, 1, 0).unwrap().matrix;
    let b = gen_satisfying_trial(&g, 6, &ring, 1, 1).unwrap().matrix;
    assert_ne!(a, b);
    assert_eq!(a, gen_satisfying(&g, 6, &ring, 1).unwrap().matrix);
}

#[test]
fn optimality_scan_four() {
    let scan = optimality_scan(
        4,
        &ScanOptions {
            trials: 10,
            samples: 1,
            seed: 5,
        },
    )
    .unwrap();
    // 12 blocks below the first row: C(12,2) pairs minus 4 * C(3,2) same-column ones
    assert_eq!(scan.edges.len(), 66 - 12);
    assert!(scan.all_ok());
}

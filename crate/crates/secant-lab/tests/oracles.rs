//! Self-validation of the independent rank-locus oracles against their
//! closed-form dimension counts, and the frozen values the engine tests
//! rely on. Everything here runs over the prime field.

mod common;

use common::*;
use secant_lab::scalar::Fp0;

#[test]
fn power_sum_oracle_matches_min_formula() {
    // s^(k) of the rational normal curve of degree d is min(d, 2k+1)
    for (d, k) in [(3, 1), (4, 1), (5, 1), (5, 2), (6, 2), (7, 3), (8, 2)] {
        let (coords, np) = power_sum_coords::<Fp0>(d, k);
        let want = d.min(2 * k + 1);
        assert_eq!(
            cone_image_dim(&coords, np, 17),
            want,
            "power-sum oracle at d={} k={}",
            d,
            k
        );
    }
}

#[test]
fn power_sum_oracle_frozen_quintic_values() {
    // frozen expected values used by the ledger tests for veronese:1,5
    let (coords, np) = power_sum_coords::<Fp0>(5, 1);
    assert_eq!(cone_image_dim(&coords, np, 1), 3);
    let (coords, np) = power_sum_coords::<Fp0>(5, 2);
    assert_eq!(cone_image_dim(&coords, np, 1), 5);
}

#[test]
fn symmetric_oracle_matches_closed_form() {
    // dim = min(r, (k+1)(m+1) - C(k+1,2) - 1), r = C(m+2,2) - 1
    for m in 1..=4usize {
        for k in 0..=3usize {
            if k > m {
                continue; // rank saturates; the closed form needs k <= m
            }
            let r = binomial(m + 2, 2) - 1;
            let want = r.min((k + 1) * (m + 1) - binomial(k + 1, 2) - 1);
            let (coords, np) = symmetric_rank_coords::<Fp0>(m, k);
            assert_eq!(
                cone_image_dim(&coords, np, 3),
                want,
                "symmetric oracle at m={} k={}",
                m,
                k
            );
        }
    }
}

#[test]
fn generic_oracle_matches_closed_form() {
    // dim = min(r, (k+1)(a+b+1-k) - 1), r = (a+1)(b+1) - 1
    for (a, b) in [(1, 1), (1, 2), (2, 2), (2, 3), (3, 3), (3, 4), (4, 4)] {
        for k in 0..=3usize {
            if k > a.min(b) {
                continue; // rank saturates; the closed form needs k <= min(a,b)
            }
            let r = (a + 1) * (b + 1) - 1;
            let want = r.min((k + 1) * (a + b + 1 - k) - 1);
            let (coords, np) = generic_rank_coords::<Fp0>(a, b, k);
            assert_eq!(
                cone_image_dim(&coords, np, 5),
                want,
                "generic oracle at a={} b={} k={}",
                a,
                b,
                k
            );
        }
    }
}

#[test]
fn skew_oracle_frozen_grassmannian_values() {
    // G(1,4): sigma_1 fills P^9
    let (coords, np) = skew_rank_coords::<Fp0>(4, 1);
    assert_eq!(cone_image_dim(&coords, np, 7), 9);
    // G(1,5): sigma_1 is the Severi 13-fold in P^14
    let (coords, np) = skew_rank_coords::<Fp0>(5, 1);
    assert_eq!(cone_image_dim(&coords, np, 7), 13);
    // G(1,7): sigma_2 is the k=2 Severi 26-fold in P^27
    let (coords, np) = skew_rank_coords::<Fp0>(7, 2);
    assert_eq!(cone_image_dim(&coords, np, 7), 26);
    // G(1,9): sigma_3 is the k=3 Severi 43-fold in P^44
    let (coords, np) = skew_rank_coords::<Fp0>(9, 3);
    assert_eq!(cone_image_dim(&coords, np, 7), 43);
}

#[test]
fn oracles_on_defective_scrolls_do_not_apply_but_curve_case_does() {
    // the scroll ledgers are checked against the paper's closed forms in
    // the acceptance suite; here we pin the curve case the scroll cones
    // are built from: a degree-10 rational normal curve has s^(k) = 2k+1
    for k in 1..=4usize {
        let (coords, np) = power_sum_coords::<Fp0>(10, k);
        assert_eq!(cone_image_dim(&coords, np, 11), 2 * k + 1);
    }
}

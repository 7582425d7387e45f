use cde_core::clifford::gamma_chiral;
use cde_core::tensor::r;
use cde_core::verify::{verify_all, verify_all_with, VerifyOptions, SweepSizes};

#[test]
fn seed_42_hundred_trials_passes() {
    let rep = verify_all(42, 100);
    assert!(rep.pass, "{}", rep.to_table());
}

#[test]
fn flipped_gamma2_fails_the_clifford_suite() {
    let gs = gamma_chiral();
    let bad = gs.with_gamma(2, gs.gamma(2).scale(r(-1.0)));
    let opts = VerifyOptions { sizes: SweepSizes::uniform(2), ..VerifyOptions::default() };
    let rep = verify_all_with(&bad, 42, &opts);
    assert!(!rep.pass);
    assert!(!rep.suite("clifford").unwrap().pass());
}

#[test]
fn reports_are_reproducible() {
    assert_eq!(verify_all(9, 5).to_json(), verify_all(9, 5).to_json());
    assert_ne!(verify_all(9, 5).to_json(), verify_all(10, 5).to_json());
}

//! Acceptance suite: one test per criterion, each printing its pass/fail
//! line. Every comparison is an exact rational equality.

use logsurf_core::verify;

fn run(result: verify::CriterionResult) {
    println!("{}", result.line());
    assert!(result.passed, "{}", result.line());
}

#[test]
fn criterion_01_even_odd_volume_families() {
    run(verify::criterion_1());
}

#[test]
fn criterion_02_blowup_chain_volumes() {
    run(verify::criterion_2());
}

#[test]
fn criterion_03_iterated_plane_sweep() {
    run(verify::criterion_3());
}

#[test]
fn criterion_04_t_m_bounded_search() {
    run(verify::criterion_4());
}

#[test]
fn criterion_05_standard_sums_and_cartier_multiples() {
    run(verify::criterion_5());
}

#[test]
fn criterion_06_lower_bound_and_table() {
    run(verify::criterion_6());
}

#[test]
fn criterion_07_different_oracle_equivalence() {
    run(verify::criterion_7());
}

#[test]
fn criterion_08_derivative_set_containment() {
    run(verify::criterion_8());
}

#[test]
fn criterion_09_zariski_contract() {
    run(verify::criterion_9());
}

#[test]
fn criterion_10_structural_invariants() {
    run(verify::criterion_10());
}

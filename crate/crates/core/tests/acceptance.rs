//! Acceptance suite: every structural claim the library is built around,
//! one test per criterion, all equalities exact. Run with `--nocapture` to
//! see the per-criterion detail lines.

use std::time::{Duration, Instant};

use dmr_core::verify::{self, CriterionResult};

fn require(result: CriterionResult) {
    println!(
        "criterion {:>2} [{}] {} — {}",
        result.id,
        if result.pass { "PASS" } else { "FAIL" },
        result.name,
        result.detail
    );
    assert!(result.pass, "criterion {} failed: {}", result.id, result.detail);
}

fn require_within(result: CriterionResult, budget: Duration, started: Instant) {
    let elapsed = started.elapsed();
    require(result);
    assert!(
        elapsed < budget,
        "runtime {elapsed:?} exceeded the {budget:?} budget"
    );
}

#[test]
fn criterion_01_dmr_coefficient_anchors() {
    let t = Instant::now();
    require_within(verify::criterion_anchors(), Duration::from_secs(10), t);
}

#[test]
fn criterion_02_betti_independence() {
    let t = Instant::now();
    require_within(verify::criterion_independence(), Duration::from_secs(300), t);
}

#[test]
fn criterion_03_n1_reference_formulas() {
    let t = Instant::now();
    require_within(
        verify::criterion_reference_formulas(),
        Duration::from_secs(120),
        t,
    );
}

#[test]
fn criterion_04_unit_class_grouplike() {
    require(verify::criterion_unit_class());
}

#[test]
fn criterion_05_stabilizer_chain() {
    require(verify::criterion_stabilizer_chain());
}

#[test]
fn criterion_06_torsor_closure() {
    require(verify::criterion_torsor_closure());
}

#[test]
fn criterion_07_hopf_suite() {
    require(verify::criterion_hopf_suite());
}

#[test]
fn criterion_08_betti_filtration_ranks() {
    let t = Instant::now();
    require_within(
        verify::criterion_filtration_ranks(),
        Duration::from_secs(60),
        t,
    );
}

#[test]
fn criterion_09_nielsen_schreier_sigma() {
    require(verify::criterion_nielsen_schreier());
}

#[test]
fn criterion_10_comparison_coherence() {
    require(verify::criterion_comparison_coherence());
}

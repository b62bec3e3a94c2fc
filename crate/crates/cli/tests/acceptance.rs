//! Acceptance suite: every classification statement replayed at its stated
//! range, exact arithmetic throughout (tolerance zero), with the stated
//! runtime budgets pinned. One pass/fail line prints per criterion
//! (visible under `cargo test -- --nocapture`).

use std::time::{Duration, Instant};

use spincover_core::gf2::GF2Vec;
use spincover_core::surfaces::{epi_set, specials, SectionParams, TotalN};
use spincover_core::symp_action::arf_closed_form;
use spincover_core::verify::{run_check, VerifyOptions};

fn opts(max_g: usize) -> VerifyOptions {
    VerifyOptions {
        max_g,
        g: None,
        rho: None,
        r: None,
    }
}

fn run_within(criterion: &str, name: &str, max_g: usize, budget: Duration) {
    let start = Instant::now();
    let report = run_check(name, &opts(max_g)).expect("known check");
    let elapsed = start.elapsed();
    assert!(report.passed, "criterion {criterion} FAIL\n{report}");
    assert!(
        elapsed < budget,
        "criterion {criterion}: {elapsed:?} exceeds the {budget:?} budget"
    );
    println!("criterion {criterion}: PASS ({name} to genus {max_g} in {elapsed:?})");
}

#[test]
fn criterion_01_counting() {
    let start = Instant::now();
    for g in 1..=8 {
        assert_eq!(specials(TotalN { g }).len(), 1 << (g + 1), "coverings at g={g}");
        assert_eq!(epi_set(g).len(), 1 << g, "pulled-back family at g={g}");
    }
    let report = run_check("2g", &opts(8)).expect("known check");
    assert!(report.passed, "criterion 1 FAIL\n{report}");
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(1), "criterion 1: {elapsed:?} exceeds 1s");
    println!("criterion 1: PASS (counts 2^(g+1) and 2^g for g=1..8 in {elapsed:?})");
}

#[test]
fn criterion_02_orbit_profiles() {
    run_within("2", "1", 5, Duration::from_secs(30));
}

#[test]
fn criterion_03_stabilizers() {
    run_within("3", "1234", 5, Duration::from_secs(60));
}

#[test]
fn criterion_04_family_orbits() {
    run_within("4", "2=4", 3, Duration::from_secs(90));
}

#[test]
fn criterion_05_arf_identity_zero_mismatches() {
    let start = Instant::now();
    let mut checked = 0u64;
    for g in 1..=3 {
        for r_k in 0..(1u64 << (2 * g)) {
            let params =
                SectionParams::with_r(g, GF2Vec::from_counter_msb(r_k, 2 * g)).unwrap();
            for member in epi_set(g) {
                let (by_basis, by_formula) = arf_closed_form(&member.phi, &params).unwrap();
                assert_eq!(
                    by_basis,
                    by_formula,
                    "criterion 5 FAIL: mismatch at g={g} r_k={r_k} phi={}",
                    member.phi.bitstring()
                );
                checked += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    println!("criterion 5: PASS ({checked} invariant evaluations, zero mismatches, {elapsed:?})");
}

#[test]
fn criterion_06_transvection_factorization() {
    run_within("6", "genkt", 5, Duration::from_secs(30));
}

#[test]
fn criterion_07_lift_projection_correspondence() {
    let start = Instant::now();
    let budget = Duration::from_secs(30);
    for name in ["symsym", "gene"] {
        let report = run_check(name, &opts(4)).expect("known check");
        assert!(report.passed, "criterion 7 FAIL\n{report}");
    }
    let elapsed = start.elapsed();
    assert!(elapsed < budget, "criterion 7: {elapsed:?} exceeds {budget:?}");
    println!("criterion 7: PASS (lift/projection and extension counts to genus 4 in {elapsed:?})");
}

#[test]
fn criterion_08_four_way_equivalence() {
    run_within("8", "an", 4, Duration::from_secs(60));
}

#[test]
fn criterion_09_property_suites() {
    let start = Instant::now();
    let budget = Duration::from_secs(30);
    // quadratic-section law and refinement law
    let report = run_check("s", &opts(3)).expect("known check");
    assert!(report.passed, "criterion 9 FAIL\n{report}");
    // lift defining relations on every vector, exhaustive over the group
    {
        use spincover_core::form::enumerate_isometries;
        use spincover_core::surfaces::s_eval;
        use spincover_core::symp_action::f_s_matrix;
        for g in 1..=2usize {
            for f in enumerate_isometries(&spincover_core::form::FormSpace::symplectic(g)).unwrap()
            {
                for r_k in 0..(1u64 << (2 * g)) {
                    let params =
                        SectionParams::with_r(g, GF2Vec::from_counter_msb(r_k, 2 * g)).unwrap();
                    let lifted = f_s_matrix(&f, &params).unwrap();
                    for x_k in 0..(1u64 << (2 * g)) {
                        let x = GF2Vec::from_counter_msb(x_k, 2 * g);
                        assert_eq!(
                            lifted.matrix().apply(&s_eval(&params, &x)),
                            s_eval(&params, &f.apply(&x)),
                            "criterion 9 FAIL: defining relation at g={g}"
                        );
                    }
                }
            }
        }
    }
    // fixed-vector and transitivity brute checks
    for name in ["uti", "trans"] {
        let report = run_check(name, &opts(5)).expect("known check");
        assert!(report.passed, "criterion 9 FAIL\n{report}");
    }
    // monomorphism of the section lift
    let report = run_check("jn", &opts(4)).expect("known check");
    assert!(report.passed, "criterion 9 FAIL\n{report}");
    let elapsed = start.elapsed();
    assert!(elapsed < budget, "criterion 9: {elapsed:?} exceeds {budget:?}");
    println!("criterion 9: PASS (section law, lift relations, brute lemmas, monomorphism in {elapsed:?})");
}

#[test]
fn criterion_10_full_verify_run() {
    let start = Instant::now();
    let output = std::process::Command::new(env!("CARGO_BIN_EXE_spincover"))
        .args(["verify", "--all", "--max-g", "3"])
        .output()
        .expect("binary runs");
    let elapsed = start.elapsed();
    assert_eq!(
        output.status.code(),
        Some(0),
        "criterion 10 FAIL:\n{}",
        String::from_utf8_lossy(&output.stdout)
    );
    assert!(
        elapsed < Duration::from_secs(120),
        "criterion 10: {elapsed:?} exceeds 120s"
    );
    let text = String::from_utf8_lossy(&output.stdout);
    assert!(text.contains("19 of 19 checks passed"), "{text}");
    println!("criterion 10: PASS (verify --all --max-g 3 exits 0 in {elapsed:?})");
}

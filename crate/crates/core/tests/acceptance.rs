//! Acceptance gate: one test per top-level correctness criterion, each
//! printing a single pass line with its runtime. Every expected value is
//! exact; no tolerances.

use std::time::Instant;

use steiner4_core::arith::prime_power;
use steiner4_core::classify::solver::{solve_q, EqVariant};
use steiner4_core::classify::{families, run_classification, FamilyTag, ScanLimits, Verdict};
use steiner4_core::designs::verify_steiner;
use steiner4_core::psl2::{
    brute_profile, closed_form_profile, construct_subgroup, valid_specs, Psl2Context, SubgroupSpec,
};
use steiner4_core::witt::{mathieu_group, verify_main_theorem, witt_design};

fn report(criterion: &str, started: Instant, budget_secs: f64, detail: &str) {
    let elapsed = started.elapsed().as_secs_f64();
    assert!(
        elapsed < budget_secs,
        "{criterion}: runtime {elapsed:.2}s exceeds budget {budget_secs}s"
    );
    println!("{criterion}: PASS ({elapsed:.2}s) — {detail}");
}

#[test]
fn criterion_1_witt_11() {
    let started = Instant::now();
    let design = witt_design(11).unwrap();
    assert_eq!(design.b(), 66, "block count of the 4-(11,5,1) design");
    assert!(verify_steiner(&design, 4).is_pass(), "330 quadruples each covered once");
    let group = mathieu_group(11).unwrap();
    assert_eq!(group.order_u128(), 7920, "|M11|");
    let report_data = verify_main_theorem().unwrap();
    assert_eq!(report_data.flag_orbits[0], (11, 330), "flag orbit size = 66·5");
    report(
        "criterion 1",
        started,
        5.0,
        "4-(11,5,1): 66 blocks, Steiner-verified, |M11| = 7920, flag orbit 330",
    );
}

#[test]
fn criterion_2_witt_23() {
    let started = Instant::now();
    let design = witt_design(23).unwrap();
    assert_eq!(design.b(), 253, "block count of the 4-(23,7,1) design");
    assert!(verify_steiner(&design, 4).is_pass(), "8855 quadruples each covered once");
    let group = mathieu_group(23).unwrap();
    assert_eq!(group.order_u128(), 10_200_960, "|M23|");
    let report_data = verify_main_theorem().unwrap();
    assert_eq!(report_data.flag_orbits[1], (23, 1771), "flag orbit size = 253·7");
    report(
        "criterion 2",
        started,
        60.0,
        "4-(23,7,1): 253 blocks, Steiner-verified, |M23| = 10200960, flag orbit 1771",
    );
}

#[test]
fn criterion_3_flag_transitive_implies_point_2transitive() {
    let started = Instant::now();
    for v in [11u64, 23] {
        let group = mathieu_group(v).unwrap();
        assert!(
            group.is_point_2transitive(),
            "flag-transitive automorphism group on v={v} must be point 2-transitive"
        );
    }
    report(
        "criterion 3",
        started,
        60.0,
        "both flag-transitive pairs act point 2-transitively",
    );
}

#[test]
fn criterion_4_orbit_profile_oracle_equivalence() {
    let started = Instant::now();
    let mut qs: Vec<u64> = (4..=81).filter(|&q| prime_power(q).is_some()).collect();
    qs.extend([121, 125, 128]);
    let mut checked = 0usize;
    for q in qs {
        let ctx = Psl2Context::new(q).unwrap();
        for spec in valid_specs(&ctx).unwrap() {
            let closed = closed_form_profile(&ctx, &spec).unwrap();
            let group = construct_subgroup(&ctx, &spec)
                .unwrap_or_else(|e| panic!("construction of {spec} at q={q} failed: {e}"));
            let brute = brute_profile(&group);
            assert_eq!(
                closed, brute,
                "closed form vs brute-force orbit profile for {spec} at q={q}"
            );
            checked += 1;
        }
    }
    report(
        "criterion 4",
        started,
        60.0,
        &format!("closed form = brute force on all {checked} (q, subgroup) pairs"),
    );
}

#[test]
fn criterion_5_solver_endpoints() {
    let started = Instant::now();
    assert_eq!(solve_q(6, 2, 2, EqVariant::Direct), Ok(17), "k = 6, pointwise 2");
    assert_eq!(solve_q(12, 5, 2, EqVariant::Direct), Ok(101), "k = 12, pointwise 5");
    assert_eq!(solve_q(20, 3, 2, EqVariant::Direct), Ok(971), "k = 20, pointwise 3");
    assert_eq!(solve_q(8, 3, 2, EqVariant::Direct), Ok(37), "k = 8, pointwise 3");
    // The k = 8 endpoint is subsequently rejected: the hypothesis needs an
    // octahedral block stabilizer, which exists only for q = +/-1 (mod 8).
    assert_eq!(37 % 8, 5);
    let ctx = Psl2Context::new(37).unwrap();
    assert!(
        !valid_specs(&ctx).unwrap().contains(&SubgroupSpec::S4),
        "S4 must be absent from the subgroup lattice of PSL(2,37)"
    );
    report(
        "criterion 5",
        started,
        60.0,
        "solver endpoints 17 / 101 / 971 / 37, with 37 = 5 (mod 8) rejecting S4",
    );
}

#[test]
fn criterion_6_elimination_endpoints() {
    let started = Instant::now();

    // v = 16: both block sizes fall to the pair-divisibility rule.
    let small = families::check_small_cases();
    let v16 = small
        .iter()
        .find(|r| r.family == FamilyTag::AffineSporadic && r.params.get("v") == Some(&16))
        .unwrap();
    assert_eq!(v16.verdict, Verdict::EliminatedMechanized);
    let w16 = v16.witness.as_deref().unwrap();
    for k in [5u64, 6] {
        assert!(w16.contains(&format!("k={k}:")), "v = 16 must refute k = {k}");
    }
    assert_eq!(
        w16.matches("does not divide (v-2)(v-3) = 182").count(),
        2,
        "pair divisibility must fire at both block sizes for v = 16"
    );

    // v = 64: every k in [5, 10] falls to replication divisibility against
    // |G_x| = 12096.
    let g2 = families::check_affine_g2(1_000_000);
    let v64 = g2.iter().find(|r| r.params.get("v") == Some(&64)).unwrap();
    assert_eq!(v64.verdict, Verdict::EliminatedMechanized);
    let w64 = v64.witness.as_deref().unwrap();
    for k in 5u64..=10 {
        assert!(w64.contains(&format!("k={k}:")), "v = 64 must refute k = {k}");
    }
    assert_eq!(
        w64.matches("cannot divide |G_x| = 12096").count(),
        6,
        "replication divisibility must fire at every k in [5, 10] for v = 64"
    );

    // v = 22: all three candidate block sizes eliminated mechanically.
    let mathieu = families::check_mathieu();
    let v22: Vec<_> = mathieu.iter().filter(|r| r.params.get("v") == Some(&22)).collect();
    let ks: Vec<u64> = v22.iter().map(|r| *r.params.get("k").unwrap()).collect();
    assert_eq!(ks, vec![5, 6, 7]);
    assert!(v22.iter().all(|r| r.verdict == Verdict::EliminatedMechanized));

    // PSL(3,7): k = 6 falls to pair divisibility, k = 8 to the integrality
    // of lambda_3 = 54/5 (the derived 3-(56,7,1) design cannot exist).
    let psl3 = families::check_psl3(1_000_000);
    let q7 = psl3.iter().find(|r| r.params.get("q") == Some(&7)).unwrap();
    assert_eq!(q7.verdict, Verdict::EliminatedMechanized);
    let w7 = q7.witness.as_deref().unwrap();
    assert!(w7.contains("(k-2)(k-3) = 12 does not divide (v-2)(v-3) = 2970"));
    assert!(w7.contains("lambda_3 = 54/5 is not an integer"));

    // Sz / Ree / PSU scans leave zero survivors.
    let limits = ScanLimits::default();
    for rows in [
        families::check_sz(limits.sz_e_max()),
        families::check_ree(limits.ree_e_max()),
        families::check_psu3(limits.psu3_q_max()),
    ] {
        assert!(!rows.is_empty());
        assert!(
            rows.iter().all(|r| r.verdict == Verdict::EliminatedMechanized),
            "exceptional-family scans must leave zero survivors"
        );
    }

    report(
        "criterion 6",
        started,
        60.0,
        "v=16 pair rule, v=64 r-divisibility, v=22 swept, PSL(3,7) pair + 54/5, Sz/Ree/PSU clean",
    );
}

#[test]
fn criterion_7_full_classification_run() {
    let started = Instant::now();
    let report_data = run_classification(&ScanLimits::default()).unwrap();
    let survivors = report_data.survivors();
    assert_eq!(survivors.len(), 2, "exactly two surviving parameter sets");
    assert!(
        report_data.matches_main_theorem(),
        "survivors must be 4-(11,5,1) with M11 and 4-(23,7,1) with M23"
    );
    for row in report_data.cases() {
        match row.verdict {
            Verdict::Survivor => {}
            Verdict::EliminatedMechanized => {
                assert!(row.rule.is_some(), "mechanized row without a rule: {row:?}")
            }
            Verdict::EliminatedCited => {
                assert!(row.citation.is_some(), "cited row without a citation: {row:?}")
            }
        }
    }
    report(
        "criterion 7",
        started,
        600.0,
        &format!(
            "{} rows, exactly two survivors, every elimination mechanized or cited",
            report_data.cases().len()
        ),
    );
}

#[test]
fn criterion_8_deterministic_output() {
    let started = Instant::now();
    let limits = ScanLimits::default();
    let first = run_classification(&limits).unwrap().to_json();
    let second = run_classification(&limits).unwrap().to_json();
    assert_eq!(first, second, "two consecutive classification runs must serialize identically");
    report(
        "criterion 8",
        started,
        600.0,
        &format!("two consecutive runs byte-identical ({} bytes of JSON)", first.len()),
    );
}

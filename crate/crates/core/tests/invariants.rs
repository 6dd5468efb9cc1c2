//! Cross-cutting invariants of the classification pipeline: the block-size
//! solver inverts its defining equation exactly, scan hypotheses stay tied
//! to genuine orbit lengths, the assembled report is fully bookkept, and
//! serialization is canonical.

use std::collections::BTreeMap;

use steiner4_core::arith::prime_power;
use steiner4_core::classify::scan::psl2_case_scan;
use steiner4_core::classify::solver::{solve_q, EqVariant};
use steiner4_core::classify::{run_classification, EliminationReport, FamilyTag, ScanLimits, Verdict};
use steiner4_core::psl2::{closed_form_profile, Psl2Context};

const VARIANTS: [EqVariant; 6] = [
    EqVariant::Direct,
    EqVariant::TwoOrbitsFull,
    EqVariant::TwoOrbitsMerged,
    EqVariant::Semilinear { s: 2 },
    EqVariant::Semilinear { s: 3 },
    EqVariant::Semilinear { s: 5 },
];

#[test]
fn solver_inverts_its_equation_exactly() {
    let mut solutions = 0u64;
    for variant in VARIANTS {
        for k in 5u64..=200 {
            for pointwise in 1u64..=60 {
                for n in [1u64, 2] {
                    let Ok(q) = solve_q(k, pointwise, n, variant) else {
                        continue;
                    };
                    solutions += 1;
                    let rhs = (k - 1) as u128
                        * (k - 2) as u128
                        * (k - 3) as u128
                        * variant.rhs_factor() as u128;
                    assert_eq!(
                        (q - 2) as u128 * pointwise as u128 * n as u128,
                        rhs,
                        "plug-back failed for k={k}, pointwise={pointwise}, n={n}, {variant}"
                    );
                    let (p, _) = prime_power(q).expect("accepted q must be a prime power");
                    assert!(q >= 5, "accepted q must index a projective line case");
                    assert_eq!(n, if p == 2 { 1 } else { 2 }, "n must match the parity of q");
                }
            }
        }
    }
    assert!(solutions > 500, "the sweep must exercise a substantial solution set ({solutions})");
}

#[test]
fn solver_outputs_satisfy_the_cubic_identity() {
    // (k-1)(k-2)(k-3) + 6 = k (k^2 - 6k + 11), so every solved equation
    // forces k to divide (q-2) * pointwise * n + 6 * factor.
    for variant in VARIANTS {
        let f = variant.rhs_factor() as u128;
        for k in 5u64..=200 {
            for pointwise in 1u64..=60 {
                for n in [1u64, 2] {
                    let Ok(q) = solve_q(k, pointwise, n, variant) else {
                        continue;
                    };
                    let lhs = (q - 2) as u128 * pointwise as u128 * n as u128 + 6 * f;
                    assert_eq!(lhs % k as u128, 0, "k must divide (q-2)*pw*n + 6f at k={k}, q={q}");
                    let kk = k as u128;
                    assert_eq!(lhs, f * kk * (kk * kk + 11 - 6 * kk), "cubic identity at k={k}, q={q}");
                }
            }
        }
    }
}

#[test]
fn scan_hypotheses_cite_genuine_orbit_lengths() {
    let scan = psl2_case_scan(1000).unwrap();
    let flagged = scan.arithmetic_survivors.iter().chain(scan.involution_eliminations.iter());
    let mut checked = 0usize;
    for (q, hyp) in flagged {
        let ctx = Psl2Context::new(*q).unwrap();
        let profile = closed_form_profile(&ctx, &hyp.spec).unwrap();
        assert!(
            profile.counts().contains_key(&hyp.orbit_len),
            "hypothesis {hyp} at q={q} does not correspond to an orbit length"
        );
        assert!(
            hyp.k == hyp.orbit_len || hyp.k % hyp.orbit_len == 0,
            "accepted block size {} is not assembled from orbit length {}",
            hyp.k,
            hyp.orbit_len
        );
        checked += 1;
    }
    assert_eq!(checked, 4, "three arithmetic survivors plus one involution elimination");
}

#[test]
fn report_covers_every_family_with_exact_multiplicity() {
    let report = run_classification(&ScanLimits::default()).unwrap();
    let mut counts: BTreeMap<FamilyTag, usize> = BTreeMap::new();
    for row in report.cases() {
        *counts.entry(row.family).or_default() += 1;
        match row.verdict {
            Verdict::Survivor => assert!(row.witness.is_some(), "survivor without witness: {row:?}"),
            Verdict::EliminatedMechanized => {
                assert!(row.rule.is_some(), "mechanized row without rule: {row:?}")
            }
            Verdict::EliminatedCited => {
                assert!(row.citation.is_some(), "cited row without citation: {row:?}")
            }
        }
    }
    let expected: BTreeMap<FamilyTag, usize> = [
        (FamilyTag::AffineGammaL1, 78_731),
        (FamilyTag::AffineSl, 286),
        (FamilyTag::AffineSp, 228),
        (FamilyTag::AffineG2, 3),
        (FamilyTag::AffineSporadic, 11),
        (FamilyTag::Alt, 2),
        // 192 degree-(q+1) rows, 193 planes, 92 higher-rank spaces
        (FamilyTag::PslD, 477),
        (FamilyTag::Psu3, 34),
        (FamilyTag::Sz, 4),
        (FamilyTag::Ree, 1),
        (FamilyTag::Sp2d2, 16),
        (FamilyTag::Psl2Deg11, 1),
        (FamilyTag::Psl2Deg28, 1),
        (FamilyTag::Mathieu, 11),
        (FamilyTag::M11Deg12, 1),
        (FamilyTag::A7Deg15, 1),
        (FamilyTag::Hs, 1),
        (FamilyTag::Co3, 1),
    ]
    .into_iter()
    .collect();
    assert_eq!(counts, expected, "per-family row multiplicities at the default limits");
    assert_eq!(report.cases().len(), 79_810);
}

#[test]
fn suzuki_inequality_holds_symbolically_on_every_scanned_field() {
    let limits = ScanLimits::default();
    assert_eq!(limits.sz_e_max(), 4);
    for e in 1..=limits.sz_e_max() {
        let q = 1u128 << (2 * e + 1);
        assert!(
            (q + 1) * q * (q - 1) < (q * q - 2) * (q + 1),
            "the fixed-point bound must dominate the Cameron range at q = {q}"
        );
    }
}

#[test]
fn report_serialization_is_canonical_and_lossless() {
    let limits = ScanLimits { q_max: 40, v_max: 5_000 };
    let report = run_classification(&limits).unwrap();
    let json = report.to_json();
    let reparsed = EliminationReport::from_json(&json).unwrap();
    assert_eq!(reparsed.to_json(), json, "round trip must preserve the exact byte stream");
    assert_eq!(reparsed.cases(), report.cases());
}

//! Case ledger and driver for the classification of flag-transitive
//! Steiner 4-designs.
//!
//! A flag-transitive automorphism group of a non-trivial Steiner 4-design is
//! point 2-transitive, so the classification walks the finite 2-transitive
//! permutation groups, known through the classification of finite simple
//! groups.  That list is vendored here as an explicit data table
//! ([`TWO_TRANSITIVE_FAMILIES`]), keeping the CFSG dependency visible and
//! auditable.  Each family has an elimination checker ([`families`],
//! [`scan`]), and every parameter point a checker visits becomes one
//! [`CaseReport`] row, so the final [`EliminationReport`] accounts for the
//! whole list.  The classification statement holds exactly when the survivor
//! set is the two Witt/Mathieu pairs: 4-(11,5,1) with M11 and 4-(23,7,1)
//! with M23.
//!
//! Structural eliminations that are not re-proved here are first-class rows
//! with verdict [`Verdict::EliminatedCited`] and a citation string; where an
//! arithmetic refutation exists alongside a structural one, the mechanized
//! route is preferred and the citation kept as corroboration.

pub mod families;
pub mod scan;
pub mod solver;

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::psl2::Psl2Error;
use crate::witt::{self, WittError};

/// The eighteen families of finite 2-transitive permutation groups, in the
/// conventional order: affine families first, then the almost simple ones.
///
/// `PslD` covers all of PSL(d,q) for d >= 2 (parameters distinguish the
/// degree); the exceptional 2-transitive actions of PSL(2,11), PSL(2,8),
/// M11, and A7 are separate families because their degrees differ from the
/// natural ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum FamilyTag {
    /// One-dimensional affine semilinear groups, v = p^d.
    #[serde(rename = "affine-gamma-l1")]
    AffineGammaL1,
    /// Affine groups with SL(m, q0) <= G_0, v = q0^m, m >= 2.
    #[serde(rename = "affine-sl")]
    AffineSl,
    /// Affine groups with Sp(m, q0) <= G_0, v = q0^m, m even.
    #[serde(rename = "affine-sp")]
    AffineSp,
    /// Affine groups with G2(2^a)' <= G_0, v = 2^(6a).
    #[serde(rename = "affine-g2")]
    AffineG2,
    /// The finitely many exceptional affine cases (A6/A7 on 2^4, SL(2,3) and
    /// SL(2,5) cases, the extraspecial 2^(1+4) normalizer on 3^4, SL(2,13)
    /// on 3^6).
    #[serde(rename = "affine-sporadic")]
    AffineSporadic,
    /// Alternating groups A_v in their natural action, v >= 5.
    #[serde(rename = "alt")]
    Alt,
    /// PSL(d,q) on the projective space, v = (q^d - 1)/(q - 1),
    /// (d,q) != (2,2), (2,3).
    #[serde(rename = "psl")]
    PslD,
    /// PSU(3,q^2) on the Hermitian unital, v = q^3 + 1, q > 2.
    #[serde(rename = "psu3")]
    Psu3,
    /// Suzuki groups Sz(q) on the ovoid, v = q^2 + 1, q = 2^(2e+1) > 2.
    #[serde(rename = "sz")]
    Sz,
    /// Ree groups Re(q), v = q^3 + 1, q = 3^(2e+1) > 3.
    #[serde(rename = "ree")]
    Ree,
    /// Sp(2d,2) on cosets of the orthogonal subgroups,
    /// v = 2^(2d-1) +/- 2^(d-1), d >= 3.
    #[serde(rename = "sp2d2")]
    Sp2d2,
    /// The exceptional 2-transitive action of PSL(2,11) on 11 points.
    #[serde(rename = "psl2-11")]
    Psl2Deg11,
    /// The exceptional 2-transitive action of PSL(2,8) on 28 points.
    #[serde(rename = "psl2-8")]
    Psl2Deg28,
    /// Mathieu groups M_v in their natural action, v = 11, 12, 22, 23, 24.
    #[serde(rename = "mathieu")]
    Mathieu,
    /// The exceptional 3-transitive action of M11 on 12 points.
    #[serde(rename = "m11-12")]
    M11Deg12,
    /// The exceptional 2-transitive action of A7 on the 15 points of PG(3,2).
    #[serde(rename = "a7-15")]
    A7Deg15,
    /// The Higman-Sims group on 176 points.
    #[serde(rename = "hs")]
    Hs,
    /// The Conway group Co3 on 276 points.
    #[serde(rename = "co3")]
    Co3,
}

impl FamilyTag {
    /// All tags in canonical (report) order.
    pub const ALL: [FamilyTag; 18] = [
        FamilyTag::AffineGammaL1,
        FamilyTag::AffineSl,
        FamilyTag::AffineSp,
        FamilyTag::AffineG2,
        FamilyTag::AffineSporadic,
        FamilyTag::Alt,
        FamilyTag::PslD,
        FamilyTag::Psu3,
        FamilyTag::Sz,
        FamilyTag::Ree,
        FamilyTag::Sp2d2,
        FamilyTag::Psl2Deg11,
        FamilyTag::Psl2Deg28,
        FamilyTag::Mathieu,
        FamilyTag::M11Deg12,
        FamilyTag::A7Deg15,
        FamilyTag::Hs,
        FamilyTag::Co3,
    ];

    /// The stable lowercase name used in JSON reports and on the CLI.
    pub fn name(&self) -> &'static str {
        match self {
            FamilyTag::AffineGammaL1 => "affine-gamma-l1",
            FamilyTag::AffineSl => "affine-sl",
            FamilyTag::AffineSp => "affine-sp",
            FamilyTag::AffineG2 => "affine-g2",
            FamilyTag::AffineSporadic => "affine-sporadic",
            FamilyTag::Alt => "alt",
            FamilyTag::PslD => "psl",
            FamilyTag::Psu3 => "psu3",
            FamilyTag::Sz => "sz",
            FamilyTag::Ree => "ree",
            FamilyTag::Sp2d2 => "sp2d2",
            FamilyTag::Psl2Deg11 => "psl2-11",
            FamilyTag::Psl2Deg28 => "psl2-8",
            FamilyTag::Mathieu => "mathieu",
            FamilyTag::M11Deg12 => "m11-12",
            FamilyTag::A7Deg15 => "a7-15",
            FamilyTag::Hs => "hs",
            FamilyTag::Co3 => "co3",
        }
    }

    /// Parses a family name (case-insensitive).
    pub fn parse(text: &str) -> Option<FamilyTag> {
        FamilyTag::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(text.trim()))
    }
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One row of the vendored 2-transitive group table: which family, how it
/// acts, and how the classification covers it.  The list itself rests on the
/// classification of finite simple groups; see e.g. Cameron 1981 ("Finite
/// permutation groups and finite simple groups") or Beth-Jungnickel-Lenz
/// 1999, Ch. XII, for the statement.
#[derive(Clone, Copy, Debug)]
pub struct FamilyEntry {
    /// Family tag, also the JSON/CLI name.
    pub tag: FamilyTag,
    /// The group family in conventional notation.
    pub group: &'static str,
    /// Number of points of the 2-transitive action.
    pub degree: &'static str,
    /// Which parameter points the checkers visit.
    pub coverage: &'static str,
}

/// The vendored list of all finite 2-transitive group families.
pub const TWO_TRANSITIVE_FAMILIES: [FamilyEntry; 18] = [
    FamilyEntry {
        tag: FamilyTag::AffineGammaL1,
        group: "G <= AGammaL(1, p^d)",
        degree: "v = p^d",
        coverage: "every prime power 5 <= v <= v_max",
    },
    FamilyEntry {
        tag: FamilyTag::AffineSl,
        group: "affine, SL(m, q0) <= G_0",
        degree: "v = q0^m, m >= 2",
        coverage: "every point (q0, m) with v <= v_max",
    },
    FamilyEntry {
        tag: FamilyTag::AffineSp,
        group: "affine, Sp(m, q0) <= G_0",
        degree: "v = q0^m, m even >= 2",
        coverage: "every point (q0, m) with v <= v_max",
    },
    FamilyEntry {
        tag: FamilyTag::AffineG2,
        group: "affine, G2(2^a)' <= G_0",
        degree: "v = 2^(6a)",
        coverage: "every a >= 1 with v <= v_max",
    },
    FamilyEntry {
        tag: FamilyTag::AffineSporadic,
        group: "affine exceptional cases (A6, A7, SL(2,3), SL(2,5), 2^(1+4).S5, SL(2,13))",
        degree: "v in {16, 25, 49, 81, 121, 361, 529, 841, 3481, 729}",
        coverage: "all eleven parameter points",
    },
    FamilyEntry {
        tag: FamilyTag::Alt,
        group: "A_v natural",
        degree: "v >= 5",
        coverage: "v = 5 explicitly; v >= 6 uniformly (4-transitivity)",
    },
    FamilyEntry {
        tag: FamilyTag::PslD,
        group: "PSL(d,q) on PG(d-1,q), (d,q) != (2,2), (2,3)",
        degree: "v = (q^d - 1)/(q - 1)",
        coverage: "d = 2: 4 <= q <= q_max; d >= 3: v <= v_max",
    },
    FamilyEntry {
        tag: FamilyTag::Psu3,
        group: "PSU(3, q^2) on the Hermitian unital, q > 2",
        degree: "v = q^3 + 1",
        coverage: "every prime power 2 < q <= q_max",
    },
    FamilyEntry {
        tag: FamilyTag::Sz,
        group: "Sz(q), q = 2^(2e+1) > 2",
        degree: "v = q^2 + 1",
        coverage: "e = 1..e_max, plus a symbolic bound valid for all q",
    },
    FamilyEntry {
        tag: FamilyTag::Ree,
        group: "Re(q), q = 3^(2e+1) > 3",
        degree: "v = q^3 + 1",
        coverage: "e = 1..e_max",
    },
    FamilyEntry {
        tag: FamilyTag::Sp2d2,
        group: "Sp(2d, 2), d >= 3",
        degree: "v = 2^(2d-1) +/- 2^(d-1)",
        coverage: "both signs for 3 <= d <= d_max",
    },
    FamilyEntry {
        tag: FamilyTag::Psl2Deg11,
        group: "PSL(2,11), exceptional action",
        degree: "v = 11",
        coverage: "single parameter point",
    },
    FamilyEntry {
        tag: FamilyTag::Psl2Deg28,
        group: "PSL(2,8), exceptional action",
        degree: "v = 28",
        coverage: "single parameter point",
    },
    FamilyEntry {
        tag: FamilyTag::Mathieu,
        group: "M_v natural",
        degree: "v in {11, 12, 22, 23, 24}",
        coverage: "every admissible block size k per degree",
    },
    FamilyEntry {
        tag: FamilyTag::M11Deg12,
        group: "M11 on 12 points",
        degree: "v = 12",
        coverage: "single parameter point",
    },
    FamilyEntry {
        tag: FamilyTag::A7Deg15,
        group: "A7 on PG(3,2)",
        degree: "v = 15",
        coverage: "single parameter point",
    },
    FamilyEntry {
        tag: FamilyTag::Hs,
        group: "Higman-Sims",
        degree: "v = 176",
        coverage: "single parameter point",
    },
    FamilyEntry {
        tag: FamilyTag::Co3,
        group: "Co3",
        degree: "v = 276",
        coverage: "single parameter point",
    },
];

/// Outcome of one classification case.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// The parameter point passes every implemented test; for the final
    /// report this must happen exactly for the two Witt/Mathieu pairs.
    Survivor,
    /// Refuted by arithmetic re-proved in this crate (rule + witness).
    EliminatedMechanized,
    /// Refuted by a structural argument recorded as a citation string.
    EliminatedCited,
}

/// Numeric parameters identifying one case row within its family.
pub type Params = BTreeMap<String, u64>;

/// Convenience constructor for [`Params`].
pub fn params(pairs: &[(&str, u64)]) -> Params {
    pairs.iter().map(|&(k, v)| (k.to_string(), v)).collect()
}

/// One classified parameter point: family, parameters, verdict, and the
/// rule/witness/citation trail justifying the verdict.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CaseReport {
    /// Which 2-transitive family the row belongs to.
    pub family: FamilyTag,
    /// Parameter point within the family (e.g. `{d: 2, q: 17}`).
    pub params: Params,
    /// Survivor or elimination outcome.
    pub verdict: Verdict,
    /// Name of the mechanized rule that decided the case, if any.
    pub rule: Option<String>,
    /// Concrete numbers backing the verdict.
    pub witness: Option<String>,
    /// Citation for a structural elimination, or corroboration of a
    /// mechanized one.
    pub citation: Option<String>,
}

impl CaseReport {
    /// A surviving parameter point.
    pub fn survivor(family: FamilyTag, params: Params, witness: impl Into<String>) -> CaseReport {
        CaseReport {
            family,
            params,
            verdict: Verdict::Survivor,
            rule: None,
            witness: Some(witness.into()),
            citation: None,
        }
    }

    /// A point eliminated by arithmetic recomputed in this crate.
    pub fn mechanized(
        family: FamilyTag,
        params: Params,
        rule: impl Into<String>,
        witness: impl Into<String>,
    ) -> CaseReport {
        CaseReport {
            family,
            params,
            verdict: Verdict::EliminatedMechanized,
            rule: Some(rule.into()),
            witness: Some(witness.into()),
            citation: None,
        }
    }

    /// A point eliminated by a cited structural argument.
    pub fn cited(
        family: FamilyTag,
        params: Params,
        citation: impl Into<String>,
        witness: impl Into<String>,
    ) -> CaseReport {
        CaseReport {
            family,
            params,
            verdict: Verdict::EliminatedCited,
            rule: None,
            witness: Some(witness.into()),
            citation: Some(citation.into()),
        }
    }

    /// Attaches a corroborating citation to a mechanized elimination.
    pub fn with_citation(mut self, citation: impl Into<String>) -> CaseReport {
        self.citation = Some(citation.into());
        self
    }
}

/// The aggregated classification report: one row per parameter point, in
/// canonical order (family tag, then parameters ascending), serializable as
/// a JSON array of rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EliminationReport {
    cases: Vec<CaseReport>,
}

impl EliminationReport {
    /// Builds a report, imposing the canonical row order.
    pub fn new(mut cases: Vec<CaseReport>) -> EliminationReport {
        cases.sort();
        EliminationReport { cases }
    }

    /// All rows in canonical order.
    pub fn cases(&self) -> &[CaseReport] {
        &self.cases
    }

    /// The rows with verdict [`Verdict::Survivor`].
    pub fn survivors(&self) -> Vec<&CaseReport> {
        self.cases
            .iter()
            .filter(|c| c.verdict == Verdict::Survivor)
            .collect()
    }

    /// True iff the survivor set is exactly the two pairs of the
    /// classification: 4-(11,5,1) with M11 and 4-(23,7,1) with M23.
    pub fn matches_main_theorem(&self) -> bool {
        let surv = self.survivors();
        let witt_11 = params(&[("k", 5), ("v", 11)]);
        let witt_23 = params(&[("k", 7), ("v", 23)]);
        surv.len() == 2
            && surv
                .iter()
                .any(|c| c.family == FamilyTag::Mathieu && c.params == witt_11)
            && surv
                .iter()
                .any(|c| c.family == FamilyTag::Mathieu && c.params == witt_23)
    }

    /// Serializes as a JSON array, one row per line, deterministically.
    pub fn to_json(&self) -> String {
        let mut out = String::from("[\n");
        for (i, case) in self.cases.iter().enumerate() {
            out.push_str(&serde_json::to_string(case).expect("case rows always serialize"));
            if i + 1 < self.cases.len() {
                out.push(',');
            }
            out.push('\n');
        }
        out.push_str("]\n");
        out
    }

    /// Parses a JSON report (rows are re-sorted into canonical order).
    pub fn from_json(text: &str) -> Result<EliminationReport, serde_json::Error> {
        let cases: Vec<CaseReport> = serde_json::from_str(text)?;
        Ok(EliminationReport::new(cases))
    }
}

/// Scan ceilings for a classification run.  The defaults (q <= 1000 for the
/// projective-line scan, v <= 10^6 for everything parameterized by degree)
/// lie far beyond every concrete value the case analysis produces (the
/// largest is q = 971), which is what makes "no further survivors"
/// meaningful.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScanLimits {
    /// Ceiling for q in the PSL(2,q) block-stabilizer scan.
    pub q_max: u64,
    /// Ceiling for the number of points v in all per-degree scans.
    pub v_max: u64,
}

impl Default for ScanLimits {
    fn default() -> ScanLimits {
        ScanLimits {
            q_max: 1000,
            v_max: 1_000_000,
        }
    }
}

impl ScanLimits {
    /// Largest q with q^3 + 1 <= v_max (range of the PSU(3,q^2) scan).
    pub fn psu3_q_max(&self) -> u64 {
        let mut q = 2;
        while (q + 1) * (q + 1) * (q + 1) < self.v_max as u128 {
            q += 1;
        }
        q as u64
    }

    /// Largest e with (2^(2e+1))^2 + 1 <= v_max (Sz(q) rows); 0 if none fit.
    pub fn sz_e_max(&self) -> u64 {
        let mut e = 0;
        while {
            let q = 1u128 << (2 * (e + 1) + 1);
            q * q < self.v_max as u128
        } {
            e += 1;
        }
        e
    }

    /// Largest e with (3^(2e+1))^3 + 1 <= v_max (Re(q) rows); 0 if none fit.
    pub fn ree_e_max(&self) -> u64 {
        let mut e = 0u32;
        while {
            let q = 3u128.pow(2 * (e + 1) + 1);
            q * q * q < self.v_max as u128
        } {
            e += 1;
        }
        e as u64
    }

    /// Largest d >= 3 with 2^(2d-1) + 2^(d-1) <= v_max (Sp(2d,2) rows);
    /// 2 if none fit (an empty range).
    pub fn sp2d2_d_max(&self) -> u64 {
        let mut d = 2u32;
        while (1u128 << (2 * (d + 1) - 1)) + (1u128 << d) <= self.v_max as u128 {
            d += 1;
        }
        d as u64
    }
}

/// Errors from a classification run.
#[derive(Debug, Error)]
pub enum ClassifyError {
    /// The projective-line stabilizer scan hit an internal error.
    #[error("projective-line scan failed: {0}")]
    Scan(#[from] Psl2Error),
    /// Verification of a surviving design/group pair failed.
    #[error("survivor verification failed: {0}")]
    Verify(#[from] WittError),
}

fn run_task(index: usize, limits: &ScanLimits) -> Result<Vec<CaseReport>, ClassifyError> {
    Ok(match index {
        0 => scan::psl2_case_scan(limits.q_max)?.cases,
        1 => families::check_affine_gammal1(limits.v_max),
        2 => families::check_affine_sl(limits.v_max),
        3 => families::check_affine_sp(limits.v_max),
        4 => families::check_affine_g2(limits.v_max),
        5 => families::check_small_cases(),
        6 => families::check_alt(),
        7 => families::check_mathieu(),
        8 => families::check_psl2_11(),
        9 => families::check_psl3(limits.v_max),
        10 => families::check_psld_reduction(limits.v_max),
        11 => families::check_psu3(limits.psu3_q_max()),
        12 => families::check_sz(limits.sz_e_max()),
        13 => families::check_ree(limits.ree_e_max()),
        14 => families::check_sp2d2(limits.sp2d2_d_max()),
        _ => unreachable!("task index out of range"),
    })
}

/// Runs every family checker plus the survivor verification and assembles
/// the full report.
///
/// The checkers are pure functions over disjoint parameter ranges and run in
/// parallel; the assembly step re-imposes the canonical order, so the output
/// is byte-deterministic regardless of thread count.  After aggregation the
/// two expected survivors are verified against the constructed Witt designs
/// and Mathieu groups, and their rows record the verified facts.
pub fn run_classification(limits: &ScanLimits) -> Result<EliminationReport, ClassifyError> {
    let parts = (0..15usize)
        .into_par_iter()
        .map(|i| run_task(i, limits))
        .collect::<Result<Vec<_>, _>>()?;
    let mut cases: Vec<CaseReport> = parts.into_iter().flatten().collect();

    let theorem = witt::verify_main_theorem()?;
    let witt_11 = params(&[("k", 5), ("v", 11)]);
    let witt_23 = params(&[("k", 7), ("v", 23)]);
    for case in &mut cases {
        if case.verdict != Verdict::Survivor || case.family != FamilyTag::Mathieu {
            continue;
        }
        let (v, orbit, order, b) = if case.params == witt_11 {
            (11, theorem.flag_orbits[0].1, 7920u64, 66)
        } else if case.params == witt_23 {
            (23, theorem.flag_orbits[1].1, 10_200_960, 253)
        } else {
            continue;
        };
        let note = format!(
            "; verified: the Witt design on {v} points has {b} blocks, every \
             4-subset in exactly one block, automorphism group of order {order} \
             acting point 2-transitively with a single flag orbit of size {orbit}"
        );
        match &mut case.witness {
            Some(w) => w.push_str(&note),
            None => case.witness = Some(note),
        }
    }

    Ok(EliminationReport::new(cases))
}

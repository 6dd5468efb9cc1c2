//! Orbit profiles of subgroup classes of PSL(2,q) on the projective line.
//!
//! For every listed subgroup class of PSL(2,q) — cyclic, dihedral, elementary
//! abelian, semidirect (Borel-type), A4, S4, A5, and subfield PSL/PGL
//! subgroups — this module computes the multiset of orbit lengths of the
//! subgroup acting on the q+1 points of PG(1,q) in closed form, as a total
//! decision tree over residue classes of q and divisibility side conditions.
//!
//! Each closed form is backed by two independent checks:
//! * a mass check Σ ℓ·N_ℓ = q+1 enforced on every profile, and
//! * a brute-force oracle: [`construct_subgroup`] builds an explicit
//!   representative of the class inside PSL(2,q) (verified by order and, for
//!   A4/S4/A5, by an element-order census) and [`brute_profile`] reads off its
//!   orbits directly. Orbit profiles are conjugacy invariants, so any
//!   representative is as good as any other.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::arith::{divisors, prime_power};
use crate::gf::{moebius, psl2_gens, FieldSpec, GfError};
use crate::perm::{Perm, PermError, PermGroup};

/// Errors raised by profile computation or subgroup construction.
#[derive(Debug, Error)]
pub enum Psl2Error {
    /// The requested q is not a prime power.
    #[error("q = {0} is not a prime power")]
    NotPrimePower(u64),
    /// The projective-line subgroup analysis needs q > 3.
    #[error("subgroup analysis requires q > 3, got q = {0}")]
    SmallField(u64),
    /// The subgroup class does not occur in PSL(2,q) for this q.
    #[error("subgroup class {spec} is absent in PSL(2,{q})")]
    Absent { q: u64, spec: SubgroupSpec },
    /// A subgroup spec string did not match the grammar.
    #[error(
        "unparsable subgroup spec `{0}` \
         (grammar: cyclic:c | dihedral:c | ea:qbar | semi:qbar:c | a4 | s4 | a5 | psl2:qbar | pgl2:qbar)"
    )]
    BadSpec(String),
    /// A branch combination that should be unreachable was hit, or a computed
    /// profile failed its own mass check. Indicates an internal bug, never a
    /// property of the input.
    #[error("internal consistency failure: {0}")]
    Internal(String),
    /// The randomized search did not find the subgroup within its budget.
    #[error("randomized search budget exhausted constructing {spec} in PSL(2,{q})")]
    SearchExhausted { q: u64, spec: SubgroupSpec },
    /// Field construction failure.
    #[error(transparent)]
    Field(#[from] GfError),
    /// Permutation-group failure.
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// Residue and divisibility flags of q that steer the closed-form branches.
///
/// `plus_*` refers to (q+1)/n and `minus_*` to (q−1)/n, with n = gcd(2, q−1).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ResidueTags {
    pub q_mod_4: u64,
    pub q_mod_8: u64,
    pub plus_div_3: bool,
    pub minus_div_3: bool,
    pub plus_div_5: bool,
    pub minus_div_5: bool,
    pub plus_div_15: bool,
    pub minus_div_15: bool,
}

/// The ambient parameters of PSL(2,q): q = p^e with q > 3, n = gcd(2, q−1),
/// and the residue tags used by the profile decision tree.
#[derive(Clone, Copy, Debug)]
pub struct Psl2Context {
    q: u64,
    p: u64,
    e: u64,
    n: u64,
    tags: ResidueTags,
}

impl Psl2Context {
    /// Builds the context for a prime power q > 3.
    pub fn new(q: u64) -> Result<Psl2Context, Psl2Error> {
        let (p, e) = prime_power(q).ok_or(Psl2Error::NotPrimePower(q))?;
        if q <= 3 {
            return Err(Psl2Error::SmallField(q));
        }
        let n = if q % 2 == 1 { 2 } else { 1 };
        let plus = (q + 1) / n;
        let minus = (q - 1) / n;
        let tags = ResidueTags {
            q_mod_4: q % 4,
            q_mod_8: q % 8,
            plus_div_3: plus.is_multiple_of(3),
            minus_div_3: minus.is_multiple_of(3),
            plus_div_5: plus.is_multiple_of(5),
            minus_div_5: minus.is_multiple_of(5),
            plus_div_15: plus.is_multiple_of(15),
            minus_div_15: minus.is_multiple_of(15),
        };
        Ok(Psl2Context { q, p, e, n, tags })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> u64 {
        self.e
    }

    /// n = gcd(2, q−1).
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn tags(&self) -> &ResidueTags {
        &self.tags
    }

    /// The field GF(q) this context lives over.
    pub fn field(&self) -> Result<FieldSpec, Psl2Error> {
        Ok(FieldSpec::build(self.p, self.e)?)
    }
}

/// A subgroup class of PSL(2,q), with its numeric parameters.
///
/// `Psl2Sub(qbar, m)` and `Pgl2Sub(qbar, m)` carry both the subfield size and
/// the tower degree m with qbar^m = q; m is redundant given the ambient q but
/// part of the class description.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SubgroupSpec {
    /// Cyclic of order c ≥ 2 with c | (q±1)/n.
    Cyclic(u64),
    /// Dihedral of order 2c with c ≥ 2 and c | (q±1)/n.
    Dihedral(u64),
    /// Elementary abelian of order q̄ = p^w, w ≤ e.
    ElemAbelian(u64),
    /// Semidirect product of elementary abelian q̄ = p^w by cyclic c with
    /// c | q̄−1 and c | (q−1)/n.
    SemidirectEA(u64, u64),
    /// Alternating group A4 (order 12).
    A4,
    /// Symmetric group S4 (order 24).
    S4,
    /// Alternating group A5 (order 60).
    A5,
    /// Subfield subgroup PSL(2,q̄) with q̄^m = q.
    Psl2Sub(u64, u64),
    /// Subfield subgroup PGL(2,q̄) with q̄^m = q and m even.
    Pgl2Sub(u64, u64),
}

impl SubgroupSpec {
    /// The abstract order of the subgroup class.
    pub fn group_order(&self) -> u64 {
        match *self {
            SubgroupSpec::Cyclic(c) => c,
            SubgroupSpec::Dihedral(c) => 2 * c,
            SubgroupSpec::ElemAbelian(qb) => qb,
            SubgroupSpec::SemidirectEA(qb, c) => qb * c,
            SubgroupSpec::A4 => 12,
            SubgroupSpec::S4 => 24,
            SubgroupSpec::A5 => 60,
            SubgroupSpec::Psl2Sub(qb, _) => {
                let nb = if qb % 2 == 1 { 2 } else { 1 };
                qb * (qb * qb - 1) / nb
            }
            SubgroupSpec::Pgl2Sub(qb, _) => qb * qb * qb - qb,
        }
    }

    /// Parses the CLI grammar
    /// `cyclic:c | dihedral:c | ea:qbar | semi:qbar:c | a4 | s4 | a5 | psl2:qbar | pgl2:qbar`
    /// (case-insensitive). The context supplies the tower degree m for the
    /// subfield classes; a q̄ that is not a subfield size of GF(q) is rejected
    /// as absent.
    pub fn parse(text: &str, ctx: &Psl2Context) -> Result<SubgroupSpec, Psl2Error> {
        let lower = text.trim().to_ascii_lowercase();
        let parts: Vec<&str> = lower.split(':').collect();
        let bad = || Psl2Error::BadSpec(text.to_string());
        let num = |s: &str| s.parse::<u64>().map_err(|_| bad());
        let spec = match (parts.as_slice(), parts.len()) {
            (["a4"], 1) => SubgroupSpec::A4,
            (["s4"], 1) => SubgroupSpec::S4,
            (["a5"], 1) => SubgroupSpec::A5,
            (["cyclic", c], 2) => SubgroupSpec::Cyclic(num(c)?),
            (["dihedral", c], 2) => SubgroupSpec::Dihedral(num(c)?),
            (["ea", qb], 2) => SubgroupSpec::ElemAbelian(num(qb)?),
            (["semi", qb, c], 3) => SubgroupSpec::SemidirectEA(num(qb)?, num(c)?),
            (["psl2", qb], 2) | (["pgl2", qb], 2) => {
                let qbar = num(qb)?;
                let m = subfield_tower_degree(ctx, qbar).ok_or(Psl2Error::Absent {
                    q: ctx.q,
                    spec: if parts[0] == "psl2" {
                        SubgroupSpec::Psl2Sub(qbar, 0)
                    } else {
                        SubgroupSpec::Pgl2Sub(qbar, 0)
                    },
                })?;
                if parts[0] == "psl2" {
                    SubgroupSpec::Psl2Sub(qbar, m)
                } else {
                    SubgroupSpec::Pgl2Sub(qbar, m)
                }
            }
            _ => return Err(bad()),
        };
        Ok(spec)
    }
}

/// m with q̄^m = q, if q̄ is a power of the same prime and its exponent
/// divides e.
fn subfield_tower_degree(ctx: &Psl2Context, qbar: u64) -> Option<u64> {
    let (pb, f) = prime_power(qbar)?;
    if pb != ctx.p || !ctx.e.is_multiple_of(f) {
        return None;
    }
    Some(ctx.e / f)
}

impl fmt::Display for SubgroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            SubgroupSpec::Cyclic(c) => write!(f, "cyclic:{c}"),
            SubgroupSpec::Dihedral(c) => write!(f, "dihedral:{c}"),
            SubgroupSpec::ElemAbelian(qb) => write!(f, "ea:{qb}"),
            SubgroupSpec::SemidirectEA(qb, c) => write!(f, "semi:{qb}:{c}"),
            SubgroupSpec::A4 => write!(f, "a4"),
            SubgroupSpec::S4 => write!(f, "s4"),
            SubgroupSpec::A5 => write!(f, "a5"),
            SubgroupSpec::Psl2Sub(qb, _) => write!(f, "psl2:{qb}"),
            SubgroupSpec::Pgl2Sub(qb, _) => write!(f, "pgl2:{qb}"),
        }
    }
}

/// A multiset of orbit lengths: maps each length ℓ to the count N_ℓ > 0 of
/// orbits of that length.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OrbitProfile {
    counts: BTreeMap<u64, u64>,
}

impl OrbitProfile {
    /// Builds a profile from (length, count) pairs; zero counts are dropped.
    pub fn from_pairs(pairs: &[(u64, u64)]) -> OrbitProfile {
        let mut out = OrbitProfile::default();
        for &(len, count) in pairs {
            out.add(len, count);
        }
        out
    }

    fn add(&mut self, len: u64, count: u64) {
        if count > 0 {
            *self.counts.entry(len).or_insert(0) += count;
        }
    }

    /// Length → count map, sorted by length.
    pub fn counts(&self) -> &BTreeMap<u64, u64> {
        &self.counts
    }

    /// N_ℓ for one length (0 if no orbit of that length).
    pub fn count(&self, len: u64) -> u64 {
        self.counts.get(&len).copied().unwrap_or(0)
    }

    /// N_1, the number of fixed points.
    pub fn fixed_points(&self) -> u64 {
        self.count(1)
    }

    /// Σ ℓ·N_ℓ, the number of points moved around — must equal the degree.
    pub fn mass(&self) -> u64 {
        self.counts.iter().map(|(l, c)| l * c).sum()
    }
}

impl fmt::Display for OrbitProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (len, count) in &self.counts {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{len}:{count}")?;
            first = false;
        }
        Ok(())
    }
}

/// The orbit profile of the given subgroup class on PG(1,q), in closed form.
///
/// The decision tree is total: every (q, spec) pair either lands in exactly
/// one branch, is rejected as [`Psl2Error::Absent`], or — if an arithmetically
/// impossible combination is ever reached — fails with
/// [`Psl2Error::Internal`] rather than guessing. Every returned profile has
/// passed the mass check Σ ℓ·N_ℓ = q+1.
pub fn closed_form_profile(
    ctx: &Psl2Context,
    spec: &SubgroupSpec,
) -> Result<OrbitProfile, Psl2Error> {
    let q = ctx.q;
    let n = ctx.n;
    let tags = ctx.tags;
    let absent = || Psl2Error::Absent { q, spec: *spec };
    let internal = |msg: String| Psl2Error::Internal(msg);

    let mut out = OrbitProfile::default();
    match *spec {
        SubgroupSpec::Cyclic(c) => {
            if c < 2 {
                return Err(absent());
            }
            if ((q + 1) / n).is_multiple_of(c) {
                out.add(c, (q + 1) / c);
            } else if ((q - 1) / n).is_multiple_of(c) {
                out.add(1, 2);
                out.add(c, (q - 1) / c);
            } else {
                return Err(absent());
            }
        }
        SubgroupSpec::Dihedral(c) => {
            if c < 2 {
                return Err(absent());
            }
            if q.is_multiple_of(2) {
                if (q + 1).is_multiple_of(c) {
                    out.add(c, 1);
                    out.add(2 * c, (q + 1 - c) / (2 * c));
                } else if (q - 1).is_multiple_of(c) {
                    if c != 2 {
                        out.add(2, 1);
                        out.add(c, 1);
                    } else {
                        out.add(2, 2);
                    }
                    out.add(2 * c, (q - 1 - c) / (2 * c));
                } else {
                    return Err(absent());
                }
            } else if tags.q_mod_4 == 1 {
                if q.div_ceil(2).is_multiple_of(c) {
                    out.add(c, 2);
                    out.add(2 * c, (q + 1 - 2 * c) / (2 * c));
                } else if ((q - 1) / 2).is_multiple_of(c) {
                    if c == 2 {
                        out.add(2, 3);
                        out.add(4, (q - 5) / 4);
                    } else {
                        out.add(2, 1);
                        out.add(c, 2);
                        out.add(2 * c, (q - 1 - 2 * c) / (2 * c));
                    }
                } else {
                    return Err(absent());
                }
            } else {
                // q ≡ 3 (mod 4)
                if q.div_ceil(2).is_multiple_of(c) {
                    out.add(2 * c, (q + 1) / (2 * c));
                } else if ((q - 1) / 2).is_multiple_of(c) {
                    out.add(2, 1);
                    out.add(2 * c, (q - 1) / (2 * c));
                } else {
                    return Err(absent());
                }
            }
        }
        SubgroupSpec::ElemAbelian(qb) => {
            match prime_power(qb) {
                Some((pb, w)) if pb == ctx.p && w <= ctx.e => {}
                _ => return Err(absent()),
            }
            out.add(1, 1);
            out.add(qb, q / qb);
        }
        SubgroupSpec::SemidirectEA(qb, c) => {
            match prime_power(qb) {
                Some((pb, w)) if pb == ctx.p && w <= ctx.e => {}
                _ => return Err(absent()),
            }
            if c < 2 || (qb - 1) % c != 0 || !((q - 1) / n).is_multiple_of(c) {
                return Err(absent());
            }
            out.add(1, 1);
            out.add(qb, 1);
            out.add(c * qb, (q - qb) / (c * qb));
        }
        SubgroupSpec::A4 => {
            if q.is_multiple_of(2) {
                if !ctx.e.is_multiple_of(2) {
                    return Err(absent());
                }
                out.add(1, 1);
                out.add(4, 1);
                out.add(12, (q - 4) / 12);
            } else if tags.q_mod_4 == 1 {
                if tags.plus_div_3 {
                    out.add(6, 1);
                    out.add(12, (q - 5) / 12);
                } else if tags.minus_div_3 {
                    out.add(4, 2);
                    out.add(6, 1);
                    out.add(12, (q - 13) / 12);
                } else if q.is_multiple_of(3) {
                    out.add(4, 1);
                    out.add(6, 1);
                    out.add(12, (q - 9) / 12);
                } else {
                    return Err(internal(format!("A4 at q={q}: no 3-divisibility branch")));
                }
            } else if tags.plus_div_3 {
                out.add(12, (q + 1) / 12);
            } else if tags.minus_div_3 {
                out.add(4, 2);
                out.add(12, (q - 7) / 12);
            } else if q.is_multiple_of(3) {
                out.add(4, 1);
                out.add(12, (q - 3) / 12);
            } else {
                return Err(internal(format!("A4 at q={q}: no 3-divisibility branch")));
            }
        }
        SubgroupSpec::S4 => {
            if tags.q_mod_8 == 1 {
                if tags.plus_div_3 {
                    out.add(6, 1);
                    out.add(12, 1);
                    out.add(24, (q - 17) / 24);
                } else if tags.minus_div_3 {
                    out.add(6, 1);
                    out.add(8, 1);
                    out.add(12, 1);
                    out.add(24, (q - 25) / 24);
                } else if q.is_multiple_of(3) {
                    out.add(4, 1);
                    out.add(6, 1);
                    out.add(24, (q - 9) / 24);
                } else {
                    return Err(internal(format!("S4 at q={q}: no 3-divisibility branch")));
                }
            } else if tags.q_mod_8 == 7 {
                if tags.plus_div_3 {
                    out.add(24, (q + 1) / 24);
                } else if tags.minus_div_3 {
                    out.add(8, 1);
                    out.add(24, (q - 7) / 24);
                } else {
                    return Err(internal(format!(
                        "S4 at q={q}: q ≡ 7 (mod 8) forces a 3-divisibility branch"
                    )));
                }
            } else {
                return Err(absent());
            }
        }
        SubgroupSpec::A5 => {
            if q.is_multiple_of(2) || !(ctx.p == 5 || q % 5 == 1 || q % 5 == 4) {
                return Err(absent());
            }
            if tags.q_mod_4 == 1 {
                if ctx.p == 5 {
                    if ctx.e % 2 == 1 {
                        out.add(6, 1);
                        out.add(60, (q - 5) / 60);
                    } else {
                        out.add(6, 1);
                        out.add(20, 1);
                        out.add(60, (q - 25) / 60);
                    }
                } else {
                    match (q.is_multiple_of(3), tags.plus_div_3, tags.plus_div_5) {
                        (false, true, true) => {
                            out.add(30, 1);
                            out.add(60, (q - 29) / 60);
                        }
                        (false, true, false) => {
                            out.add(12, 1);
                            out.add(30, 1);
                            out.add(60, (q - 41) / 60);
                        }
                        (false, false, true) => {
                            out.add(20, 1);
                            out.add(30, 1);
                            out.add(60, (q - 49) / 60);
                        }
                        (false, false, false) => {
                            out.add(12, 1);
                            out.add(20, 1);
                            out.add(30, 1);
                            out.add(60, (q - 61) / 60);
                        }
                        (true, _, true) => {
                            out.add(10, 1);
                            out.add(60, (q - 9) / 60);
                        }
                        (true, _, false) => {
                            out.add(10, 1);
                            out.add(12, 1);
                            out.add(60, (q - 21) / 60);
                        }
                    }
                }
            } else {
                if q.is_multiple_of(3) {
                    return Err(internal(format!(
                        "A5 at q={q}: q ≡ 3 (mod 4) excludes 3 | q"
                    )));
                }
                match (tags.plus_div_3, tags.plus_div_5) {
                    (true, true) => {
                        out.add(60, (q + 1) / 60);
                    }
                    (true, false) => {
                        out.add(12, 1);
                        out.add(60, (q - 11) / 60);
                    }
                    (false, true) => {
                        out.add(20, 1);
                        out.add(60, (q - 19) / 60);
                    }
                    (false, false) => {
                        out.add(12, 1);
                        out.add(20, 1);
                        out.add(60, (q - 31) / 60);
                    }
                }
            }
        }
        SubgroupSpec::Psl2Sub(qb, m) => {
            let f = match prime_power(qb) {
                Some((pb, f)) if pb == ctx.p && ctx.e.is_multiple_of(f) => f,
                _ => return Err(absent()),
            };
            if m != ctx.e / f {
                return Err(absent());
            }
            let nb = if qb % 2 == 1 { 2 } else { 1 };
            let u = qb * (qb * qb - 1) / nb;
            out.add(qb + 1, 1);
            if m % 2 == 0 {
                out.add(qb * (qb - 1), 1);
            }
            let rest = q + 1 - out.mass();
            if !rest.is_multiple_of(u) {
                return Err(internal(format!(
                    "PSL(2,{qb}) in PSL(2,{q}): residual point count {rest} not divisible by {u}"
                )));
            }
            out.add(u, rest / u);
        }
        SubgroupSpec::Pgl2Sub(qb, m) => {
            let f = match prime_power(qb) {
                Some((pb, f)) if pb == ctx.p && ctx.e.is_multiple_of(f) => f,
                _ => return Err(absent()),
            };
            if m != ctx.e / f || m < 2 || m % 2 != 0 {
                return Err(absent());
            }
            let u = qb * qb * qb - qb;
            out.add(qb + 1, 1);
            out.add(qb * (qb - 1), 1);
            let rest = q + 1 - out.mass();
            if !rest.is_multiple_of(u) {
                return Err(internal(format!(
                    "PGL(2,{qb}) in PSL(2,{q}): residual point count {rest} not divisible by {u}"
                )));
            }
            out.add(u, rest / u);
        }
    }

    if out.mass() != q + 1 {
        return Err(internal(format!(
            "profile {out} of {spec} at q={q} has mass {} ≠ {}",
            out.mass(),
            q + 1
        )));
    }
    Ok(out)
}

/// Every subgroup class realized in PSL(2,q), in canonical enumeration order:
/// cyclic (c ascending), dihedral, elementary abelian, semidirect, A4, S4,
/// A5, subfield PSL, subfield PGL.
pub fn valid_specs(ctx: &Psl2Context) -> Result<Vec<SubgroupSpec>, Psl2Error> {
    let q = ctx.q;
    let n = ctx.n;
    let mut cs: BTreeSet<u64> = BTreeSet::new();
    for d in divisors((q + 1) / n) {
        if d > 1 {
            cs.insert(d);
        }
    }
    for d in divisors((q - 1) / n) {
        if d > 1 {
            cs.insert(d);
        }
    }

    let mut candidates: Vec<SubgroupSpec> = Vec::new();
    for &c in &cs {
        candidates.push(SubgroupSpec::Cyclic(c));
    }
    for &c in &cs {
        candidates.push(SubgroupSpec::Dihedral(c));
    }
    for w in 1..=ctx.e {
        candidates.push(SubgroupSpec::ElemAbelian(ctx.p.pow(w as u32)));
    }
    for w in 1..=ctx.e {
        let qb = ctx.p.pow(w as u32);
        for c in divisors((q - 1) / n) {
            if c > 1 && (qb - 1).is_multiple_of(c) {
                candidates.push(SubgroupSpec::SemidirectEA(qb, c));
            }
        }
    }
    candidates.push(SubgroupSpec::A4);
    candidates.push(SubgroupSpec::S4);
    candidates.push(SubgroupSpec::A5);
    for f in divisors(ctx.e) {
        candidates.push(SubgroupSpec::Psl2Sub(ctx.p.pow(f as u32), ctx.e / f));
    }
    for f in divisors(ctx.e) {
        let m = ctx.e / f;
        if m.is_multiple_of(2) && m > 1 {
            candidates.push(SubgroupSpec::Pgl2Sub(ctx.p.pow(f as u32), m));
        }
    }

    let mut out = Vec::new();
    for spec in candidates {
        match closed_form_profile(ctx, &spec) {
            Ok(_) => out.push(spec),
            Err(Psl2Error::Absent { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

/// The orbit profile of an explicit permutation group, by direct orbit
/// enumeration. This is the ground truth the closed forms are tested against.
pub fn brute_profile(group: &PermGroup) -> OrbitProfile {
    let mut out = OrbitProfile::default();
    for orbit in group.orbits() {
        out.add(orbit.len() as u64, 1);
    }
    out
}

/// Product-replacement random walk over a generating set.
struct Rattle {
    rng: ChaCha8Rng,
    slots: Vec<Perm>,
    acc: Perm,
}

impl Rattle {
    fn new(gens: &[Perm], seed: u64) -> Rattle {
        let degree = gens[0].degree();
        let mut slots = Vec::with_capacity(gens.len() * 3);
        for _ in 0..3 {
            slots.extend(gens.iter().cloned());
        }
        let mut rat = Rattle {
            rng: ChaCha8Rng::seed_from_u64(seed),
            slots,
            acc: Perm::identity(degree),
        };
        for _ in 0..50 {
            rat.draw();
        }
        rat
    }

    fn draw(&mut self) -> Perm {
        let i = self.rng.gen_range(0..self.slots.len());
        let j = self.rng.gen_range(0..self.slots.len());
        if i != j {
            self.slots[i] = self.slots[i].then(&self.slots[j]);
        }
        self.acc = self.acc.then(&self.slots[i]);
        self.acc.clone()
    }
}

/// g^k by binary powering.
fn perm_pow(g: &Perm, mut k: u128) -> Perm {
    let mut out = Perm::identity(g.degree());
    let mut base = g.clone();
    while k > 0 {
        if k & 1 == 1 {
            out = out.then(&base);
        }
        base = base.then(&base);
        k >>= 1;
    }
    out
}

/// The set of element orders of a full element list.
fn order_census(elements: &[Perm]) -> BTreeSet<u128> {
    elements.iter().map(|g| g.order()).collect()
}

const CYC_SEARCH_BUDGET: usize = 20_000;
const DIH_SEARCH_BUDGET: usize = 200_000;
const TRIPLE_SEARCH_BUDGET: usize = 500_000;

/// Builds generator permutations for the subgroup class, returning them with
/// the expected group order. Deterministic given the seed.
fn construct_gens(
    ctx: &Psl2Context,
    fs: &FieldSpec,
    spec: &SubgroupSpec,
    seed: u64,
) -> Result<(Vec<Perm>, u64), Psl2Error> {
    let q = ctx.q;
    let p = ctx.p;
    let n = ctx.n;
    let exhausted = || Psl2Error::SearchExhausted { q, spec: *spec };
    let psl = psl2_gens(fs);

    match *spec {
        SubgroupSpec::ElemAbelian(qb) => {
            let w = prime_power(qb).map(|(_, w)| w).unwrap_or(0);
            let gens: Vec<Perm> = (0..w)
                .map(|j| moebius(fs, 1, p.pow(j as u32) as usize, 0, 1))
                .collect();
            Ok((gens, qb))
        }
        SubgroupSpec::SemidirectEA(qb, c) => {
            let nu = fs.zeta_pow((q - 1) / c);
            // Scalar subfield GF(p^d) with d the multiplicative order of p mod c.
            let mut d = 1u32;
            while !(p.pow(d) - 1).is_multiple_of(c) {
                d += 1;
            }
            let pd = p.pow(d);
            let sub: Vec<usize> = (0..q as usize).filter(|&x| fs.pow(x, pd) == x).collect();
            // W: GF(p^d)-subspace of GF(q), greedily spanned up to size q̄.
            let mut span: BTreeSet<usize> = BTreeSet::new();
            span.insert(0);
            for u in 1..q as usize {
                if span.len() as u64 == qb {
                    break;
                }
                if !span.contains(&u) {
                    let mut next = BTreeSet::new();
                    for &x in &span {
                        for &s in &sub {
                            next.insert(fs.add(x, fs.mul(s, u)));
                        }
                    }
                    span = next;
                }
            }
            if span.len() as u64 != qb {
                return Err(Psl2Error::Internal(format!(
                    "semidirect W-span at q={q}, q̄={qb}: reached size {}",
                    span.len()
                )));
            }
            // Additive p-basis of W, to generate its translation group.
            let mut pbasis: Vec<usize> = Vec::new();
            let mut cover: BTreeSet<usize> = BTreeSet::new();
            cover.insert(0);
            for &u in &span {
                if !cover.contains(&u) {
                    pbasis.push(u);
                    let mut new = BTreeSet::new();
                    for &x in &cover {
                        let mut acc = x;
                        for _ in 0..p - 1 {
                            acc = fs.add(acc, u);
                            new.insert(acc);
                        }
                    }
                    cover.extend(new);
                }
            }
            let scaled: BTreeSet<usize> = span.iter().map(|&x| fs.mul(nu, x)).collect();
            if scaled != span {
                return Err(Psl2Error::Internal(format!(
                    "semidirect W-span at q={q}, q̄={qb}, c={c}: not stable under the order-{c} scalar"
                )));
            }
            let mut gens: Vec<Perm> = pbasis
                .iter()
                .map(|&u| moebius(fs, 1, u, 0, 1))
                .collect();
            gens.push(moebius(fs, nu, 0, 0, 1));
            Ok((gens, qb * c))
        }
        SubgroupSpec::Psl2Sub(qb, _) | SubgroupSpec::Pgl2Sub(qb, _) => {
            let zbar = if qb > 2 { fs.zeta_pow((q - 1) / (qb - 1)) } else { 1 };
            let is_pgl = matches!(spec, SubgroupSpec::Pgl2Sub(..));
            let mut gens = vec![moebius(fs, 1, 1, 0, 1), moebius(fs, 0, fs.neg(1), 1, 0)];
            if qb > 3 || is_pgl {
                let nubar = if qb % 2 == 1 { fs.mul(zbar, zbar) } else { zbar };
                if qb > 2 && nubar != 1 {
                    gens.push(moebius(fs, nubar, 0, 0, 1));
                }
            }
            if is_pgl {
                gens.push(moebius(fs, zbar, 0, 0, 1));
            }
            let nb = if qb % 2 == 1 && !is_pgl { 2 } else { 1 };
            Ok((gens, qb * (qb * qb - 1) / nb))
        }
        SubgroupSpec::Cyclic(c) => {
            if (q - 1).is_multiple_of(n * c) && q > 2 {
                // Split torus: power of the generator of the diagonal subgroup.
                let nu = fs.zeta_pow(n);
                let g = moebius(fs, fs.pow(nu, (q - 1) / n / c), 0, 0, 1);
                return Ok((vec![g], c));
            }
            let mut rat = Rattle::new(&psl, seed);
            for _ in 0..CYC_SEARCH_BUDGET {
                let x = rat.draw();
                let o = x.order();
                if o.is_multiple_of(c as u128) {
                    let y = perm_pow(&x, o / c as u128);
                    if y.order() != c as u128 {
                        return Err(Psl2Error::Internal(format!(
                            "order-{c} power extraction failed at q={q}"
                        )));
                    }
                    return Ok((vec![y], c));
                }
            }
            Err(exhausted())
        }
        SubgroupSpec::Dihedral(c) => {
            let (cyc_gens, _) = construct_gens(ctx, fs, &SubgroupSpec::Cyclic(c), seed)?;
            let a = cyc_gens[0].clone();
            let ainv = a.inverse();
            if (q - 1).is_multiple_of(n * c) && q > 2 {
                // Split torus: the Weyl reflection inverts the diagonal.
                let w = moebius(fs, 0, fs.neg(1), 1, 0);
                if w.then(&a).then(&w) == ainv {
                    return Ok((vec![a, w], 2 * c));
                }
            }
            // Powers of a are excluded as reflection candidates: for c = 2
            // the generator a is itself an inverting involution, but ⟨a, a⟩
            // is not dihedral of order 4.
            let mut apowers = vec![Perm::identity(a.degree())];
            for _ in 1..c {
                apowers.push(apowers.last().unwrap().then(&a));
            }
            let mut rat = Rattle::new(&psl, seed + 1);
            for _ in 0..DIH_SEARCH_BUDGET {
                let x = rat.draw();
                let o = x.order();
                if o.is_multiple_of(2) {
                    let t = perm_pow(&x, o / 2);
                    if t.then(&a).then(&t) == ainv && !apowers.contains(&t) {
                        return Ok((vec![a, t], 2 * c));
                    }
                }
            }
            Err(exhausted())
        }
        SubgroupSpec::A4 | SubgroupSpec::S4 | SubgroupSpec::A5 => {
            // Search for an involution x and an order-3 element y whose
            // product has order 3, 4, or 5; the (2,3,m) presentation pins the
            // group, confirmed by closure size and element-order census.
            let (m, order, census): (u128, u64, &[u128]) = match spec {
                SubgroupSpec::A4 => (3, 12, &[1, 2, 3]),
                SubgroupSpec::S4 => (4, 24, &[1, 2, 3, 4]),
                _ => (5, 60, &[1, 2, 3, 5]),
            };
            let want: BTreeSet<u128> = census.iter().copied().collect();
            let mut rat = Rattle::new(&psl, seed + 2);
            let mut invols: Vec<Perm> = Vec::new();
            let mut thirds: Vec<Perm> = Vec::new();
            for _ in 0..TRIPLE_SEARCH_BUDGET {
                let g = rat.draw();
                let o = g.order();
                if o.is_multiple_of(2) {
                    invols.push(perm_pow(&g, o / 2));
                }
                if o.is_multiple_of(3) {
                    thirds.push(perm_pow(&g, o / 3));
                }
                if invols.is_empty() || thirds.is_empty() {
                    continue;
                }
                let x = invols.last().unwrap().clone();
                for y in thirds.iter().rev().take(5) {
                    if x.then(y).order() != m {
                        continue;
                    }
                    let h = PermGroup::new(x.degree(), vec![x.clone(), y.clone()])?;
                    if let Some(elements) = h.elements(order as usize) {
                        if elements.len() == order as usize && order_census(&elements) == want {
                            return Ok((vec![x, y.clone()], order));
                        }
                    }
                }
            }
            Err(exhausted())
        }
    }
}

fn spec_code(spec: &SubgroupSpec) -> u64 {
    let (tag, a, b) = match *spec {
        SubgroupSpec::Cyclic(c) => (0, c, 0),
        SubgroupSpec::Dihedral(c) => (1, c, 0),
        SubgroupSpec::ElemAbelian(qb) => (2, qb, 0),
        SubgroupSpec::SemidirectEA(qb, c) => (3, qb, c),
        SubgroupSpec::A4 => (4, 0, 0),
        SubgroupSpec::S4 => (5, 0, 0),
        SubgroupSpec::A5 => (6, 0, 0),
        SubgroupSpec::Psl2Sub(qb, m) => (7, qb, m),
        SubgroupSpec::Pgl2Sub(qb, m) => (8, qb, m),
    };
    tag * 1_000_003 + a * 1009 + b
}

/// The default construction seed for a (q, spec) pair.
pub fn default_seed(ctx: &Psl2Context, spec: &SubgroupSpec) -> u64 {
    ctx.q * 1000 + spec_code(spec) % 997
}

/// Builds an explicit representative of the subgroup class inside PSL(2,q)
/// with the given search seed, and verifies its order (and, for A4/S4/A5, its
/// element-order census) before returning it.
pub fn construct_subgroup_seeded(
    ctx: &Psl2Context,
    spec: &SubgroupSpec,
    seed: u64,
) -> Result<PermGroup, Psl2Error> {
    // Reject absent classes up front so the randomized searches only ever
    // chase subgroups that exist.
    closed_form_profile(ctx, spec)?;
    let fs = ctx.field()?;
    let (gens, order) = construct_gens(ctx, &fs, spec, seed)?;
    let group = PermGroup::new((ctx.q + 1) as usize, gens)?;
    if group.order_u128() != order as u128 {
        return Err(Psl2Error::Internal(format!(
            "constructed {spec} at q={} has order {} instead of {order}",
            ctx.q,
            group.order_u128()
        )));
    }
    Ok(group)
}

/// [`construct_subgroup_seeded`] with the default seed, retrying the
/// randomized searches on a fixed schedule of fallback seeds so one unlucky
/// stream cannot fail the construction.
pub fn construct_subgroup(
    ctx: &Psl2Context,
    spec: &SubgroupSpec,
) -> Result<PermGroup, Psl2Error> {
    let base = default_seed(ctx, spec);
    let mut attempt = 0;
    loop {
        match construct_subgroup_seeded(ctx, spec, base + attempt * 7919) {
            Err(Psl2Error::SearchExhausted { .. }) if attempt < 3 => attempt += 1,
            result => return result,
        }
    }
}

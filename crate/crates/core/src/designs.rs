//! Incidence structures and the parameter calculus of Steiner designs:
//! divisibility chains, Cameron/flag-transitivity bounds, exhaustive
//! Steiner verification, derived designs, and flag-transitivity checks.

use crate::arith;
use crate::perm::{Perm, PermError, PermGroup};
use num_bigint::BigUint;
use num_rational::Ratio;
use std::collections::HashMap;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DesignError {
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error("design file parse error: {0}")]
    Parse(String),
    #[error("parameters must satisfy 0 < t <= k <= v (got t={t}, k={k}, v={v})")]
    BadParams { t: u64, k: u64, v: u64 },
    #[error("malformed block {0:?} (needs distinct points below the point count)")]
    MalformedBlock(Vec<usize>),
    #[error("duplicate block {0:?}")]
    DuplicateBlock(Vec<usize>),
    #[error("blocks have mixed sizes")]
    MixedBlockSizes,
    #[error("a design needs at least one block")]
    NoBlocks,
    #[error("group degree {got} does not match point count {expected}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("a generator does not map blocks to blocks: not an automorphism group of the design")]
    NotAutomorphism,
    #[error("permutation kernel error: {0}")]
    Perm(#[from] PermError),
}

/// Parameters `t-(v, k, lambda)` together with the exact divisibility
/// chain `lambda_i = lambda * C(v-i, t-i) / C(k-i, t-i)` for `i = 0..=t`
/// (`lambda_0 = b`, `lambda_1 = r`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DesignParams {
    t: u64,
    v: u64,
    k: u64,
    lam: u64,
    chain: Vec<Ratio<u128>>,
}

impl DesignParams {
    /// Builds the parameter chain; requires `0 < t <= k <= v` and
    /// `lambda >= 1`.
    pub fn new(t: u64, v: u64, k: u64, lam: u64) -> Result<DesignParams, DesignError> {
        if t == 0 || lam == 0 || k < t || v < k {
            return Err(DesignError::BadParams { t, k, v });
        }
        Ok(DesignParams {
            t,
            v,
            k,
            lam,
            chain: arith::lambda_chain(v, k, t, lam),
        })
    }

    pub fn t(&self) -> u64 {
        self.t
    }
    pub fn v(&self) -> u64 {
        self.v
    }
    pub fn k(&self) -> u64 {
        self.k
    }
    pub fn lam(&self) -> u64 {
        self.lam
    }

    pub fn chain(&self) -> &[Ratio<u128>] {
        &self.chain
    }

    /// Block count `b = lambda_0`.
    pub fn b(&self) -> Ratio<u128> {
        self.chain[0]
    }

    /// Replication number `r = lambda_1`.
    pub fn r(&self) -> Ratio<u128> {
        self.chain[1]
    }

    pub fn lambda_i(&self, i: usize) -> Ratio<u128> {
        self.chain[i]
    }

    /// True iff every chain entry is an integer (necessary for existence).
    pub fn admissible(&self) -> bool {
        self.first_nonintegral().is_none()
    }

    /// Index of the first non-integral chain entry, if any.
    pub fn first_nonintegral(&self) -> Option<usize> {
        arith::first_nonintegral(&self.chain)
    }

    /// For `t = 4`: the verdict of `(k-2)(k-3) | (v-2)(v-3)`; `None` for
    /// other `t`.
    pub fn pair_divisibility(&self) -> Option<bool> {
        if self.t == 4 {
            Some(arith::pair_divisibility_ok(self.v, self.k))
        } else {
            None
        }
    }
}

/// See [`arith::k_upper_bound`]: `k <= floor(sqrt(v) + 5/2)` for
/// non-trivial flag-transitive Steiner 4-designs.
pub fn k_upper_bound(v: u64) -> u64 {
    arith::k_upper_bound(v)
}

/// Verdict of Cameron's flag-transitivity bound for `t-(v, k, 1)` designs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CameronVerdict {
    /// `v - t + 1 >= (k - t + 2)(k - t + 1)`, equality allowed only in the
    /// five known cases.
    pub satisfied: bool,
    /// Whether `(t, k, v)` is one of the listed equality cases.
    pub equality_case: bool,
}

/// Checks Cameron's bound `v - t + 1 >= (k - t + 2)(k - t + 1)` with its
/// equality-case list (Cameron 1976).
pub fn cam_bounds_ok(t: u64, v: u64, k: u64) -> CameronVerdict {
    let lhs = v - t + 1;
    let rhs = (k - t + 2) * (k - t + 1);
    CameronVerdict {
        satisfied: arith::cameron_bound_ok(v, k, t),
        equality_case: lhs == rhs && arith::cameron_bound_ok(v, k, t),
    }
}

/// Divisibility `r | gx`: the replication number of an admissible
/// parameter set must divide the order of a point stabilizer.
pub fn divprop_check(params: &DesignParams, gx_order: u128) -> bool {
    let r = params.r();
    r.is_integer() && gx_order.is_multiple_of(r.to_integer())
}

/// A finite incidence structure: `v` points and a list of `k`-element
/// blocks, stored sorted and duplicate-free.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceStructure {
    v: usize,
    k: usize,
    blocks: Vec<Vec<usize>>,
}

impl IncidenceStructure {
    /// Ingests blocks (any order, any inner order): sorts each block,
    /// sorts the block list, and rejects malformed or duplicate blocks.
    pub fn new(v: usize, blocks: Vec<Vec<usize>>) -> Result<IncidenceStructure, DesignError> {
        if blocks.is_empty() {
            return Err(DesignError::NoBlocks);
        }
        let k = blocks[0].len();
        let mut normalized = Vec::with_capacity(blocks.len());
        for mut blk in blocks {
            if blk.len() != k {
                return Err(DesignError::MixedBlockSizes);
            }
            blk.sort_unstable();
            let distinct = blk.windows(2).all(|w| w[0] < w[1]);
            if !distinct || blk.iter().any(|&x| x >= v) || blk.is_empty() {
                return Err(DesignError::MalformedBlock(blk));
            }
            normalized.push(blk);
        }
        normalized.sort_unstable();
        if let Some(w) = normalized.windows(2).find(|w| w[0] == w[1]) {
            return Err(DesignError::DuplicateBlock(w[0].clone()));
        }
        Ok(IncidenceStructure {
            v,
            k,
            blocks: normalized,
        })
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Block count.
    pub fn b(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Serializes as `"v k b"` header plus one sorted block per line.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {} {}\n", self.v, self.k, self.blocks.len());
        for blk in &self.blocks {
            let line: Vec<String> = blk.iter().map(|x| x.to_string()).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn from_text(text: &str) -> Result<IncidenceStructure, DesignError> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| DesignError::Parse("empty design file".into()))?;
        let head: Vec<&str> = header.split_whitespace().collect();
        if head.len() != 3 {
            return Err(DesignError::Parse(format!(
                "header must be `v k b`, got {header:?}"
            )));
        }
        let parse = |s: &str| -> Result<usize, DesignError> {
            s.parse()
                .map_err(|_| DesignError::Parse(format!("bad integer {s:?}")))
        };
        let (v, k, b) = (parse(head[0])?, parse(head[1])?, parse(head[2])?);
        let mut blocks = Vec::with_capacity(b);
        for i in 0..b {
            let line = lines
                .next()
                .ok_or_else(|| DesignError::Parse(format!("missing block line {}", i + 1)))?;
            let mut blk = Vec::with_capacity(k);
            for tok in line.split_whitespace() {
                blk.push(parse(tok)?);
            }
            if blk.len() != k {
                return Err(DesignError::Parse(format!(
                    "block line {} has {} points, expected {}",
                    i + 1,
                    blk.len(),
                    k
                )));
            }
            blocks.push(blk);
        }
        for extra in lines {
            if !extra.trim().is_empty() {
                return Err(DesignError::Parse("trailing content after blocks".into()));
            }
        }
        IncidenceStructure::new(v, blocks)
    }

    pub fn from_file(path: &Path) -> Result<IncidenceStructure, DesignError> {
        let text = std::fs::read_to_string(path)?;
        IncidenceStructure::from_text(&text)
    }

    pub fn to_file(&self, path: &Path) -> Result<(), DesignError> {
        std::fs::write(path, self.to_text())?;
        Ok(())
    }
}

/// Calls `f` on every `t`-subset of `items`, in lexicographic order.
fn for_each_subset(items: &[usize], t: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(
        items: &[usize],
        t: usize,
        start: usize,
        current: &mut Vec<usize>,
        f: &mut impl FnMut(&[usize]),
    ) {
        if current.len() == t {
            f(current);
            return;
        }
        let needed = t - current.len();
        for i in start..=items.len().saturating_sub(needed) {
            current.push(items[i]);
            rec(items, t, i + 1, current, f);
            current.pop();
        }
    }
    if t <= items.len() {
        rec(items, t, 0, &mut Vec::with_capacity(t), f);
    }
}

/// Outcome of exhaustive Steiner verification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SteinerVerdict {
    Pass,
    /// The lexicographically smallest `t`-subset covered `count != 1`
    /// times.
    Fail { witness: Vec<usize>, count: u64 },
}

impl SteinerVerdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, SteinerVerdict::Pass)
    }
}

/// Checks that every `t`-subset of points lies in exactly one block, by
/// counting the `t`-subsets contributed by each block.  On failure the
/// witness is the lexicographically smallest subset covered 0 or >= 2
/// times.
pub fn verify_steiner(d: &IncidenceStructure, t: usize) -> SteinerVerdict {
    assert!(t >= 1 && t <= d.k(), "verify_steiner requires 1 <= t <= k");
    let mut counts: HashMap<Vec<usize>, u64> = HashMap::new();
    for blk in d.blocks() {
        for_each_subset(blk, t, &mut |s| {
            *counts.entry(s.to_vec()).or_insert(0) += 1;
        });
    }
    let over = counts
        .iter()
        .filter(|(_, &c)| c >= 2)
        .map(|(s, &c)| (s.clone(), c))
        .min();
    let total = arith::binom(d.v() as u64, t as u64);
    let missing = (counts.len() as u128) < total;
    let under = if missing {
        // Lexicographically smallest uncovered subset, early exit.
        let all: Vec<usize> = (0..d.v()).collect();
        let mut found: Option<Vec<usize>> = None;
        for_each_subset(&all, t, &mut |s| {
            if found.is_none() && !counts.contains_key(s) {
                found = Some(s.to_vec());
            }
        });
        found.map(|w| (w, 0u64))
    } else {
        None
    };
    match (over, under) {
        (None, None) => SteinerVerdict::Pass,
        (Some((w, c)), None) => SteinerVerdict::Fail { witness: w, count: c },
        (None, Some((w, c))) => SteinerVerdict::Fail { witness: w, count: c },
        (Some((wo, co)), Some((wu, cu))) => {
            if wo < wu {
                SteinerVerdict::Fail {
                    witness: wo,
                    count: co,
                }
            } else {
                SteinerVerdict::Fail {
                    witness: wu,
                    count: cu,
                }
            }
        }
    }
}

/// The derived design at `x`: blocks through `x` with `x` removed, points
/// relabeled to `0..v-1`.  A Steiner `t`-design yields a Steiner
/// `(t-1)`-design.
pub fn derived_design(
    d: &IncidenceStructure,
    x: usize,
) -> Result<IncidenceStructure, DesignError> {
    assert!(x < d.v(), "derived point out of range");
    let relabel = |y: usize| if y > x { y - 1 } else { y };
    let blocks: Vec<Vec<usize>> = d
        .blocks()
        .iter()
        .filter(|blk| blk.binary_search(&x).is_ok())
        .map(|blk| {
            blk.iter()
                .filter(|&&y| y != x)
                .map(|&y| relabel(y))
                .collect()
        })
        .collect();
    IncidenceStructure::new(d.v() - 1, blocks)
}

/// The permutation induced by `g` on the (sorted) block list, or
/// `NotAutomorphism` when `g` fails to map blocks to blocks.
pub fn induced_block_perm(d: &IncidenceStructure, g: &Perm) -> Result<Perm, DesignError> {
    if g.degree() != d.v() {
        return Err(DesignError::DegreeMismatch {
            expected: d.v(),
            got: g.degree(),
        });
    }
    let index: HashMap<&[usize], usize> = d
        .blocks()
        .iter()
        .enumerate()
        .map(|(i, blk)| (blk.as_slice(), i))
        .collect();
    let mut img = Vec::with_capacity(d.b());
    for blk in d.blocks() {
        let image = g.set_image(blk);
        match index.get(image.as_slice()) {
            Some(&j) => img.push(j),
            None => return Err(DesignError::NotAutomorphism),
        }
    }
    Ok(Perm::from_images(img).expect("bijection on blocks"))
}

/// Size of the orbit of the first flag (incident point-block pair) under
/// the induced flag action.  Errors if a generator is not an automorphism
/// of the design.
pub fn flag_orbit_size(d: &IncidenceStructure, g: &PermGroup) -> Result<usize, DesignError> {
    if g.degree() != d.v() {
        return Err(DesignError::DegreeMismatch {
            expected: d.v(),
            got: g.degree(),
        });
    }
    let block_perms: Vec<Perm> = g
        .gens()
        .iter()
        .map(|gen| induced_block_perm(d, gen))
        .collect::<Result<_, _>>()?;
    // BFS on flags (x, block index) from the first flag.
    let k = d.k();
    let flag_id = |x: usize, bi: usize| bi * k + d.blocks()[bi].binary_search(&x).unwrap();
    let mut seen = vec![false; d.b() * k];
    let start = (d.blocks()[0][0], 0usize);
    seen[flag_id(start.0, start.1)] = true;
    let mut queue = vec![start];
    let mut idx = 0;
    while idx < queue.len() {
        let (x, bi) = queue[idx];
        for (gen, bp) in g.gens().iter().zip(&block_perms) {
            let nx = gen.apply(x);
            let nbi = bp.apply(bi);
            let fid = flag_id(nx, nbi);
            if !seen[fid] {
                seen[fid] = true;
                queue.push((nx, nbi));
            }
        }
        idx += 1;
    }
    Ok(queue.len())
}

/// Flag-transitivity: the orbit of one flag covers all `b * k` flags.
pub fn is_flag_transitive(d: &IncidenceStructure, g: &PermGroup) -> Result<bool, DesignError> {
    Ok(flag_orbit_size(d, g)? == d.b() * d.k())
}

/// Size of the orbit of `blocks[block_index]` under the induced action on
/// blocks.
pub fn block_orbit_size(
    d: &IncidenceStructure,
    g: &PermGroup,
    block_index: usize,
) -> Result<usize, DesignError> {
    let block_perms: Vec<Perm> = g
        .gens()
        .iter()
        .map(|gen| induced_block_perm(d, gen))
        .collect::<Result<_, _>>()?;
    let action = PermGroup::new(d.b(), block_perms)?;
    Ok(action.orbit_of(block_index)?.len())
}

/// Order of the setwise stabilizer of a block, computed as
/// `|G| / |block orbit|` (exact; valid whenever the orbit computation is,
/// i.e. without backtrack search).
pub fn block_stabilizer_order(
    d: &IncidenceStructure,
    g: &PermGroup,
    block_index: usize,
) -> Result<BigUint, DesignError> {
    let orbit = block_orbit_size(d, g, block_index)?;
    let order = g.order();
    debug_assert!((order.clone() % BigUint::from(orbit)).bits() == 0);
    Ok(order / BigUint::from(orbit))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witt_parameter_chains() {
        let p11 = DesignParams::new(4, 11, 5, 1).unwrap();
        assert_eq!(p11.b().to_integer(), 66);
        assert_eq!(p11.r().to_integer(), 30);
        assert_eq!(p11.lambda_i(2).to_integer(), 12);
        assert!(p11.admissible());
        assert_eq!(p11.pair_divisibility(), Some(true));

        let p23 = DesignParams::new(4, 23, 7, 1).unwrap();
        assert_eq!(p23.b().to_integer(), 253);
        assert_eq!(p23.r().to_integer(), 77);
        assert_eq!(p23.lambda_i(2).to_integer(), 21);
        assert!(p23.admissible());

        // 4-(12,5,1): b = 99 but r = 165/4.
        let p12 = DesignParams::new(4, 12, 5, 1).unwrap();
        assert_eq!(p12.b().to_integer(), 99);
        assert_eq!(p12.r(), Ratio::new(165, 4));
        assert_eq!(p12.first_nonintegral(), Some(1));
        assert!(!p12.admissible());
    }

    #[test]
    fn parameter_validation() {
        assert!(DesignParams::new(0, 5, 5, 1).is_err());
        assert!(DesignParams::new(4, 5, 6, 1).is_err());
        assert!(DesignParams::new(5, 11, 4, 1).is_err());
        assert!(DesignParams::new(4, 11, 5, 0).is_err());
        assert_eq!(DesignParams::new(3, 22, 6, 1).unwrap().pair_divisibility(), None);
    }

    #[test]
    fn chain_identities() {
        // b k = v r and r (k-1) = lambda_2 (v-1), exactly.
        for (v, k) in [(11u64, 5u64), (23, 7), (18, 6), (37, 8), (971, 20)] {
            let p = DesignParams::new(4, v, k, 1).unwrap();
            assert_eq!(
                p.b() * Ratio::from_integer(k as u128),
                p.r() * Ratio::from_integer(v as u128)
            );
            assert_eq!(
                p.r() * Ratio::from_integer((k - 1) as u128),
                p.lambda_i(2) * Ratio::from_integer((v - 1) as u128)
            );
        }
    }

    #[test]
    fn cameron_verdicts() {
        assert_eq!(
            cam_bounds_ok(4, 23, 7),
            CameronVerdict {
                satisfied: true,
                equality_case: true
            }
        );
        assert_eq!(
            cam_bounds_ok(4, 11, 5),
            CameronVerdict {
                satisfied: true,
                equality_case: false
            }
        );
        assert!(!cam_bounds_ok(4, 15, 6).satisfied);
        assert_eq!(k_upper_bound(11), 5);
        assert_eq!(k_upper_bound(23), 7);
        assert_eq!(k_upper_bound(64), 10);
    }

    #[test]
    fn divprop_examples() {
        let p11 = DesignParams::new(4, 11, 5, 1).unwrap();
        assert!(divprop_check(&p11, 720));
        assert!(!divprop_check(&p11, 40));
        let p23 = DesignParams::new(4, 23, 7, 1).unwrap();
        assert!(divprop_check(&p23, 443_520));
    }

    #[test]
    fn ingest_normalizes_and_rejects() {
        let d = IncidenceStructure::new(5, vec![vec![4, 2, 0, 1, 3]]).unwrap();
        assert_eq!(d.blocks(), &[vec![0, 1, 2, 3, 4]]);
        assert_eq!((d.v(), d.k(), d.b()), (5, 5, 1));
        assert!(matches!(
            IncidenceStructure::new(5, vec![vec![0, 1, 2, 3, 5]]),
            Err(DesignError::MalformedBlock(_))
        ));
        assert!(matches!(
            IncidenceStructure::new(5, vec![vec![0, 1, 2, 2, 4]]),
            Err(DesignError::MalformedBlock(_))
        ));
        assert!(matches!(
            IncidenceStructure::new(6, vec![vec![0, 1, 2], vec![2, 1, 0]]),
            Err(DesignError::DuplicateBlock(_))
        ));
        assert!(matches!(
            IncidenceStructure::new(6, vec![vec![0, 1, 2], vec![0, 1, 2, 3]]),
            Err(DesignError::MixedBlockSizes)
        ));
        assert!(matches!(
            IncidenceStructure::new(6, vec![]),
            Err(DesignError::NoBlocks)
        ));
    }

    #[test]
    fn steiner_verification() {
        let trivial = IncidenceStructure::new(5, vec![vec![0, 1, 2, 3, 4]]).unwrap();
        assert!(verify_steiner(&trivial, 4).is_pass());

        // Overlapping blocks: {0,1,2,3} covered twice.
        let d = IncidenceStructure::new(6, vec![vec![0, 1, 2, 3, 4], vec![0, 1, 2, 3, 5]]).unwrap();
        assert_eq!(
            verify_steiner(&d, 4),
            SteinerVerdict::Fail {
                witness: vec![0, 1, 2, 3],
                count: 2
            }
        );

        // Missing coverage: smallest uncovered 4-subset is {0,1,2,5}.
        let d = IncidenceStructure::new(6, vec![vec![0, 1, 2, 3, 4]]).unwrap();
        assert_eq!(
            verify_steiner(&d, 4),
            SteinerVerdict::Fail {
                witness: vec![0, 1, 2, 5],
                count: 0
            }
        );
    }

    #[test]
    fn derived_trivial_design() {
        let trivial = IncidenceStructure::new(5, vec![vec![0, 1, 2, 3, 4]]).unwrap();
        let der = derived_design(&trivial, 0).unwrap();
        assert_eq!((der.v(), der.k(), der.b()), (4, 4, 1));
        assert!(verify_steiner(&der, 3).is_pass());
        let der2 = derived_design(&trivial, 2).unwrap();
        assert_eq!(der2.blocks(), &[vec![0, 1, 2, 3]]);
    }

    #[test]
    fn flag_transitivity_trivial_design() {
        let trivial = IncidenceStructure::new(5, vec![vec![0, 1, 2, 3, 4]]).unwrap();
        let s5 = PermGroup::new(
            5,
            vec![
                Perm::from_images(vec![1, 0, 2, 3, 4]).unwrap(),
                Perm::from_images(vec![1, 2, 3, 4, 0]).unwrap(),
            ],
        )
        .unwrap();
        assert!(is_flag_transitive(&trivial, &s5).unwrap());
        assert_eq!(block_orbit_size(&trivial, &s5, 0).unwrap(), 1);
        assert_eq!(
            block_stabilizer_order(&trivial, &s5, 0).unwrap(),
            BigUint::from(120u32)
        );
    }

    #[test]
    fn flag_transitivity_errors_and_failures() {
        let d = IncidenceStructure::new(6, vec![vec![0, 1, 2, 3, 4]]).unwrap();
        let s6 = PermGroup::new(
            6,
            vec![
                Perm::from_images(vec![1, 0, 2, 3, 4, 5]).unwrap(),
                Perm::from_images(vec![1, 2, 3, 4, 5, 0]).unwrap(),
            ],
        )
        .unwrap();
        assert!(matches!(
            is_flag_transitive(&d, &s6),
            Err(DesignError::NotAutomorphism)
        ));

        let two = IncidenceStructure::new(6, vec![vec![0, 1, 2, 3, 4], vec![0, 1, 2, 3, 5]]).unwrap();
        let triv = PermGroup::new(6, vec![Perm::identity(6)]).unwrap();
        assert!(!is_flag_transitive(&two, &triv).unwrap());

        let wrong_degree = PermGroup::new(5, vec![Perm::identity(5)]).unwrap();
        assert!(matches!(
            is_flag_transitive(&two, &wrong_degree),
            Err(DesignError::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn design_file_round_trip() {
        let d = IncidenceStructure::new(6, vec![vec![0, 1, 2, 3, 4], vec![0, 1, 2, 3, 5]]).unwrap();
        let text = d.to_text();
        assert_eq!(text, "6 5 2\n0 1 2 3 4\n0 1 2 3 5\n");
        let back = IncidenceStructure::from_text(&text).unwrap();
        assert_eq!(back, d);
        assert!(IncidenceStructure::from_text("6 5\n").is_err());
        assert!(IncidenceStructure::from_text("6 5 1\n0 1 2 3\n").is_err());
        assert!(IncidenceStructure::from_text("6 5 2\n0 1 2 3 4\n").is_err());
    }
}

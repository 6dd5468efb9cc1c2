//! Exact permutation-group kernel: composition, orbits, stabilizers, group
//! order via stabilizer chains, and transitivity degree.
//!
//! Points are 0-based indices `0..degree`.  Group orders are computed by a
//! deterministic incremental Schreier–Sims construction (base and strong
//! generating set with sifting); base points are selected in ascending
//! point order so that stabilizer generator sets are reproducible.

use num_bigint::BigUint;
use num_integer::gcd;
use std::path::Path;
use std::sync::OnceLock;
use thiserror::Error;

/// Maximum supported permutation degree (number of points).
pub const MAX_DEGREE: usize = 1 << 16;

/// Errors from permutation and group construction or file I/O.
#[derive(Debug, Error)]
pub enum PermError {
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error("invalid permutation images: {0}")]
    InvalidImages(String),
    #[error("group file parse error: {0}")]
    Parse(String),
    #[error("degree {degree} exceeds the supported cap of {max} points")]
    DegreeTooLarge { degree: usize, max: usize },
    #[error("a permutation group needs at least one generator")]
    NoGenerators,
    #[error("generator degree {got} does not match group degree {expected}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
}

/// A permutation of `0..degree`, stored as its image array.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    img: Vec<usize>,
}

impl Perm {
    /// The identity permutation on `degree` points.
    pub fn identity(degree: usize) -> Perm {
        Perm {
            img: (0..degree).collect(),
        }
    }

    /// Builds a permutation from its image array, checking bijectivity.
    pub fn from_images(img: Vec<usize>) -> Result<Perm, PermError> {
        let n = img.len();
        let mut seen = vec![false; n];
        for &y in &img {
            if y >= n {
                return Err(PermError::InvalidImages(format!(
                    "image {y} out of range for degree {n}"
                )));
            }
            if seen[y] {
                return Err(PermError::InvalidImages(format!("image {y} repeated")));
            }
            seen[y] = true;
        }
        Ok(Perm { img })
    }

    pub fn degree(&self) -> usize {
        self.img.len()
    }

    /// Image of the point `x`.
    pub fn apply(&self, x: usize) -> usize {
        self.img[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.img
    }

    /// Composition applying `self` first, then `other`:
    /// `self.then(other)` maps `x` to `other(self(x))`.
    pub fn then(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            img: self.img.iter().map(|&y| other.img[y]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.img.len()];
        for (x, &y) in self.img.iter().enumerate() {
            inv[y] = x;
        }
        Perm { img: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.img.iter().enumerate().all(|(x, &y)| x == y)
    }

    /// Lengths of all cycles (including fixed points), ascending start order.
    pub fn cycle_lengths(&self) -> Vec<usize> {
        let mut visited = vec![false; self.img.len()];
        let mut out = Vec::new();
        for start in 0..self.img.len() {
            if visited[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !visited[x] {
                visited[x] = true;
                len += 1;
                x = self.img[x];
            }
            out.push(len);
        }
        out
    }

    /// Multiplicative order: the least common multiple of the cycle lengths.
    pub fn order(&self) -> u128 {
        let mut acc: u128 = 1;
        for len in self.cycle_lengths() {
            let l = len as u128;
            let g = gcd(acc, l);
            acc = (acc / g)
                .checked_mul(l)
                .expect("element order overflowed u128");
        }
        acc
    }

    /// Image of a sorted point set under this permutation, re-sorted.
    pub fn set_image(&self, points: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = points.iter().map(|&x| self.img[x]).collect();
        out.sort_unstable();
        out
    }
}

#[derive(Clone, Debug)]
struct Level {
    beta: usize,
    gens: Vec<Perm>,
    /// Orbit of `beta` under this level's generators, in discovery order.
    orbit: Vec<usize>,
    /// `transversal[y]` maps `beta` to `y` when `y` is in the orbit.
    transversal: Vec<Option<Perm>>,
}

impl Level {
    fn new(beta: usize, degree: usize) -> Level {
        let mut transversal = vec![None; degree];
        transversal[beta] = Some(Perm::identity(degree));
        Level {
            beta,
            gens: Vec::new(),
            orbit: vec![beta],
            transversal,
        }
    }
}

/// A stabilizer chain (base and strong generating set) for a permutation
/// group, built by the deterministic incremental Schreier–Sims algorithm.
#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    /// Builds a verified stabilizer chain for the group generated by
    /// `gens`.  The chain's base starts with the points of `prefix` (in
    /// that order, created even when their orbits are trivial); further
    /// base points are chosen in ascending point order.
    pub fn build(degree: usize, gens: &[Perm], prefix: &[usize]) -> StabChain {
        let mut chain = StabChain {
            degree,
            levels: Vec::new(),
        };
        for &b in prefix {
            assert!(b < degree, "prefix base point out of range");
            assert!(
                chain.levels.iter().all(|l| l.beta != b),
                "duplicate prefix base point"
            );
            chain.levels.push(Level::new(b, degree));
        }
        let work: Vec<Perm> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        // Ascending base selection: repeatedly adjoin the smallest point
        // moved by some generator that fixes every base point so far.
        loop {
            let mut next: Option<usize> = None;
            for g in &work {
                if chain.levels.iter().all(|l| g.apply(l.beta) == l.beta) {
                    if let Some(x) = (0..degree).find(|&x| g.apply(x) != x) {
                        next = Some(next.map_or(x, |y| y.min(x)));
                    }
                }
            }
            match next {
                Some(b) => chain.levels.push(Level::new(b, degree)),
                None => break,
            }
        }
        // Distribute generators: level l receives the generators fixing
        // the first l base points.
        let mut current = work;
        for l in 0..chain.levels.len() {
            chain.levels[l].gens = current.clone();
            let beta = chain.levels[l].beta;
            current.retain(|g| g.apply(beta) == beta);
        }
        debug_assert!(current.is_empty(), "generator fixing the whole base");
        for l in 0..chain.levels.len() {
            chain.recompute_orbit(l);
        }
        chain.schreier_sims();
        chain
    }

    fn recompute_orbit(&mut self, l: usize) {
        let beta = self.levels[l].beta;
        let mut level = Level::new(beta, self.degree);
        level.gens = std::mem::take(&mut self.levels[l].gens);
        let mut idx = 0;
        while idx < level.orbit.len() {
            let x = level.orbit[idx];
            for g in &level.gens {
                let y = g.apply(x);
                if level.transversal[y].is_none() {
                    let u_y = level.transversal[x].as_ref().unwrap().then(g);
                    level.transversal[y] = Some(u_y);
                    level.orbit.push(y);
                }
            }
            idx += 1;
        }
        self.levels[l] = level;
    }

    /// Sifts `h` through levels `start..`, returning `None` when it strips
    /// to the identity and otherwise the non-trivial residue together with
    /// its drop-out level (`levels.len()` when it fixes the whole base).
    fn sift_from(&self, start: usize, mut h: Perm) -> Option<(Perm, usize)> {
        for l in start..self.levels.len() {
            let y = h.apply(self.levels[l].beta);
            match &self.levels[l].transversal[y] {
                None => return Some((h, l)),
                Some(u) => h = h.then(&u.inverse()),
            }
        }
        if h.is_identity() {
            None
        } else {
            Some((h, self.levels.len()))
        }
    }

    /// Verifies every Schreier generator bottom-up, adjoining sifted
    /// residues as new strong generators until the chain is complete.
    fn schreier_sims(&mut self) {
        let mut i: isize = self.levels.len() as isize - 1;
        'outer: while i >= 0 {
            let li = i as usize;
            let mut xi = 0;
            while xi < self.levels[li].orbit.len() {
                let x = self.levels[li].orbit[xi];
                let u_x = self.levels[li].transversal[x].clone().unwrap();
                let mut si = 0;
                while si < self.levels[li].gens.len() {
                    let s = self.levels[li].gens[si].clone();
                    let sx = s.apply(x);
                    let u_sx_inv = self.levels[li].transversal[sx].as_ref().unwrap().inverse();
                    let h = u_x.then(&s).then(&u_sx_inv);
                    if !h.is_identity() {
                        if let Some((residue, j)) = self.sift_from(li + 1, h) {
                            if j == self.levels.len() {
                                let b = (0..self.degree)
                                    .find(|&p| residue.apply(p) != p)
                                    .expect("non-identity residue moves a point");
                                self.levels.push(Level::new(b, self.degree));
                            }
                            for l in (li + 1)..=j {
                                self.levels[l].gens.push(residue.clone());
                            }
                            for l in (li + 1)..=j {
                                self.recompute_orbit(l);
                            }
                            i = j as isize;
                            continue 'outer;
                        }
                    }
                    si += 1;
                }
                xi += 1;
            }
            i -= 1;
        }
    }

    /// Exact group order: the product of the basic orbit lengths.
    pub fn order(&self) -> BigUint {
        let mut acc = BigUint::from(1u32);
        for l in &self.levels {
            acc *= BigUint::from(l.orbit.len());
        }
        acc
    }

    /// Base points in chain order.
    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.beta).collect()
    }

    /// Membership test by sifting.
    pub fn contains(&self, p: &Perm) -> bool {
        assert_eq!(p.degree(), self.degree, "degree mismatch in membership test");
        self.sift_from(0, p.clone()).is_none()
    }

    /// Length of the basic orbit at `level`, or 0 past the chain's end.
    pub fn orbit_len(&self, level: usize) -> usize {
        self.levels.get(level).map_or(0, |l| l.orbit.len())
    }

    /// Strong generators of the stabilizer of the first base point
    /// (the full chain below level 0).
    pub fn first_level_stabilizer_gens(&self) -> Vec<Perm> {
        match self.levels.get(1) {
            Some(l) => l.gens.clone(),
            None => Vec::new(),
        }
    }
}

/// A finitely generated permutation group on `0..degree`.
///
/// Immutable after construction; the stabilizer chain (hence the exact
/// order) is computed lazily, once.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<Perm>,
    chain: OnceLock<StabChain>,
}

impl PermGroup {
    /// Builds a group from a non-empty generator list.
    pub fn new(degree: usize, gens: Vec<Perm>) -> Result<PermGroup, PermError> {
        if degree > MAX_DEGREE {
            return Err(PermError::DegreeTooLarge {
                degree,
                max: MAX_DEGREE,
            });
        }
        if gens.is_empty() {
            return Err(PermError::NoGenerators);
        }
        for g in &gens {
            if g.degree() != degree {
                return Err(PermError::DegreeMismatch {
                    expected: degree,
                    got: g.degree(),
                });
            }
        }
        Ok(PermGroup {
            degree,
            gens,
            chain: OnceLock::new(),
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn gens(&self) -> &[Perm] {
        &self.gens
    }

    /// The stabilizer chain with default (ascending) base.
    pub fn chain(&self) -> &StabChain {
        self.chain
            .get_or_init(|| StabChain::build(self.degree, &self.gens, &[]))
    }

    /// Exact group order (arbitrary precision).
    pub fn order(&self) -> BigUint {
        self.chain().order()
    }

    /// Group order as `u128`; panics if it does not fit (no classifier
    /// group comes close).
    pub fn order_u128(&self) -> u128 {
        let digits = self.order().to_u64_digits();
        match digits.len() {
            0 => 0,
            1 => digits[0] as u128,
            2 => (digits[1] as u128) << 64 | digits[0] as u128,
            _ => panic!("group order exceeds u128"),
        }
    }

    /// Membership test.
    pub fn contains(&self, p: &Perm) -> bool {
        self.chain().contains(p)
    }

    /// Orbit of `seed`, ascending.
    pub fn orbit_of(&self, seed: usize) -> Result<Vec<usize>, PermError> {
        if seed >= self.degree {
            return Err(PermError::PointOutOfRange {
                point: seed,
                degree: self.degree,
            });
        }
        let mut in_orbit = vec![false; self.degree];
        in_orbit[seed] = true;
        let mut queue = vec![seed];
        let mut idx = 0;
        while idx < queue.len() {
            let x = queue[idx];
            for g in &self.gens {
                let y = g.apply(x);
                if !in_orbit[y] {
                    in_orbit[y] = true;
                    queue.push(y);
                }
            }
            idx += 1;
        }
        queue.sort_unstable();
        Ok(queue)
    }

    /// All orbits, each ascending, ordered by smallest element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for x in 0..self.degree {
            if seen[x] {
                continue;
            }
            let orbit = self.orbit_of(x).expect("in-range seed");
            for &y in &orbit {
                seen[y] = true;
            }
            out.push(orbit);
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.degree == 0 || self.orbit_of(0).expect("in-range seed").len() == self.degree
    }

    /// The stabilizer of the point `x`, with generators taken from a
    /// stabilizer chain based at `x`.
    pub fn point_stabilizer(&self, x: usize) -> Result<PermGroup, PermError> {
        if x >= self.degree {
            return Err(PermError::PointOutOfRange {
                point: x,
                degree: self.degree,
            });
        }
        let chain = StabChain::build(self.degree, &self.gens, &[x]);
        let mut gens = chain.first_level_stabilizer_gens();
        if gens.is_empty() {
            gens.push(Perm::identity(self.degree));
        }
        PermGroup::new(self.degree, gens)
    }

    /// Largest `t <= max_t` such that the group is `t`-transitive, by
    /// iterated point-stabilizer orbit counting on a chain based at
    /// `0, 1, ..., max_t - 1`.
    pub fn transitivity_degree(&self, max_t: usize) -> usize {
        assert!(max_t <= self.degree, "transitivity degree cap exceeds degree");
        let prefix: Vec<usize> = (0..max_t).collect();
        let chain = StabChain::build(self.degree, &self.gens, &prefix);
        let mut t = 0;
        for i in 0..max_t {
            if chain.orbit_len(i) == self.degree - i {
                t = i + 1;
            } else {
                break;
            }
        }
        t
    }

    /// Whether the group is 2-transitive on its points.
    pub fn is_point_2transitive(&self) -> bool {
        self.degree >= 2 && self.transitivity_degree(2) == 2
    }

    /// All group elements via breadth-first closure, or `None` when the
    /// group has more than `cap` elements.
    pub fn elements(&self, cap: usize) -> Option<Vec<Perm>> {
        use std::collections::HashSet;
        let id = Perm::identity(self.degree);
        let mut seen: HashSet<Perm> = HashSet::new();
        seen.insert(id.clone());
        let mut queue = vec![id];
        let mut idx = 0;
        while idx < queue.len() {
            let x = queue[idx].clone();
            for g in &self.gens {
                let y = x.then(g);
                if !seen.contains(&y) {
                    if seen.len() >= cap {
                        return None;
                    }
                    seen.insert(y.clone());
                    queue.push(y);
                }
            }
            idx += 1;
        }
        Some(queue)
    }

    /// Serializes in the group file format: `"<degree> <gen-count>"`, then
    /// one space-separated image line per generator.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.degree, self.gens.len());
        for g in &self.gens {
            let line: Vec<String> = g.images().iter().map(|x| x.to_string()).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }

    /// Parses the group file format produced by [`PermGroup::to_text`].
    pub fn from_text(text: &str) -> Result<PermGroup, PermError> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| PermError::Parse("empty group file".into()))?;
        let head: Vec<&str> = header.split_whitespace().collect();
        if head.len() != 2 {
            return Err(PermError::Parse(format!(
                "header must be `<degree> <gen-count>`, got {header:?}"
            )));
        }
        let degree: usize = head[0]
            .parse()
            .map_err(|_| PermError::Parse(format!("bad degree {:?}", head[0])))?;
        let m: usize = head[1]
            .parse()
            .map_err(|_| PermError::Parse(format!("bad generator count {:?}", head[1])))?;
        if degree > MAX_DEGREE {
            return Err(PermError::DegreeTooLarge {
                degree,
                max: MAX_DEGREE,
            });
        }
        let mut gens = Vec::with_capacity(m);
        for i in 0..m {
            let line = lines
                .next()
                .ok_or_else(|| PermError::Parse(format!("missing generator line {}", i + 1)))?;
            let mut img = Vec::with_capacity(degree);
            for tok in line.split_whitespace() {
                let x: usize = tok
                    .parse()
                    .map_err(|_| PermError::Parse(format!("bad image {tok:?}")))?;
                img.push(x);
            }
            if img.len() != degree {
                return Err(PermError::Parse(format!(
                    "generator line {} has {} images, expected {}",
                    i + 1,
                    img.len(),
                    degree
                )));
            }
            gens.push(Perm::from_images(img)?);
        }
        for extra in lines {
            if !extra.trim().is_empty() {
                return Err(PermError::Parse("trailing content after generators".into()));
            }
        }
        PermGroup::new(degree, gens)
    }

    pub fn from_file(path: &Path) -> Result<PermGroup, PermError> {
        let text = std::fs::read_to_string(path)?;
        PermGroup::from_text(&text)
    }

    pub fn to_file(&self, path: &Path) -> Result<(), PermError> {
        std::fs::write(path, self.to_text())?;
        Ok(())
    }
}

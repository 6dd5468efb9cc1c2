//! Finite fields `GF(p^e)` and the projective line `PG(1, q)` carrying the
//! 2-transitive actions of `PSL(2, q)` and `PGL(2, q)`.
//!
//! Field elements are identified with the indices `0..q` in the p-ary
//! counting order of their coefficient vectors over `GF(p)` (index
//! `a_0 + a_1 p + ...` for the element `a_0 + a_1 x + ...`).  The point at
//! infinity of the projective line gets index `q`, so the line is
//! `0..=q` and permutation degrees are `q + 1`.

use crate::arith::{is_prime, prime_divisors};
use crate::perm::{Perm, PermError, PermGroup};
use num_bigint::BigUint;
use thiserror::Error;

/// Maximum supported field size (matches the permutation degree cap).
pub const MAX_FIELD_SIZE: u64 = 1 << 16;

#[derive(Debug, Error)]
pub enum GfError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field exponent must be at least 1")]
    BadExponent,
    #[error("field size {q} exceeds the supported cap of {max}")]
    TooLarge { q: u64, max: u64 },
    #[error("q = {0} is not supported here (requires q > 3)")]
    SmallField(u64),
    #[error("permutation kernel error: {0}")]
    Perm(#[from] PermError),
}

// ----- polynomial helpers over GF(p), coefficients little-endian -----

pub(crate) fn poly_trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub(crate) fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    poly_trim(&mut out);
    out
}

/// Remainder of `a` modulo the monic polynomial `m`.
pub(crate) fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    debug_assert_eq!(*m.last().unwrap(), 1, "modulus must be monic");
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        for (j, &mj) in m.iter().enumerate() {
            let idx = shift + j;
            r[idx] = (r[idx] + p * p - (lead * mj) % p) % p;
        }
        poly_trim(&mut r);
    }
    r
}

/// Irreducibility over GF(p) by trial division against every monic
/// polynomial of degree up to half the degree of `poly`.
pub(crate) fn poly_is_irreducible(poly: &[u64], p: u64) -> bool {
    let d = poly.len() - 1;
    debug_assert!(d >= 1);
    for dd in 1..=d / 2 {
        let count = p.pow(dd as u32);
        for c in 0..count {
            let mut div = Vec::with_capacity(dd + 1);
            let mut x = c;
            for _ in 0..dd {
                div.push(x % p);
                x /= p;
            }
            div.push(1);
            if poly_rem(poly, &div, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// A concrete finite field `GF(p^e)` with deterministic element order.
///
/// The modulus is the lexicographically smallest monic irreducible of
/// degree `e` over `GF(p)` (scanning coefficient vectors in p-ary counting
/// order); multiplication runs through log/exp tables with respect to the
/// smallest primitive element.
#[derive(Clone, Debug)]
pub struct FieldSpec {
    p: u64,
    e: u64,
    q: u64,
    modulus: Vec<u64>,
    zeta: usize,
    /// `exp[k]` = index of `zeta^k` for `k` in `0..q-1`.
    exp: Vec<usize>,
    /// `log[a]` for nonzero index `a`; `log[0]` is unused.
    log: Vec<usize>,
}

impl FieldSpec {
    pub fn build(p: u64, e: u64) -> Result<FieldSpec, GfError> {
        if !is_prime(p) {
            return Err(GfError::NotPrime(p));
        }
        if e < 1 {
            return Err(GfError::BadExponent);
        }
        let mut q: u64 = 1;
        for _ in 0..e {
            q = q.checked_mul(p).filter(|&v| v <= MAX_FIELD_SIZE).ok_or(
                GfError::TooLarge {
                    q: u64::MAX,
                    max: MAX_FIELD_SIZE,
                },
            )?;
        }
        // Lexicographically smallest monic irreducible modulus of degree e.
        let mut modulus = None;
        for c in 0..q {
            let mut coeffs = Vec::with_capacity(e as usize + 1);
            let mut x = c;
            for _ in 0..e {
                coeffs.push(x % p);
                x /= p;
            }
            coeffs.push(1);
            if poly_is_irreducible(&coeffs, p) {
                modulus = Some(coeffs);
                break;
            }
        }
        let modulus = modulus.expect("an irreducible polynomial of each degree exists");
        let mut fs = FieldSpec {
            p,
            e,
            q,
            modulus,
            zeta: 0,
            exp: Vec::new(),
            log: Vec::new(),
        };
        fs.init_tables();
        Ok(fs)
    }

    fn decode(&self, a: usize) -> Vec<u64> {
        let mut digits = Vec::with_capacity(self.e as usize);
        let mut x = a as u64;
        for _ in 0..self.e {
            digits.push(x % self.p);
            x /= self.p;
        }
        digits
    }

    fn encode(&self, digits: &[u64]) -> usize {
        let mut acc: u64 = 0;
        for &d in digits.iter().rev() {
            acc = acc * self.p + d;
        }
        acc as usize
    }

    fn vec_mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut r = poly_rem(&poly_mul(a, b, self.p), &self.modulus, self.p);
        r.resize(self.e as usize, 0);
        r
    }

    fn vec_pow(&self, a: &[u64], mut k: u64) -> Vec<u64> {
        let mut base = a.to_vec();
        let mut one = vec![0u64; self.e as usize];
        one[0] = 1;
        let mut acc = one;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.vec_mul(&acc, &base);
            }
            base = self.vec_mul(&base, &base);
            k >>= 1;
        }
        acc
    }

    fn init_tables(&mut self) {
        let q = self.q;
        let one_vec = {
            let mut v = vec![0u64; self.e as usize];
            v[0] = 1;
            v
        };
        // Smallest element (by index) of multiplicative order q - 1.
        let radicals = prime_divisors(q - 1);
        let mut zeta = 0usize;
        'cand: for a in 1..q as usize {
            let v = self.decode(a);
            for &r in &radicals {
                if self.vec_pow(&v, (q - 1) / r) == one_vec {
                    continue 'cand;
                }
            }
            zeta = a;
            break;
        }
        assert!(zeta != 0 || q == 2, "multiplicative group must be cyclic");
        if q == 2 {
            zeta = 1;
        }
        self.zeta = zeta;
        let zeta_vec = self.decode(zeta);
        let mut exp = Vec::with_capacity((q - 1) as usize);
        let mut log = vec![0usize; q as usize];
        let mut v = one_vec;
        for k in 0..(q - 1) as usize {
            let idx = self.encode(&v);
            exp.push(idx);
            log[idx] = k;
            v = self.vec_mul(&v, &zeta_vec);
        }
        self.exp = exp;
        self.log = log;
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> u64 {
        self.e
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Modulus coefficients, little-endian, monic of degree `e`.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// Index of the chosen primitive element (smallest by index).
    pub fn primitive(&self) -> usize {
        self.zeta
    }

    /// Index of `zeta^k`.
    pub fn zeta_pow(&self, k: u64) -> usize {
        if self.q == 2 {
            return 1;
        }
        self.exp[(k % (self.q - 1)) as usize]
    }

    /// Discrete log of a nonzero element with respect to `zeta`.
    pub fn log_of(&self, a: usize) -> u64 {
        assert!(a != 0, "log of zero");
        self.log[a] as u64
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let (mut x, mut y) = (a as u64, b as u64);
        let mut acc = 0u64;
        let mut place = 1u64;
        for _ in 0..self.e {
            acc += ((x % self.p + y % self.p) % self.p) * place;
            x /= self.p;
            y /= self.p;
            place *= self.p;
        }
        acc as usize
    }

    pub fn neg(&self, a: usize) -> usize {
        let mut x = a as u64;
        let mut acc = 0u64;
        let mut place = 1u64;
        for _ in 0..self.e {
            acc += ((self.p - x % self.p) % self.p) * place;
            x /= self.p;
            place *= self.p;
        }
        acc as usize
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        if a == 0 || b == 0 {
            return 0;
        }
        let k = (self.log[a] + self.log[b]) % (self.q - 1) as usize;
        self.exp[k]
    }

    pub fn inv(&self, a: usize) -> usize {
        assert!(a != 0, "inverse of zero");
        let k = ((self.q - 1) as usize - self.log[a]) % (self.q - 1) as usize;
        self.exp[k]
    }

    pub fn div(&self, a: usize, b: usize) -> usize {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: usize, k: u64) -> usize {
        if a == 0 {
            return if k == 0 { 1 } else { 0 };
        }
        let k = (self.log[a] as u128 * k as u128 % (self.q - 1) as u128) as usize;
        self.exp[k]
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: usize) -> u64 {
        assert!(a != 0, "order of zero");
        let m = self.q - 1;
        m / num_integer::gcd(m, self.log[a] as u64)
    }

    /// Frobenius `x -> x^p` on element indices.
    pub fn frob(&self, a: usize) -> usize {
        self.pow(a, self.p)
    }

    /// Index of the projective point at infinity.
    pub fn infinity(&self) -> usize {
        self.q as usize
    }
}

/// The fractional-linear map `x -> (a x + b) / (c x + d)` as a permutation
/// of the projective line `0..=q` (infinity = index `q`), computed on
/// homogeneous pairs so there is no division-by-zero special case.
///
/// Panics when `a d - b c = 0` (the matrix must be invertible).
pub fn moebius(fs: &FieldSpec, a: usize, b: usize, c: usize, d: usize) -> Perm {
    let det = fs.sub(fs.mul(a, d), fs.mul(b, c));
    assert!(det != 0, "singular matrix in fractional-linear map");
    let q = fs.q() as usize;
    let mut img = Vec::with_capacity(q + 1);
    // Finite point x = (x : 1); infinity = (1 : 0).
    for x in 0..q {
        let u = fs.add(fs.mul(a, x), b);
        let w = fs.add(fs.mul(c, x), d);
        img.push(if w == 0 { q } else { fs.div(u, w) });
    }
    img.push(if c == 0 { q } else { fs.div(a, c) });
    Perm::from_images(img).expect("invertible matrix gives a bijection")
}

fn check_projective_action(g: &PermGroup, expected_order: u64, what: &str) {
    assert_eq!(
        g.order(),
        BigUint::from(expected_order),
        "{what}: unexpected group order"
    );
    assert!(
        g.transitivity_degree(2) == 2,
        "{what}: action must be 2-transitive"
    );
}

/// `PSL(2, q)` acting on the `q + 1` points of the projective line.
///
/// Generators: `x -> x + 1`, `x -> nu x` and `x -> -1/x`, where `nu` is
/// the square of the primitive element for odd `q` and the primitive
/// element itself for even `q`.  The order `q(q^2 - 1)/gcd(2, q-1)` and
/// 2-transitivity are asserted after construction.
pub fn psl2_group(fs: &FieldSpec) -> Result<PermGroup, GfError> {
    if fs.q() <= 3 {
        return Err(GfError::SmallField(fs.q()));
    }
    let gens = psl2_gens(fs);
    let g = PermGroup::new(fs.q() as usize + 1, gens)?;
    let n = if fs.q() % 2 == 1 { 2 } else { 1 };
    check_projective_action(&g, fs.q() * (fs.q() * fs.q() - 1) / n, "PSL(2,q)");
    Ok(g)
}

/// The three standard generators of `PSL(2, q)` (without postcondition
/// checks); used by subgroup constructions.
pub fn psl2_gens(fs: &FieldSpec) -> Vec<Perm> {
    let zeta = fs.primitive();
    let nu = if fs.q().is_multiple_of(2) {
        zeta
    } else {
        fs.mul(zeta, zeta)
    };
    vec![
        moebius(fs, 1, 1, 0, 1),
        moebius(fs, nu, 0, 0, 1),
        moebius(fs, 0, fs.neg(1), 1, 0),
    ]
}

/// `PGL(2, q)` on the projective line: the `PSL(2, q)` generators plus the
/// scaling by the primitive element.  Order `q(q^2 - 1)` is asserted.
pub fn pgl2_group(fs: &FieldSpec) -> Result<PermGroup, GfError> {
    if fs.q() <= 3 {
        return Err(GfError::SmallField(fs.q()));
    }
    let mut gens = psl2_gens(fs);
    gens.push(moebius(fs, fs.primitive(), 0, 0, 1));
    let g = PermGroup::new(fs.q() as usize + 1, gens)?;
    check_projective_action(&g, fs.q() * (fs.q() * fs.q() - 1), "PGL(2,q)");
    Ok(g)
}

/// The permutation of the projective line induced by the Frobenius
/// automorphism `x -> x^p` (infinity fixed).
pub fn frobenius_perm(fs: &FieldSpec) -> Perm {
    let q = fs.q() as usize;
    let mut img: Vec<usize> = (0..q).map(|x| fs.frob(x)).collect();
    img.push(q);
    Perm::from_images(img).expect("field automorphism is a bijection")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moduli_are_lex_smallest_irreducibles() {
        assert_eq!(FieldSpec::build(7, 1).unwrap().modulus(), &[0, 1]);
        assert_eq!(FieldSpec::build(2, 2).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(FieldSpec::build(2, 3).unwrap().modulus(), &[1, 1, 0, 1]);
        assert_eq!(FieldSpec::build(3, 2).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(FieldSpec::build(5, 2).unwrap().modulus(), &[2, 0, 1]);
    }

    #[test]
    fn build_rejects_bad_parameters() {
        assert!(matches!(FieldSpec::build(6, 1), Err(GfError::NotPrime(6))));
        assert!(matches!(FieldSpec::build(2, 0), Err(GfError::BadExponent)));
        assert!(matches!(
            FieldSpec::build(2, 17),
            Err(GfError::TooLarge { .. })
        ));
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for (p, e) in [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (5, 1), (7, 1)] {
            let fs = FieldSpec::build(p, e).unwrap();
            let q = fs.q() as usize;
            for a in 0..q {
                // additive inverse and multiplicative inverse
                assert_eq!(fs.add(a, fs.neg(a)), 0);
                if a != 0 {
                    assert_eq!(fs.mul(a, fs.inv(a)), 1, "q={q} a={a}");
                }
                for b in 0..q {
                    assert_eq!(fs.add(a, b), fs.add(b, a));
                    assert_eq!(fs.mul(a, b), fs.mul(b, a));
                    for c in 0..q {
                        assert_eq!(fs.mul(a, fs.add(b, c)), fs.add(fs.mul(a, b), fs.mul(a, c)));
                        assert_eq!(fs.mul(fs.mul(a, b), c), fs.mul(a, fs.mul(b, c)));
                        assert_eq!(fs.add(fs.add(a, b), c), fs.add(a, fs.add(b, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn multiplicative_group_is_cyclic() {
        let fs = FieldSpec::build(3, 2).unwrap();
        assert_eq!(fs.element_order(fs.primitive()), 8);
        let mut seen = std::collections::HashSet::new();
        for k in 0..8 {
            seen.insert(fs.zeta_pow(k));
        }
        assert_eq!(seen.len(), 8);
        let fs7 = FieldSpec::build(7, 1).unwrap();
        assert_eq!(fs7.primitive(), 3); // smallest primitive root mod 7
    }

    #[test]
    fn moebius_translation_and_inversion() {
        let fs = FieldSpec::build(5, 1).unwrap();
        let t = moebius(&fs, 1, 1, 0, 1); // x -> x + 1
        assert_eq!(t.images(), &[1, 2, 3, 4, 0, 5]);
        let w = moebius(&fs, 0, fs.neg(1), 1, 0); // x -> -1/x
        assert_eq!(w.apply(fs.infinity()), 0);
        assert_eq!(w.apply(0), fs.infinity());
        assert_eq!(w.apply(1), 4); // -1/1 = 4 mod 5
        assert_eq!(w.apply(2), 2); // -1/2 = -3 = 2 mod 5
    }

    #[test]
    #[should_panic(expected = "singular")]
    fn moebius_rejects_singular_matrix() {
        let fs = FieldSpec::build(5, 1).unwrap();
        moebius(&fs, 2, 4, 1, 2); // det = 0 mod 5
    }

    #[test]
    fn psl2_orders_and_transitivity() {
        for (p, e, want) in [(5u64, 1u64, 60u64), (2, 3, 504), (11, 1, 660), (3, 2, 360)] {
            let fs = FieldSpec::build(p, e).unwrap();
            let g = psl2_group(&fs).unwrap(); // order/2-transitivity asserted inside
            assert_eq!(g.order(), BigUint::from(want));
            assert_eq!(g.degree(), fs.q() as usize + 1);
        }
        let fs3 = FieldSpec::build(3, 1).unwrap();
        assert!(matches!(psl2_group(&fs3), Err(GfError::SmallField(3))));
    }

    #[test]
    fn pgl2_orders_and_psl_index() {
        let fs = FieldSpec::build(5, 1).unwrap();
        assert_eq!(pgl2_group(&fs).unwrap().order(), BigUint::from(120u32));
        let fs9 = FieldSpec::build(3, 2).unwrap();
        assert_eq!(pgl2_group(&fs9).unwrap().order(), BigUint::from(720u32));
        // q even: PGL = PSL as permutation groups.
        let fs4 = FieldSpec::build(2, 2).unwrap();
        let psl = psl2_group(&fs4).unwrap();
        let pgl = pgl2_group(&fs4).unwrap();
        assert_eq!(psl.order(), pgl.order());
        assert!(pgl.gens().iter().all(|g| psl.contains(g)));
    }

    #[test]
    fn frobenius_properties() {
        let fs7 = FieldSpec::build(7, 1).unwrap();
        assert!(frobenius_perm(&fs7).is_identity());

        let fs4 = FieldSpec::build(2, 2).unwrap();
        let f = frobenius_perm(&fs4);
        assert_eq!(f.order(), 2);
        let fixed = (0..f.degree()).filter(|&x| f.apply(x) == x).count();
        assert_eq!(fixed, 3); // infinity, 0, 1

        let fs8 = FieldSpec::build(2, 3).unwrap();
        let f = frobenius_perm(&fs8);
        assert_eq!(f.order(), 3);
        let fixed = (0..f.degree()).filter(|&x| f.apply(x) == x).count();
        assert_eq!(fixed, 3);

        // Conjugation by Frobenius preserves PSL(2,q).
        let fs9 = FieldSpec::build(3, 2).unwrap();
        let g9 = psl2_group(&fs9).unwrap();
        let f9 = frobenius_perm(&fs9);
        for gen in g9.gens() {
            let conj = f9.inverse().then(gen).then(&f9);
            assert!(g9.contains(&conj));
        }
    }
}

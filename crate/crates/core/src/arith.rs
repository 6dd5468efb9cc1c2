//! Exact integer and rational arithmetic used throughout the classifier.
//!
//! Everything here is deterministic and overflow-checked: primality is
//! decided by a Miller–Rabin test that is exact on all of `u64`, binomial
//! coefficients are computed in `u128`, and the block-design divisibility
//! chain is carried as exact rationals.

use num_rational::Ratio;

/// Integer square root: the largest `s` with `s * s <= v`.
pub fn isqrt(v: u64) -> u64 {
    v.isqrt()
}

/// Upper bound on the block size `k` of a non-trivial Steiner 4-design on
/// `v` points admitting a flag-transitive group.
///
/// With `s = isqrt(v)`, the bound is `s + 2` when `v <= s^2 + s` and
/// `s + 3` otherwise; it packages the inequality `v >= (k-2)^2 - 1`
/// required of such designs.
pub fn k_upper_bound(v: u64) -> u64 {
    let s = isqrt(v);
    if v <= s * s + s {
        s + 2
    } else {
        s + 3
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc: u64 = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic primality test, exact for every `u64` (Miller–Rabin with
/// the twelve prime bases up to 37).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &MR_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// If `n = p^e` for a prime `p` and `e >= 1`, returns `(p, e)`; otherwise
/// `None`.
pub fn prime_power(n: u64) -> Option<(u64, u64)> {
    if n < 2 {
        return None;
    }
    if is_prime(n) {
        return Some((n, 1));
    }
    let mut p = 0;
    let mut i: u64 = 2;
    while i * i <= n {
        if n.is_multiple_of(i) {
            p = i;
            break;
        }
        i += 1;
    }
    debug_assert!(p != 0, "composite n must have a divisor <= sqrt(n)");
    let mut m = n;
    let mut e = 0;
    while m.is_multiple_of(p) {
        m /= p;
        e += 1;
    }
    if m == 1 {
        Some((p, e))
    } else {
        None
    }
}

/// All positive divisors of `n >= 1`, in ascending order.
pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n >= 1, "divisors requires n >= 1");
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i: u64 = 1;
    while i * i <= n {
        if n.is_multiple_of(i) {
            small.push(i);
            if i != n / i {
                large.push(n / i);
            }
        }
        i += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// The distinct prime divisors of `n >= 1`, in ascending order.
pub fn prime_divisors(n: u64) -> Vec<u64> {
    let mut n = n;
    let mut out = Vec::new();
    let mut p: u64 = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Binomial coefficient `C(n, k)` as an exact `u128` (0 when `k > n`).
///
/// Panics on overflow, which cannot occur for the parameter ranges used by
/// the classifier (`n <= 10^6`, `k <= 4` on the large side).
pub fn binom(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 1..=k {
        acc = acc
            .checked_mul((n - k + i) as u128)
            .expect("binomial coefficient overflowed u128");
        acc /= i as u128;
    }
    acc
}

/// The divisibility chain `lambda_i = lam * C(v-i, t-i) / C(k-i, t-i)` for
/// `i = 0..=t`, as exact reduced rationals.
///
/// `chain[0]` is the block count `b`, `chain[1]` the replication number
/// `r`, and `chain[t] = lam`.  A `t-(v, k, lam)` design exists only if
/// every entry is an integer.  Requires `v >= k >= t >= 1`.
pub fn lambda_chain(v: u64, k: u64, t: u64, lam: u64) -> Vec<Ratio<u128>> {
    assert!(
        t >= 1 && k >= t && v >= k,
        "lambda_chain requires v >= k >= t >= 1 (got v={v}, k={k}, t={t})"
    );
    (0..=t)
        .map(|i| Ratio::new(lam as u128 * binom(v - i, t - i), binom(k - i, t - i)))
        .collect()
}

/// Index of the first non-integral entry of a divisibility chain, if any.
pub fn first_nonintegral(chain: &[Ratio<u128>]) -> Option<usize> {
    chain.iter().position(|x| !x.is_integer())
}

/// True iff every entry of the `t`-design divisibility chain for
/// `t-(v, k, lam)` is an integer.
pub fn chain_admissible(v: u64, k: u64, t: u64, lam: u64) -> bool {
    first_nonintegral(&lambda_chain(v, k, t, lam)).is_none()
}

/// Divisibility condition `(k-2)(k-3) | (v-2)(v-3)` necessary for a
/// Steiner 4-design `4-(v, k, 1)` (derived designs of derived designs).
pub fn pair_divisibility_ok(v: u64, k: u64) -> bool {
    assert!(v >= 3 && k >= 4, "pair_divisibility requires v >= 3, k >= 4");
    ((v - 2) * (v - 3)).is_multiple_of((k - 2) * (k - 3))
}

/// Equality cases `(t, k, v)` of the flag-transitivity bound below.
const CAMERON_EQUALITY: [(u64, u64, u64); 5] = [
    (3, 4, 8),
    (3, 6, 22),
    (3, 12, 112),
    (4, 7, 23),
    (5, 8, 24),
];

/// Cameron's bound for flag-transitive `t-(v, k, 1)` designs:
/// `v - t + 1 >= (k - t + 2)(k - t + 1)`, with equality possible only for
/// the five known parameter triples (Cameron 1976).
pub fn cameron_bound_ok(v: u64, k: u64, t: u64) -> bool {
    let lhs = v - t + 1;
    let rhs = (k - t + 2) * (k - t + 1);
    if lhs > rhs {
        true
    } else if lhs == rhs {
        CAMERON_EQUALITY.contains(&(t, k, v))
    } else {
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isqrt_edges() {
        assert_eq!(isqrt(0), 0);
        assert_eq!(isqrt(1), 1);
        assert_eq!(isqrt(3), 1);
        assert_eq!(isqrt(4), 2);
        assert_eq!(isqrt(15), 3);
        assert_eq!(isqrt(16), 4);
        assert_eq!(isqrt(17), 4);
        assert_eq!(isqrt(u64::MAX), (1u64 << 32) - 1);
    }

    #[test]
    fn k_upper_bound_values() {
        // v = 11: s = 3, 11 <= 12, bound 5; the Witt 4-(11,5,1) meets it.
        assert_eq!(k_upper_bound(11), 5);
        // v = 23: s = 4, 23 > 20, bound 7; the Witt 4-(23,7,1) meets it.
        assert_eq!(k_upper_bound(23), 7);
        assert_eq!(k_upper_bound(12), 5);
        assert_eq!(k_upper_bound(24), 7);
        assert_eq!(k_upper_bound(102), 12); // s = 10, 102 <= 110
        assert_eq!(k_upper_bound(112), 13); // s = 10, 112 > 110
        assert_eq!(k_upper_bound(1_000_000), 1002);
    }

    #[test]
    fn primality_small_and_pseudoprimes() {
        let primes: [u64; 10] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 101];
        for p in primes {
            assert!(is_prime(p), "{p} is prime");
        }
        let composites: [u64; 8] = [0, 1, 4, 341, 561, 25_326_001, 3_215_031_751, 1_000_000_005];
        for c in composites {
            assert!(!is_prime(c), "{c} is composite");
        }
        // Strong pseudoprime to all bases < 24; caught by larger bases.
        assert!(!is_prime(3_825_123_056_546_413_051));
        // Mersenne prime 2^61 - 1.
        assert!(is_prime((1u64 << 61) - 1));
    }

    #[test]
    fn prime_power_decomposition() {
        assert_eq!(prime_power(0), None);
        assert_eq!(prime_power(1), None);
        assert_eq!(prime_power(2), Some((2, 1)));
        assert_eq!(prime_power(4), Some((2, 2)));
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(121), Some((11, 2)));
        assert_eq!(prime_power(125), Some((5, 3)));
        assert_eq!(prime_power(128), Some((2, 7)));
        assert_eq!(prime_power(1024), Some((2, 10)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1_000_003), Some((1_000_003, 1)));
    }

    #[test]
    fn divisor_lists() {
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(16), vec![1, 2, 4, 8, 16]);
        assert_eq!(divisors(17), vec![1, 17]);
        assert_eq!(prime_divisors(1), Vec::<u64>::new());
        assert_eq!(prime_divisors(12), vec![2, 3]);
        assert_eq!(prime_divisors(17), vec![17]);
        assert_eq!(prime_divisors(360), vec![2, 3, 5]);
    }

    #[test]
    fn binomials() {
        assert_eq!(binom(0, 0), 1);
        assert_eq!(binom(5, 7), 0);
        assert_eq!(binom(11, 5), 462);
        assert_eq!(binom(23, 4), 8855);
        assert_eq!(binom(23, 7), 245_157);
        assert_eq!(binom(1_000_000, 4), 41_666_416_667_124_999_750_000);
    }

    #[test]
    fn chain_witt_parameters() {
        let c11 = lambda_chain(11, 5, 4, 1);
        let ints: Vec<u128> = c11.iter().map(|x| x.to_integer()).collect();
        assert_eq!(ints, vec![66, 30, 12, 4, 1]);
        let c23 = lambda_chain(23, 7, 4, 1);
        let ints: Vec<u128> = c23.iter().map(|x| x.to_integer()).collect();
        assert_eq!(ints, vec![253, 77, 21, 5, 1]);
        assert!(chain_admissible(11, 5, 4, 1));
        assert!(chain_admissible(23, 7, 4, 1));
    }

    #[test]
    fn chain_failures() {
        // 4-(22,6,1): already b = 7315/15 is non-integral.
        let c = lambda_chain(22, 6, 4, 1);
        assert_eq!(first_nonintegral(&c), Some(0));
        assert!(!chain_admissible(22, 6, 4, 1));
        // 4-(18,6,1) is chain-admissible (its nonexistence needs more).
        let c = lambda_chain(18, 6, 4, 1);
        assert_eq!(first_nonintegral(&c), None);
        assert_eq!(c[0].to_integer(), 204);
        assert_eq!(c[1].to_integer(), 68);
        // 4-(57,8,1): b, r, lambda_2 are integral but lambda_3 = 54/5.
        let c = lambda_chain(57, 8, 4, 1);
        assert_eq!(first_nonintegral(&c), Some(3));
        assert_eq!(c[3], Ratio::new(54u128, 5u128));
    }

    #[test]
    fn rational_display_is_reduced() {
        let x: Ratio<u128> = Ratio::new(273_819 * 3, 12);
        assert_eq!(x.to_string(), "273819/4");
        let y: Ratio<u128> = Ratio::new(10, 5);
        assert_eq!(y.to_string(), "2");
    }

    #[test]
    fn pair_divisibility() {
        assert!(pair_divisibility_ok(23, 7)); // 420 divisible by 20
        assert!(pair_divisibility_ok(11, 5)); // 72 divisible by 6
        assert!(!pair_divisibility_ok(16, 5)); // 182 not divisible by 6
        assert!(!pair_divisibility_ok(16, 6)); // 182 not divisible by 12
    }

    #[test]
    fn cameron_bound() {
        assert!(cameron_bound_ok(11, 5, 4)); // 8 > 6 strict
        assert!(cameron_bound_ok(23, 7, 4)); // equality, listed case
        assert!(!cameron_bound_ok(15, 6, 4)); // equality, not a listed case
        assert!(!cameron_bound_ok(10, 7, 4)); // 7 < 20
        assert!(cameron_bound_ok(22, 6, 3)); // equality, listed (3,6,22)
        assert!(cameron_bound_ok(24, 8, 5)); // equality, listed (5,8,24)
    }
}

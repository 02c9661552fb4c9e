//! Exact integer number theory.
//!
//! Everything here is deterministic integer arithmetic: trial-division
//! factorization, Euler's totient, smallest prime divisors, the safe-prime
//! test, and exact evaluation of the `⌊(c/d)·√m⌋`-shaped quantities that
//! appear in the correlation bounds. No floating point is used anywhere;
//! bound verdicts must be bit-exact, so square roots are compared by
//! squaring.
//!
//! All moduli in scope are below 2^20, so trial division is entirely
//! adequate and keeps the code easy to audit.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Prime factorization of a positive integer.
///
/// `factors` lists `(prime, multiplicity)` pairs with strictly increasing
/// primes whose product reconstructs `n`. The factorization of 1 is the
/// empty product.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    /// The factored integer.
    pub n: u64,
    /// `(prime, multiplicity)` pairs, primes strictly increasing.
    pub factors: Vec<(u64, u32)>,
}

impl Factorization {
    /// Distinct prime divisors, in increasing order.
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }
}

/// Deterministic primality test by trial division up to `√n`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    if n % 3 == 0 {
        return n == 3;
    }
    let mut d = 5;
    while d * d <= n {
        if n % d == 0 || n % (d + 2) == 0 {
            return false;
        }
        d += 6;
    }
    true
}

/// Factor `n ≥ 1` by trial division.
pub fn factorize(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::ZeroArgument);
    }
    let mut rest = n;
    let mut factors = Vec::new();
    let mut push = |p: u64, rest: &mut u64| {
        let mut mult = 0u32;
        while *rest % p == 0 {
            *rest /= p;
            mult += 1;
        }
        if mult > 0 {
            factors.push((p, mult));
        }
    };
    push(2, &mut rest);
    push(3, &mut rest);
    let mut d = 5;
    while d * d <= rest {
        push(d, &mut rest);
        push(d + 2, &mut rest);
        d += 6;
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    Ok(Factorization { n, factors })
}

/// Euler's totient `φ(n)` for `n ≥ 1`, computed from the factorization.
pub fn euler_phi(n: u64) -> Result<u64> {
    let f = factorize(n)?;
    let mut phi = 1u64;
    for (p, mult) in f.factors {
        phi *= p.pow(mult - 1) * (p - 1);
    }
    Ok(phi)
}

/// Least prime dividing `n ≥ 2`.
pub fn smallest_prime_divisor(n: u64) -> Result<u64> {
    if n < 2 {
        return Err(Error::ArgumentOutOfRange {
            name: "n",
            value: n as i64,
            min: 2,
            max: i64::MAX,
        });
    }
    if n % 2 == 0 {
        return Ok(2);
    }
    if n % 3 == 0 {
        return Ok(3);
    }
    let mut d = 5;
    while d * d <= n {
        if n % d == 0 {
            return Ok(d);
        }
        if n % (d + 2) == 0 {
            return Ok(d + 2);
        }
        d += 6;
    }
    Ok(n)
}

/// Whether the odd prime `p` is a safe prime, i.e. `(p−1)/2` is also prime.
///
/// Rejects composite (or even) input rather than answering for it.
pub fn is_safe_prime(p: u64) -> Result<bool> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 2 {
        return Err(Error::InvalidParameter(
            "safe-prime test requires an odd prime".into(),
        ));
    }
    Ok(is_prime((p - 1) / 2))
}

/// Integer square root: largest `k` with `k² ≤ n`.
pub fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    // Newton's method starting above the root; converges in a few steps.
    let mut x = 1u64 << (n.ilog2() / 2 + 1);
    loop {
        let next = (x + n / x) / 2;
        if next >= x {
            return x;
        }
        x = next;
    }
}

fn isqrt_u128(n: u128) -> u128 {
    if n <= u64::MAX as u128 {
        return isqrt(n as u64) as u128;
    }
    let mut x = 1u128 << (n.ilog2() / 2 + 1);
    loop {
        let next = (x + n / x) / 2;
        if next >= x {
            return x;
        }
        x = next;
    }
}

/// Exact `⌊(c_num / c_den) · √m⌋` for `c_num ≥ 0`, `c_den ≥ 1`:
/// the largest `k ≥ 0` with `k²·c_den² ≤ c_num²·m`.
pub fn floor_scaled_sqrt(c_num: u64, c_den: u64, m: u64) -> Result<u64> {
    if c_den == 0 || m == 0 {
        return Err(Error::ZeroArgument);
    }
    // ⌊(c/d)√m⌋ = ⌊√(c²m)⌋ / d exactly: both sides are the largest k with
    // k²d² ≤ c²m.
    let c = c_num as u128;
    let k = isqrt_u128(c * c * m as u128) / c_den as u128;
    Ok(k as u64)
}

/// Exact `⌊(c_num / c_den) · (1 + √m)⌋`: the largest `k ≥ 0` with
/// `k·c_den ≤ c_num + ⌊√(c_num²·m)⌋` evaluated in pure integer arithmetic.
pub fn floor_scaled_one_plus_sqrt(c_num: u64, c_den: u64, m: u64) -> Result<u64> {
    if c_den == 0 || m == 0 {
        return Err(Error::ZeroArgument);
    }
    // (c/d)(1+√m) = (c + c√m)/d and ⌊c√m⌋ = ⌊√(c²m)⌋, so the floor of the
    // whole expression is ⌊(c + ⌊√(c²m)⌋)/d⌋.
    let c = c_num as u128;
    let k = (c + isqrt_u128(c * c * m as u128)) / c_den as u128;
    Ok(k as u64)
}

/// Decompose `q` as `p^r` with `p` prime and `r ≥ 1`, if possible.
pub fn prime_power_decompose(q: u64) -> Result<(u64, u32)> {
    if q < 2 {
        return Err(Error::NotPrimePower(q));
    }
    let f = factorize(q)?;
    match f.factors.as_slice() {
        [(p, r)] => Ok((*p, *r)),
        _ => Err(Error::NotPrimePower(q)),
    }
}

/// Greatest common divisor.
pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorize_small_values() {
        assert_eq!(factorize(12).unwrap().factors, vec![(2, 2), (3, 1)]);
        assert_eq!(factorize(1).unwrap().factors, vec![]);
        assert_eq!(factorize(58).unwrap().factors, vec![(2, 1), (29, 1)]);
        assert_eq!(factorize(2u64.pow(20)).unwrap().factors, vec![(2, 20)]);
        assert_eq!(factorize(0), Err(Error::ZeroArgument));
    }

    #[test]
    fn factorize_reconstructs_input_with_prime_factors() {
        for n in 1..=5000u64 {
            let f = factorize(n).unwrap();
            let mut prod = 1u64;
            let mut last = 0;
            for &(p, mult) in &f.factors {
                assert!(is_prime(p), "{p} reported as prime factor of {n}");
                assert!(p > last, "factors of {n} not strictly increasing");
                last = p;
                prod *= p.pow(mult);
            }
            assert_eq!(prod, n);
        }
    }

    #[test]
    fn primality_matches_sieve() {
        let limit = 10_000usize;
        let mut composite = vec![false; limit + 1];
        for i in 2..=limit {
            if !composite[i] {
                for j in (i * i..=limit).step_by(i) {
                    composite[j] = true;
                }
            }
        }
        for n in 0..=limit {
            assert_eq!(is_prime(n as u64), n >= 2 && !composite[n], "n = {n}");
        }
    }

    #[test]
    fn euler_phi_examples() {
        assert_eq!(euler_phi(4).unwrap(), 2);
        assert_eq!(euler_phi(58).unwrap(), 28);
        assert_eq!(euler_phi(6).unwrap(), 2);
        assert_eq!(euler_phi(1).unwrap(), 1);
        assert_eq!(euler_phi(0), Err(Error::ZeroArgument));
    }

    #[test]
    fn euler_phi_equals_gcd_count_exhaustively() {
        // Direct definitional oracle on a range small enough to brute force.
        for n in 1..=10_000u64 {
            let direct = (1..=n).filter(|&k| gcd(k, n) == 1).count() as u64;
            assert_eq!(euler_phi(n).unwrap(), direct, "n = {n}");
        }
    }

    #[test]
    fn euler_phi_matches_sieve_to_1e5() {
        // Independent route: totient sieve over the full documented range.
        let limit = 100_000usize;
        let mut phi: Vec<u64> = (0..=limit as u64).collect();
        for i in 2..=limit {
            if phi[i] == i as u64 {
                for j in (i..=limit).step_by(i) {
                    phi[j] -= phi[j] / i as u64;
                }
            }
        }
        for n in 1..=limit {
            assert_eq!(euler_phi(n as u64).unwrap(), phi[n], "n = {n}");
        }
    }

    #[test]
    fn smallest_prime_divisor_examples() {
        assert_eq!(smallest_prime_divisor(6).unwrap(), 2);
        assert_eq!(smallest_prime_divisor(35).unwrap(), 5);
        assert_eq!(smallest_prime_divisor(13).unwrap(), 13);
        // (q-1)/2 for q = 27.
        assert_eq!(smallest_prime_divisor(13).unwrap(), 13);
        assert!(smallest_prime_divisor(1).is_err());
        assert!(smallest_prime_divisor(0).is_err());
    }

    #[test]
    fn smallest_prime_divisor_agrees_with_factorize() {
        for n in 2..=5000u64 {
            assert_eq!(
                smallest_prime_divisor(n).unwrap(),
                factorize(n).unwrap().factors[0].0,
                "n = {n}"
            );
        }
    }

    #[test]
    fn safe_prime_examples() {
        assert!(is_safe_prime(7).unwrap());
        assert!(!is_safe_prime(13).unwrap());
        assert!(is_safe_prime(59).unwrap());
        assert!(is_safe_prime(5).unwrap());
        assert_eq!(is_safe_prime(12), Err(Error::NotPrime(12)));
        assert!(is_safe_prime(2).is_err());
    }

    #[test]
    fn safe_primes_up_to_200() {
        let safe: Vec<u64> = (3..=200u64)
            .filter(|&p| is_prime(p) && is_safe_prime(p).unwrap())
            .collect();
        assert_eq!(safe, vec![5, 7, 11, 23, 47, 59, 83, 107, 167, 179]);
        // A safe prime's (p-1)/2 is its own smallest prime divisor.
        for &p in &safe {
            let s = (p - 1) / 2;
            assert_eq!(smallest_prime_divisor(s).unwrap(), s);
        }
    }

    #[test]
    fn isqrt_matches_definition_exhaustively() {
        for n in 0..=100_000u64 {
            let k = isqrt(n);
            assert!(k * k <= n, "isqrt({n}) = {k} too large");
            assert!((k + 1) * (k + 1) > n, "isqrt({n}) = {k} too small");
        }
        // Around perfect squares and near the top of the supported range.
        for k in [1u64, 2, 255, 256, 1 << 10, 1 << 20, 1 << 31] {
            let sq = k * k;
            assert_eq!(isqrt(sq - 1), k - 1);
            assert_eq!(isqrt(sq), k);
            assert_eq!(isqrt(sq + 1), k);
        }
        assert_eq!(isqrt(u64::MAX), (1u64 << 32) - 1);
    }

    #[test]
    fn floor_scaled_sqrt_examples() {
        // (1 - 2/(p-1))√p for p = 11: ⌊(8/10)√11⌋ = 2 since 704 = 8²·11 and
        // k²·100 ≤ 704 holds exactly for k ≤ 2.
        assert_eq!(floor_scaled_sqrt(8, 10, 11).unwrap(), 2);
        assert_eq!(floor_scaled_sqrt(1, 1, 16).unwrap(), 4);
        // Even-order variant ⌊(6/7)(1+√8)⌋ for q = 8: (7k-6)² ≤ 288 ⇔ k ≤ 3.
        assert_eq!(floor_scaled_one_plus_sqrt(6, 7, 8).unwrap(), 3);
        assert_eq!(floor_scaled_sqrt(0, 5, 7).unwrap(), 0);
        assert!(floor_scaled_sqrt(1, 0, 7).is_err());
    }

    #[test]
    fn floor_scaled_sqrt_is_the_largest_admissible_k() {
        // Definitional check: k is the greatest integer with k²d² ≤ c²m.
        for c in 0..40u64 {
            for d in 1..40u64 {
                for m in 1..60u64 {
                    let k = floor_scaled_sqrt(c, d, m).unwrap();
                    assert!(k * k * d * d <= c * c * m);
                    assert!((k + 1) * (k + 1) * d * d > c * c * m);

                    let k1 = floor_scaled_one_plus_sqrt(c, d, m).unwrap();
                    // k1·d ≤ c + c√m < (k1+1)·d, squared to stay integral.
                    if k1 * d >= c {
                        let lhs = k1 * d - c;
                        assert!(lhs * lhs <= c * c * m);
                    }
                    let rhs = (k1 + 1) * d - c;
                    assert!(rhs * rhs > c * c * m);
                }
            }
        }
    }

    #[test]
    fn prime_power_decomposition() {
        assert_eq!(prime_power_decompose(59).unwrap(), (59, 1));
        assert_eq!(prime_power_decompose(64).unwrap(), (2, 6));
        assert_eq!(prime_power_decompose(27).unwrap(), (3, 3));
        assert_eq!(prime_power_decompose(121).unwrap(), (11, 2));
        assert!(prime_power_decompose(12).is_err());
        assert!(prime_power_decompose(1).is_err());
        assert!(prime_power_decompose(0).is_err());
    }
}

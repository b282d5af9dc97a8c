//! Integer building blocks: primality, factorization, p-adic valuations,
//! digit sums, and multiplicative orders over arbitrary-precision naturals.
//!
//! Factorization uses trial division by a shared sieve of the primes below
//! one million, then Pollard's rho with Miller–Rabin certification
//! (deterministic below 2^64, fixed-witness probable-prime above).
//! Multiplicative orders are never found by linear search: the order is
//! assembled prime power by prime power, lifting the order mod `p` with
//! the valuation of `a^d − 1` for odd `p` and by direct squaring inside
//! the 2-group for `p = 2`.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::{Error, Result};

const SIEVE_LIMIT: u32 = 1_000_000;

/// All primes below one million, built once and thereafter read-only.
pub fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let limit = SIEVE_LIMIT as usize;
        let mut composite = vec![false; limit + 1];
        let mut primes = Vec::with_capacity(78_498);
        for p in 2..=limit {
            if composite[p] {
                continue;
            }
            primes.push(p as u32);
            let mut q = p * p;
            while q <= limit {
                composite[q] = true;
                q += p;
            }
        }
        primes
    })
}

fn mul_mod_u64(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

fn pow_mod_u64(mut a: u64, mut e: u64, n: u64) -> u64 {
    if n == 1 {
        return 0;
    }
    let mut acc = 1u64;
    a %= n;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod_u64(acc, a, n);
        }
        a = mul_mod_u64(a, a, n);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for the full u64 range.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    // This witness set decides primality for every n < 2^64.
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primality test: deterministic below 2^64, a fixed-witness strong
/// probable-prime test (25 witnesses) above.
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(v) = n.to_u64() {
        return is_prime_u64(v);
    }
    for &p in &small_primes()[..100] {
        if (n % p).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().expect("n > 1");
    let d = &n_minus_1 >> s;
    'witness: for &a in &small_primes()[..25] {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Pollard rho (Floyd cycle) for odd composite n; returns a nontrivial divisor.
fn rho_u64(n: u64) -> u64 {
    debug_assert!(n > 3 && n % 2 == 1 && !is_prime_u64(n));
    let mut c = 1u64;
    loop {
        let step = |x: u64| {
            let y = mul_mod_u64(x, x, n);
            if y + c >= n {
                y + c - n
            } else {
                y + c
            }
        };
        let mut x = 2u64;
        let mut y = 2u64;
        loop {
            x = step(x);
            y = step(step(y));
            let diff = x.abs_diff(y);
            if diff == 0 {
                break;
            }
            let d = diff.gcd(&n);
            if d > 1 {
                return d;
            }
        }
        c += 1;
    }
}

/// Nontrivial decomposition `n = r^k` with the smallest prime `k`, if
/// one exists. Rho degrades badly on perfect powers of large primes
/// (`n = p²` needs ~√p iterations), so powers are peeled off first.
fn perfect_power(n: &BigUint) -> Option<(BigUint, u32)> {
    for &k in small_primes() {
        if u64::from(k) > n.bits() {
            return None;
        }
        let r = n.nth_root(k);
        if r.pow(k) == *n {
            return Some((r, k));
        }
    }
    None
}

fn rho_big(n: &BigUint) -> BigUint {
    debug_assert!(!is_prime(n));
    let one = BigUint::one();
    let mut c = 1u32;
    loop {
        let cb = BigUint::from(c);
        let step = |x: &BigUint| (x * x + &cb) % n;
        let mut x = BigUint::from(2u32);
        let mut y = x.clone();
        loop {
            x = step(&x);
            y = step(&step(&y));
            if x == y {
                break;
            }
            let diff = if x > y { &x - &y } else { &y - &x };
            let d = diff.gcd(n);
            if d > one {
                return d;
            }
        }
        c += 1;
    }
}

fn factor_hard_u64(n: u64, out: &mut BTreeMap<BigUint, u32>) {
    // Every prime factor of n exceeds the sieve limit here.
    if n == 1 {
        return;
    }
    if is_prime_u64(n) {
        *out.entry(BigUint::from(n)).or_insert(0) += 1;
        return;
    }
    let d = rho_u64(n);
    factor_hard_u64(d, out);
    factor_hard_u64(n / d, out);
}

fn factor_u64_into(mut n: u64, out: &mut BTreeMap<BigUint, u32>) {
    for &p in small_primes() {
        let p = p as u64;
        if p * p > n {
            break;
        }
        while n.is_multiple_of(p) {
            *out.entry(BigUint::from(p)).or_insert(0) += 1;
            n /= p;
        }
    }
    if n > 1 {
        if n <= (SIEVE_LIMIT as u64) * (SIEVE_LIMIT as u64) || is_prime_u64(n) {
            // Below the square of the sieve limit a survivor must be prime.
            *out.entry(BigUint::from(n)).or_insert(0) += 1;
        } else {
            factor_hard_u64(n, out);
        }
    }
}

fn factor_big_into(n: BigUint, out: &mut BTreeMap<BigUint, u32>) {
    let mut stack = vec![n];
    while let Some(mut n) = stack.pop() {
        if n.is_one() {
            continue;
        }
        if let Some(v) = n.to_u64() {
            factor_u64_into(v, out);
            continue;
        }
        for &p in small_primes() {
            let pb = BigUint::from(p);
            loop {
                let (q, r) = n.div_rem(&pb);
                if !r.is_zero() {
                    break;
                }
                *out.entry(pb.clone()).or_insert(0) += 1;
                n = q;
            }
            if n.to_u64().is_some() {
                break;
            }
        }
        if let Some(v) = n.to_u64() {
            factor_u64_into(v, out);
        } else if is_prime(&n) {
            *out.entry(n).or_insert(0) += 1;
        } else if let Some((r, k)) = perfect_power(&n) {
            for _ in 0..k {
                stack.push(r.clone());
            }
        } else {
            let d = rho_big(&n);
            stack.push(&n / &d);
            stack.push(d);
        }
    }
}

/// A prime factorization with strictly increasing primes and positive
/// exponents. The factorization of 1 is empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    factors: Vec<(BigUint, u32)>,
}

impl Factorization {
    /// `(prime, exponent)` pairs in strictly increasing prime order.
    pub fn factors(&self) -> &[(BigUint, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = &BigUint> {
        self.factors.iter().map(|(p, _)| p)
    }

    /// Multiplies the factorization back together.
    pub fn product(&self) -> BigUint {
        self.factors
            .iter()
            .fold(BigUint::one(), |acc, (p, e)| acc * p.pow(*e))
    }

    /// Exponent of `p`, zero when `p` does not divide the value.
    pub fn exponent_of(&self, p: &BigUint) -> u32 {
        self.factors
            .iter()
            .find(|(q, _)| q == p)
            .map_or(0, |(_, e)| *e)
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|(_, e)| *e == 1)
    }

    /// Product of the distinct primes.
    pub fn radical(&self) -> BigUint {
        self.factors
            .iter()
            .fold(BigUint::one(), |acc, (p, _)| acc * p)
    }
}

/// Full prime factorization of `n ≥ 1`.
pub fn factorize(n: &BigUint) -> Result<Factorization> {
    if n.is_zero() {
        return Err(Error::ZeroArgument("factorize"));
    }
    let mut map = BTreeMap::new();
    factor_big_into(n.clone(), &mut map);
    Ok(Factorization {
        factors: map.into_iter().collect(),
    })
}

/// Product of the distinct primes dividing `n`; `radical(1) = 1`.
pub fn radical(n: &BigUint) -> Result<BigUint> {
    Ok(factorize(n)?.radical())
}

/// Largest prime factor of `n`, with the convention that it is 1 for `n = 1`.
pub fn largest_prime_factor(n: &BigUint) -> Result<BigUint> {
    let f = factorize(n)?;
    Ok(f.factors
        .last()
        .map_or_else(BigUint::one, |(p, _)| p.clone()))
}

/// p-adic valuation: the largest `e` with `p^e | n`. Requires `p ≥ 2`
/// (prime for the usual interpretation) and `n ≥ 1`.
pub fn nu(p: &BigUint, n: &BigUint) -> Result<u64> {
    if p < &BigUint::from(2u32) {
        return Err(Error::ArgumentBelowMinimum("nu: p", 2));
    }
    if n.is_zero() {
        return Err(Error::ZeroArgument("nu: n"));
    }
    if p == &BigUint::from(2u32) {
        return Ok(n.trailing_zeros().unwrap_or(0));
    }
    let mut total = 0u64;
    let mut cur = n.clone();
    loop {
        let (q, r) = cur.div_rem(p);
        if !r.is_zero() {
            return Ok(total);
        }
        cur = q;
        total += 1;
        // Strip p^(2^i) chunks so the division count stays logarithmic in
        // the valuation; large valuations occur for huge products.
        let mut pw = p.clone();
        let mut exp = 1u64;
        loop {
            let sq = &pw * &pw;
            let (q, r) = cur.div_rem(&sq);
            if r.is_zero() {
                cur = q;
                total += 2 * exp;
                pw = sq;
                exp *= 2;
            } else {
                break;
            }
        }
    }
}

/// The `m`-part of `A`: the product of `p^{ν_p(A)}` over the primes `p`
/// dividing `m`. Only `m` is factored, never `A`.
pub fn m_part(a: &BigUint, m: &BigUint) -> Result<BigUint> {
    if a.is_zero() {
        return Err(Error::ZeroArgument("m_part: A"));
    }
    if m < &BigUint::from(2u32) {
        return Err(Error::ArgumentBelowMinimum("m_part: m", 2));
    }
    let mf = factorize(m)?;
    let mut out = BigUint::one();
    for p in mf.primes() {
        let e = nu(p, a)?;
        let e = u32::try_from(e).expect("valuation fits u32");
        out *= p.pow(e);
    }
    Ok(out)
}

/// `A` divided by its `m`-part: the largest divisor of `A` coprime to `m`.
pub fn coprime_part(a: &BigUint, m: &BigUint) -> Result<BigUint> {
    Ok(a / m_part(a, m)?)
}

/// Sum of the base-`b` digits of `n` (`b ≥ 2`).
pub fn digit_sum(n: &BigUint, base: &BigUint) -> Result<BigUint> {
    if base < &BigUint::from(2u32) {
        return Err(Error::ArgumentBelowMinimum("digit_sum: base", 2));
    }
    let mut sum = BigUint::zero();
    let mut cur = n.clone();
    while !cur.is_zero() {
        let (q, r) = cur.div_rem(base);
        sum += r;
        cur = q;
    }
    Ok(sum)
}

/// Valuation of `n!` at the prime `p`, as the finite sum `Σ_{i≥1} ⌊n/p^i⌋`.
/// Agrees with `(n − digit_sum(n, p)) / (p − 1)`.
pub fn factorial_valuation(n: &BigUint, p: &BigUint) -> Result<BigUint> {
    if p < &BigUint::from(2u32) {
        return Err(Error::ArgumentBelowMinimum("factorial_valuation: p", 2));
    }
    let mut total = BigUint::zero();
    let mut q = n / p;
    while !q.is_zero() {
        total += &q;
        q = &q / p;
    }
    Ok(total)
}

/// Valuation of the central binomial coefficient `C(2n, n)` at `p`, via
/// `ν_p((2n)!) − 2 ν_p(n!)`; equals the number of carries when adding
/// `n + n` in base `p`.
pub fn binomial_central_valuation(n: &BigUint, p: &BigUint) -> Result<BigUint> {
    if n.is_zero() {
        return Err(Error::ZeroArgument("binomial_central_valuation: n"));
    }
    let two_n = n << 1;
    let big = factorial_valuation(&two_n, p)?;
    let small = factorial_valuation(n, p)?;
    Ok(big - (small << 1))
}

/// Order of `a` modulo an odd prime `p` (divisor descent from `p − 1`).
fn order_mod_odd_prime(a: &BigUint, p: &BigUint) -> Result<BigUint> {
    let phi = p - 1u32;
    let f = factorize(&phi)?;
    let mut e = phi.clone();
    for r in f.primes() {
        loop {
            let (q, rem) = e.div_rem(r);
            if !rem.is_zero() || !a.modpow(&q, p).is_one() {
                break;
            }
            e = q;
        }
    }
    Ok(e)
}

/// Order of `a` modulo `p^k` for prime `p`, `k ≥ 1`, `gcd(a, p) = 1`.
///
/// For odd `p` the order mod `p` lifts by `p^{max(0, k−t)}` where `t` is
/// the valuation `ν_p(a^d − 1)`; modulo powers of 2 every unit has
/// 2-power order, found by direct squaring.
pub fn order_mod_prime_power(a: &BigUint, p: &BigUint, k: u32) -> Result<BigUint> {
    if k == 0 {
        return Err(Error::ZeroArgument("order_mod_prime_power: k"));
    }
    let pk = p.pow(k);
    let a_red = a % &pk;
    if !a_red.gcd(&pk).is_one() {
        return Err(Error::NotCoprime {
            a: a.clone(),
            modulus: pk,
        });
    }
    let two = BigUint::from(2u32);
    if *p == two {
        let mut y = a_red;
        let mut ord = BigUint::one();
        while !y.is_one() {
            y = (&y * &y) % &pk;
            ord <<= 1;
        }
        return Ok(ord);
    }
    let d = order_mod_odd_prime(&a_red, p)?;
    if k == 1 {
        return Ok(d);
    }
    let x = a_red.modpow(&d, &pk);
    if x.is_one() {
        // ν_p(a^d − 1) ≥ k, so the order does not grow up to p^k.
        return Ok(d);
    }
    let t = nu(p, &(x - 1u32))?;
    debug_assert!((1..k as u64).contains(&t));
    Ok(d * p.pow(k - t as u32))
}

/// Multiplicative order of `a` modulo `q ≥ 1`, with the convention that
/// the order modulo 1 is 1. Requires `gcd(a, q) = 1`. Computed as the
/// lcm of the orders modulo the prime powers of `q`, never by linear
/// search.
pub fn multiplicative_order(a: &BigUint, modulus: &BigUint) -> Result<BigUint> {
    if modulus.is_zero() {
        return Err(Error::ZeroArgument("multiplicative_order: modulus"));
    }
    if modulus.is_one() {
        return Ok(BigUint::one());
    }
    if !a.gcd(modulus).is_one() {
        return Err(Error::NotCoprime {
            a: a.clone(),
            modulus: modulus.clone(),
        });
    }
    let f = factorize(modulus)?;
    let mut ord = BigUint::one();
    for (p, k) in f.factors() {
        ord = ord.lcm(&order_mod_prime_power(a, p, *k)?);
    }
    Ok(ord)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(x: u64) -> BigUint {
        BigUint::from(x)
    }

    /// Independent factorization oracle: plain trial division.
    fn trial_factor(mut n: u64) -> Vec<(u64, u32)> {
        let mut out = Vec::new();
        let mut p = 2u64;
        while p * p <= n {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            if e > 0 {
                out.push((p, e));
            }
            p += 1;
        }
        if n > 1 {
            out.push((n, 1));
        }
        out
    }

    /// Independent order oracle: scan the divisors of λ-multiple φ(q)
    /// upward; valid because any exponent annihilating `a` is a multiple
    /// of the order.
    fn divisor_order(a: u64, q: u64) -> u64 {
        let phi = {
            let mut phi = q;
            for (p, _) in trial_factor(q) {
                phi = phi / p * (p - 1);
            }
            phi
        };
        let mut divisors = Vec::new();
        let mut d = 1u64;
        while d * d <= phi {
            if phi % d == 0 {
                divisors.push(d);
                divisors.push(phi / d);
            }
            d += 1;
        }
        divisors.sort_unstable();
        for e in divisors {
            if pow_mod_u64(a, e, q) == 1 {
                return e;
            }
        }
        unreachable!("order divides phi");
    }

    #[test]
    fn sieve_counts_primes_below_a_million() {
        let primes = small_primes();
        assert_eq!(primes.len(), 78_498);
        assert_eq!(primes[0], 2);
        assert_eq!(*primes.last().unwrap(), 999_983);
    }

    #[test]
    fn primality_spot_checks() {
        assert!(is_prime_u64(2));
        assert!(!is_prime_u64(1));
        assert!(!is_prime_u64(561), "Carmichael number");
        assert!(is_prime_u64((1 << 61) - 1), "Mersenne prime 2^61-1");
        assert!(!is_prime_u64(u64::MAX));
        assert!(is_prime(&big(1_000_000_007)));
        // 2^89 − 1 is a Mersenne prime; exercises the BigUint branch.
        let m89 = (BigUint::one() << 89usize) - 1u32;
        assert!(is_prime(&m89));
        assert!(!is_prime(&(&m89 * &m89)));
    }

    #[test]
    fn factorize_matches_trial_division() {
        for n in [
            1u64,
            2,
            360,
            1 << 32,
            999_983,
            1_000_003,
            600_851_475_143,
            9_007_199_254_740_991,
        ] {
            let f = factorize(&big(n)).unwrap();
            let expected: Vec<(BigUint, u32)> = trial_factor(n)
                .into_iter()
                .map(|(p, e)| (big(p), e))
                .collect();
            assert_eq!(f.factors(), &expected[..], "n = {n}");
            assert_eq!(f.product(), big(n));
        }
    }

    #[test]
    fn factorize_named_values() {
        let f = factorize(&big(360)).unwrap();
        assert_eq!(f.factors(), &[(big(2), 3), (big(3), 2), (big(5), 1)]);

        assert!(factorize(&big(1)).unwrap().factors().is_empty());
        assert!(factorize(&BigUint::zero()).is_err());

        // Product of two primes beyond the sieve limit forces the rho path.
        let p = big(1_000_003);
        let q = big(1_000_033);
        let f = factorize(&(&p * &q)).unwrap();
        assert_eq!(f.factors(), &[(p, 1), (q, 1)]);

        // Big path: square of a 89-bit prime.
        let m89 = (BigUint::one() << 89usize) - 1u32;
        let f = factorize(&(&m89 * &m89)).unwrap();
        assert_eq!(f.factors(), &[(m89, 2)]);
    }

    #[test]
    fn radical_and_largest_prime_factor() {
        assert_eq!(radical(&big(360)).unwrap(), big(30));
        assert_eq!(radical(&big(1)).unwrap(), big(1));
        assert_eq!(largest_prime_factor(&big(1)).unwrap(), big(1));
        assert_eq!(largest_prime_factor(&big(360)).unwrap(), big(5));
        assert_eq!(
            largest_prime_factor(&(big(97) * big(89) * big(89))).unwrap(),
            big(97)
        );
    }

    #[test]
    fn valuations() {
        assert_eq!(nu(&big(2), &big(96)).unwrap(), 5);
        assert_eq!(nu(&big(5), &big(80)).unwrap(), 1);
        assert_eq!(nu(&big(7), &big(10)).unwrap(), 0);
        assert_eq!(nu(&big(3), &big(3).pow(137)).unwrap(), 137);
        assert!(nu(&big(2), &BigUint::zero()).is_err());
        assert!(nu(&big(1), &big(5)).is_err());
    }

    #[test]
    fn m_part_and_coprime_part() {
        assert_eq!(m_part(&big(120), &big(6)).unwrap(), big(24));
        assert_eq!(coprime_part(&big(120), &big(6)).unwrap(), big(5));
        assert_eq!(m_part(&big(7), &big(10)).unwrap(), big(1));
        assert_eq!(coprime_part(&big(40), &big(2)).unwrap(), big(5));
        // A never gets factored: a huge prime times a power of 3.
        let huge = ((BigUint::one() << 127usize) - 1u32) * big(3).pow(4);
        assert_eq!(m_part(&huge, &big(3)).unwrap(), big(81));
    }

    #[test]
    fn digit_sums() {
        assert_eq!(digit_sum(&big(255), &big(2)).unwrap(), big(8));
        assert_eq!(digit_sum(&big(12345), &big(10)).unwrap(), big(15));
        assert_eq!(digit_sum(&BigUint::zero(), &big(7)).unwrap(), big(0));
        assert!(digit_sum(&big(3), &big(1)).is_err());
    }

    #[test]
    fn legendre_formula() {
        assert_eq!(factorial_valuation(&big(10), &big(2)).unwrap(), big(8));
        assert_eq!(factorial_valuation(&big(100), &big(5)).unwrap(), big(24));
        assert_eq!(factorial_valuation(&big(5), &big(7)).unwrap(), big(0));
        // Digit-sum identity (p − 1) ν_p(n!) = n − s_p(n) on a sweep.
        for n in 0u64..300 {
            for p in [2u64, 3, 5, 7] {
                let lhs = factorial_valuation(&big(n), &big(p)).unwrap() * big(p - 1);
                let rhs = big(n) - digit_sum(&big(n), &big(p)).unwrap();
                assert_eq!(lhs, rhs, "n = {n}, p = {p}");
            }
        }
    }

    #[test]
    fn legendre_matches_literal_factorials() {
        let mut fact = BigUint::one();
        for n in 1u64..=120 {
            fact *= big(n);
            for p in [2u64, 3, 5] {
                assert_eq!(
                    factorial_valuation(&big(n), &big(p)).unwrap(),
                    big(nu(&big(p), &fact).unwrap()),
                    "n = {n}, p = {p}"
                );
            }
        }
    }

    #[test]
    fn central_binomial_valuation() {
        // C(6, 3) = 20 = 2^2 · 5.
        assert_eq!(binomial_central_valuation(&big(3), &big(2)).unwrap(), big(2));
        assert_eq!(binomial_central_valuation(&big(3), &big(5)).unwrap(), big(1));
        // Literal coefficients for a window.
        let mut fact = vec![BigUint::one()];
        for k in 1u64..=60 {
            let last = fact.last().unwrap().clone();
            fact.push(last * big(k));
        }
        for n in 1usize..=30 {
            let c = &fact[2 * n] / (&fact[n] * &fact[n]);
            for p in [2u64, 3, 5] {
                assert_eq!(
                    binomial_central_valuation(&big(n as u64), &big(p)).unwrap(),
                    big(nu(&big(p), &c).unwrap()),
                    "n = {n}, p = {p}"
                );
            }
        }
    }

    #[test]
    fn orders_against_divisor_oracle() {
        assert_eq!(multiplicative_order(&big(10), &big(7)).unwrap(), big(6));
        assert_eq!(multiplicative_order(&big(3), &big(40)).unwrap(), big(4));
        assert_eq!(multiplicative_order(&big(2), &big(7)).unwrap(), big(3));
        assert_eq!(multiplicative_order(&big(5), &big(1)).unwrap(), big(1));
        assert_eq!(divisor_order(3, 40), 4);
        for q in 2u64..200 {
            for a in 2u64..30 {
                if a.gcd(&q) != 1 {
                    continue;
                }
                assert_eq!(
                    multiplicative_order(&big(a), &big(q)).unwrap(),
                    big(divisor_order(a, q)),
                    "a = {a}, q = {q}"
                );
            }
        }
    }

    #[test]
    fn order_rejects_common_factors() {
        assert!(matches!(
            multiplicative_order(&big(6), &big(40)),
            Err(Error::NotCoprime { .. })
        ));
    }

    #[test]
    fn prime_power_orders() {
        // ord_7(2) = 3 and 2^3 − 1 = 7 has ν_7 = 1, so the order lifts to 21 mod 49.
        assert_eq!(order_mod_prime_power(&big(2), &big(7), 2).unwrap(), big(21));
        // Powers of two: ord_{2^10}(3) = 2^8.
        assert_eq!(order_mod_prime_power(&big(3), &big(2), 10).unwrap(), big(256));
        assert_eq!(order_mod_prime_power(&big(1), &big(2), 6).unwrap(), big(1));
        assert_eq!(order_mod_prime_power(&big(7), &big(2), 1).unwrap(), big(1));
        // Composite modulus assembled by lcm: 2^10 · 7 for a = 3.
        assert_eq!(
            multiplicative_order(&big(3), &(big(1024) * big(7))).unwrap(),
            big(768),
            "lcm(256, 6)"
        );
        // Cross-check the lift against the divisor oracle on p^k ranges.
        for p in [3u64, 5, 7, 11, 13] {
            for k in 1u32..=4 {
                let pk = p.pow(k);
                for a in [2u64, 3, 5, 10, 12] {
                    if a % p == 0 {
                        continue;
                    }
                    assert_eq!(
                        order_mod_prime_power(&big(a), &big(p), k).unwrap(),
                        big(divisor_order(a, pk)),
                        "a = {a}, p = {p}, k = {k}"
                    );
                }
            }
        }
    }
}

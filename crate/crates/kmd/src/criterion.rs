//! The fixed-prime obstruction: why `1/Q` avoids a missing-digit set
//! once one prime's share of `Q` outruns the multiplicative order of the
//! base.
//!
//! For a digit set `K_{m,D}` there is an explicit constant `c_{m,D}` such
//! that any reduced `r/Q ∈ K_{m,D}` with `gcd(m·r, Q) = 1` satisfies
//! `ord_Q(m) ≤ c_{m,D} · ord_{rad(Q)}(m)`. Fixing an auxiliary prime
//! `p0 ∤ m` and writing `t` for the lifting overhead of `p0` relative to
//! `m`, the inequality collapses to a single-prime form: membership
//! forces
//!
//! ```text
//! p0^(ν_{p0}(Q) − t − ν_{p0}(ord_{rad(Q)}(m))) ≤ c_{m,D}.
//! ```
//!
//! Everything here is decided in exact integer/rational arithmetic — no
//! floating point, no logarithms. Exponent comparisons against
//! potentially enormous right-hand sides go through
//! [`prime_power_exceeds`], which uses bit-length bounds to shortcut the
//! absurd cases and exact products otherwise.
//!
//! Two sufficient cutoffs let a verification sweep stop factoring:
//! *structural*, `p0^(⌈α⌉ − t − γ) > c` where `α` lower-bounds
//! `ν_{p0}(Q)` and `γ` upper-bounds `ν_{p0}(ord_{rad(Q)}(m))`; and
//! *largest-prime-factor*, `p0^(⌈α⌉ − t) > c·(β − 1)` where every prime
//! factor of `Q` is below `β`.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::expansion::MissingDigitSet;
use crate::numtheory::{is_prime_u64, multiplicative_order, nu, Factorization};
use crate::{Error, Result};

/// The membership constant `c_{m,D} = 2(m−1) · min{1, |D|/(m−|D|)}` as an
/// exact rational. It is at least 4 for every admissible digit set, and
/// exactly 4 for every two-digit subset of base 3.
pub fn korobov_constant(set: &MissingDigitSet) -> BigRational {
    let m = BigInt::from(set.base());
    let d = BigInt::from(set.size());
    let two_m1 = BigRational::from_integer(2 * (&m - 1));
    let ratio = BigRational::new(d.clone(), &m - &d);
    if ratio < BigRational::one() {
        two_m1 * ratio
    } else {
        two_m1
    }
}

/// The lifting overhead `t(m, p0)` of a prime `p0 ∤ m`: for odd `p0` it
/// is `ν_{p0}(m^d − 1)` with `d = ord_{p0}(m)`, and for `p0 = 2` it is
/// `ν_2(m² − 1) − 1`. Once `ν_{p0}(Q) > t`, every further power of `p0`
/// in `Q` multiplies `ord_Q(m)` by `p0`. Always at least 1.
///
/// `m^d − 1` is never formed: the valuation is read off a ladder of
/// modular exponentiations against growing powers of `p0`.
pub fn overhead(base: u32, p0: u64) -> Result<u64> {
    if base < 3 {
        return Err(Error::BaseTooSmall(base));
    }
    if !is_prime_u64(p0) {
        return Err(Error::AuxiliaryPrimeComposite(p0));
    }
    let m = BigUint::from(base);
    let p = BigUint::from(p0);
    if (&m % &p).is_zero() {
        return Err(Error::AuxiliaryPrimeDividesBase { p0, base });
    }
    if p0 == 2 {
        let sq = &m * &m - 1u32;
        return Ok(nu(&BigUint::from(2u32), &sq)? - 1);
    }
    let d = multiplicative_order(&m, &p)?;
    // Largest e with m^d ≡ 1 (mod p0^e).
    let mut t = 1u64;
    loop {
        let modulus = p.pow(u32::try_from(t + 1).expect("overhead exponent fits u32"));
        if m.modpow(&d, &modulus).is_one() {
            t += 1;
        } else {
            return Ok(t);
        }
    }
}

/// A digit set together with a chosen auxiliary prime and the derived
/// constants the single-prime inequality needs.
#[derive(Clone, Debug)]
pub struct ObstructionParams {
    base: u32,
    p0: u64,
    overhead: u64,
    korobov: BigRational,
}

impl ObstructionParams {
    pub fn new(set: &MissingDigitSet, p0: u64) -> Result<Self> {
        let overhead = overhead(set.base(), p0)?;
        Ok(Self {
            base: set.base(),
            p0,
            overhead,
            korobov: korobov_constant(set),
        })
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn p0(&self) -> u64 {
        self.p0
    }

    pub fn overhead(&self) -> u64 {
        self.overhead
    }

    pub fn korobov(&self) -> &BigRational {
        &self.korobov
    }
}

/// The quantities entering the single-prime inequality for one `Q`,
/// plus the verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionReport {
    /// Whether `p0^(ν − t − ν_rad) ≤ c` — i.e. whether membership of any
    /// admissible `r/Q` is still possible as far as this prime can tell.
    pub holds: bool,
    /// `ν = ν_{p0}(Q)`.
    pub valuation: u64,
    /// `ν_rad = ν_{p0}(ord_{rad(Q)}(m))`.
    pub radical_order_valuation: u64,
    /// The overhead `t` used.
    pub overhead: u64,
}

/// Evaluates the single-prime inequality for a `Q ≥ 1` coprime to the
/// base, given its factorization. `holds = false` certifies that no
/// reduced `r/Q` with `gcd(m·r, Q) = 1` lies in the digit set.
pub fn obstruction_holds_factored(
    qf: &Factorization,
    params: &ObstructionParams,
) -> Result<ObstructionReport> {
    let m = BigUint::from(params.base);
    let q = qf.product();
    if !q.gcd(&m).is_one() {
        return Err(Error::NotCoprime {
            a: m,
            modulus: q,
        });
    }
    let p0_big = BigUint::from(params.p0);
    let valuation = u64::from(qf.exponent_of(&p0_big));
    let radical = qf.radical();
    let ord = multiplicative_order(&m, &radical)?;
    let radical_order_valuation = nu(&p0_big, &ord)?;
    let exponent = BigInt::from(valuation)
        - BigInt::from(params.overhead)
        - BigInt::from(radical_order_valuation);
    let holds = !prime_power_exceeds(params.p0, &exponent, &params.korobov);
    Ok(ObstructionReport {
        holds,
        valuation,
        radical_order_valuation,
        overhead: params.overhead,
    })
}

/// [`obstruction_holds_factored`] after factoring `Q` from scratch.
pub fn obstruction_holds(q: &BigUint, params: &ObstructionParams) -> Result<ObstructionReport> {
    let qf = crate::numtheory::factorize(q)?;
    obstruction_holds_factored(&qf, params)
}

/// The structural cutoff: `p0^(⌈α⌉ − t − γ) > c`, where `α` lower-bounds
/// `ν_{p0}(Q)` and `γ` upper-bounds `ν_{p0}(ord_{rad(Q)}(m))`. When it
/// returns `true`, the single-prime inequality fails for every `Q`
/// meeting those bounds — non-membership without factoring `Q`. Taking
/// the integer ceiling of `α` is sound because valuations are integers.
pub fn structural_cutoff_holds(
    alpha: &BigRational,
    gamma: u64,
    params: &ObstructionParams,
) -> bool {
    let exponent = alpha.ceil().to_integer()
        - BigInt::from(params.overhead)
        - BigInt::from(gamma);
    prime_power_exceeds(params.p0, &exponent, &params.korobov)
}

/// The largest-prime-factor cutoff: `p0^(⌈α⌉ − t) > c·(β − 1)`, where
/// every prime factor of `Q` is at most `β ≥ 2`. Since
/// `ord_{rad(Q)}(m) < β^(number of primes)` is useless directly, the
/// useful fact is `ord_p(m) ≤ p − 1 ≤ β − 1` per prime and
/// `ν_{p0}(lcm) ≤ max_p ν_{p0}(ord_p(m))`, so `p0^{ν_rad} ≤ β − 1`.
pub fn lpf_cutoff_holds(
    alpha: &BigRational,
    beta: &BigUint,
    params: &ObstructionParams,
) -> Result<bool> {
    if beta < &BigUint::from(2u32) {
        return Err(Error::BoundBelowTwo(beta.to_string()));
    }
    let exponent = alpha.ceil().to_integer() - BigInt::from(params.overhead);
    let rhs = params.korobov.clone()
        * BigRational::from_integer(BigInt::from(beta.clone()) - BigInt::one());
    Ok(prime_power_exceeds(params.p0, &exponent, &rhs))
}

/// Decides `p0^exponent > rhs` exactly for `rhs ≥ 1`.
///
/// Non-positive exponents give `p0^exponent ≤ 1 ≤ rhs`, hence `false`.
/// A positive exponent at least the bit length of `rhs`'s numerator
/// gives `p0^e ≥ 2^e > numerator ≥ rhs`, hence `true` without forming
/// the power. The remaining band is decided by the exact cross product
/// `p0^e · denominator > numerator`.
pub fn prime_power_exceeds(p0: u64, exponent: &BigInt, rhs: &BigRational) -> bool {
    debug_assert!(p0 >= 2);
    debug_assert!(rhs >= &BigRational::one(), "shortcut logic needs rhs ≥ 1");
    if exponent.sign() != Sign::Plus {
        return false;
    }
    let numer = rhs
        .numer()
        .to_biguint()
        .expect("rhs ≥ 1 has positive numerator");
    let denom = rhs
        .denom()
        .to_biguint()
        .expect("reduced rational has positive denominator");
    let Some(e) = exponent.to_u64() else {
        return true; // beyond u64: certainly beyond the numerator's bits
    };
    if e >= numer.bits() {
        return true;
    }
    let power = BigUint::from(p0).pow(u32::try_from(e).expect("exponent below bit length"));
    power * denom > numer
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::factorize;

    fn big(x: u64) -> BigUint {
        BigUint::from(x)
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn cantor() -> MissingDigitSet {
        MissingDigitSet::new(3, [0, 2]).unwrap()
    }

    #[test]
    fn korobov_values() {
        assert_eq!(korobov_constant(&cantor()), rat(4, 1));
        // Both two-digit subsets of base 3 give the same constant.
        let s = MissingDigitSet::new(3, [0, 1]).unwrap();
        assert_eq!(korobov_constant(&s), rat(4, 1));
        // Base 10 with two digits: 18 · 2/8 = 9/2.
        let s = MissingDigitSet::new(10, [0, 1]).unwrap();
        assert_eq!(korobov_constant(&s), rat(9, 2));
        // Base 4 with two digits: min is exactly 1, so 2(m−1) = 6.
        let s = MissingDigitSet::new(4, [1, 3]).unwrap();
        assert_eq!(korobov_constant(&s), rat(6, 1));
        // Base 10 with nine digits: the min clamps at 1.
        let s = MissingDigitSet::new(10, 0..9).unwrap();
        assert_eq!(korobov_constant(&s), rat(18, 1));
    }

    #[test]
    fn korobov_at_least_four_sweep() {
        // Exhaustive over all admissible (m, |D|) for m ≤ 40: the
        // constant depends only on the sizes.
        for m in 3u32..=40 {
            for size in 2..m {
                let set = MissingDigitSet::new(m, 0..size).unwrap();
                assert!(
                    korobov_constant(&set) >= rat(4, 1),
                    "m = {m}, |D| = {size}"
                );
            }
        }
    }

    #[test]
    fn overhead_values() {
        assert_eq!(overhead(3, 2).unwrap(), 2); // ν₂(3²−1) − 1 = 3 − 1
        assert_eq!(overhead(3, 5).unwrap(), 1); // ν₅(3⁴−1) = ν₅(80)
        assert_eq!(overhead(10, 3).unwrap(), 2); // ν₃(10−1) = ν₃(9)
        assert_eq!(overhead(3, 13).unwrap(), 1); // ν₁₃(3³−1) = ν₁₃(26)
        // A genuinely lifted odd case: 3⁵ − 1 = 242 = 2 · 11².
        assert_eq!(overhead(3, 11).unwrap(), 2);
        // Wieferich-style check for p0 = 2 with another base:
        // ν₂(5² − 1) − 1 = ν₂(24) − 1 = 2.
        assert_eq!(overhead(5, 2).unwrap(), 2);
    }

    #[test]
    fn overhead_validation() {
        assert!(matches!(
            overhead(3, 4),
            Err(Error::AuxiliaryPrimeComposite(4))
        ));
        assert!(matches!(
            overhead(3, 3),
            Err(Error::AuxiliaryPrimeDividesBase { p0: 3, base: 3 })
        ));
        assert!(matches!(overhead(2, 5), Err(Error::BaseTooSmall(2))));
    }

    #[test]
    fn overhead_always_positive_sweep() {
        for base in 3u32..=12 {
            for p0 in [2u64, 3, 5, 7, 11, 13, 17] {
                if (base as u64).is_multiple_of(p0) {
                    continue;
                }
                assert!(overhead(base, p0).unwrap() >= 1, "m = {base}, p0 = {p0}");
            }
        }
    }

    #[test]
    fn obstruction_verdicts() {
        let params = ObstructionParams::new(&cantor(), 2).unwrap();
        assert_eq!(params.overhead(), 2);

        // Q = 2^10 · 7: rad = 14, ord₁₄(3) = 6, ν₂(6) = 1, so the
        // left side is 2^(10−2−1) = 128 > 4: membership impossible.
        let report = obstruction_holds(&(big(1024) * big(7)), &params).unwrap();
        assert!(!report.holds);
        assert_eq!(report.valuation, 10);
        assert_eq!(report.radical_order_valuation, 1);

        // Q = 40 = 2³·5: rad = 10, ord₁₀(3) = 4, ν₂(4) = 2, left side
        // 2^(3−2−2) < 1 ≤ 4: no obstruction (and indeed 1/40 is a member).
        let report = obstruction_holds(&big(40), &params).unwrap();
        assert!(report.holds);
        assert_eq!(report.valuation, 3);
        assert_eq!(report.radical_order_valuation, 2);

        // Q = 4: left side 2^(2−2−0) = 1 ≤ 4.
        let report = obstruction_holds(&big(4), &params).unwrap();
        assert!(report.holds);

        // Q sharing a factor with the base is rejected.
        assert!(obstruction_holds(&big(6), &params).is_err());

        // Q = 1 is trivially unobstructed.
        let report = obstruction_holds(&big(1), &params).unwrap();
        assert!(report.holds);
        assert_eq!(report.valuation, 0);
    }

    #[test]
    fn obstruction_factored_matches_scratch() {
        let params = ObstructionParams::new(&cantor(), 2).unwrap();
        for q in [40u64, 1024 * 7, 4, 7, 2240, 6560] {
            let qf = factorize(&big(q)).unwrap();
            assert_eq!(
                obstruction_holds_factored(&qf, &params).unwrap(),
                obstruction_holds(&big(q), &params).unwrap(),
                "Q = {q}"
            );
        }
    }

    #[test]
    fn structural_cutoff_examples() {
        // p0 = 5, t = 1, c = 4 (base 3): exponent 3 − 1 − 1 = 1 gives
        // 5 > 4 (cutoff reached); exponent 2 − 1 − 1 = 0 gives 1 ≤ 4.
        let params = ObstructionParams::new(&cantor(), 5).unwrap();
        assert_eq!(params.overhead(), 1);
        assert!(structural_cutoff_holds(&rat(3, 1), 1, &params));
        assert!(!structural_cutoff_holds(&rat(2, 1), 1, &params));
        // Fractional α is ceiled: α = 5/2 → ⌈α⌉ = 3.
        assert!(structural_cutoff_holds(&rat(5, 2), 1, &params));
        // Negative α can never reach the cutoff.
        assert!(!structural_cutoff_holds(&rat(-7, 2), 0, &params));
    }

    #[test]
    fn lpf_cutoff_examples() {
        let params = ObstructionParams::new(&cantor(), 2).unwrap();
        // α = 15, t = 2, β = 1800: 2¹³ = 8192 > 4 · 1799 = 7196.
        assert!(lpf_cutoff_holds(&rat(15, 1), &big(1800), &params).unwrap());
        // α = 13, β = 1352: 2¹¹ = 2048 ≤ 4 · 1351 = 5404.
        assert!(!lpf_cutoff_holds(&rat(13, 1), &big(1352), &params).unwrap());
        // β below 2 is rejected.
        assert!(lpf_cutoff_holds(&rat(10, 1), &big(1), &params).is_err());
    }

    #[test]
    fn prime_power_exceeds_edges() {
        let four = rat(4, 1);
        assert!(!prime_power_exceeds(2, &BigInt::from(0), &four));
        assert!(!prime_power_exceeds(2, &BigInt::from(-3), &four));
        assert!(!prime_power_exceeds(2, &BigInt::from(2), &four)); // 4 > 4 is false
        assert!(prime_power_exceeds(2, &BigInt::from(3), &four));
        // Exact boundary against a fraction: 2³ = 8 > 15/2 but 2² ≤ 15/2.
        let rhs = rat(15, 2);
        assert!(prime_power_exceeds(2, &BigInt::from(3), &rhs));
        assert!(!prime_power_exceeds(2, &BigInt::from(2), &rhs));
        // Bit-length shortcut: enormous exponent vs a big numerator.
        let giant = BigRational::from_integer(BigInt::from(2).pow(10_000) + 1);
        assert!(prime_power_exceeds(2, &BigInt::from(10_001), &giant));
        assert!(prime_power_exceeds(
            2,
            &(BigInt::from(u64::MAX) * 4),
            &giant
        ));
        // Just below the shortcut band the exact product decides.
        assert!(!prime_power_exceeds(2, &BigInt::from(10_000), &giant));
        assert!(prime_power_exceeds(3, &BigInt::from(7_000), &giant));
    }

    #[test]
    fn cutoff_agreement_with_direct_inequality() {
        // For a spread of (α, γ) the cutoff must equal the directly
        // evaluated exponential inequality.
        let params = ObstructionParams::new(&cantor(), 2).unwrap();
        let c = params.korobov().clone();
        for alpha in 0i64..40 {
            for gamma in 0u64..6 {
                let direct = {
                    let e = alpha - params.overhead() as i64 - gamma as i64;
                    if e <= 0 {
                        false
                    } else {
                        BigRational::from_integer(BigInt::from(2).pow(e as u32)) > c
                    }
                };
                assert_eq!(
                    structural_cutoff_holds(&rat(alpha, 1), gamma, &params),
                    direct,
                    "alpha = {alpha}, gamma = {gamma}"
                );
            }
        }
    }
}

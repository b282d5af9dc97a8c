//! Structured integer products whose reciprocals the obstruction
//! machinery can sweep: factorials, superfactorials, polynomial
//! products, Fibonacci products, and products of `m^k − 1`.
//!
//! Each family packages, for the term `A_n`:
//!
//! * `value(n)` — the exact integer `A_n`,
//! * `alpha(n)` — a proven lower bound on `ν_{p0}(Q_n)` where `Q_n` is
//!   the part of `A_n` coprime to the base,
//! * a bound for the second cutoff ingredient: either `γ(n)` bounding
//!   `ν_{p0}(ord_{rad(Q_n)}(m))` directly (structural route) or `β(n)`
//!   bounding every prime factor of `Q_n` (largest-prime route),
//! * optionally a certified index `N₀` past which the cutoff is known to
//!   hold for every `n`, and the complete list of member indices below
//!   it.
//!
//! Two contrasting constructions — primorials and central binomial
//! coefficients — are included as demonstrations of sequences where the
//! fixed-prime route provably stalls: their `p0`-adic valuations stay
//! bounded, so the single-prime inequality never fails.

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::criterion::{
    lpf_cutoff_holds, obstruction_holds, structural_cutoff_holds, ObstructionParams,
    ObstructionReport,
};
use crate::expansion::{decide_membership, Membership, MissingDigitSet, ReducedRational};
use crate::numtheory::{
    binomial_central_valuation, coprime_part, factorial_valuation, factorize,
    multiplicative_order, nu, small_primes,
};
use crate::{Error, Result};

/// How far [`find_auxiliary_prime`] scans by default before giving up.
pub const AUX_SEARCH_LIMIT: u64 = 10_000;

// ---------------------------------------------------------------------------
// Polynomials with positive values on the positive integers
// ---------------------------------------------------------------------------

/// An integer polynomial `f` of degree ≥ 1 with positive leading
/// coefficient and `f(k) ≥ 1` for every integer `k ≥ 1`, so that
/// `∏_{k≤n} f(k)` is a well-defined positive integer.
///
/// Positivity is certified at construction: integer points up to the
/// Cauchy root bound are checked explicitly, and beyond every real root
/// the polynomial stays positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolynomialSpec {
    /// Ascending coefficients `c_0, c_1, …, c_d` with `c_d > 0`.
    coeffs: Vec<BigInt>,
}

impl PolynomialSpec {
    pub fn new(mut coeffs: Vec<BigInt>) -> Result<Self> {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.len() < 2 {
            return Err(Error::ConstantPolynomial);
        }
        let lead = coeffs.last().expect("nonempty");
        if lead.sign() != Sign::Plus {
            return Err(Error::NonPositiveLeadingCoefficient);
        }
        // All real roots lie below 1 + max_i |c_i| / c_d, so checking the
        // integer points up to that bound certifies f(k) ≥ 1 for all k ≥ 1.
        let mut bound = BigInt::one();
        for c in &coeffs[..coeffs.len() - 1] {
            let q = (c.abs() + lead - 1) / lead;
            if q > bound {
                bound = q;
            }
        }
        let bound = (bound + 1u32).to_u64().filter(|&b| b <= 1_000_000).ok_or(
            Error::MalformedPolynomial(
                "coefficients too large to certify positivity".to_string(),
            ),
        )?;
        let spec = Self { coeffs };
        for k in 1..=bound {
            if spec.evaluate(k).sign() != Sign::Plus {
                return Err(Error::NonPositivePolynomialValue { k });
            }
        }
        Ok(spec)
    }

    /// Parses descending comma-separated coefficients, e.g. `"1,0,1"`
    /// for `x² + 1` or `"2,1"` for `2x + 1`.
    pub fn parse(s: &str) -> Result<Self> {
        let mut coeffs = Vec::new();
        for part in s.split(',') {
            let c: BigInt = part
                .trim()
                .parse()
                .map_err(|_| Error::MalformedPolynomial(s.to_string()))?;
            coeffs.push(c);
        }
        coeffs.reverse();
        Self::new(coeffs)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `Σ_i |c_i|`, so that `1 ≤ f(k) ≤ coefficient_weight · k^degree`
    /// for every `k ≥ 1`.
    pub fn coefficient_weight(&self) -> BigUint {
        self.coeffs
            .iter()
            .map(|c| c.abs().to_biguint().expect("absolute value"))
            .sum()
    }

    pub fn evaluate(&self, k: u64) -> BigInt {
        let k = BigInt::from(k);
        let mut acc = self.coeffs.last().expect("degree ≥ 1").clone();
        for c in self.coeffs.iter().rev().skip(1) {
            acc = acc * &k + c;
        }
        acc
    }

    /// Whether this is exactly `x² + 1`.
    pub fn is_x_squared_plus_one(&self) -> bool {
        self.coeffs.len() == 3
            && self.coeffs[0].is_one()
            && self.coeffs[1].is_zero()
            && self.coeffs[2].is_one()
    }
}

impl std::fmt::Display for PolynomialSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.sign() == Sign::Minus {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.sign() == Sign::Minus {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Finds the canonical auxiliary prime for a polynomial family over base
/// `m`: the smallest `k ≥ 1` such that `f(k)` has a prime factor `p ∤ m`,
/// then the smallest such prime `p0` of that `f(k)`. Returns
/// `(p0, k mod p0)`; every index congruent to `k` modulo `p0` contributes
/// a factor of `p0`, so `ν_{p0}(∏_{k≤n} f(k)) ≥ ⌊n/p0⌋`.
pub fn find_auxiliary_prime(
    poly: &PolynomialSpec,
    base: u32,
    limit: u64,
) -> Result<(u64, u64)> {
    let m = BigUint::from(base);
    for k in 1..=limit {
        let v = poly.evaluate(k);
        debug_assert!(v.sign() == Sign::Plus);
        let v = v.to_biguint().expect("positive value");
        if v.is_one() {
            continue;
        }
        for (p, _) in factorize(&v)?.factors() {
            if (&m % p).is_zero() {
                continue;
            }
            let p0 = p.to_u64().ok_or(Error::AuxiliaryPrimeTooLarge)?;
            return Ok((p0, k % p0));
        }
    }
    Err(Error::AuxiliaryPrimeNotFound { limit })
}

// ---------------------------------------------------------------------------
// Family machinery
// ---------------------------------------------------------------------------

type ValueFn = Box<dyn Fn(u64) -> BigUint + Send + Sync>;
type AlphaFn = Box<dyn Fn(u64) -> BigRational + Send + Sync>;
type GammaFn = Box<dyn Fn(u64) -> u64 + Send + Sync>;
type BetaFn = Box<dyn Fn(u64) -> BigUint + Send + Sync>;

/// The second cutoff ingredient a family provides alongside `alpha`.
pub enum FamilyBound {
    /// `γ(n)`: an upper bound on `ν_{p0}(ord_{rad(Q_n)}(m))`.
    Structural(GammaFn),
    /// `β(n)`: an upper bound on every prime factor of `Q_n`.
    LargestPrime(BetaFn),
}

/// One structured family of integers `A_n`, the digit set it is swept
/// against, and everything the two verification routes need.
pub struct FamilySpec {
    name: &'static str,
    description: String,
    set: MissingDigitSet,
    params: ObstructionParams,
    default_to: u64,
    value: ValueFn,
    alpha: AlphaFn,
    bound: FamilyBound,
    certified_cutoff: Option<u64>,
    known_members: Vec<u64>,
}

impl FamilySpec {
    pub fn name(&self) -> &'static str {
        self.name
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    pub fn digit_set(&self) -> &MissingDigitSet {
        &self.set
    }

    pub fn obstruction(&self) -> &ObstructionParams {
        &self.params
    }

    /// The default sweep `[1, N₀)`: everything below the certified (or
    /// conventional) cutoff index.
    pub fn default_range(&self) -> (u64, u64) {
        (1, self.default_to)
    }

    /// The exact integer `A_n` (`A_0 = 1`, the empty product).
    pub fn value(&self, n: u64) -> BigUint {
        (self.value)(n)
    }

    /// The proven lower bound on `ν_{p0}(Q_n)`, as an exact rational.
    pub fn alpha(&self, n: u64) -> BigRational {
        (self.alpha)(n)
    }

    pub fn bound(&self) -> &FamilyBound {
        &self.bound
    }

    /// The right-hand side the cutoff compares `p0^(⌈α⌉ − t − γ)` or
    /// `p0^(⌈α⌉ − t)` against: `c` on the structural route,
    /// `c·(β(n) − 1)` on the largest-prime route.
    pub fn bound_rhs(&self, n: u64) -> BigRational {
        match &self.bound {
            FamilyBound::Structural(_) => self.params.korobov().clone(),
            FamilyBound::LargestPrime(beta) => {
                let b = BigInt::from(beta(n).clone());
                self.params.korobov().clone() * BigRational::from_integer(b - 1)
            }
        }
    }

    /// Whether the family's cutoff fires at index `n` — a `true` proves
    /// `1/A_n` (indeed any admissible `r/Q_n`) lies outside the digit
    /// set without expanding or factoring anything.
    pub fn cutoff_holds(&self, n: u64) -> Result<bool> {
        let alpha = self.alpha(n);
        match &self.bound {
            FamilyBound::Structural(gamma) => {
                Ok(structural_cutoff_holds(&alpha, gamma(n), &self.params))
            }
            FamilyBound::LargestPrime(beta) => lpf_cutoff_holds(&alpha, &beta(n), &self.params),
        }
    }

    /// First index in `[from, to)` where the cutoff does *not* fire, if
    /// any. Used to verify certified tails on concrete windows.
    pub fn first_tail_violation(&self, from: u64, to: u64) -> Result<Option<u64>> {
        for n in from..to {
            if !self.cutoff_holds(n)? {
                return Ok(Some(n));
            }
        }
        Ok(None)
    }

    /// Index past which the cutoff is known to hold for every `n`
    /// (`None` when no such index has been established for this
    /// configuration).
    pub fn certified_cutoff(&self) -> Option<u64> {
        self.certified_cutoff
    }

    /// The complete list of member indices, populated only for
    /// configurations whose full sweep has been pinned down; empty means
    /// "no claim", not "no members".
    pub fn known_members(&self) -> &[u64] {
        &self.known_members
    }

    /// Expansion-route verdict for `1/A_n`.
    pub fn membership(&self, n: u64, cap: usize) -> Membership {
        let a = self.value(n);
        let x = ReducedRational::reciprocal(&a).expect("A_n ≥ 1");
        decide_membership(&x, &self.set, cap)
    }

    /// Criterion-route verdict for `Q_n` (factors the coprime part).
    pub fn obstruction_report(&self, n: u64) -> Result<ObstructionReport> {
        let a = self.value(n);
        let m = BigUint::from(self.set.base());
        let q = coprime_part(&a, &m)?;
        obstruction_holds(&q, &self.params)
    }

    /// Exact `ν_{p0}(Q_n)`, for checking `alpha` against reality.
    pub fn coprime_valuation(&self, n: u64) -> Result<u64> {
        let a = self.value(n);
        let m = BigUint::from(self.set.base());
        let q = coprime_part(&a, &m)?;
        nu(&BigUint::from(self.params.p0()), &q)
    }
}

fn is_paper_digit_set(set: &MissingDigitSet) -> bool {
    set.base() == 3 && set.digits().iter().copied().eq([0u32, 2])
}

// ---------------------------------------------------------------------------
// The five families
// ---------------------------------------------------------------------------

/// Reciprocals of factorials `n!`, swept with auxiliary prime `p0`.
/// `alpha` is the exact Legendre valuation `ν_{p0}(n!)`; every prime
/// factor of `n!` is at most `n`.
pub fn factorial_family(set: &MissingDigitSet, p0: u64) -> Result<FamilySpec> {
    let params = ObstructionParams::new(set, p0)?;
    let p0_big = BigUint::from(p0);
    let certified = (set.base() == 3 && p0 == 2).then_some(10);
    let known_members = if is_paper_digit_set(set) && p0 == 2 {
        vec![1, 5]
    } else {
        Vec::new()
    };
    Ok(FamilySpec {
        name: "factorial",
        description: "reciprocals of n!".to_string(),
        set: set.clone(),
        params,
        default_to: 10,
        value: Box::new(|n| (1..=n).map(BigUint::from).product()),
        alpha: Box::new(move |n| {
            let v = factorial_valuation(&BigUint::from(n), &p0_big).expect("p0 ≥ 2");
            BigRational::from_integer(BigInt::from(v))
        }),
        bound: FamilyBound::LargestPrime(Box::new(|n| BigUint::from(n.max(2)))),
        certified_cutoff: certified,
        known_members,
    })
}

/// Reciprocals of superfactorials `1!·2!···n!`. `alpha` sums the exact
/// Legendre valuations; every prime factor is at most `n`.
pub fn superfactorial_family(set: &MissingDigitSet, p0: u64) -> Result<FamilySpec> {
    let params = ObstructionParams::new(set, p0)?;
    let p0_big = BigUint::from(p0);
    let certified = (set.base() == 3 && p0 == 2).then_some(5);
    let known_members = if is_paper_digit_set(set) && p0 == 2 {
        vec![1, 3]
    } else {
        Vec::new()
    };
    Ok(FamilySpec {
        name: "superfactorial",
        description: "reciprocals of 1!*2!*...*n!".to_string(),
        set: set.clone(),
        params,
        default_to: 5,
        value: Box::new(|n| {
            let mut product = BigUint::one();
            let mut fact = BigUint::one();
            for k in 1..=n {
                fact *= k;
                product *= &fact;
            }
            product
        }),
        alpha: Box::new(move |n| {
            let total: BigUint = (1..=n)
                .map(|k| factorial_valuation(&BigUint::from(k), &p0_big).expect("p0 ≥ 2"))
                .sum();
            BigRational::from_integer(BigInt::from(total))
        }),
        bound: FamilyBound::LargestPrime(Box::new(|n| BigUint::from(n.max(2)))),
        certified_cutoff: certified,
        known_members,
    })
}

/// Reciprocals of `∏_{k≤n} f(k)` for a positive integer polynomial `f`.
/// The auxiliary prime is derived by [`find_auxiliary_prime`];
/// `alpha(n) = ⌊n/p0⌋` counts the indices contributing a factor of
/// `p0`, and every prime factor of the product is at most
/// `coefficient_weight · n^degree`.
pub fn polynomial_family(poly: PolynomialSpec, set: &MissingDigitSet) -> Result<FamilySpec> {
    let (p0, _residue) = find_auxiliary_prime(&poly, set.base(), AUX_SEARCH_LIMIT)?;
    let params = ObstructionParams::new(set, p0)?;
    let certified = (set.base() == 3 && poly.is_x_squared_plus_one()).then_some(30);
    let known_members = if is_paper_digit_set(set) && poly.is_x_squared_plus_one() {
        vec![2]
    } else {
        Vec::new()
    };
    let weight = BigInt::from(poly.coefficient_weight());
    let degree = poly.degree() as u32;
    let description = format!("reciprocals of prod f(k), f(x) = {poly}");
    let value_poly = poly.clone();
    Ok(FamilySpec {
        name: "polynomial",
        description,
        set: set.clone(),
        params,
        default_to: 30,
        value: Box::new(move |n| {
            let mut product = BigUint::one();
            for k in 1..=n {
                product *= value_poly.evaluate(k).to_biguint().expect("f(k) ≥ 1");
            }
            product
        }),
        alpha: Box::new(move |n| BigRational::from_integer(BigInt::from(n / p0))),
        bound: FamilyBound::LargestPrime(Box::new(move |n| {
            let cap = &weight * BigInt::from(n).pow(degree);
            cap.to_biguint().expect("positive").max(BigUint::from(2u32))
        })),
        certified_cutoff: certified,
        known_members,
    })
}

/// Reciprocals of Fibonacci products `F_1·F_2···F_n` over an odd base.
/// `alpha(n) = 5n/6 − ⌊log₂ n⌋ − 5` is an exact-rational lower bound on
/// the two-adic valuation of the product; every prime factor divides
/// some `F_k ≤ F_n`, so `β(n) = F_n` exactly.
pub fn fibonacci_family(set: &MissingDigitSet) -> Result<FamilySpec> {
    if set.base().is_multiple_of(2) {
        return Err(Error::EvenBaseForFibonacci(set.base()));
    }
    let params = ObstructionParams::new(set, 2)?;
    let certified = (set.base() == 3).then_some(106);
    let known_members = if is_paper_digit_set(set) {
        vec![1, 2, 5]
    } else {
        Vec::new()
    };
    Ok(FamilySpec {
        name: "fibonacci",
        description: "reciprocals of F_1*F_2*...*F_n".to_string(),
        set: set.clone(),
        params,
        default_to: 106,
        value: Box::new(|n| {
            let mut product = BigUint::one();
            let (mut a, mut b) = (BigUint::zero(), BigUint::one()); // F_0, F_1
            for _ in 1..=n {
                let next = &a + &b;
                a = b;
                b = next;
                product *= &a;
            }
            product
        }),
        alpha: Box::new(|n| {
            if n == 0 {
                return BigRational::from_integer(BigInt::from(-5));
            }
            BigRational::new(BigInt::from(5u32) * BigInt::from(n), BigInt::from(6))
                - BigRational::from_integer(BigInt::from(n.ilog2() + 5))
        }),
        bound: FamilyBound::LargestPrime(Box::new(|n| fibonacci(n).max(BigUint::from(2u32)))),
        certified_cutoff: certified,
        known_members,
    })
}

/// Reciprocals of `∏_{k≤n} (m^k − 1)`. The auxiliary prime is the
/// smallest odd prime factor of `m² + 1` (so `m² ≡ −1` and
/// `ord_{p0}(m) = 4`); `alpha(n) = ⌊n/4⌋` counts the indices divisible
/// by that order. The structural route applies: every prime of `Q_n`
/// has `ord_p(m) ≤ n`, giving `γ(n) = ⌊log_{p0} n⌋`.
pub fn base_power_family(set: &MissingDigitSet) -> Result<FamilySpec> {
    let m_sq = BigUint::from(set.base()) * BigUint::from(set.base()) + 1u32;
    let p0 = factorize(&m_sq)?
        .primes()
        .find(|p| p.to_u64() != Some(2))
        .expect("m² + 1 has an odd prime factor for every base ≥ 3")
        .to_u64()
        .ok_or(Error::AuxiliaryPrimeTooLarge)?;
    let params = ObstructionParams::new(set, p0)?;
    let ord = multiplicative_order(&BigUint::from(set.base()), &BigUint::from(p0))?
        .to_u64()
        .expect("order below p0");
    debug_assert_eq!(ord, 4, "m² ≡ −1 (mod p0) forces order 4");
    let certified = (set.base() == 3).then_some(12);
    let base = set.base();
    Ok(FamilySpec {
        name: "base-powers",
        description: format!("reciprocals of prod (m^k - 1), m = {base}"),
        set: set.clone(),
        params,
        default_to: 12,
        value: Box::new(move |n| {
            let m = BigUint::from(base);
            let mut product = BigUint::one();
            let mut power = BigUint::one();
            for _ in 1..=n {
                power *= &m;
                product *= &power - 1u32;
            }
            product
        }),
        alpha: Box::new(move |n| BigRational::from_integer(BigInt::from(n / ord))),
        bound: FamilyBound::Structural(Box::new(move |n| radical_order_bound(n, p0))),
        certified_cutoff: certified,
        known_members: Vec::new(),
    })
}

// ---------------------------------------------------------------------------
// Fibonacci / Lucas helpers
// ---------------------------------------------------------------------------

/// `F_k` with `F_0 = 0, F_1 = F_2 = 1`.
pub fn fibonacci(k: u64) -> BigUint {
    let (mut a, mut b) = (BigUint::zero(), BigUint::one());
    for _ in 0..k {
        let next = &a + &b;
        a = b;
        b = next;
    }
    a
}

/// `L_k` with `L_0 = 2, L_1 = 1`.
pub fn lucas(k: u64) -> BigUint {
    let (mut a, mut b) = (BigUint::from(2u32), BigUint::one());
    for _ in 0..k {
        let next = &a + &b;
        a = b;
        b = next;
    }
    a
}

/// `S(n) = Σ_{k≤n} ν₂(F_k)`, via the classical two-adic pattern of
/// Fibonacci numbers: `ν₂(F_k)` is 0 unless `3 | k`, is 1 for
/// `k ≡ 3 (mod 6)`, and is `ν₂(k) + 2` for `6 | k`.
pub fn fib_two_adic_sum(n: u64) -> u64 {
    let mut total = 0;
    for k in 1..=n {
        if k % 6 == 3 {
            total += 1;
        } else if k % 6 == 0 {
            total += u64::from(k.trailing_zeros()) + 2;
        }
    }
    total
}

/// The floor-sum lower bound
/// `S(n) ≥ ⌊n/3⌋ + 2⌊n/6⌋ + Σ_{j≥2, 3·2^j ≤ n} ⌊n/(3·2^j)⌋`,
/// obtained by counting the indices with each guaranteed two-adic
/// contribution.
pub fn fib_two_adic_lower_bound(n: u64) -> u64 {
    let mut total = n / 3 + 2 * (n / 6);
    let mut block = 12u64; // 3·2²
    while block <= n {
        total += n / block;
        block *= 2;
    }
    total
}

/// `⌊log_{p0} n⌋` for `n ≥ 1` (and 0 for `n = 0`): the largest exponent
/// `e` with `p0^e ≤ n`. This bounds `ν_{p0}(d)` for any divisor-like
/// quantity `d ≤ n`.
pub fn radical_order_bound(n: u64, p0: u64) -> u64 {
    debug_assert!(p0 >= 2);
    let mut e = 0;
    let mut power = p0;
    while power <= n {
        e += 1;
        match power.checked_mul(p0) {
            Some(next) => power = next,
            None => break,
        }
    }
    e
}

// ---------------------------------------------------------------------------
// Non-examples: sequences where the fixed-prime route stalls
// ---------------------------------------------------------------------------

/// The primorial demonstration: `value = ∏ (first n primes)` is
/// squarefree, so `ν_{p0}(Q) ≤ 1 ≤ t(m, p0)` for every prime and the
/// single-prime inequality holds at every `p0 | Q` — the obstruction
/// can never fire on this family.
#[derive(Clone, Debug)]
pub struct PrimorialDemo {
    /// How many of the smallest primes were multiplied together.
    pub n: u64,
    pub value: BigUint,
    /// The part of `value` coprime to the base.
    pub q: BigUint,
    pub q_squarefree: bool,
    /// Largest exponent in `q`'s factorization (1 unless `q = 1`).
    pub max_q_valuation: u64,
    /// Per-prime verdicts `(p0, inequality holds)`; all `true`.
    pub per_prime: Vec<(u64, bool)>,
}

/// Product of the first `n` primes: `n = 4` gives `2·3·5·7 = 210`.
pub fn primorial_demo(n: u64, set: &MissingDigitSet) -> Result<PrimorialDemo> {
    let m = BigUint::from(set.base());
    let sieve = small_primes();
    let count = usize::try_from(n).ok().filter(|&c| c <= sieve.len());
    let Some(count) = count else {
        return Err(Error::ArgumentBelowMinimum("primorial sieve limit", n));
    };
    let mut value = BigUint::one();
    for &p in &sieve[..count] {
        value *= p;
    }
    let q = coprime_part(&value, &m)?;
    let qf = factorize(&q)?;
    let q_squarefree = qf.is_squarefree();
    let max_q_valuation = qf.factors().iter().map(|(_, e)| u64::from(*e)).max().unwrap_or(0);
    let mut per_prime = Vec::new();
    for p in qf.primes() {
        let p0 = p.to_u64().ok_or(Error::AuxiliaryPrimeTooLarge)?;
        let params = ObstructionParams::new(set, p0)?;
        let report = obstruction_holds(&q, &params)?;
        per_prime.push((p0, report.holds));
    }
    Ok(PrimorialDemo {
        n,
        value,
        q,
        q_squarefree,
        max_q_valuation,
        per_prime,
    })
}

/// The central-binomial demonstration: at `n = p0^k` the valuation
/// `ν_{p0}(binomial(2n, n))` equals the number of carries when adding
/// `n + n` in base `p0` — exactly 1 for `p0 = 2` and 0 for odd `p0`.
/// Along this subsequence the valuation never grows, so no fixed-prime
/// cutoff can certify the family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralBinomialDemo {
    pub p0: u64,
    pub k: u32,
    /// `n = p0^k`.
    pub n: u64,
    pub valuation: u64,
}

pub fn central_binomial_demo(p0: u64, k: u32) -> Result<CentralBinomialDemo> {
    if p0 < 2 {
        return Err(Error::ArgumentBelowMinimum("central binomial prime", p0));
    }
    let n = p0
        .checked_pow(k)
        .ok_or(Error::ArgumentBelowMinimum("p0^k overflows", p0))?;
    let valuation = binomial_central_valuation(&BigUint::from(n), &BigUint::from(p0))?
        .to_u64()
        .expect("valuation of a machine-sized binomial");
    Ok(CentralBinomialDemo {
        p0,
        k,
        n,
        valuation,
    })
}

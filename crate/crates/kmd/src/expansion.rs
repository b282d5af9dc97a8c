//! Exact base-`m` expansions and membership in missing-digit sets.
//!
//! The digit stream of `u/v` is produced by the long-division recurrence
//! `r_0 = u`, `d_j = ⌊m·r_{j−1}/v⌋`, `r_j = m·r_{j−1} − d_j·v`, which
//! maintains the exact identity `u/v = Σ_{j≤N} d_j/m^j + r_N/(v·m^N)` at
//! every step. Remainders are tracked in a map so the first repeat closes
//! the eventual cycle; denominators coprime to `m` are purely periodic
//! with period equal to the multiplicative order of `m`.
//!
//! Membership verdicts are three-valued: a digit outside `D` decides
//! non-membership immediately (no need to close the cycle), a closed
//! cycle with all digits in `D` decides membership, and running into the
//! digit cap with neither is reported as inconclusive, never coerced to
//! a boolean. The two inputs with non-unique expansions get special
//! treatment: `x = 1` via the identity `1 = 0.(m−1) repeating`, and
//! terminating `x` (denominator dividing a power of `m`) by checking both
//! the finite expansion (with its trailing zeros) and its nonterminating
//! twin that ends in repeating `m−1`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::numtheory::{coprime_part, factorize, nu};
use crate::{Error, Result};

/// Extra digits emitted past the first offending one, so renderings can
/// show the offender in context.
pub const EXTRA_DISPLAY_DIGITS: usize = 2;

/// A base together with an admissible digit subset: `1 < |D| < m`,
/// every digit below the base. The base is at least 3 (no proper digit
/// subset of base 2 has more than one element).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MissingDigitSet {
    base: u32,
    digits: BTreeSet<u32>,
}

impl MissingDigitSet {
    pub fn new(base: u32, digits: impl IntoIterator<Item = u32>) -> Result<Self> {
        if base < 3 {
            return Err(Error::BaseTooSmall(base));
        }
        let digits: BTreeSet<u32> = digits.into_iter().collect();
        for &d in &digits {
            if d >= base {
                return Err(Error::DigitOutOfRange { digit: d, base });
            }
        }
        if digits.len() < 2 || digits.len() >= base as usize {
            return Err(Error::DigitSetSize {
                size: digits.len(),
                base,
            });
        }
        Ok(Self { base, digits })
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn digits(&self) -> &BTreeSet<u32> {
        &self.digits
    }

    pub fn size(&self) -> usize {
        self.digits.len()
    }

    pub fn contains(&self, digit: u32) -> bool {
        self.digits.contains(&digit)
    }
}

impl std::fmt::Display for MissingDigitSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "K_{{{},{{", self.base)?;
        for (i, d) in self.digits.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, "}}}}")
    }
}

/// A rational in `(0, 1]` kept in lowest terms; `1/1` represents the
/// value 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedRational {
    numer: BigUint,
    denom: BigUint,
}

impl ReducedRational {
    /// Reduces `numer/denom` and checks `0 < numer/denom ≤ 1`.
    pub fn new(numer: BigUint, denom: BigUint) -> Result<Self> {
        if denom.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if numer.is_zero() {
            return Err(Error::ZeroNumerator);
        }
        if numer > denom {
            return Err(Error::AboveOne { numer, denom });
        }
        let g = numer.gcd(&denom);
        Ok(Self {
            numer: numer / &g,
            denom: denom / g,
        })
    }

    /// The reciprocal `1/a` for `a ≥ 1`.
    pub fn reciprocal(a: &BigUint) -> Result<Self> {
        Self::new(BigUint::one(), a.clone())
    }

    pub fn numer(&self) -> &BigUint {
        &self.numer
    }

    pub fn denom(&self) -> &BigUint {
        &self.denom
    }

    pub fn is_unit(&self) -> bool {
        self.denom.is_one()
    }
}

impl std::fmt::Display for ReducedRational {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.numer, self.denom)
    }
}

/// Indices of the first repeated remainder: `r_end = r_start` with
/// `0 ≤ start < end`, so digits `d_{start+1} ..= d_end` repeat forever.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cycle {
    pub start: usize,
    pub end: usize,
}

impl Cycle {
    pub fn period_len(&self) -> usize {
        self.end - self.start
    }
}

/// Digits produced by a long-division scan.
///
/// `digits[j]` is the digit at position `j + 1`. `cycle` is present iff a
/// remainder repeated before the scan stopped; `first_offending` is the
/// 1-based position of the first digit outside the checked digit set
/// (always `None` when no digit set was applied).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpansionReport {
    pub digits: Vec<u32>,
    pub cycle: Option<Cycle>,
    pub first_offending: Option<usize>,
}

impl ExpansionReport {
    /// Digits before the repeating block (empty when purely periodic).
    pub fn preperiod_digits(&self) -> Option<&[u32]> {
        self.cycle.as_ref().map(|c| &self.digits[..c.start])
    }

    /// One full repeating block.
    pub fn cycle_digits(&self) -> Option<&[u32]> {
        self.cycle.as_ref().map(|c| &self.digits[c.start..c.end])
    }

    pub fn period_len(&self) -> Option<usize> {
        self.cycle.as_ref().map(Cycle::period_len)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum EnginePath {
    /// Use machine words when the denominator fits, bignums otherwise.
    Auto,
    /// Force the bignum loop (used to test path parity).
    ForceBig,
}

struct RawScan {
    digits: Vec<u32>,
    cycle: Option<Cycle>,
    first_offending: Option<usize>,
}

fn scan_u64(
    u: u64,
    v: u64,
    base: u64,
    cap: usize,
    filter: Option<&MissingDigitSet>,
    extra: usize,
) -> RawScan {
    let mut digits = Vec::new();
    let mut seen: HashMap<u64, usize> = HashMap::new();
    let mut r = u;
    seen.insert(r, 0);
    let mut cycle = None;
    let mut first_offending = None;
    let mut j = 0usize;
    while j < cap {
        j += 1;
        let t = base * r;
        let d = (t / v) as u32;
        r = t % v;
        digits.push(d);
        if let Some(set) = filter {
            if !set.contains(d) {
                first_offending = Some(j);
                for _ in 0..extra {
                    if j >= cap {
                        break;
                    }
                    j += 1;
                    let t = base * r;
                    digits.push((t / v) as u32);
                    r = t % v;
                }
                break;
            }
        }
        if let Some(&i) = seen.get(&r) {
            cycle = Some(Cycle { start: i, end: j });
            break;
        }
        seen.insert(r, j);
    }
    RawScan {
        digits,
        cycle,
        first_offending,
    }
}

fn scan_big(
    u: &BigUint,
    v: &BigUint,
    base: u32,
    cap: usize,
    filter: Option<&MissingDigitSet>,
    extra: usize,
) -> RawScan {
    let base = BigUint::from(base);
    let mut digits = Vec::new();
    let mut seen: HashMap<BigUint, usize> = HashMap::new();
    let mut r = u.clone();
    seen.insert(r.clone(), 0);
    let mut cycle = None;
    let mut first_offending = None;
    let mut j = 0usize;
    while j < cap {
        j += 1;
        let t = &base * &r;
        let (q, rem) = t.div_rem(v);
        let d = q.to_u32().expect("digit below base");
        r = rem;
        digits.push(d);
        if let Some(set) = filter {
            if !set.contains(d) {
                first_offending = Some(j);
                for _ in 0..extra {
                    if j >= cap {
                        break;
                    }
                    j += 1;
                    let t = &base * &r;
                    let (q, rem) = t.div_rem(v);
                    digits.push(q.to_u32().expect("digit below base"));
                    r = rem;
                }
                break;
            }
        }
        if let Some(&i) = seen.get(&r) {
            cycle = Some(Cycle { start: i, end: j });
            break;
        }
        seen.insert(r.clone(), j);
    }
    RawScan {
        digits,
        cycle,
        first_offending,
    }
}

pub(crate) fn scan(
    u: &BigUint,
    v: &BigUint,
    base: u32,
    cap: usize,
    filter: Option<&MissingDigitSet>,
    extra: usize,
    path: EnginePath,
) -> ExpansionReport {
    let raw = match (path, v.to_u64()) {
        (EnginePath::Auto, Some(v64)) if v64 <= u32::MAX as u64 => {
            let u64v = u.to_u64().expect("numerator below denominator");
            scan_u64(u64v, v64, base as u64, cap, filter, extra)
        }
        _ => scan_big(u, v, base, cap, filter, extra),
    };
    ExpansionReport {
        digits: raw.digits,
        cycle: raw.cycle,
        first_offending: raw.first_offending,
    }
}

/// Runs the long-division recurrence for `x ∈ (0, 1)` in base `m ≥ 3`
/// until a remainder repeats or `cap` digits have been emitted. A report
/// without a `cycle` means the cap was exhausted first. The value 1 is
/// rejected: its expansion is the unit identity, not a division.
pub fn expand(x: &ReducedRational, base: u32, cap: usize) -> Result<ExpansionReport> {
    if base < 3 {
        return Err(Error::BaseTooSmall(base));
    }
    if x.is_unit() {
        return Err(Error::UnitValue);
    }
    Ok(scan(
        x.numer(),
        x.denom(),
        base,
        cap,
        None,
        0,
        EnginePath::Auto,
    ))
}

/// How a membership verdict was reached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// `x = 1`, whose only admissible expansion is `0.(m−1)` repeating.
    UnitIdentity { repeating_digit: u32 },
    /// Terminating `x`: `digits` is the finite expansion (minimal length,
    /// nonzero last digit). `via_alternative` marks membership witnessed
    /// by the twin expansion ending in repeating `m−1` rather than by the
    /// finite expansion with its trailing zeros.
    Terminating {
        digits: Vec<u32>,
        via_alternative: bool,
    },
    /// Digits produced by the long-division scan.
    Expansion(ExpansionReport),
}

/// Three-valued membership verdict with its supporting evidence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    Member(Witness),
    NonMember {
        /// 1-based position of the first digit outside `D` in the
        /// expansion named by the witness (for terminating inputs: the
        /// finite expansion continued by its trailing zeros).
        first_offending: usize,
        witness: Witness,
    },
    /// The digit cap was reached before an offending digit or a closed
    /// cycle; never silently coerced to a boolean.
    Inconclusive { digits_emitted: usize },
}

impl Membership {
    /// `Some(true)` / `Some(false)` for decided verdicts, `None` when
    /// inconclusive.
    pub fn verdict(&self) -> Option<bool> {
        match self {
            Membership::Member(_) => Some(true),
            Membership::NonMember { .. } => Some(false),
            Membership::Inconclusive { .. } => None,
        }
    }

    pub fn first_offending(&self) -> Option<usize> {
        match self {
            Membership::NonMember {
                first_offending, ..
            } => Some(*first_offending),
            _ => None,
        }
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Membership::Member(w) | Membership::NonMember { witness: w, .. } => Some(w),
            Membership::Inconclusive { .. } => None,
        }
    }

    pub fn expansion_report(&self) -> Option<&ExpansionReport> {
        match self.witness() {
            Some(Witness::Expansion(report)) => Some(report),
            _ => None,
        }
    }

    /// Eventual period length of the decided expansion, where meaningful:
    /// 1 for the unit identity and for terminating inputs (their
    /// expansions end in a repeating single digit), the cycle length for
    /// scans that closed a cycle.
    pub fn period_len(&self) -> Option<usize> {
        match self {
            Membership::Member(w) | Membership::NonMember { witness: w, .. } => match w {
                Witness::UnitIdentity { .. } | Witness::Terminating { .. } => Some(1),
                Witness::Expansion(report) => report.period_len(),
            },
            Membership::Inconclusive { .. } => None,
        }
    }
}

/// Finite base-`m` digits of a terminating `u/v` (where `v > 1` divides a
/// power of the base): minimal length, last digit nonzero.
fn terminating_digits(u: &BigUint, v: &BigUint, base: u32) -> Vec<u32> {
    let base_big = BigUint::from(base);
    let base_factors = factorize(&base_big).expect("base ≥ 3");
    let mut len = 0u64;
    for p in base_factors.primes() {
        let vv = nu(p, v).expect("v ≥ 1");
        let vb = nu(p, &base_big).expect("base ≥ 1");
        len = len.max(vv.div_ceil(vb));
    }
    let scaled = u * base_big.pow(u32::try_from(len).expect("digit count fits u32")) / v;
    let mut digits = Vec::with_capacity(len as usize);
    let mut cur = scaled;
    while !cur.is_zero() {
        let (q, r) = cur.div_rem(&base_big);
        digits.push(r.to_u32().expect("digit below base"));
        cur = q;
    }
    while (digits.len() as u64) < len {
        digits.push(0);
    }
    digits.reverse();
    debug_assert!(*digits.last().expect("u > 0") > 0, "minimal length");
    digits
}

fn decide_terminating(x: &ReducedRational, set: &MissingDigitSet) -> Membership {
    let digits = terminating_digits(x.numer(), x.denom(), set.base());
    let last = *digits.last().expect("nonempty");
    let body_ok = digits[..digits.len() - 1].iter().all(|&d| set.contains(d));
    // Finite expansion continues with 0 repeating; the twin decrements the
    // last digit and continues with m−1 repeating. Either full digit
    // stream witnesses membership.
    let finite_ok = body_ok && set.contains(last) && set.contains(0);
    let alternative_ok = body_ok && set.contains(last - 1) && set.contains(set.base() - 1);
    if finite_ok || alternative_ok {
        return Membership::Member(Witness::Terminating {
            digits,
            via_alternative: !finite_ok,
        });
    }
    let first_offending = digits
        .iter()
        .position(|&d| !set.contains(d))
        .map(|i| i + 1)
        .unwrap_or(digits.len() + 1); // all finite digits pass, the trailing zeros offend
    Membership::NonMember {
        first_offending,
        witness: Witness::Terminating {
            digits,
            via_alternative: false,
        },
    }
}

/// Decides whether `x ∈ (0, 1]` belongs to the missing-digit set. The
/// scan exits on the first offending digit (emitting
/// [`EXTRA_DISPLAY_DIGITS`] more for context) without waiting for cycle
/// closure; `cap` bounds the number of digits a scan may emit. Unit and
/// terminating inputs are decided exactly regardless of `cap`.
pub fn decide_membership(x: &ReducedRational, set: &MissingDigitSet, cap: usize) -> Membership {
    let base = set.base();
    if x.is_unit() {
        let repeating_digit = base - 1;
        let witness = Witness::UnitIdentity { repeating_digit };
        return if set.contains(repeating_digit) {
            Membership::Member(witness)
        } else {
            Membership::NonMember {
                first_offending: 1,
                witness,
            }
        };
    }
    let base_big = BigUint::from(base);
    let coprime = coprime_part(x.denom(), &base_big).expect("denominator ≥ 2");
    if coprime.is_one() {
        return decide_terminating(x, set);
    }
    let report = scan(
        x.numer(),
        x.denom(),
        base,
        cap,
        Some(set),
        EXTRA_DISPLAY_DIGITS,
        EnginePath::Auto,
    );
    match (report.first_offending, report.cycle.is_some()) {
        (Some(first_offending), _) => Membership::NonMember {
            first_offending,
            witness: Witness::Expansion(report),
        },
        (None, true) => Membership::Member(Witness::Expansion(report)),
        (None, false) => Membership::Inconclusive {
            digits_emitted: report.digits.len(),
        },
    }
}

/// Digit frequencies over one full period of a purely periodic report
/// (cycle starting at the first digit). The counts sum to the period
/// length.
pub fn period_digit_counts(report: &ExpansionReport) -> Result<BTreeMap<u32, u64>> {
    let cycle = report.cycle.as_ref().ok_or(Error::UnclosedCycle)?;
    if cycle.start != 0 {
        return Err(Error::NotPurelyPeriodic);
    }
    let mut counts = BTreeMap::new();
    for &d in &report.digits[..cycle.end] {
        *counts.entry(d).or_insert(0u64) += 1;
    }
    Ok(counts)
}

/// Splits the base's primes out of the denominator: for `A ≥ 2` with
/// coprime part `Q ≥ 2`, returns the reduced `r/Q` reached from `1/A` by
/// shifting away the terminating head — `r = (m^k / (A, m^∞)) mod Q` for
/// the minimal `k` with `(A, m^∞) | m^k`. Membership in any `K_{m,D}`
/// transfers from `1/A` to `r/Q`, and `gcd(m·r, Q) = 1`.
pub fn shift_reduce(a: &BigUint, base: u32) -> Result<ReducedRational> {
    if base < 3 {
        return Err(Error::BaseTooSmall(base));
    }
    if a.is_zero() {
        return Err(Error::ZeroArgument("shift_reduce: A"));
    }
    let m = BigUint::from(base);
    let q = coprime_part(a, &m)?;
    if q.is_one() {
        return Err(Error::DegenerateReduction(a.clone()));
    }
    let head = a / &q; // (A, m^∞)
    let mf = factorize(&m)?;
    let mut k = 0u64;
    for p in mf.primes() {
        let vh = nu(p, &head)?;
        let vm = nu(p, &m)?;
        k = k.max(vh.div_ceil(vm));
    }
    let b = m.pow(u32::try_from(k).expect("shift count fits u32")) / &head;
    let r = &b % &q;
    ReducedRational::new(r, q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(x: u64) -> BigUint {
        BigUint::from(x)
    }

    fn frac(u: u64, v: u64) -> ReducedRational {
        ReducedRational::new(big(u), big(v)).unwrap()
    }

    fn cantor() -> MissingDigitSet {
        MissingDigitSet::new(3, [0, 2]).unwrap()
    }

    #[test]
    fn digit_set_validation() {
        assert!(MissingDigitSet::new(2, [0, 1]).is_err(), "base too small");
        assert!(MissingDigitSet::new(3, [0]).is_err(), "too few digits");
        assert!(MissingDigitSet::new(3, [0, 1, 2]).is_err(), "full alphabet");
        assert!(MissingDigitSet::new(3, [0, 3]).is_err(), "digit out of range");
        let c = cantor();
        assert!(c.contains(0) && !c.contains(1) && c.contains(2));
        assert_eq!(c.to_string(), "K_{3,{0,2}}");
    }

    #[test]
    fn rational_validation() {
        assert!(ReducedRational::new(big(0), big(5)).is_err());
        assert!(ReducedRational::new(big(5), big(0)).is_err());
        assert!(ReducedRational::new(big(7), big(5)).is_err());
        let x = ReducedRational::new(big(4), big(12)).unwrap();
        assert_eq!((x.numer().clone(), x.denom().clone()), (big(1), big(3)));
        assert!(ReducedRational::new(big(3), big(3)).unwrap().is_unit());
    }

    #[test]
    fn expansion_of_1_120_has_preperiod_one_period_four() {
        // 1/120 = 0.0(0002) in base 3.
        let report = expand(&frac(1, 120), 3, 1000).unwrap();
        assert_eq!(report.digits, vec![0, 0, 0, 0, 2]);
        assert_eq!(report.cycle, Some(Cycle { start: 1, end: 5 }));
        assert_eq!(report.preperiod_digits().unwrap(), &[0]);
        assert_eq!(report.cycle_digits().unwrap(), &[0, 0, 0, 2]);
    }

    #[test]
    fn expansion_of_1_2_is_repeating_one() {
        let report = expand(&frac(1, 2), 3, 10).unwrap();
        assert_eq!(report.digits, vec![1]);
        assert_eq!(report.cycle, Some(Cycle { start: 0, end: 1 }));
    }

    #[test]
    fn expansion_of_1_7_base_10() {
        let report = expand(&frac(1, 7), 10, 100).unwrap();
        assert_eq!(report.digits, vec![1, 4, 2, 8, 5, 7]);
        assert_eq!(report.cycle, Some(Cycle { start: 0, end: 6 }));
    }

    #[test]
    fn expansion_rejects_unit_and_small_base() {
        assert_eq!(expand(&frac(1, 1), 3, 10), Err(Error::UnitValue));
        assert_eq!(expand(&frac(1, 2), 2, 10), Err(Error::BaseTooSmall(2)));
    }

    #[test]
    fn cap_exhaustion_leaves_cycle_open() {
        let report = expand(&frac(1, 120), 3, 3).unwrap();
        assert_eq!(report.digits, vec![0, 0, 0]);
        assert_eq!(report.cycle, None);
    }

    #[test]
    fn engine_paths_agree() {
        // Same scans through the machine-word and bignum loops.
        for (u, v) in [(1u64, 120u64), (1, 7), (3, 40), (5, 14), (1, 9), (7, 360)] {
            let auto = scan(&big(u), &big(v), 3, 500, None, 0, EnginePath::Auto);
            let forced = scan(&big(u), &big(v), 3, 500, None, 0, EnginePath::ForceBig);
            assert_eq!(auto, forced, "u = {u}, v = {v}");
            let set = cantor();
            let auto = scan(&big(u), &big(v), 3, 500, Some(&set), 2, EnginePath::Auto);
            let forced = scan(&big(u), &big(v), 3, 500, Some(&set), 2, EnginePath::ForceBig);
            assert_eq!(auto, forced, "filtered, u = {u}, v = {v}");
        }
    }

    #[test]
    fn membership_basic_verdicts() {
        let set = cantor();
        // 1/2 = 0.(1): offending immediately.
        let m = decide_membership(&frac(1, 2), &set, 100);
        assert_eq!(m.verdict(), Some(false));
        assert_eq!(m.first_offending(), Some(1));
        // 1/4 = 0.(02): member.
        let m = decide_membership(&frac(1, 4), &set, 100);
        assert_eq!(m.verdict(), Some(true));
        assert_eq!(m.period_len(), Some(2));
        // 1/10 = 0.(0022): member, purely periodic with period 4.
        let m = decide_membership(&frac(1, 10), &set, 100);
        assert_eq!(m.verdict(), Some(true));
        let report = m.expansion_report().unwrap();
        assert_eq!(report.digits[..4], [0, 0, 2, 2]);
        assert_eq!(report.cycle, Some(Cycle { start: 0, end: 4 }));
        // 1/13 = 0.(002): member.
        let m = decide_membership(&frac(1, 13), &set, 100);
        assert_eq!(m.verdict(), Some(true));
        // 1/120 member with preperiod.
        let m = decide_membership(&frac(1, 120), &set, 1000);
        assert_eq!(m.verdict(), Some(true));
    }

    #[test]
    fn membership_early_exit_emits_context_digits() {
        let set = cantor();
        // 1/5 = 0.(0121): offense at position 2, two more digits follow.
        let m = decide_membership(&frac(1, 5), &set, 100);
        assert_eq!(m.first_offending(), Some(2));
        let report = m.expansion_report().unwrap();
        assert_eq!(report.digits, vec![0, 1, 2, 1]);
        assert_eq!(report.cycle, None, "early exit precedes cycle closure");
    }

    #[test]
    fn membership_unit_identity() {
        let set = cantor();
        let m = decide_membership(&frac(1, 1), &set, 10);
        assert_eq!(m.verdict(), Some(true), "1 = 0.(2) and 2 is allowed");
        let set01 = MissingDigitSet::new(3, [0, 1]).unwrap();
        let m = decide_membership(&frac(1, 1), &set01, 10);
        assert_eq!(m.verdict(), Some(false));
        assert_eq!(m.first_offending(), Some(1));
    }

    #[test]
    fn membership_terminating_two_expansion_rule() {
        let set = cantor();
        // 1/3 = 0.1 = 0.0(2): member via the alternative expansion.
        let m = decide_membership(&frac(1, 3), &set, 10);
        assert_eq!(m.verdict(), Some(true));
        assert_eq!(
            m.witness(),
            Some(&Witness::Terminating {
                digits: vec![1],
                via_alternative: true
            })
        );
        // 2/3 = 0.2 followed by zeros: member via the finite expansion.
        let m = decide_membership(&frac(2, 3), &set, 10);
        assert_eq!(m.verdict(), Some(true));
        assert_eq!(
            m.witness(),
            Some(&Witness::Terminating {
                digits: vec![2],
                via_alternative: false
            })
        );
        // 1/9 = 0.01 = 0.00(2): member via the alternative.
        let m = decide_membership(&frac(1, 9), &set, 10);
        assert_eq!(m.verdict(), Some(true));
        // 4/9 = 0.11: not a member (both expansions contain a 1).
        let m = decide_membership(&frac(4, 9), &set, 10);
        assert_eq!(m.verdict(), Some(false));
        assert_eq!(m.first_offending(), Some(1));
    }

    #[test]
    fn terminating_trailing_digits_count() {
        // In K_{3,{1,2}} the value 1/3 = 0.1000… = 0.0222… fails both
        // ways: the finite expansion needs its trailing zeros in D, the
        // twin starts with 0 ∉ D.
        let set12 = MissingDigitSet::new(3, [1, 2]).unwrap();
        let m = decide_membership(&frac(1, 3), &set12, 10);
        assert_eq!(m.verdict(), Some(false));
        assert_eq!(
            m.first_offending(),
            Some(2),
            "finite digit 1 passes, the first trailing zero offends"
        );
    }

    #[test]
    fn membership_inconclusive_on_cap() {
        let set = cantor();
        // 1/(3^20 − 1) opens with 19 zeros; a cap of 10 sees no offense
        // and no closed cycle.
        let v = big(3).pow(20) - 1u32;
        let x = ReducedRational::new(big(1), v).unwrap();
        let m = decide_membership(&x, &set, 10);
        assert_eq!(m.verdict(), None);
        assert!(matches!(m, Membership::Inconclusive { digits_emitted: 10 }));
    }

    #[test]
    fn period_digit_counts_on_pure_cycles() {
        let report = expand(&frac(1, 10), 3, 100).unwrap();
        let counts = period_digit_counts(&report).unwrap();
        assert_eq!(counts.get(&0), Some(&2));
        assert_eq!(counts.get(&2), Some(&2));
        assert_eq!(counts.values().sum::<u64>(), 4);

        // Preperiodic report is rejected.
        let report = expand(&frac(1, 120), 3, 100).unwrap();
        assert_eq!(period_digit_counts(&report), Err(Error::NotPurelyPeriodic));

        // Unclosed scan is rejected.
        let report = expand(&frac(1, 120), 3, 3).unwrap();
        assert_eq!(period_digit_counts(&report), Err(Error::UnclosedCycle));
    }

    #[test]
    fn shift_reduce_examples() {
        // Pure power of the base times a coprime part.
        let r = shift_reduce(&big(12), 3).unwrap();
        assert_eq!((r.numer().clone(), r.denom().clone()), (big(1), big(4)));
        // Already coprime: identity.
        let r = shift_reduce(&big(7), 3).unwrap();
        assert_eq!((r.numer().clone(), r.denom().clone()), (big(1), big(7)));
        // 120 = 3 · 40: one shift of 1/120 lands on 1/40.
        let r = shift_reduce(&big(120), 3).unwrap();
        assert_eq!((r.numer().clone(), r.denom().clone()), (big(1), big(40)));
        // Degenerate: denominator fully inside the base's primes.
        assert!(matches!(
            shift_reduce(&big(27), 3),
            Err(Error::DegenerateReduction(_))
        ));
        // Mixed base: m = 12 = 2^2 · 3, A = 2^5 · 3^2 · 5 needs k = 3.
        let a = big(32) * big(9) * big(5);
        let r = shift_reduce(&a, 12).unwrap();
        assert_eq!(r.denom(), &big(5));
        let head = big(32) * big(9);
        let b = big(12).pow(3) / &head;
        assert_eq!(r.numer(), &(&b % &big(5)));
    }

    #[test]
    fn shift_reduce_membership_transfer_spot() {
        let set = cantor();
        // 1/120 ∈ K and its reduction 1/40 must follow.
        assert_eq!(
            decide_membership(&frac(1, 120), &set, 1000).verdict(),
            Some(true)
        );
        let reduced = shift_reduce(&big(120), 3).unwrap();
        assert_eq!(decide_membership(&reduced, &set, 1000).verdict(), Some(true));
        // gcd(m·r, Q) = 1 on a small sweep.
        for a in 2u64..400 {
            match shift_reduce(&big(a), 3) {
                Ok(r) => {
                    let prod = r.numer() * big(3);
                    assert!(prod.gcd(r.denom()).is_one(), "A = {a}");
                }
                Err(Error::DegenerateReduction(_)) => {}
                Err(e) => panic!("unexpected error for A = {a}: {e}"),
            }
        }
    }

    #[test]
    fn reconstruction_identity_at_cycle_close() {
        // u/v = Σ d_j / m^j + r_N/(v m^N) exactly, checked by Horner on
        // the emitted digits at N = cycle end.
        for (u, v) in [(1u64, 120u64), (1, 7), (3, 40), (5, 14), (11, 13)] {
            let report = expand(&frac(u, v), 3, 10_000).unwrap();
            let n = report.cycle.as_ref().unwrap().end;
            let mut acc = BigUint::zero();
            for &d in &report.digits[..n] {
                acc = acc * 3u32 + big(d as u64);
            }
            // r_N = u·m^N − acc·v; the identity requires 0 ≤ r_N < v.
            let lhs = big(u) * big(3).pow(n as u32);
            let rhs = acc * big(v);
            assert!(lhs >= rhs, "u = {u}, v = {v}");
            assert!(lhs - rhs < big(v), "u = {u}, v = {v}");
        }
    }
}

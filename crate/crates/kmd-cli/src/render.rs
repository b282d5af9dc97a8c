//! Text rendering of expansions, witnesses, and verdicts.
//!
//! Members are rendered in cycle notation `0.pre(cycle)`; non-members
//! show the digit stream up to and including the first offending digit
//! (bracketed) plus the trailing context the scan recorded, ending in
//! `…`. Long runs before the offender are elided down to both ends.

use kmd::expansion::{ExpansionReport, Membership, Witness};
use num_rational::BigRational;
use num_traits::One;

/// Maximum digits shown before an offender without elision.
const ELISION_THRESHOLD: usize = 16;

/// A digit run as text: plain concatenation for bases up to 10,
/// comma-separated decimal otherwise.
pub fn digits_string(digits: &[u32], base: u32) -> String {
    if base <= 10 {
        digits
            .iter()
            .map(|&d| char::from_digit(d, 10).expect("digit below base ≤ 10"))
            .collect()
    } else {
        digits
            .iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Exact rational as `n` (integer) or `n/d`.
pub fn rational_str(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Cycle-notation rendering of a membership witness.
pub fn render_member(witness: &Witness, base: u32) -> String {
    match witness {
        Witness::UnitIdentity { repeating_digit } => {
            format!("0.({})", digits_string(&[*repeating_digit], base))
        }
        Witness::Terminating {
            digits,
            via_alternative,
        } => {
            if *via_alternative {
                // Twin form: decrement the last (nonzero) digit, then
                // repeat the top digit forever.
                let mut head = digits.clone();
                *head.last_mut().expect("terminating digits are nonempty") -= 1;
                format!(
                    "0.{}({})",
                    digits_string(&head, base),
                    digits_string(&[base - 1], base)
                )
            } else {
                format!("0.{}(0)", digits_string(digits, base))
            }
        }
        Witness::Expansion(report) => {
            let cycle = report
                .cycle
                .as_ref()
                .expect("member scans close a remainder cycle");
            format!(
                "0.{}({})",
                digits_string(&report.digits[..cycle.start], base),
                digits_string(&report.digits[cycle.start..cycle.end], base)
            )
        }
    }
}

/// Offender-marked rendering of a non-membership witness. The stream is
/// cut after the offender plus whatever context the witness recorded,
/// and an over-long prefix keeps only its first and last two digits.
pub fn render_non_member(witness: &Witness, first_offending: usize, base: u32) -> String {
    let stream: Vec<u32> = match witness {
        Witness::UnitIdentity { repeating_digit } => {
            vec![*repeating_digit; first_offending + 2]
        }
        Witness::Terminating { digits, .. } => {
            // The finite expansion continues with zeros; the offender is
            // either a finite digit or the first trailing zero.
            let mut stream = digits.clone();
            while stream.len() < first_offending + 2 {
                stream.push(0);
            }
            stream
        }
        Witness::Expansion(report) => report.digits.clone(),
    };
    let pos = first_offending - 1;
    let mut out = String::from("0.");
    if pos > ELISION_THRESHOLD {
        out.push_str(&digits_string(&stream[..2], base));
        out.push('…');
        out.push_str(&digits_string(&stream[pos - 2..pos], base));
    } else {
        out.push_str(&digits_string(&stream[..pos], base));
    }
    out.push('[');
    out.push_str(&digits_string(&[stream[pos]], base));
    out.push(']');
    out.push_str(&digits_string(&stream[(pos + 1).min(stream.len())..], base));
    out.push('…');
    out
}

/// Rendering for any decided verdict; `None` when inconclusive.
pub fn render_verdict(membership: &Membership, base: u32) -> Option<String> {
    match membership {
        Membership::Member(witness) => Some(render_member(witness, base)),
        Membership::NonMember {
            first_offending,
            witness,
        } => Some(render_non_member(witness, *first_offending, base)),
        Membership::Inconclusive { .. } => None,
    }
}

/// Raw scan rendering for the `expand` command, truncated to
/// `max_display` digits when the closed form would be longer.
pub fn render_expansion(report: &ExpansionReport, base: u32, max_display: usize) -> String {
    match &report.cycle {
        Some(cycle) if cycle.end <= max_display => format!(
            "0.{}({})",
            digits_string(&report.digits[..cycle.start], base),
            digits_string(&report.digits[cycle.start..cycle.end], base)
        ),
        _ => {
            let shown = max_display.min(report.digits.len());
            format!("0.{}…", digits_string(&report.digits[..shown], base))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use kmd::expansion::{decide_membership, MissingDigitSet, ReducedRational};
    use num_bigint::BigUint;

    fn verdict_string(numer: u64, denom: u64, digits: [u32; 2]) -> String {
        let set = MissingDigitSet::new(3, digits).unwrap();
        let x = ReducedRational::new(BigUint::from(numer), BigUint::from(denom)).unwrap();
        render_verdict(&decide_membership(&x, &set, 100_000), 3).unwrap()
    }

    #[test]
    fn member_cycle_notation() {
        assert_eq!(verdict_string(1, 120, [0, 2]), "0.0(0002)");
        assert_eq!(verdict_string(1, 10, [0, 2]), "0.(0022)");
        assert_eq!(verdict_string(1, 1, [0, 2]), "0.(2)");
    }

    #[test]
    fn terminating_forms() {
        // 1/3 = 0.1 is a member of K_{3,{0,2}} only through its twin
        // expansion 0.0(2); under {0,1} the finite form works directly.
        assert_eq!(verdict_string(1, 3, [0, 2]), "0.0(2)");
        assert_eq!(verdict_string(1, 3, [0, 1]), "0.1(0)");
    }

    #[test]
    fn offender_bracketing() {
        // 1/2 = 0.(1): the first digit already offends under {0,2}.
        assert_eq!(verdict_string(1, 2, [0, 2]), "0.[1]11…");
        // 4/9 = 0.11 terminating: first digit offends, zeros follow.
        assert_eq!(verdict_string(4, 9, [0, 2]), "0.[1]10…");
        // 1/3 under {1,2}: the finite digit passes, the trailing zeros offend.
        assert_eq!(verdict_string(1, 3, [1, 2]), "0.1[0]00…");
    }

    #[test]
    fn long_prefixes_are_elided() {
        let witness = Witness::Terminating {
            digits: vec![2, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 2, 0, 2, 1],
            via_alternative: false,
        };
        // Offender at position 19: 18 leading digits collapse to both ends.
        assert_eq!(render_non_member(&witness, 19, 3), "0.22…02[1]00…");
        // Offender at position 17 sits exactly at the threshold: no elision.
        let short = Witness::Terminating {
            digits: vec![0; 16],
            via_alternative: false,
        };
        assert_eq!(render_non_member(&short, 17, 3), "0.0000000000000000[0]00…");
    }

    #[test]
    fn wide_bases_separate_digits() {
        assert_eq!(digits_string(&[3, 11, 0], 12), "3,11,0");
        assert_eq!(digits_string(&[3, 1, 0], 4), "310");
    }

    #[test]
    fn rationals_render_reduced() {
        use num_bigint::BigInt;
        let four = BigRational::from_integer(BigInt::from(4));
        assert_eq!(rational_str(&four), "4");
        let frac = BigRational::new(BigInt::from(-7), BigInt::from(6));
        assert_eq!(rational_str(&frac), "-7/6");
    }
}

//! Command-line front end: exact base-`m` expansions, membership
//! queries against missing-digit sets, family verification sweeps,
//! reproducible tables, cutoff reports, and the embedded property
//! suites.
//!
//! Exit codes: 0 success/conclusive, 1 self-test failure, 2 usage
//! error, 3 inconclusive verification (digit cap exhausted).

mod render;

use std::io::Write;
use std::num::NonZeroUsize;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_rational::BigRational;
use rayon::prelude::*;

use kmd::expansion::{decide_membership, expand, Membership, MissingDigitSet, ReducedRational};
use kmd::numtheory::small_primes;
use kmd::selftest::{self, SelfTestConfig};
use kmd::sequences::{
    base_power_family, factorial_family, fibonacci_family, polynomial_family,
    superfactorial_family, FamilyBound, FamilySpec, PolynomialSpec,
};

use render::{digits_string, rational_str, render_expansion, render_verdict};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let mut out = std::io::BufWriter::new(stdout.lock());
    match run(cli, &mut out) {
        Ok(code) => {
            drop(out.flush());
            ExitCode::from(code)
        }
        Err(err) => {
            drop(out.flush());
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli, out: &mut impl Write) -> Result<u8> {
    match cli.command {
        Command::Expand(args) => cmd_expand(args, out),
        Command::Member(args) => cmd_member(args, out),
        Command::Verify(args) => cmd_verify(args, out),
        Command::Table(args) => cmd_table(args, out),
        Command::Cutoff(args) => cmd_cutoff(args, out),
        Command::Selftest(args) => cmd_selftest(args, out),
    }
}

// ---------------------------------------------------------------------------
// Argument surface
// ---------------------------------------------------------------------------

#[derive(Parser)]
#[command(
    name = "kmd",
    version,
    about = "Exact membership of rationals in missing-digit sets",
    long_about = "Decides, in exact integer arithmetic, whether rationals — in \
particular reciprocals of structured products such as factorials or Fibonacci \
products — admit a base-m expansion using only an allowed digit subset, and \
verifies the finiteness certificates that bound where members can occur."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the exact base-m expansion of u/v with its cycle structure
    Expand(ExpandArgs),
    /// Decide whether u/v belongs to a missing-digit set
    Member(MemberArgs),
    /// Sweep a family below its cutoff and report the exact member set
    Verify(VerifyArgs),
    /// Emit the per-index verification table for a family
    Table(TableArgs),
    /// Report a family's cutoff ingredients and check its tail window
    Cutoff(CutoffArgs),
    /// Run the embedded cross-check suites
    Selftest(SelftestArgs),
}

#[derive(Args)]
struct SetArgs {
    /// Expansion base m (at least 3)
    #[arg(short = 'm', long = "base", alias = "m", default_value_t = 3)]
    base: u32,
    /// Allowed digits, comma-separated, each in [0, m)
    #[arg(long, default_value = "0,2")]
    digits: String,
}

impl SetArgs {
    fn build(&self) -> Result<MissingDigitSet> {
        let digits = parse_digit_list(&self.digits)?;
        MissingDigitSet::new(self.base, digits).map_err(|e| anyhow!(e))
    }
}

#[derive(Args)]
struct FamilyArgs {
    /// Family: factorial | superfactorial | polynomial | fibonacci | mk
    #[arg(value_name = "FAMILY")]
    family_pos: Option<String>,
    /// Same as the positional FAMILY argument
    #[arg(long = "family", value_name = "FAMILY", conflicts_with = "family_pos")]
    family_flag: Option<String>,
    #[command(flatten)]
    set: SetArgs,
    /// Polynomial coefficients, highest degree first (polynomial family)
    #[arg(long, default_value = "1,0,1")]
    poly: String,
}

impl FamilyArgs {
    fn build(&self) -> Result<FamilySpec> {
        let name = self
            .family_pos
            .as_deref()
            .or(self.family_flag.as_deref())
            .ok_or_else(|| {
                anyhow!("no family given; pass one of factorial, superfactorial, polynomial, fibonacci, mk")
            })?;
        let set = self.set.build()?;
        let family = match name {
            "factorial" => factorial_family(&set, smallest_nondividing_prime(set.base())),
            "superfactorial" => superfactorial_family(&set, smallest_nondividing_prime(set.base())),
            "polynomial" => {
                let poly = PolynomialSpec::parse(&self.poly).map_err(|e| anyhow!(e))?;
                polynomial_family(poly, &set)
            }
            "fibonacci" => fibonacci_family(&set),
            "mk" | "base-powers" => base_power_family(&set),
            other => bail!(
                "unknown family '{other}'; available: factorial, superfactorial, polynomial, fibonacci, mk"
            ),
        };
        family.map_err(|e| anyhow!(e))
    }
}

#[derive(Args)]
struct SweepArgs {
    /// First index n (default 1)
    #[arg(long)]
    from: Option<u64>,
    /// One past the last index (default: the family's cutoff)
    #[arg(long)]
    to: Option<u64>,
    /// Maximum digits any single scan may emit
    #[arg(long, default_value_t = 1_000_000)]
    cap: usize,
    /// Worker threads (default: available parallelism)
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Args)]
struct ExpandArgs {
    /// Numerator u
    u: String,
    /// Denominator v (the value u/v must lie in (0, 1])
    v: String,
    /// Expansion base m (at least 3)
    #[arg(short = 'm', long = "base", alias = "m", default_value_t = 3)]
    base: u32,
    /// Also report membership for these allowed digits (comma-separated)
    #[arg(long)]
    digits: Option<String>,
    /// Maximum digits the scan may emit
    #[arg(long, default_value_t = 1_000_000)]
    cap: usize,
    /// Maximum digits to display before truncating
    #[arg(long, default_value_t = 120)]
    max_display: usize,
}

#[derive(Args)]
struct MemberArgs {
    /// Numerator u
    u: String,
    /// Denominator v (the value u/v must lie in (0, 1])
    v: String,
    #[command(flatten)]
    set: SetArgs,
    /// Maximum digits the scan may emit
    #[arg(long, default_value_t = 1_000_000)]
    cap: usize,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[command(flatten)]
    sweep: SweepArgs,
}

#[derive(Args)]
struct TableArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[command(flatten)]
    sweep: SweepArgs,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct CutoffArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Length of the tail window checked past the cutoff
    #[arg(long, default_value_t = 200)]
    window: u64,
}

#[derive(Args)]
struct SelftestArgs {
    /// Run a single suite by exact name
    #[arg(long)]
    suite: Option<String>,
    /// Corrupt one pinned table entry to demonstrate fault detection
    #[arg(long)]
    inject_golden_fault: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Markdown,
}

// ---------------------------------------------------------------------------
// Shared plumbing
// ---------------------------------------------------------------------------

fn parse_digit_list(s: &str) -> Result<Vec<u32>> {
    s.split(',')
        .map(|part| {
            part.trim()
                .parse::<u32>()
                .with_context(|| format!("invalid digit '{}'", part.trim()))
        })
        .collect()
}

fn parse_big(label: &str, s: &str) -> Result<BigUint> {
    s.parse::<BigUint>()
        .map_err(|_| anyhow!("invalid {label} '{s}': expected a nonnegative integer"))
}

fn smallest_nondividing_prime(base: u32) -> u64 {
    u64::from(
        *small_primes()
            .iter()
            .find(|&&p| !base.is_multiple_of(p))
            .expect("some prime below 10 misses any base"),
    )
}

fn resolve_workers(requested: Option<usize>) -> Result<usize> {
    match requested {
        Some(0) => bail!("--workers must be at least 1"),
        Some(w) => Ok(w),
        None => Ok(std::thread::available_parallelism()
            .map(NonZeroUsize::get)
            .unwrap_or(1)),
    }
}

fn resolve_range(family: &FamilySpec, sweep: &SweepArgs) -> Result<(u64, u64)> {
    let (default_from, default_to) = family.default_range();
    let from = sweep.from.unwrap_or(default_from);
    let to = sweep.to.unwrap_or(default_to);
    if from < 1 {
        bail!("--from must be at least 1");
    }
    if to <= from {
        bail!("empty index range [{from}, {to})");
    }
    Ok((from, to))
}

fn format_set(set: &MissingDigitSet) -> String {
    let digits: Vec<String> = set.digits().iter().map(|d| d.to_string()).collect();
    format!("base {}, digits {{{}}}", set.base(), digits.join(","))
}

fn format_member_set(members: &[u64]) -> String {
    if members.is_empty() {
        "∅".to_string()
    } else {
        let items: Vec<String> = members.iter().map(|n| n.to_string()).collect();
        format!("{{{}}}", items.join(", "))
    }
}

/// One sweep result: the verdict plus the exact bound ingredients.
struct Row {
    n: u64,
    membership: Membership,
    alpha: BigRational,
    rhs: BigRational,
}

fn build_rows(
    family: &FamilySpec,
    from: u64,
    to: u64,
    cap: usize,
    workers: usize,
) -> Result<Vec<Row>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .context("building worker pool")?;
    // Indexed parallel collect preserves index order, so the output is
    // deterministic regardless of worker count.
    Ok(pool.install(|| {
        (from..to)
            .into_par_iter()
            .map(|n| Row {
                n,
                membership: family.membership(n, cap),
                alpha: family.alpha(n),
                rhs: family.bound_rhs(n),
            })
            .collect()
    }))
}

fn print_family_header(family: &FamilySpec, out: &mut impl Write) -> Result<()> {
    writeln!(out, "family: {} — {}", family.name(), family.description())?;
    writeln!(out, "digit set: {}", format_set(family.digit_set()))?;
    let params = family.obstruction();
    writeln!(
        out,
        "auxiliary prime p0 = {}, overhead t = {}, constant c = {}",
        params.p0(),
        params.overhead(),
        rational_str(params.korobov())
    )?;
    Ok(())
}

fn print_tail_window(family: &FamilySpec, window: u64, out: &mut impl Write) -> Result<()> {
    match family.certified_cutoff() {
        Some(cutoff) => {
            writeln!(out, "certified cutoff: {cutoff}")?;
            let end = cutoff + window;
            match family
                .first_tail_violation(cutoff, end)
                .map_err(|e| anyhow!(e))?
            {
                None => writeln!(
                    out,
                    "tail window [{cutoff}, {end}): cutoff holds at every index"
                )?,
                Some(n) => writeln!(
                    out,
                    "tail window [{cutoff}, {end}): WARNING — cutoff fails at n = {n}"
                )?,
            }
        }
        None => writeln!(
            out,
            "certified cutoff: none established for this configuration"
        )?,
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

fn cmd_expand(args: ExpandArgs, out: &mut impl Write) -> Result<u8> {
    let u = parse_big("numerator", &args.u)?;
    let v = parse_big("denominator", &args.v)?;
    let x = ReducedRational::new(u, v).map_err(|e| anyhow!(e))?;
    let base = args.base;
    if base < 3 {
        bail!("base must be at least 3, got {base}");
    }
    let set = args.digits.as_deref().map(parse_digit_list).transpose()?;

    let mut code = 0u8;
    if x.is_unit() {
        writeln!(
            out,
            "{}/{} = 0.({}) (unit identity: the all-{} expansion)",
            x.numer(),
            x.denom(),
            base - 1,
            base - 1
        )?;
    } else {
        let report = expand(&x, base, args.cap).map_err(|e| anyhow!(e))?;
        writeln!(
            out,
            "{}/{} = {}",
            x.numer(),
            x.denom(),
            render_expansion(&report, base, args.max_display)
        )?;
        match &report.cycle {
            Some(cycle) => {
                writeln!(
                    out,
                    "preperiod {} digit(s), period {}",
                    cycle.start,
                    cycle.period_len()
                )?;
                // A denominator whose primes all divide the base yields a
                // terminating expansion: the cycle is the single digit 0.
                if cycle.period_len() == 1 && report.digits[cycle.start] == 0 {
                    let finite = &report.digits[..cycle.start];
                    let mut twin = finite.to_vec();
                    *twin.last_mut().expect("terminating head is nonempty") -= 1;
                    writeln!(
                        out,
                        "terminating: 0.{}; twin expansion 0.{}({})",
                        digits_string(finite, base),
                        digits_string(&twin, base),
                        base - 1
                    )?;
                }
            }
            None => {
                writeln!(
                    out,
                    "cycle not closed within {} digits; raise --cap",
                    report.digits.len()
                )?;
                code = 3;
            }
        }
    }

    if let Some(digits) = set {
        let set = MissingDigitSet::new(base, digits).map_err(|e| anyhow!(e))?;
        let verdict = decide_membership(&x, &set, args.cap);
        code = code.max(print_verdict_lines(&x, &set, &verdict, out)?);
    }
    Ok(code)
}

fn print_verdict_lines(
    x: &ReducedRational,
    set: &MissingDigitSet,
    verdict: &Membership,
    out: &mut impl Write,
) -> Result<u8> {
    let label = format!("{}/{} in {}", x.numer(), x.denom(), format_set(set));
    match verdict {
        Membership::Member(_) => {
            writeln!(out, "{label}: member")?;
            writeln!(
                out,
                "admissible expansion: {}",
                render_verdict(verdict, set.base()).expect("decided")
            )?;
            if let Some(period) = verdict.period_len() {
                writeln!(out, "eventual period: {period}")?;
            }
            Ok(0)
        }
        Membership::NonMember {
            first_offending, ..
        } => {
            writeln!(out, "{label}: non-member")?;
            writeln!(
                out,
                "first offending digit at position {first_offending}: {}",
                render_verdict(verdict, set.base()).expect("decided")
            )?;
            Ok(0)
        }
        Membership::Inconclusive { digits_emitted } => {
            writeln!(
                out,
                "{label}: inconclusive after {digits_emitted} digits; raise --cap"
            )?;
            Ok(3)
        }
    }
}

fn cmd_member(args: MemberArgs, out: &mut impl Write) -> Result<u8> {
    let u = parse_big("numerator", &args.u)?;
    let v = parse_big("denominator", &args.v)?;
    let x = ReducedRational::new(u, v).map_err(|e| anyhow!(e))?;
    let set = args.set.build()?;
    let verdict = decide_membership(&x, &set, args.cap);
    print_verdict_lines(&x, &set, &verdict, out)
}

fn cmd_verify(args: VerifyArgs, out: &mut impl Write) -> Result<u8> {
    let family = args.family.build()?;
    let (from, to) = resolve_range(&family, &args.sweep)?;
    let workers = resolve_workers(args.sweep.workers)?;
    let rows = build_rows(&family, from, to, args.sweep.cap, workers)?;
    let base = family.digit_set().base();

    print_family_header(&family, out)?;
    print_tail_window(&family, 200, out)?;
    writeln!(out, "sweep n in [{from}, {to}):")?;

    let mut members = Vec::new();
    let mut inconclusive = Vec::new();
    for row in &rows {
        match &row.membership {
            Membership::Member(_) => {
                members.push(row.n);
                writeln!(
                    out,
                    "  n={:<4} member        {}",
                    row.n,
                    render_verdict(&row.membership, base).expect("decided")
                )?;
            }
            Membership::NonMember {
                first_offending, ..
            } => {
                writeln!(
                    out,
                    "  n={:<4} non-member    first offending digit at position {:<6} {}",
                    row.n,
                    first_offending,
                    render_verdict(&row.membership, base).expect("decided")
                )?;
            }
            Membership::Inconclusive { digits_emitted } => {
                inconclusive.push(row.n);
                writeln!(
                    out,
                    "  n={:<4} INCONCLUSIVE  cap exhausted after {digits_emitted} digits",
                    row.n
                )?;
            }
        }
    }

    let default_range = (from, to) == family.default_range();
    if default_range && family.certified_cutoff().is_some() {
        writeln!(out, "members: {}", format_member_set(&members))?;
    } else {
        writeln!(
            out,
            "members in [{from}, {to}): {}",
            format_member_set(&members)
        )?;
    }
    if inconclusive.is_empty() {
        writeln!(out, "conclusive: yes")?;
        Ok(0)
    } else {
        writeln!(
            out,
            "conclusive: no — {} index(es) hit the digit cap: {}",
            inconclusive.len(),
            format_member_set(&inconclusive)
        )?;
        Ok(3)
    }
}

fn cmd_table(args: TableArgs, out: &mut impl Write) -> Result<u8> {
    let family = args.family.build()?;
    let (from, to) = resolve_range(&family, &args.sweep)?;
    let workers = resolve_workers(args.sweep.workers)?;
    let rows = build_rows(&family, from, to, args.sweep.cap, workers)?;
    let base = family.digit_set().base();

    let mut any_inconclusive = false;
    match args.format {
        Format::Csv => {
            writeln!(
                out,
                "n,member,first_offending,period_length,alpha,bound_rhs_num,bound_rhs_den"
            )?;
            for row in &rows {
                let member = match row.membership.verdict() {
                    Some(true) => "true",
                    Some(false) => "false",
                    None => "",
                };
                let first = row
                    .membership
                    .first_offending()
                    .map(|p| p.to_string())
                    .unwrap_or_default();
                let period = match row.membership.verdict() {
                    Some(true) => row
                        .membership
                        .period_len()
                        .map(|p| p.to_string())
                        .unwrap_or_default(),
                    _ => String::new(),
                };
                any_inconclusive |= row.membership.verdict().is_none();
                writeln!(
                    out,
                    "{},{},{},{},{},{},{}",
                    row.n,
                    member,
                    first,
                    period,
                    rational_str(&row.alpha),
                    row.rhs.numer(),
                    row.rhs.denom()
                )?;
            }
        }
        Format::Text | Format::Markdown => {
            let markdown = args.format == Format::Markdown;
            if markdown {
                writeln!(
                    out,
                    "| n | member | first offending | period | alpha | bound rhs | expansion |"
                )?;
                writeln!(out, "|---:|:---|---:|---:|---:|---:|:---|")?;
            } else {
                writeln!(
                    out,
                    "{:>5}  {:<12}{:>16}{:>8}  expansion",
                    "n", "member", "first offending", "period"
                )?;
            }
            for row in &rows {
                let (member, first, period) = match &row.membership {
                    Membership::Member(_) => (
                        "member",
                        "-".to_string(),
                        row.membership
                            .period_len()
                            .map(|p| p.to_string())
                            .unwrap_or_default(),
                    ),
                    Membership::NonMember {
                        first_offending, ..
                    } => ("non-member", first_offending.to_string(), "-".to_string()),
                    Membership::Inconclusive { .. } => {
                        any_inconclusive = true;
                        ("INCONCLUSIVE", "-".to_string(), "-".to_string())
                    }
                };
                let prefix = render_verdict(&row.membership, base)
                    .unwrap_or_else(|| "cap exhausted".to_string());
                if markdown {
                    writeln!(
                        out,
                        "| {} | {} | {} | {} | {} | {} | `{}` |",
                        row.n,
                        member,
                        first,
                        period,
                        rational_str(&row.alpha),
                        rational_str(&row.rhs),
                        prefix
                    )?;
                } else {
                    writeln!(
                        out,
                        "{:>5}  {:<12}{:>16}{:>8}  {}",
                        row.n, member, first, period, prefix
                    )?;
                }
            }
        }
    }
    Ok(if any_inconclusive { 3 } else { 0 })
}

fn cmd_cutoff(args: CutoffArgs, out: &mut impl Write) -> Result<u8> {
    let family = args.family.build()?;
    print_family_header(&family, out)?;
    match family.bound() {
        FamilyBound::Structural(_) => writeln!(
            out,
            "bound: structural route (γ(n) caps the p0-valuation of the radical order)"
        )?,
        FamilyBound::LargestPrime(_) => writeln!(
            out,
            "bound: largest-prime route (β(n) caps every prime factor of the reduced product)"
        )?,
    }
    print_tail_window(&family, args.window, out)?;
    Ok(0)
}

fn cmd_selftest(args: SelftestArgs, out: &mut impl Write) -> Result<u8> {
    let config = SelfTestConfig {
        inject_golden_fault: args.inject_golden_fault,
    };
    let outcomes = selftest::run(args.suite.as_deref(), &config);
    if outcomes.is_empty() {
        let names: Vec<&str> = selftest::suites().iter().map(|s| s.name).collect();
        bail!(
            "unknown suite '{}'; available: {}",
            args.suite.as_deref().unwrap_or(""),
            names.join(", ")
        );
    }
    let mut failed = 0usize;
    for outcome in &outcomes {
        if outcome.passed() {
            writeln!(out, "PASS {:<22} ({} cases)", outcome.name, outcome.cases)?;
        } else {
            failed += 1;
            writeln!(
                out,
                "FAIL {:<22} ({} cases, {} violation(s))",
                outcome.name,
                outcome.cases,
                outcome.violations.len()
            )?;
            for violation in &outcome.violations {
                writeln!(out, "      - {violation}")?;
            }
        }
        for note in &outcome.notes {
            writeln!(out, "      note: {note}")?;
        }
    }
    writeln!(
        out,
        "{} suite(s): {} passed, {} failed",
        outcomes.len(),
        outcomes.len() - failed,
        failed
    )?;
    Ok(if failed > 0 { 1 } else { 0 })
}

//! `rk` — rational knot toolbox.
//!
//! Subcommands expose the library one module at a time: `knot` classifies a
//! single knot and prints its invariants, `census` enumerates by crossing
//! number, `series` expands generating functions, `lens` counts lens
//! spaces, `monoid` runs the matrix-monoid verifiers, and `verify` runs the
//! named PASS/FAIL suites.
//!
//! Exit codes: 0 ok, 1 verification failure, 2 usage error, 3 domain error
//! (e.g. an even determinant). All output is machine-readable; large
//! integers and exact rationals are serialized as decimal strings.

use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;

use rational_knots::census::{
    census, census_u1_by_determinant, csv_header, csv_row, enumerate_even_words, CensusFilter,
    Flag,
};
use rational_knots::fraction::{ConwayWord, KnotClass};
use rational_knots::invariants::InvariantSet;
use rational_knots::lens::{
    elliptic_search, lens_csv_header, lens_csv_row, lens_row, lens_sweep, sn_search,
};
use rational_knots::monoid::{verify_cnj1, verify_k_pos, verify_m1_1, verify_pppp};
use rational_knots::series::{
    build_g1, diagonal_sigma0, expand, gf_catalog, mean_statistics, select_j, TruncatedSeries,
};
use rational_knots::verify::run_suite;

#[derive(Parser)]
#[command(name = "rk", version, about = "rational (2-bridge) knot toolbox")]
struct Cli {
    /// Worker-thread cap for censuses and sweeps (default: all cores, or
    /// the RATIONAL_KNOTS_THREADS environment variable). Results do not
    /// depend on this setting.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify one knot and print its invariants as JSON.
    Knot(KnotArgs),
    /// Census by crossing number.
    Census(CensusArgs),
    /// Expand a generating function or the signature pipeline.
    Series(SeriesArgs),
    /// Lens-space counts by fundamental group.
    Lens(LensArgs),
    /// Matrix-monoid proposition verifiers.
    Monoid(MonoidArgs),
    /// Run a named verification suite and print PASS/FAIL lines.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct KnotArgs {
    /// Schubert input "p/q".
    input: Option<String>,
    /// Conway word input, comma-separated, e.g. "2,-2,2,-2".
    #[arg(long)]
    word: Option<String>,
    /// Normal form of --word: even | positive.
    #[arg(long, default_value = "even")]
    form: String,
}

#[derive(Args)]
struct CensusArgs {
    /// Crossing number, or inclusive range "lo-hi".
    #[arg(long)]
    n: String,
    /// Flags every counted knot must have (fibered, positive, achiral, u1,
    /// bleiler_counterexample, sigma_zero).
    #[arg(long, value_delimiter = ',')]
    require: Vec<String>,
    /// Flags no counted knot may have.
    #[arg(long, value_delimiter = ',')]
    forbid: Vec<String>,
    /// Count chiral pairs twice.
    #[arg(long)]
    pairs_twice: bool,
    /// Output format: json | csv.
    #[arg(long, default_value = "json")]
    format: String,
    /// Dump the canonical words, one per line, instead of a report.
    #[arg(long)]
    dump_words: bool,
    /// Unknotting-number-one census by determinant instead of crossing
    /// number: pass the odd determinant p.
    #[arg(long)]
    u1_by_determinant: Option<u64>,
    /// Sum of |signature| over all knots of n crossings (dynamic program).
    #[arg(long)]
    sum_abs_signature: bool,
}

#[derive(Args)]
struct SeriesArgs {
    /// Catalog name (fibered, positive, u1, non-counterexample, genus,
    /// braid, p-seq, q-seq, fibonacci, ...).
    #[arg(long)]
    gf: Option<String>,
    /// Pipeline output: g1 | j | f0.
    #[arg(long)]
    pipeline: Option<String>,
    /// Exact mean genus and mean |signature| per crossing number.
    #[arg(long)]
    means: bool,
    /// Truncation order (maximum x-degree).
    #[arg(long, default_value_t = 20)]
    order: u32,
}

#[derive(Args)]
struct LensArgs {
    /// Single determinant p (odd, ≥ 5): JSON row.
    #[arg(long)]
    p: Option<u64>,
    /// Sweep all odd 5 ≤ p ≤ MAX as CSV.
    #[arg(long)]
    sweep: Option<u64>,
    /// Search q_s = 2n²+2n+1 for s ≤ MAX_S.
    #[arg(long)]
    sn_search: Option<u32>,
    /// Search integer points on y² = 3x⁴+2x²-5 for |x| ≤ MAX.
    #[arg(long)]
    elliptic: Option<u64>,
}

#[derive(Args)]
struct MonoidArgs {
    /// Proposition: pppp | cnj1 | m1_1 | k_pos.
    #[arg(long)]
    prop: String,
    /// Depth / word length (pppp, cnj1, m1_1).
    #[arg(long, default_value_t = 4)]
    depth: u32,
    /// Entry bound on p (pppp, k_pos).
    #[arg(long, default_value_t = 10_000)]
    p_max: u64,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite: table1 | fibonacci | series | signature | lens | monoid | all.
    #[arg(long)]
    suite: String,
    /// Largest crossing number the suite checks.
    #[arg(long, default_value_t = 18)]
    max_n: u64,
}

/// Domain-error exit per the interface contract.
const EXIT_DOMAIN: u8 = 3;
const EXIT_FAIL: u8 = 1;

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads(cli.threads);
    let result = match cli.command {
        Command::Knot(args) => cmd_knot(args),
        Command::Census(args) => cmd_census(args),
        Command::Series(args) => cmd_series(args),
        Command::Lens(args) => cmd_lens(args),
        Command::Monoid(args) => cmd_monoid(args),
        Command::Verify(args) => cmd_verify(args),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                rational_knots::Error::Parse(_) | rational_knots::Error::UnknownGf(_) => 2,
                _ => EXIT_DOMAIN,
            };
            ExitCode::from(code)
        }
    }
}

#[cfg(feature = "parallel")]
fn configure_threads(cli_threads: Option<usize>) {
    let threads = cli_threads.or_else(|| {
        std::env::var("RATIONAL_KNOTS_THREADS").ok().and_then(|v| v.parse().ok())
    });
    if let Some(n) = threads {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

#[cfg(not(feature = "parallel"))]
fn configure_threads(_: Option<usize>) {}

fn cmd_knot(args: KnotArgs) -> rational_knots::Result<ExitCode> {
    let class = match (&args.input, &args.word) {
        (Some(input), None) => {
            let (ps, qs) = input.split_once('/').ok_or_else(|| {
                rational_knots::Error::Parse(format!("expected p/q, got '{input}'"))
            })?;
            let p = BigInt::from_str(ps.trim())
                .map_err(|_| rational_knots::Error::Parse(format!("bad numerator '{ps}'")))?;
            let q = BigInt::from_str(qs.trim())
                .map_err(|_| rational_knots::Error::Parse(format!("bad denominator '{qs}'")))?;
            KnotClass::classify_fraction(&p, &q)?
        }
        (None, Some(word)) => {
            let w = ConwayWord::parse(word)?;
            let ok = match args.form.as_str() {
                "even" => w.is_even_form(),
                "positive" => w.is_positive_form(),
                other => {
                    return Err(rational_knots::Error::Parse(format!(
                        "unknown form '{other}' (expected even or positive)"
                    )))
                }
            };
            if !ok {
                return Err(rational_knots::Error::InvalidWord(format!(
                    "word {w} is not in {} form",
                    args.form
                )));
            }
            KnotClass::classify_word(&w)?
        }
        _ => {
            return Err(rational_knots::Error::Parse(
                "pass exactly one of p/q or --word".into(),
            ))
        }
    };
    let inv = InvariantSet::compute(&class);
    let mut value = serde_json::to_value(&inv).expect("invariants serialize");
    let obj = value.as_object_mut().unwrap();
    obj.insert("canonical_pair".into(), class.canonical.to_string().into());
    obj.insert("even_word".into(), class.even_word.to_string().into());
    obj.insert("positive_word".into(), class.positive_word.to_string().into());
    println!("{}", serde_json::to_string(&value).unwrap());
    Ok(ExitCode::SUCCESS)
}

fn parse_flags(names: &[String]) -> rational_knots::Result<Vec<Flag>> {
    names.iter().map(|s| Flag::from_str(s)).collect()
}

fn parse_range(text: &str) -> rational_knots::Result<(u64, u64)> {
    if let Some((lo, hi)) = text.split_once('-') {
        let lo = lo.parse().map_err(|_| rational_knots::Error::Parse(text.into()))?;
        let hi = hi.parse().map_err(|_| rational_knots::Error::Parse(text.into()))?;
        Ok((lo, hi))
    } else {
        let n = text.parse().map_err(|_| rational_knots::Error::Parse(text.into()))?;
        Ok((n, n))
    }
}

fn cmd_census(args: CensusArgs) -> rational_knots::Result<ExitCode> {
    if let Some(p) = args.u1_by_determinant {
        if p < 5 || p % 2 == 0 {
            return Err(rational_knots::Error::InvalidPair(format!(
                "u1 census needs odd p ≥ 5, got {p}"
            )));
        }
        let unoriented = census_u1_by_determinant(p, false);
        let oriented = census_u1_by_determinant(p, true);
        println!(
            "{}",
            serde_json::json!({"p": p, "u1_unoriented": unoriented, "u1_oriented": oriented})
        );
        return Ok(ExitCode::SUCCESS);
    }
    let (lo, hi) = parse_range(&args.n)?;
    if lo < 3 || hi < lo {
        return Err(rational_knots::Error::Parse(format!("bad crossing range '{}'", args.n)));
    }
    if args.sum_abs_signature {
        for (n, v) in rational_knots::census::sum_abs_signature_upto(hi)
            .iter()
            .enumerate()
            .take(hi as usize + 1)
            .skip(lo as usize)
        {
            println!("{}", serde_json::json!({"n": n, "sum_abs_signature": v.to_string()}));
        }
        return Ok(ExitCode::SUCCESS);
    }
    if args.dump_words {
        for n in lo..=hi {
            for w in enumerate_even_words(n) {
                println!("{w}");
            }
        }
        return Ok(ExitCode::SUCCESS);
    }
    let filter = CensusFilter {
        require: parse_flags(&args.require)?,
        forbid: parse_flags(&args.forbid)?,
        count_chiral_pairs_twice: args.pairs_twice,
    };
    match args.format.as_str() {
        "json" => {
            for n in lo..=hi {
                let report = census(n, &filter);
                println!("{}", serde_json::to_string(&report).unwrap());
            }
        }
        "csv" => {
            println!("{}", csv_header());
            for n in lo..=hi {
                println!("{}", csv_row(&census(n, &filter)));
            }
        }
        other => {
            return Err(rational_knots::Error::Parse(format!("unknown format '{other}'")))
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn print_univariate(coeffs: &[BigInt]) {
    let zero = BigInt::from(0);
    let first = coeffs.iter().position(|c| *c != zero).unwrap_or(0);
    let parts: Vec<String> = coeffs[first..].iter().map(|c| c.to_string()).collect();
    println!("{}", parts.join(","));
}

fn print_trivariate(s: &TruncatedSeries) {
    for (m, l, k, c) in s.monomials() {
        println!("x^{m} y^{l} z^{k} : {c}");
    }
}

fn cmd_series(args: SeriesArgs) -> rational_knots::Result<ExitCode> {
    if args.means {
        for row in mean_statistics(args.order) {
            println!(
                "{}",
                serde_json::json!({
                    "n": row.n,
                    "total": row.total.to_string(),
                    "mean_genus": format!("{}/{}", row.mean_genus.numer(), row.mean_genus.denom()),
                    "mean_abs_signature": format!(
                        "{}/{}",
                        row.mean_abs_signature.numer(),
                        row.mean_abs_signature.denom()
                    ),
                })
            );
        }
        return Ok(ExitCode::SUCCESS);
    }
    if let Some(name) = &args.pipeline {
        let pipe = build_g1(args.order);
        match name.as_str() {
            "g1" => print_trivariate(&pipe.g1),
            "j" => print_trivariate(&select_j(&pipe)),
            "f0" => print_univariate(&diagonal_sigma0(&pipe.g1)),
            other => {
                return Err(rational_knots::Error::Parse(format!(
                    "unknown pipeline '{other}' (expected g1, j or f0)"
                )))
            }
        }
        return Ok(ExitCode::SUCCESS);
    }
    let Some(name) = &args.gf else {
        return Err(rational_knots::Error::Parse(
            "pass one of --gf NAME, --pipeline NAME or --means".into(),
        ));
    };
    let gf = gf_catalog(name)?;
    let series = expand(&gf, args.order);
    // Univariate catalog entries dump as a coefficient list, bivariate
    // ones as monomials.
    let univariate = series.monomials().iter().all(|&(_, l, k, _)| l == 0 && k == 0);
    if univariate {
        print_univariate(&series.univariate_ints());
    } else {
        print_trivariate(&series);
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_lens(args: LensArgs) -> rational_knots::Result<ExitCode> {
    if let Some(p) = args.p {
        if p < 5 || p % 2 == 0 {
            return Err(rational_knots::Error::InvalidPair(format!(
                "lens rows need odd p ≥ 5, got {p}"
            )));
        }
        println!("{}", serde_json::to_string(&lens_row(p)).unwrap());
        return Ok(ExitCode::SUCCESS);
    }
    if let Some(max) = args.sweep {
        println!("{}", lens_csv_header());
        for row in lens_sweep(max) {
            println!("{}", lens_csv_row(&row));
        }
        return Ok(ExitCode::SUCCESS);
    }
    if let Some(max_s) = args.sn_search {
        let hits = sn_search(max_s);
        let rendered: Vec<_> = hits
            .iter()
            .map(|(s, n)| serde_json::json!({"s": s, "n": n.to_string()}))
            .collect();
        println!("{}", serde_json::json!({"max_s": max_s, "solutions": rendered}));
        return Ok(ExitCode::SUCCESS);
    }
    if let Some(max_x) = args.elliptic {
        let xs = elliptic_search(max_x);
        println!("{}", serde_json::json!({"max_x": max_x, "points_x": xs}));
        return Ok(ExitCode::SUCCESS);
    }
    Err(rational_knots::Error::Parse(
        "pass one of --p, --sweep, --sn-search or --elliptic".into(),
    ))
}

fn cmd_monoid(args: MonoidArgs) -> rational_knots::Result<ExitCode> {
    let report = match args.prop.as_str() {
        "pppp" => verify_pppp(args.depth, args.p_max),
        "cnj1" => verify_cnj1(args.depth),
        "m1_1" => verify_m1_1(args.depth),
        "k_pos" => verify_k_pos(args.p_max),
        other => {
            return Err(rational_knots::Error::Parse(format!(
                "unknown proposition '{other}' (expected pppp, cnj1, m1_1 or k_pos)"
            )))
        }
    };
    println!("{}", serde_json::to_string(&report).unwrap());
    Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(EXIT_FAIL) })
}

fn cmd_verify(args: VerifyArgs) -> rational_knots::Result<ExitCode> {
    let results = run_suite(&args.suite, args.max_n)?;
    let mut all_pass = true;
    for r in &results {
        let status = if r.pass { "PASS" } else { "FAIL" };
        println!("{status}  {}  ({})", r.name, r.detail);
        all_pass &= r.pass;
    }
    Ok(if all_pass { ExitCode::SUCCESS } else { ExitCode::from(EXIT_FAIL) })
}

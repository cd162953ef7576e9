//! Batch command-line front end: sequence tables, continued-fraction dumps,
//! linear-form evaluation, and verification suites.
//!
//! Exit codes: 0 success, 1 a verification check failed, 2 usage or
//! configuration error.  The same invocation always produces the same bytes.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::{One, Signed, Zero};

use crate::analysis::{self, AnalysisError, ErrorFamily, Trend};
use crate::contfrac::{self, CfError, Convergent};
use crate::linforms::{self, LinformError, TermSpec};
use crate::numkit::{self, rat_to_dec, NumError, Rat};
use crate::report::{self, CheckLine, Format, Table};
use crate::sequences::{self, SeqError};

#[derive(Parser)]
#[command(name = "gammacf", version, about = "Rational approximation tables for γ and δ")]
struct Cli {
    /// Working precision in decimal digits (at least 10)
    #[arg(
        short = 'P',
        long = "precision",
        global = true,
        default_value_t = 60,
        value_parser = clap::value_parser!(u64).range(10..)
    )]
    precision: u64,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,

    /// Write output to this file (atomically) instead of standard output
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,

    /// Replace the embedded γ digit table with the one in this file
    #[arg(long = "gamma-digits", global = true, value_name = "FILE")]
    gamma_digits: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Text,
    Csv,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Text => Format::Text,
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum SeqName {
    Gamma,
    Aptekarev,
    Rivoal,
    Stieltjes,
    DeltaCap,
    Discrepancy,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Suite {
    Integrality,
    Telescope,
    CfConsistency,
    Asymptotics,
    LemmaI,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Print a sequence table for n = 0..=max-n
    Seq {
        #[arg(value_enum)]
        name: SeqName,
        /// Largest index to include
        #[arg(long = "max-n")]
        max_n: u64,
    },
    /// Print continued-fraction elements 1..=N and convergents 0..=N
    Cf {
        /// Family name (see `cf --help` for the list)
        #[arg(help = family_help())]
        family: String,
        /// Depth
        #[arg(short = 'N')]
        n: u64,
        /// Family parameter a, as an integer or fraction like 1/2
        #[arg(long)]
        a: Option<String>,
        /// Family parameter z
        #[arg(long)]
        z: Option<String>,
    },
    /// Run a verification suite; exit 1 if any check fails
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// Largest index for integrality, telescope, cf-consistency, lemma-i
        #[arg(long = "max-n")]
        max_n: Option<u64>,
        /// Comma-separated indices for asymptotics and lemma-i
        #[arg(long, value_delimiter = ',', value_name = "N1,N2,...")]
        ns: Option<Vec<u64>>,
    },
    /// Evaluate the linear form of a term-spec file at one index
    Linform {
        /// Path to a term-spec JSON file
        #[arg(long)]
        spec: PathBuf,
        /// Index to evaluate at
        #[arg(short)]
        n: u64,
    },
}

fn family_help() -> String {
    format!("Family name, one of: {}", contfrac::FAMILY_NAMES.join(", "))
}

enum CmdError {
    /// Bad arguments, unreadable files, out-of-range precision: exit 2.
    Usage(String),
    /// A mathematical check failed while producing output: exit 1.
    Check(String),
}

impl From<NumError> for CmdError {
    fn from(e: NumError) -> CmdError {
        CmdError::Usage(e.to_string())
    }
}

impl From<CfError> for CmdError {
    fn from(e: CfError) -> CmdError {
        match e {
            CfError::Degenerate { .. } => CmdError::Check(e.to_string()),
            _ => CmdError::Usage(e.to_string()),
        }
    }
}

impl From<SeqError> for CmdError {
    fn from(e: SeqError) -> CmdError {
        CmdError::Check(e.to_string())
    }
}

impl From<LinformError> for CmdError {
    fn from(e: LinformError) -> CmdError {
        match e {
            LinformError::Num(n) => CmdError::Usage(n.to_string()),
            e => CmdError::Check(e.to_string()),
        }
    }
}

impl From<AnalysisError> for CmdError {
    fn from(e: AnalysisError) -> CmdError {
        match e {
            AnalysisError::TableCorrupt
            | AnalysisError::InsufficientPrecision { .. }
            | AnalysisError::Num(_) => CmdError::Usage(e.to_string()),
            AnalysisError::Linform(l) => l.into(),
            AnalysisError::Cf(c) => c.into(),
            AnalysisError::Seq(s) => s.into(),
        }
    }
}

/// Parse and execute the process arguments; the return value is the exit code.
pub fn run() -> u8 {
    let cli = Cli::parse();
    if let Some(path) = &cli.gamma_digits {
        let text = match std::fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) => {
                eprintln!("error: cannot read {}: {e}", path.display());
                return 2;
            }
        };
        if let Err(e) = numkit::install_gamma_digits(&text) {
            eprintln!("error: {}: {e}", path.display());
            return 2;
        }
    }
    match dispatch(&cli) {
        Ok((content, code)) => match emit(cli.out.as_deref(), &content) {
            Ok(()) => code,
            Err(e) => {
                eprintln!("error: {e}");
                2
            }
        },
        Err(CmdError::Usage(m)) => {
            eprintln!("error: {m}");
            2
        }
        Err(CmdError::Check(m)) => {
            eprintln!("error: {m}");
            1
        }
    }
}

fn emit(out: Option<&Path>, content: &str) -> std::io::Result<()> {
    match out {
        None => {
            print!("{content}");
            Ok(())
        }
        Some(path) => {
            // Temp file in the same directory so the rename cannot cross a
            // filesystem boundary; interrupted runs leave no partial file.
            let mut name = path.file_name().unwrap_or_default().to_os_string();
            name.push(".tmp");
            let tmp = path.with_file_name(name);
            std::fs::write(&tmp, content)?;
            std::fs::rename(&tmp, path)
        }
    }
}

fn dispatch(cli: &Cli) -> Result<(String, u8), CmdError> {
    let format = Format::from(cli.format);
    let p = cli.precision as usize;
    match &cli.command {
        Command::Seq { name, max_n } => {
            let table = seq_table(*name, *max_n)?;
            Ok((report::render(&[table], format), 0))
        }
        Command::Cf { family, n, a, z } => {
            let mut params = BTreeMap::new();
            if let Some(a) = a {
                params.insert("a".to_string(), parse_rat(a, "--a")?);
            }
            if let Some(z) = z {
                params.insert("z".to_string(), parse_rat(z, "--z")?);
            }
            let mut cf = contfrac::cf_family(family, &params)?;
            let elements = cf.elements(*n)?;
            let convergents = cf.convergents(*n)?;
            let tables = report::cf_tables(&elements, &convergents);
            Ok((report::render(&tables, format), 0))
        }
        Command::Verify { suite, max_n, ns } => {
            let checks = run_suite(*suite, *max_n, ns.as_deref(), p)?;
            let failed = checks.iter().any(|c| !c.pass);
            let content = match format {
                Format::Text => report::render_checks_text(&checks),
                _ => report::render(&[report::check_table(&checks)], format),
            };
            Ok((content, if failed { 1 } else { 0 }))
        }
        Command::Linform { spec, n } => {
            let text = std::fs::read_to_string(spec)
                .map_err(|e| CmdError::Usage(format!("cannot read {}: {e}", spec.display())))?;
            let spec: TermSpec = serde_json::from_str(&text)
                .map_err(|e| CmdError::Usage(format!("ill-formed term spec: {e}")))?;
            if !linforms::spec_wellformed(&spec, *n) {
                return Err(CmdError::Check(format!("term spec is not well formed at n = {n}")));
            }
            if !spec.is_proper() {
                eprintln!("warning: improper: gamma coefficient is zero");
            }
            let form = linforms::linform(&spec, *n)?;
            let value = linforms::linform_value(&spec, *n, p)?;
            let mut table = Table::new(
                "linform",
                &[
                    ("n", true),
                    ("q_num", false),
                    ("q_den", false),
                    ("p_num", false),
                    ("p_den", false),
                    ("F", false),
                ],
            );
            table.push(vec![
                n.to_string(),
                form.q.numer().to_string(),
                form.q.denom().to_string(),
                form.p.numer().to_string(),
                form.p.denom().to_string(),
                value.to_string(),
            ]);
            Ok((report::render(&[table], format), 0))
        }
    }
}

fn seq_table(name: SeqName, max_n: u64) -> Result<Table, CmdError> {
    Ok(match name {
        SeqName::Gamma => report::gamma_table(&sequences::gamma_table_rec(max_n)),
        SeqName::Aptekarev => report::aptekarev_table(&sequences::aptekarev_table_rec(max_n)?),
        SeqName::Rivoal => report::rivoal_report(&sequences::rivoal_table(max_n)),
        SeqName::Stieltjes => {
            let vals: Vec<(u64, String)> = sequences::stieltjes_numerators(max_n)
                .iter()
                .enumerate()
                .map(|(n, s)| (n as u64, s.to_string()))
                .collect();
            report::int_column_table("stieltjes", "s", &vals)
        }
        SeqName::DeltaCap => {
            let mut vals = vec![(0, "0".to_string())];
            for (i, d) in sequences::delta_cap_rec(max_n)?.iter().enumerate() {
                vals.push((i as u64 + 1, d.to_string()));
            }
            report::int_column_table("delta-cap", "delta", &vals)
        }
        SeqName::Discrepancy => report::discrepancy_report(&sequences::discrepancy_table(max_n)?),
    })
}

fn parse_rat(s: &str, flag: &str) -> Result<Rat, CmdError> {
    let bad = |why: &str| CmdError::Usage(format!("invalid rational '{s}' for {flag}: {why}"));
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        None => (s, "1"),
        Some((n, d)) => (n, d),
    };
    let num = numkit::Int::from_str(num).map_err(|_| bad("cannot parse numerator"))?;
    let den = numkit::Int::from_str(den).map_err(|_| bad("cannot parse denominator"))?;
    if den.is_zero() {
        return Err(bad("zero denominator"));
    }
    Ok(Rat::new(num, den))
}

fn run_suite(
    suite: Suite,
    max_n: Option<u64>,
    ns: Option<&[u64]>,
    p: usize,
) -> Result<Vec<CheckLine>, CmdError> {
    let mut checks = Vec::new();
    match suite {
        Suite::Integrality => {
            let report = analysis::integrality_report(max_n.unwrap_or(200))?;
            checks.extend(report::checks_from_integrality(&report));
        }
        Suite::Telescope => checks.push(telescope_check(max_n.unwrap_or(50))),
        Suite::CfConsistency => checks.extend(cf_consistency_checks(max_n.unwrap_or(200))?),
        Suite::Asymptotics => {
            let default = [100, 400];
            checks.extend(asymptotics_checks(ns.unwrap_or(&default), p)?);
        }
        Suite::LemmaI => {
            let owned: Vec<u64>;
            let ns = match ns {
                Some(ns) => ns,
                None => {
                    owned = (0..=max_n.unwrap_or(100)).collect();
                    &owned
                }
            };
            checks.push(lemma_check(ns, p)?);
        }
        Suite::All => {
            for sub in [
                Suite::Integrality,
                Suite::Telescope,
                Suite::CfConsistency,
                Suite::Asymptotics,
                Suite::LemmaI,
            ] {
                checks.extend(run_suite(sub, max_n, ns, p)?);
            }
        }
    }
    Ok(checks)
}

fn telescope_check(max_n: u64) -> CheckLine {
    let name = format!("telescoping certificate identity for 0 <= n <= {max_n}");
    match linforms::telescope_verify_with(max_n, &linforms::certificate_r) {
        Ok(()) => CheckLine::pass(name),
        Err((n, t)) => CheckLine::fail(name, format!("identity fails at n = {n}, t = {t}")),
    }
}

fn lemma_check(ns: &[u64], p: usize) -> Result<CheckLine, CmdError> {
    let top = ns.iter().max().copied().unwrap_or(0);
    let name = format!("analytic value gap within tail bound up to n = {top}");
    Ok(match analysis::lemma_i_check(ns, p)? {
        None => CheckLine::pass(name),
        Some(w) => CheckLine::fail(
            name,
            format!("gap {} exceeds bound {} at n = {}", w.gap, w.bound, w.n),
        ),
    })
}

fn cf_consistency_checks(max_n: u64) -> Result<Vec<CheckLine>, CmdError> {
    let no_params = BTreeMap::new();
    let mut checks = Vec::new();

    let pairs = sequences::gamma_table_rec(max_n);
    let convs = contfrac::cf_family("gamma", &no_params)?.convergents(max_n)?;
    let name = format!("gamma fraction convergents equal the approximant ratios for n <= {max_n}");
    let mut witness = None;
    for (c, pair) in convs.iter().zip(&pairs) {
        // Cross-multiplied on integers: a rational multiply would reduce,
        // and reduction gcds are ruinous at convergent sizes.
        let lhs = c.num.numer() * &pair.q * pair.p.denom() * c.den.denom();
        let rhs = pair.p.numer() * c.den.numer() * c.num.denom();
        if lhs != rhs {
            witness = Some(format!("mismatch at n = {}", c.n));
            break;
        }
    }
    checks.push(line(name, witness));

    let svals = sequences::stieltjes_numerators(max_n);
    let sconvs = contfrac::cf_family("stieltjes-delta", &no_params)?.convergents(max_n)?;
    let name = format!("stieltjes-delta convergents are exactly the (s, q) pairs for n <= {max_n}");
    let mut witness = None;
    for (c, (s, pair)) in sconvs.iter().zip(svals.iter().zip(&pairs)).skip(1) {
        if c.num != Rat::from_integer(s.clone()) || c.den != Rat::from_integer(pair.q.clone()) {
            witness = Some(format!("mismatch at n = {}", c.n));
            break;
        }
    }
    checks.push(line(name, witness));

    let k = max_n.min(60);
    let gamma_convs: Vec<Convergent> = pairs[..=(k as usize)]
        .iter()
        .map(|pair| Convergent {
            n: pair.n,
            num: pair.p.clone(),
            den: Rat::from_integer(pair.q.clone()),
        })
        .collect();
    checks.push(roundtrip_check("gamma approximants", &gamma_convs, k));

    let apts = sequences::aptekarev_table_rec(k)?;
    let apt_convs: Vec<Convergent> = apts
        .iter()
        .map(|pair| Convergent {
            n: pair.n,
            num: Rat::from_integer(pair.p.clone()),
            den: Rat::from_integer(pair.q.clone()),
        })
        .collect();
    checks.push(roundtrip_check("aptekarev approximants", &apt_convs, k));

    for (a, z) in [
        (Rat::one(), Rat::one()),
        (Rat::from_integer(2.into()), Rat::from_integer(3.into())),
        (Rat::new(1.into(), 2.into()), Rat::from_integer(5.into())),
    ] {
        let mut params = BTreeMap::new();
        params.insert("a".to_string(), a.clone());
        params.insert("z".to_string(), z.clone());
        let depth = max_n.min(30);
        let laplace = contfrac::cf_family("laplace", &params)?.elements(2 * depth)?;
        let contracted = contfrac::even_contraction(&laplace)?;
        let direct = contfrac::cf_family("evenpart", &params)?.elements(depth)?;
        let name =
            format!("even contraction of laplace({a}, {z}) equals evenpart({a}, {z}) to depth {depth}");
        let witness = contracted
            .iter()
            .zip(&direct)
            .find(|(c, d)| c.a != d.a || c.b != d.b)
            .map(|(c, _)| format!("element mismatch at index {}", c.index));
        checks.push(line(name, witness));
    }

    Ok(checks)
}

fn roundtrip_check(what: &str, convs: &[Convergent], k: u64) -> CheckLine {
    let name = format!("element recovery round-trips the {what} for n <= {k}");
    let (b0, elements) = match contfrac::elements_from_convergents(convs) {
        Ok(v) => v,
        Err(e) => return CheckLine::fail(name, e.to_string()),
    };
    let mut rebuilt = contfrac::CFStream::from_elements(b0, elements);
    let again = match rebuilt.convergents(k) {
        Ok(v) => v,
        Err(e) => return CheckLine::fail(name, e.to_string()),
    };
    let witness = again
        .iter()
        .zip(convs)
        .find(|(a, b)| a.num != b.num || a.den != b.den)
        .map(|(a, _)| format!("convergent mismatch at n = {}", a.n));
    line(name, witness)
}

fn asymptotics_checks(ns: &[u64], p: usize) -> Result<Vec<CheckLine>, CmdError> {
    let mut checks = Vec::new();
    let fifth = Rat::new(1.into(), 5.into());
    let tenth = Rat::new(1.into(), 10.into());

    let gm = analysis::error_table(ErrorFamily::GammaMain, ns, p)?;
    let name = "gamma-main error ratio deviation strictly decreasing".to_string();
    let witness = match gm.trend {
        Trend::Decreasing => None,
        t => Some(format!("trend is {t:?}")),
    };
    checks.push(line(name, witness));
    checks.push(deviation_check("gamma-main", &gm, &fifth));

    let apt = analysis::error_table(ErrorFamily::Aptekarev, ns, p)?;
    checks.push(deviation_check("aptekarev", &apt, &fifth));

    let lin = analysis::linform_asymptotics(ns, p)?;
    if let Some(last) = lin.rows.last() {
        for (label, value, target) in [
            ("F", &last.c_f, &lin.target_f),
            ("q", &last.c_q, &lin.target_q),
        ] {
            let name = format!("normalized {label} constant within 10% of target at n = {}", last.n);
            let dev = rel_dev(&value.to_rat(), &target.to_rat());
            let witness = (dev > tenth).then(|| deviation_witness(&dev));
            checks.push(line(name, witness));
        }
    }
    Ok(checks)
}

fn deviation_check(family: &str, report: &analysis::AsymptoticReport, limit: &Rat) -> CheckLine {
    let last = report.rows.last().expect("nonempty error table");
    let name = format!(
        "{family} error ratio deviation below {} at n = {}",
        rat_to_dec(limit, 2),
        last.n
    );
    let dev = rel_dev(&last.err.to_rat(), &last.predicted.to_rat());
    let witness = (&dev > limit).then(|| deviation_witness(&dev));
    line(name, witness)
}

fn rel_dev(value: &Rat, target: &Rat) -> Rat {
    let d = value / target - Rat::one();
    if d.is_negative() {
        -d
    } else {
        d
    }
}

fn deviation_witness(dev: &Rat) -> String {
    format!("deviation {}", rat_to_dec(dev, 6))
}

fn line(name: String, witness: Option<String>) -> CheckLine {
    match witness {
        None => CheckLine::pass(name),
        Some(w) => CheckLine::fail(name, w),
    }
}

//! The `braid-inverse` command line tool.
//!
//! Exit codes: `0` success, `1` usage error, `2` a computed value disagrees
//! with a golden value.

mod reproduce;
pub mod table;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::Zero;
use rayon::prelude::*;

use crate::basis_solver::{entry_sequence, solve_t, BasisKind};
use crate::braid_ring::BraidSum;
use crate::convergence::{biconvergence_report, tauhat_report, BiconvergenceReport, BraidSumSequence};
use crate::error::{Error, Result};
use crate::inverse_engine::{asymptotic_check, lift_via_reversion, q_expand, strengthen_to};
use crate::kontsevich::{focus_profile, is_focussed_on, residue, z};
use crate::precision::{Approx, DEFAULT_DIGITS};
use crate::regularization::{theta_value, z1_tauhat_partial};
use crate::scalar::{int, to_fraction_string as frac, Rational};

pub use reproduce::{ReproduceTable, Status};
pub use table::{Document, Format, Table};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_MISMATCH: i32 = 2;

pub const FLOAT_DIGITS_ENV: &str = "BRAID_INVERSE_FLOAT_DIGITS";
pub const MIN_FLOAT_DIGITS: usize = 10;

#[derive(Debug, Parser)]
#[command(name = "braid-inverse", version, about = "Exact inverse of the Kontsevich integral on B2")]
struct Cli {
    #[command(flatten)]
    output: OutputSpec,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct OutputSpec {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Significant digits for float columns.
    #[arg(long, env = FLOAT_DIGITS_ENV, default_value_t = DEFAULT_DIGITS, global = true)]
    pub float_digits: usize,

    /// Write output here instead of stdout.
    #[arg(long = "out", global = true)]
    pub out_path: Option<PathBuf>,

    /// Worker threads for independent rows.
    #[arg(long, default_value_t = 1, global = true)]
    pub jobs: usize,
}

impl OutputSpec {
    fn float_digits(&self) -> Result<usize> {
        if self.float_digits < MIN_FLOAT_DIGITS {
            return Err(Error::InvalidArgument(format!(
                "--float-digits must be at least {MIN_FLOAT_DIGITS}, got {}",
                self.float_digits
            )));
        }
        Ok(self.float_digits)
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Strong lift of t as a polynomial in the seed.
    Lift {
        #[arg(long)]
        order: usize,
        #[arg(long, value_enum, default_value_t = Method::Strengthen)]
        method: Method,
        #[arg(long, default_value = "tau")]
        seed: BraidSum,
    },
    /// Kontsevich integral of a braid sum.
    Zmap {
        #[arg(long)]
        braid: BraidSum,
        #[arg(long)]
        order: usize,
        /// Check that only Z_J is nonzero through the given order.
        #[arg(long)]
        focus: Option<usize>,
    },
    /// The tau lift expanded in pairs <n> = q^n - p^n.
    Qexpand {
        #[arg(long)]
        order: usize,
    },
    /// Coefficient of <j> against its limit.
    Asymptotics {
        #[arg(long)]
        j: u32,
        #[arg(long, value_delimiter = ',', required = true)]
        orders: Vec<usize>,
    },
    /// Abel value of 1^(s-2) - 3^(s-2) + ... and the beta relation.
    Beta {
        #[arg(long)]
        s: u32,
    },
    /// Inverse moment matrices of basis sequences.
    #[command(group(clap::ArgGroup::new("kind").required(true).args(["balanced", "unbalanced"])))]
    Basis(BasisArgs),
    /// Biconvergence diagnostics for a sequence of braid sums.
    Trace {
        #[arg(long, value_enum)]
        sequence: SequenceKind,
        #[arg(long, required_if_eq("sequence", "file"))]
        file: Option<PathBuf>,
        #[arg(long, default_value_t = 5)]
        jmax: usize,
        #[arg(long, default_value_t = 12)]
        window: usize,
    },
    /// Recompute the published tables and compare.
    Reproduce {
        #[arg(long, conflicts_with = "table")]
        all: bool,
        #[arg(long, value_enum)]
        table: Option<ReproduceTable>,
    },
}

#[derive(Debug, Args)]
#[group(skip)]
struct BasisArgs {
    #[arg(long)]
    balanced: bool,
    #[arg(long)]
    unbalanced: bool,
    #[arg(long)]
    r: usize,
    /// `ROW,COL`, 1-based: print this entry of N_1, ..., N_R.
    #[arg(long, value_parser = parse_entry)]
    entry: Option<(usize, usize)>,
    #[arg(long)]
    solve_t: bool,
    #[arg(long)]
    with_factorials: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Strengthen,
    Reversion,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SequenceKind {
    Tauhat,
    Harmonic,
    File,
}

fn parse_entry(s: &str) -> std::result::Result<(usize, usize), String> {
    let (r, c) = s.split_once(',').ok_or("expected ROW,COL")?;
    let r: usize = r.trim().parse().map_err(|e| format!("row: {e}"))?;
    let c: usize = c.trim().parse().map_err(|e| format!("col: {e}"))?;
    if r == 0 || c == 0 {
        return Err("indices are 1-based".into());
    }
    Ok((r, c))
}

/// A rendered document and whether it reports a mismatch.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub document: Document,
    pub mismatch: bool,
}

impl From<Document> for Outcome {
    fn from(document: Document) -> Self {
        Outcome { document, mismatch: false }
    }
}

/// Parses `args` (including the program name), runs, and writes to stdout.
pub fn run<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with_output(args, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with_output<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    return EXIT_OK;
                }
                _ => EXIT_USAGE,
            };
            let _ = write!(err, "{}", e.render());
            return code;
        }
    };
    let outcome = match execute(&cli.command, &cli.output) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let text = match outcome.document.render(cli.output.format) {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let written = match &cli.output.out_path {
        Some(path) => std::fs::write(path, &text),
        None => out.write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: {e}");
        return EXIT_USAGE;
    }
    if outcome.mismatch {
        EXIT_MISMATCH
    } else {
        EXIT_OK
    }
}

fn execute(command: &Command, spec: &OutputSpec) -> Result<Outcome> {
    if spec.jobs == 0 {
        return Err(Error::InvalidArgument("--jobs must be positive".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(spec.jobs)
        .build()
        .map_err(|e| Error::InvalidArgument(e.to_string()))?;
    pool.install(|| dispatch(command, spec))
}

fn dispatch(command: &Command, spec: &OutputSpec) -> Result<Outcome> {
    match command {
        Command::Lift { order, method, seed } => lift(*order, *method, seed).map(Into::into),
        Command::Zmap { braid, order, focus } => zmap(braid, *order, *focus).map(Into::into),
        Command::Qexpand { order } => qexpand(*order).map(Into::into),
        Command::Asymptotics { j, orders } => asymptotics(*j, orders, spec.float_digits()?).map(Into::into),
        Command::Beta { s } => beta(*s, spec),
        Command::Basis(args) => basis(args).map(Into::into),
        Command::Trace { sequence, file, jmax, window } => {
            trace(*sequence, file.as_deref(), *jmax, *window).map(Into::into)
        }
        Command::Reproduce { all, table } => {
            let selected: Vec<ReproduceTable> = match (all, table) {
                (_, Some(t)) => vec![*t],
                _ => ReproduceTable::value_variants().to_vec(),
            };
            reproduce::run(&selected, spec.float_digits()?)
        }
    }
}

fn lift(order: usize, method: Method, seed: &BraidSum) -> Result<Document> {
    if order == 0 {
        return Err(Error::InvalidArgument("--order must be at least 1".into()));
    }
    let lift = match method {
        Method::Strengthen => strengthen_to(seed, order)?,
        Method::Reversion => lift_via_reversion(seed, order)?,
    };
    let mut table = Table::new("lift", ["degree", "coefficient"]);
    for (k, c) in lift.coeffs() {
        table.push([k.to_string(), frac(c)]);
    }
    let mut doc = Document::default();
    doc.push(table);
    doc.note(format!("seed = {seed}"));
    doc.note(format!("t lifts to sum of coefficient * seed^degree through order {order}"));
    Ok(doc)
}

fn zmap(braid: &BraidSum, order: usize, focus: Option<usize>) -> Result<Document> {
    let series = z(braid, order);
    let mut table = Table::new("Z", ["i", "Z_i"]);
    for (i, c) in series.coeffs().iter().enumerate() {
        table.push([i.to_string(), frac(c)]);
    }
    let mut doc = Document::default();
    doc.push(table);
    let mut filtration = Table::new("filtration", ["quantity", "value"]);
    filtration.push(["braid".to_string(), braid.to_string()]);
    filtration.push(["order".to_string(), braid.filtration_order().to_string()]);
    match residue(braid) {
        Ok(r) => filtration.push(["residue".to_string(), format!("{} t^{}", frac(&r.value), r.order)]),
        Err(_) => filtration.push(["residue", "none"]),
    }
    doc.push(filtration);
    if let Some(r) = focus {
        let profile = focus_profile(braid, order);
        let focussed = is_focussed_on(&profile, r);
        doc.note(format!("focussed on order {r} through order {order}: {focussed}"));
    }
    Ok(doc)
}

fn qexpand(order: usize) -> Result<Document> {
    if order == 0 {
        return Err(Error::InvalidArgument("--order must be at least 1".into()));
    }
    let expansion = q_expand(&strengthen_to(&BraidSum::tau(), order)?)?;
    let mut table = Table::new("qexpand", ["n", "coefficient"]);
    for (n, c) in expansion.pairs() {
        table.push([n.to_string(), frac(c)]);
    }
    let mut doc = Document::default();
    doc.push(table);
    doc.note(format!("P_{order}(tau) = sum of coefficient * (q^n - p^n)"));
    Ok(doc)
}

pub(crate) fn float_column(name: &str, digits: usize) -> String {
    format!("{name}[{digits}]")
}

fn asymptotics(j: u32, orders: &[usize], digits: usize) -> Result<Document> {
    let rows = asymptotic_check(j, orders, digits)?;
    let mut table = Table::new(
        format!("asymptotics j={j}"),
        [
            "order".to_string(),
            "coeff".to_string(),
            float_column("coeff_float", digits),
            float_column("target", digits),
            float_column("abs_error", digits),
        ],
    );
    for row in rows {
        table.push([
            row.order.to_string(),
            frac(&row.coeff),
            row.coeff_float.render(digits),
            row.target.render(digits),
            row.abs_error.render(digits),
        ]);
    }
    let mut doc = Document::default();
    doc.push(table);
    doc.note(format!("target = (-1)^((j-1)/2) * 4 / (pi * j^2) for j = {j}"));
    Ok(doc)
}

/// `4·Σ_{m<r}(−1)ᵐ/(2m+1)` at each checkpoint.
pub(crate) fn leibniz_checkpoints(checkpoints: &[usize]) -> Vec<(usize, Rational)> {
    checkpoints.iter().map(|&r| (r, z1_tauhat_partial(r))).collect()
}

fn beta(s: u32, spec: &OutputSpec) -> Result<Outcome> {
    let mut doc = Document::default();
    if s == 1 {
        let digits = spec.float_digits()?;
        let pi = Approx::pi(digits);
        let one = Approx::from_rational(&int(1), digits);
        let mut table = Table::new(
            "leibniz",
            ["r".to_string(), float_column("z1_estimate", digits), float_column("abs_error", digits)],
        );
        for (r, partial) in leibniz_checkpoints(&[1, 10, 100, 1000, 10000]) {
            let estimate = Approx::from_rational(&partial, digits).div(&pi);
            table.push([r.to_string(), estimate.render(digits), estimate.sub(&one).abs().render(digits)]);
        }
        doc.push(table);
        doc.note("z1_estimate = 4 * (1 - 1/3 + 1/5 - ... over r terms) / pi, which tends to Z_1 = 1");
        return Ok(doc.into());
    }
    if s < 2 {
        return Err(Error::InvalidArgument("--s must be at least 1".into()));
    }
    let k = s - 2;
    let value = theta_value(k);
    let applies = s >= 3 && s % 2 == 1;
    let verdict = match (applies, value.is_zero()) {
        (false, _) => "n/a",
        (true, true) => "PASS",
        (true, false) => "FAIL",
    };
    let mut table = Table::new("beta", ["s", "k", "theta_value", "verdict"]);
    table.push([s.to_string(), k.to_string(), frac(&value), verdict.to_string()]);
    doc.push(table);
    doc.note(format!("theta_value(k) is the Abel value of 1^k - 3^k + 5^k - ..., i.e. beta(-{k})"));
    if applies {
        doc.note("2^(s-3) s! pi Z_s(tauhat) = beta(2-s) is expected to vanish for odd s >= 3");
    }
    Ok(Outcome {
        document: doc,
        mismatch: verdict == "FAIL",
    })
}

fn basis(args: &BasisArgs) -> Result<Document> {
    let kind = if args.balanced {
        BasisKind::Balanced
    } else {
        BasisKind::Unbalanced
    };
    let name = match kind {
        BasisKind::Balanced => "balanced",
        BasisKind::Unbalanced => "unbalanced",
    };
    let mut doc = Document::default();
    let nodes: Vec<String> = kind.nodes(args.r).iter().map(i64::to_string).collect();
    doc.note(format!("{name} nodes for r = {}: {}", args.r, nodes.join(", ")));
    if args.with_factorials {
        doc.note("row i of M is divided by i!");
    }

    if let Some((row, col)) = args.entry {
        let first = (0..=args.r)
            .find(|&r| kind.nodes(r).len() >= row.max(col))
            .ok_or_else(|| Error::IndexOutOfRange { row, col, dim: kind.nodes(args.r).len() })?;
        let values: Vec<Rational> = (first..=args.r)
            .into_par_iter()
            .map(|r| -> Result<Rational> {
                Ok(kind.build(r, args.with_factorials).invert()?.entry(row, col)?.clone())
            })
            .collect::<Result<_>>()?;
        let mut table = Table::new(format!("N_r({row},{col})"), ["r", "entry"]);
        for (r, v) in (first..=args.r).zip(&values) {
            table.push([r.to_string(), frac(v)]);
        }
        doc.push(table);
        if !args.with_factorials {
            // Cheap consistency check against the sequential helper.
            debug_assert_eq!(values, entry_sequence(kind, row, col, first..=args.r)?);
        }
    }

    if args.solve_t {
        let b = solve_t(kind, args.r)?;
        let mut table = Table::new("solution", ["exponent", "coefficient"]);
        for (n, c) in b.terms().rev() {
            table.push([n.to_string(), frac(c)]);
        }
        doc.push(table);
        doc.note(format!("Z_i(b) = delta_(i,1) for i <= {}", kind.nodes(args.r).len() - 1));
    }

    if args.entry.is_none() && !args.solve_t {
        let n = kind.build(args.r, args.with_factorials).invert()?;
        let mut table = Table::new(
            format!("N_{}", args.r),
            std::iter::once("row".to_string()).chain((1..=n.dim()).map(|c| c.to_string())),
        );
        for (i, row) in n.rows().enumerate() {
            table.push(std::iter::once((i + 1).to_string()).chain(row.iter().map(frac)));
        }
        doc.push(table);
    }
    Ok(doc)
}

fn trace(kind: SequenceKind, file: Option<&std::path::Path>, jmax: usize, window: usize) -> Result<Document> {
    if window == 0 {
        return Err(Error::InvalidArgument("--window must be positive".into()));
    }
    let report = match kind {
        SequenceKind::Tauhat => tauhat_report(jmax, window)?,
        SequenceKind::Harmonic => biconvergence_report(&BraidSumSequence::harmonic_sigma(window), jmax, window),
        SequenceKind::File => {
            let path = file.ok_or_else(|| Error::InvalidArgument("--file is required".into()))?;
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
            biconvergence_report(&BraidSumSequence::from_json(&text)?, jmax, window)
        }
    };
    Ok(report_document(&report))
}

fn report_document(report: &BiconvergenceReport) -> Document {
    let mut doc = Document::default();
    let mut coefficients = Table::new("coefficients", ["exponent", "last", "verdict"]);
    for row in &report.coefficients {
        coefficients.push([row.key.to_string(), frac(&row.last), row.verdict.as_str().to_string()]);
    }
    doc.push(coefficients);

    let mut invariants = Table::new("invariants", ["j", "last", "verdict", "target", "stabilized"]);
    for row in &report.z_values {
        invariants.push([
            row.j.to_string(),
            frac(&row.last),
            row.verdict.as_str().to_string(),
            row.target.as_ref().map_or_else(|| "-".to_string(), frac),
            row.stabilized.map_or_else(|| "-".to_string(), |s| s.to_string()),
        ]);
    }
    doc.push(invariants);

    let mut conditions = Table::new("conditions", ["condition", "verdict", "detail"]);
    conditions.push(["a", report.condition_a.as_str(), "braid coefficients converge"]);
    conditions.push(["b", report.condition_b.as_str(), "Z_j values converge"]);
    let c = &report.condition_c;
    let detail = match &c.first_violation {
        None => format!("{} pairs checked", c.pairs_checked),
        Some((i, j, order)) => format!("b_{i} - b_{j} has filtration order {order} < {i}"),
    };
    conditions.push([
        "c".to_string(),
        if c.satisfied { "pass" } else { "fail" }.to_string(),
        detail,
    ]);
    doc.push(conditions);
    doc.note(format!("sequence {} over {} terms", report.label, report.window));
    doc.note(report.caveat);
    doc
}

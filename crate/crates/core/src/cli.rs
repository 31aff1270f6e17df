//! The `oatrade` command line.
//!
//! [`run`] parses arguments, executes one subcommand and returns the exit
//! status: 0 when every check passed, 1 when a check failed or a library
//! error occurred, 2 for usage errors.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::Error;
use crate::exact_linalg::{stacked_rank, ExactMatrix};
use crate::formats;
use crate::frequency::FrequencyVector;
use crate::inclusion_matrix::{
    column_vector, rank_formula, reduce_column, InclusionMatrix, DEFAULT_MAX_ONES,
};
use crate::oa::{oa_to_frequency, verify_frequency_with_limit, verify_oa_direct};
use crate::trades::{
    basis_indices, basis_intercalate, decompose_with_limit, format_index, frequency_to_trade,
    to_polynomial, trade_to_frequency, verify_general_trade_with_limit, verify_trade,
};
use crate::tuples::KTuple;

#[derive(Debug, Parser)]
#[command(
    name = "oatrade",
    version,
    about = "Inclusion matrices of orthogonal arrays and Latin trades"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build M_t(v,k) and write it out.
    Matrix(MatrixArgs),
    /// Compare the exact rank of M_t(v,k) with the closed form.
    Rank(RankArgs),
    /// List the intercalate basis of the null space of M_t(v,t+1).
    Basis(BasisArgs),
    /// Verify a trade, orthogonal array or frequency vector file.
    Verify(VerifyArgs),
    /// Write a trade as a signed sum of basis intercalates.
    Decompose(DecomposeArgs),
    /// Express a column as a combination of columns of weight at most t.
    Reduce(ReduceArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    #[value(alias = "matrix-market")]
    Mm,
    Dense,
    Records,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum InputKind {
    Trade,
    Oa,
    Frequency,
}

#[derive(Debug, Args)]
struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the main output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Refuse to build inclusion matrices with more ones than this.
    #[arg(long, default_value_t = DEFAULT_MAX_ONES)]
    max_ones: u128,
}

#[derive(Debug, Args)]
struct MatrixArgs {
    #[arg(long)]
    t: usize,
    #[arg(long)]
    v: u32,
    #[arg(long)]
    k: usize,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct RankArgs {
    #[arg(long)]
    t: usize,
    #[arg(long)]
    v: u32,
    #[arg(long)]
    k: usize,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct BasisArgs {
    #[arg(long)]
    t: usize,
    #[arg(long)]
    v: u32,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Input file.
    #[arg(long = "in")]
    input: PathBuf,
    /// How to read the input file.
    #[arg(long = "input", value_enum, default_value_t = InputKind::Trade)]
    kind: InputKind,
    #[arg(long)]
    t: Option<usize>,
    #[arg(long)]
    v: Option<u32>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    lambda: Option<u64>,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct DecomposeArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long = "input", value_enum, default_value_t = InputKind::Trade)]
    kind: InputKind,
    #[arg(long)]
    t: Option<usize>,
    #[arg(long)]
    v: Option<u32>,
    /// Write each basis intercalate of the result into this directory.
    #[arg(long)]
    emit: Option<PathBuf>,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct ReduceArgs {
    /// Column to reduce, e.g. `1,1,1`.
    #[arg(long)]
    tuple: String,
    #[arg(long)]
    t: usize,
    /// Alphabet size; defaults to one more than the largest symbol.
    #[arg(long)]
    v: Option<u32>,
    #[arg(long)]
    k: Option<usize>,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Library(#[from] Error),
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

fn io_error(path: &Path) -> impl FnOnce(io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.display().to_string(),
        source,
    }
}

fn stdout_error(source: io::Error) -> CliError {
    CliError::Io {
        path: "<output>".into(),
        source,
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(text.as_bytes());
            return e.exit_code();
        }
    };
    match execute(cli.command, out, err) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<bool> {
    match command {
        Command::Matrix(a) => cmd_matrix(a, out, err),
        Command::Rank(a) => with_output(&a.common.out.clone(), out, |w| cmd_rank(a, w)),
        Command::Basis(a) => with_output(&a.common.out.clone(), out, |w| cmd_basis(a, w)),
        Command::Verify(a) => with_output(&a.common.out.clone(), out, |w| cmd_verify(a, w)),
        Command::Decompose(a) => with_output(&a.common.out.clone(), out, |w| cmd_decompose(a, w)),
        Command::Reduce(a) => with_output(&a.common.out.clone(), out, |w| cmd_reduce(a, w)),
    }
}

/// Collects the report in memory and sends it to `--out` or stdout.
fn with_output(
    path: &Option<PathBuf>,
    out: &mut dyn Write,
    body: impl FnOnce(&mut Vec<u8>) -> CliResult<bool>,
) -> CliResult<bool> {
    let mut buffer = Vec::new();
    let result = body(&mut buffer);
    match path {
        Some(p) => fs::write(p, &buffer).map_err(io_error(p))?,
        None => out.write_all(&buffer).map_err(stdout_error)?,
    }
    result
}

fn check_tvk(t: usize, v: u32, k: usize) -> CliResult<()> {
    if v < 2 {
        return Err(CliError::Usage(format!("--v must be at least 2, got {v}")));
    }
    if t < 1 || t > k {
        return Err(CliError::Usage(format!(
            "need 1 <= t <= k, got t={t} k={k}"
        )));
    }
    Ok(())
}

fn allow_formats(format: Format, allowed: &[Format]) -> CliResult<()> {
    if allowed.contains(&format) {
        Ok(())
    } else {
        Err(CliError::Usage(format!(
            "--format {} is not available for this command",
            format
                .to_possible_value()
                .map_or_else(String::new, |v| v.get_name().to_string())
        )))
    }
}

/// Record values never contain spaces.
fn rec(value: impl ToString) -> String {
    value.to_string().replace(' ', "_")
}

fn pass_fail(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn read_input(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(io_error(path))
}

fn cmd_matrix(a: MatrixArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<bool> {
    check_tvk(a.t, a.v, a.k)?;
    let m = InclusionMatrix::build_with_limit(a.t, a.v, a.k, a.common.max_ones)?;
    let summary = format!(
        "M_{}({},{}): rows={} cols={} ones={}",
        a.t,
        a.v,
        a.k,
        m.n_rows(),
        m.n_cols(),
        m.ones()
    );

    let body = match a.common.format {
        Format::Mm => formats::write_matrix_market(&m),
        Format::Dense => formats::write_dense(&m)?,
        Format::Text => {
            let mut s = String::new();
            for r in 0..m.n_rows() {
                let cols: Vec<String> = m
                    .row(r)
                    .iter()
                    .map(|&c| KTuple::unrank(c as usize, a.v, a.k).map(|x| x.to_string()))
                    .collect::<Result<_, _>>()?;
                s.push_str(&format!("{} : {}\n", m.row_key(r), cols.join(" ")));
            }
            s
        }
        Format::Records => {
            let mut s = format!(
                "matrix t={} v={} k={} rows={} cols={} ones={}\n",
                a.t,
                a.v,
                a.k,
                m.n_rows(),
                m.n_cols(),
                m.ones()
            );
            for (r, row) in m.rows().enumerate() {
                for &c in row {
                    s.push_str(&format!("entry row={} col={}\n", r + 1, c + 1));
                }
            }
            s
        }
    };

    match &a.common.out {
        Some(path) => {
            fs::write(path, body).map_err(io_error(path))?;
            if a.common.format != Format::Records {
                writeln!(out, "{summary}").map_err(stdout_error)?;
            }
        }
        None => {
            out.write_all(body.as_bytes()).map_err(stdout_error)?;
            if a.common.format != Format::Records {
                writeln!(err, "{summary}").map_err(stdout_error)?;
            }
        }
    }
    Ok(true)
}

fn cmd_rank(a: RankArgs, w: &mut Vec<u8>) -> CliResult<bool> {
    allow_formats(a.common.format, &[Format::Text, Format::Records])?;
    check_tvk(a.t, a.v, a.k)?;
    let m = InclusionMatrix::build_with_limit(a.t, a.v, a.k, a.common.max_ones)?;
    let rank = ExactMatrix::from_inclusion(&m)?.exact_rank()?;
    let formula = rank_formula(a.t, a.v, a.k);
    let nullity = m.n_cols() - rank;
    let matched = rank as u128 == formula;
    let status = if matched { "MATCH" } else { "MISMATCH" };
    let line = match a.common.format {
        Format::Records => format!(
            "rank t={} v={} k={} rank={rank} formula={formula} nullity={nullity} status={status}",
            a.t, a.v, a.k
        ),
        _ => format!("rank={rank} formula={formula} nullity={nullity} {status}"),
    };
    writeln!(w, "{line}").map_err(stdout_error)?;
    Ok(matched)
}

fn cmd_basis(a: BasisArgs, w: &mut Vec<u8>) -> CliResult<bool> {
    allow_formats(a.common.format, &[Format::Text, Format::Records])?;
    check_tvk(a.t, a.v, a.t + 1)?;
    let records = a.common.format == Format::Records;
    let m = InclusionMatrix::build_with_limit(a.t, a.v, a.t + 1, a.common.max_ones)?;
    let nullity = m.n_cols() - ExactMatrix::from_inclusion(&m)?.exact_rank()?;

    let mut basis = Vec::new();
    let mut annihilated = true;
    for index in basis_indices(a.t, a.v)? {
        let b = basis_intercalate(&index, a.v)?;
        let zero = m.multiply(&b)?.iter().all(Zero::is_zero);
        annihilated &= zero;
        if records {
            writeln!(
                w,
                "basis_vector index={} entries={} annihilated={zero}",
                rec(KTuple::new(index.clone(), a.v)?),
                b.support_size()
            )
        } else {
            writeln!(w, "{} = {}", format_index(&index), to_polynomial(&b))
        }
        .map_err(stdout_error)?;
        basis.push(b);
    }
    let rank = stacked_rank(&basis)?;
    let ok = annihilated && rank == basis.len() && rank == nullity;
    if records {
        writeln!(
            w,
            "basis t={} v={} count={} stacked_rank={rank} nullity={nullity} annihilated={annihilated} status={}",
            a.t,
            a.v,
            basis.len(),
            pass_fail(ok)
        )
    } else {
        writeln!(
            w,
            "count={} stacked_rank={rank} nullity={nullity} annihilated={} {}",
            basis.len(),
            if annihilated { "yes" } else { "no" },
            pass_fail(ok)
        )
    }
    .map_err(stdout_error)?;
    Ok(ok)
}

fn cmd_verify(a: VerifyArgs, w: &mut Vec<u8>) -> CliResult<bool> {
    allow_formats(a.common.format, &[Format::Text, Format::Records])?;
    let text = read_input(&a.input)?;
    let records = a.common.format == Format::Records;
    match a.kind {
        InputKind::Trade => verify_trade_file(&text, &a, records, w),
        InputKind::Oa => verify_oa_file(&text, &a, records, w),
        InputKind::Frequency => verify_frequency_file(&text, &a, records, w),
    }
}

fn verify_trade_file(
    text: &str,
    a: &VerifyArgs,
    records: bool,
    w: &mut Vec<u8>,
) -> CliResult<bool> {
    let trade = formats::parse_trade(text)?;
    if let Some(t) = a.t.filter(|&t| t != 2) {
        return Err(CliError::Usage(format!(
            "a Latin trade has t=2, got --t {t}"
        )));
    }
    let report = verify_trade(&trade);
    for outcome in &report.outcomes {
        let c = outcome.condition;
        let line = match (records, &outcome.failure) {
            (true, None) => format!(
                "condition number={} name={} status=PASS",
                c.number(),
                rec(c.description())
            ),
            (true, Some(at)) => format!(
                "condition number={} name={} status=FAIL at={}",
                c.number(),
                rec(c.description()),
                rec(at)
            ),
            (false, None) => format!("condition {} ({}): PASS", c.number(), c.description()),
            (false, Some(at)) => format!(
                "condition {} ({}): FAIL at {at}",
                c.number(),
                c.description()
            ),
        };
        writeln!(w, "{line}").map_err(stdout_error)?;
    }
    let f = trade_to_frequency(&trade)?;
    let null = verify_general_trade_with_limit(&f, 2, a.common.max_ones)?;
    let ok = report.passed() && null;
    if records {
        writeln!(
            w,
            "trade order={} volume={} null_space={} status={}",
            trade.order(),
            report.volume,
            pass_fail(null),
            pass_fail(ok)
        )
    } else {
        writeln!(
            w,
            "null space of M_2({},3): {}",
            trade.order(),
            pass_fail(null)
        )
        .and_then(|_| writeln!(w, "volume={}", report.volume))
    }
    .map_err(stdout_error)?;
    Ok(ok)
}

fn verify_oa_file(text: &str, a: &VerifyArgs, records: bool, w: &mut Vec<u8>) -> CliResult<bool> {
    let oa = formats::parse_oa_file(text)?.into_array(a.t, a.v, a.k, a.lambda)?;
    check_tvk(oa.t(), oa.v(), oa.k())?;
    let direct = verify_oa_direct(&oa)?;
    let f = oa_to_frequency(&oa)?;
    let matrix =
        verify_frequency_with_limit(&f, oa.t(), &BigInt::from(oa.lambda()), a.common.max_ones)?;
    let histogram: Vec<String> = direct
        .histogram
        .iter()
        .map(|(count, n)| format!("{count}:{n}"))
        .collect();
    let ok = direct.passed && matrix.satisfied;

    let direct_at = direct
        .first_failure
        .as_ref()
        .map(|(row, count)| (row.to_string(), count.to_string()));
    let matrix_at = matrix
        .first_violation
        .as_ref()
        .map(|(row, value)| (row.to_string(), value.to_string()));
    let mut lines = Vec::new();
    if records {
        let detail = |at: &Option<(String, String)>| {
            at.as_ref()
                .map_or_else(String::new, |(row, n)| format!(" at={row} count={n}"))
        };
        lines.push(format!(
            "check name=direct status={}{}",
            pass_fail(direct.passed),
            detail(&direct_at)
        ));
        lines.push(format!(
            "check name=matrix status={}{}",
            pass_fail(matrix.satisfied),
            detail(&matrix_at)
        ));
        lines.push(format!(
            "oa t={} v={} k={} lambda={} rows={} histogram={} non_negative={} status={}",
            oa.t(),
            oa.v(),
            oa.k(),
            oa.lambda(),
            oa.rows().len(),
            histogram.join(","),
            matrix.non_negative,
            pass_fail(ok)
        ));
    } else {
        let detail = |at: &Option<(String, String)>| {
            at.as_ref().map_or_else(String::new, |(row, n)| {
                format!(" at {row} (count {n}, expected {})", oa.lambda())
            })
        };
        lines.push(format!(
            "direct count: {}{}",
            pass_fail(direct.passed),
            detail(&direct_at)
        ));
        lines.push(format!(
            "matrix check: {}{}",
            pass_fail(matrix.satisfied),
            detail(&matrix_at)
        ));
        lines.push(format!("histogram {}", histogram.join(" ")));
        lines.push(format!("rows={}", oa.rows().len()));
    }
    for line in lines {
        writeln!(w, "{line}").map_err(stdout_error)?;
    }
    Ok(ok)
}

fn verify_frequency_file(
    text: &str,
    a: &VerifyArgs,
    records: bool,
    w: &mut Vec<u8>,
) -> CliResult<bool> {
    let v =
        a.v.ok_or_else(|| CliError::Usage("--v is required for frequency input".into()))?;
    let t =
        a.t.ok_or_else(|| CliError::Usage("--t is required for frequency input".into()))?;
    let f = formats::parse_frequency(text, v)?;
    if let Some(k) = a.k.filter(|&k| k != f.k()) {
        return Err(CliError::Usage(format!(
            "--k {k} but the file has k={}",
            f.k()
        )));
    }
    check_tvk(t, v, f.k())?;
    let lambda = BigInt::from(a.lambda.unwrap_or(0));
    let check = verify_frequency_with_limit(&f, t, &lambda, a.common.max_ones)?;
    let at = check
        .first_violation
        .as_ref()
        .map(|(row, value)| (row.to_string(), value.to_string()));
    let line = if records {
        format!(
            "frequency t={t} v={v} k={} lambda={lambda} support={} non_negative={} status={}{}",
            f.k(),
            f.support_size(),
            check.non_negative,
            pass_fail(check.satisfied),
            at.map_or_else(String::new, |(row, value)| format!(
                " at={row} value={value}"
            ))
        )
    } else {
        format!(
            "M_{t}({v},{}) F = {lambda}: {}{}\nnon-negative: {}",
            f.k(),
            pass_fail(check.satisfied),
            at.map_or_else(String::new, |(row, value)| format!(
                " at {row} (value {value})"
            )),
            if check.non_negative { "yes" } else { "no" }
        )
    };
    writeln!(w, "{line}").map_err(stdout_error)?;
    Ok(check.satisfied)
}

fn load_trade_vector(
    path: &Path,
    kind: InputKind,
    t: Option<usize>,
    v: Option<u32>,
) -> CliResult<(FrequencyVector, usize)> {
    let text = read_input(path)?;
    let f = match kind {
        InputKind::Trade => trade_to_frequency(&formats::parse_trade(&text)?)?,
        InputKind::Frequency => {
            let v =
                v.ok_or_else(|| CliError::Usage("--v is required for frequency input".into()))?;
            formats::parse_frequency(&text, v)?
        }
        InputKind::Oa => {
            return Err(CliError::Usage(
                "decompose reads trades or frequency vectors".into(),
            ))
        }
    };
    let t = t.unwrap_or(f.k().saturating_sub(1));
    if t + 1 != f.k() {
        return Err(CliError::Usage(format!(
            "decompose needs k = t + 1, got t={t} k={}",
            f.k()
        )));
    }
    check_tvk(t, f.v(), f.k())?;
    Ok((f, t))
}

fn cmd_decompose(a: DecomposeArgs, w: &mut Vec<u8>) -> CliResult<bool> {
    allow_formats(a.common.format, &[Format::Text, Format::Records])?;
    let (f, t) = load_trade_vector(&a.input, a.kind, a.t, a.v)?;
    let combination = match decompose_with_limit(&f, t, a.common.max_ones) {
        Err(Error::NotInNullSpace { row, value }) => {
            writeln!(
                w,
                "not a trade: row {row} of M_{t}({},{}) gives {value}",
                f.v(),
                f.k()
            )
            .map_err(stdout_error)?;
            return Ok(false);
        }
        other => other?,
    };
    // decompose re-multiplies and compares before returning
    let exact = combination.reconstruct()? == f;
    let records = a.common.format == Format::Records;

    let n = combination.len();
    if records {
        for (c, index) in combination.terms() {
            writeln!(
                w,
                "term coefficient={c} index={}",
                index
                    .iter()
                    .map(u32::to_string)
                    .collect::<Vec<_>>()
                    .join(",")
            )
            .map_err(stdout_error)?;
        }
        writeln!(
            w,
            "decompose t={t} v={} terms={n} reconstruction={}",
            f.v(),
            if exact { "EXACT" } else { "MISMATCH" }
        )
        .map_err(stdout_error)?;
    } else {
        writeln!(w, "{n} {}", if n == 1 { "term" } else { "terms" }).map_err(stdout_error)?;
        write!(w, "{combination}").map_err(stdout_error)?;
        if n > 0 {
            writeln!(
                w,
                "reconstruction: {}",
                if exact { "EXACT" } else { "MISMATCH" }
            )
            .map_err(stdout_error)?;
        }
    }

    if let Some(dir) = &a.emit {
        fs::create_dir_all(dir).map_err(io_error(dir))?;
        for (_, index) in combination.terms() {
            let b = basis_intercalate(index, f.v())?;
            let name: Vec<String> = index.iter().map(u32::to_string).collect();
            let (file, body) = if t == 2 {
                (
                    format!("B_{}.trade", name.join("_")),
                    formats::write_trade(&frequency_to_trade(&b)?),
                )
            } else {
                (
                    format!("B_{}.freq", name.join("_")),
                    formats::write_frequency(&b),
                )
            };
            let path = dir.join(file);
            fs::write(&path, body).map_err(io_error(&path))?;
        }
    }
    Ok(exact)
}

fn cmd_reduce(a: ReduceArgs, w: &mut Vec<u8>) -> CliResult<bool> {
    allow_formats(a.common.format, &[Format::Text, Format::Records])?;
    let symbols: Vec<u32> = a
        .tuple
        .split(',')
        .map(|s| s.trim().parse())
        .collect::<Result<_, _>>()
        .map_err(|_| {
            CliError::Usage(format!(
                "--tuple {:?} is not a comma separated list of symbols",
                a.tuple
            ))
        })?;
    let v =
        a.v.unwrap_or_else(|| symbols.iter().max().map_or(2, |&m| (m + 1).max(2)));
    let x = KTuple::new(symbols, v)?;
    if let Some(k) = a.k.filter(|&k| k != x.k()) {
        return Err(CliError::Usage(format!(
            "--k {k} but the tuple has {} symbols",
            x.k()
        )));
    }
    check_tvk(a.t, v, x.k())?;
    let m = InclusionMatrix::build_with_limit(a.t, v, x.k(), a.common.max_ones)?;
    let combination = reduce_column(&x, a.t);
    let low = combination.terms().iter().all(|(_, y)| y.weight() <= a.t);
    let exact = low && m.evaluate(&combination)? == column_vector(&m, &x)?;
    let status = if exact { "EXACT" } else { "MISMATCH" };
    let n = combination.len();

    if a.common.format == Format::Records {
        for (c, y) in combination.terms() {
            writeln!(w, "term coefficient={c} tuple={y} weight={}", y.weight())
                .map_err(stdout_error)?;
        }
        writeln!(
            w,
            "reduce t={} v={v} tuple={x} weight={} terms={n} verified={status}",
            a.t,
            x.weight()
        )
        .map_err(stdout_error)?;
    } else {
        let heading = if x.weight() <= a.t {
            "1 term (identity)".to_string()
        } else {
            format!("{n} {}", if n == 1 { "term" } else { "terms" })
        };
        writeln!(w, "C_({x}) over M_{}({v},{}): {heading}", a.t, x.k()).map_err(stdout_error)?;
        for (c, y) in combination.terms() {
            let sign = if c < &BigInt::zero() { '-' } else { '+' };
            writeln!(w, "{sign}{} · C_({y})", c.magnitude()).map_err(stdout_error)?;
        }
        writeln!(w, "verified: {status}").map_err(stdout_error)?;
    }
    Ok(exact)
}

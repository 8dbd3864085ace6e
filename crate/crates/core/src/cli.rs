//! Command-line front end: parses a session file, dispatches one verb, and
//! writes JSON or CSV to standard output.
//!
//! Exit codes: 0 success (including INAPPLICABLE checks), 1 a check failed,
//! 2 input error, 3 resource limit, 4 stabilization or certification failure.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::checks::{self, CheckReport, Verdict};
use crate::corpus::{self, CorpusReport, DEFAULT_SEED};
use crate::error::{Error, Result};
use crate::hilbert_kunz::{self, HkReport};
use crate::monomial::OrderKind;
use crate::numerics::{self, Length, MultiplicityResult};
use crate::ring::Limits;
use crate::session::{Session, SessionInput};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OrderArg {
    Grevlex,
    Lex,
    Grlex,
}

impl From<OrderArg> for OrderKind {
    fn from(o: OrderArg) -> Self {
        match o {
            OrderArg::Grevlex => OrderKind::Grevlex,
            OrderArg::Lex => OrderKind::Lex,
            OrderArg::Grlex => OrderKind::Grlex,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "hkmult",
    version,
    about = "Hilbert-Kunz and Hilbert-Samuel computations over prime fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: GlobalArgs,
}

#[derive(Debug, Args)]
struct GlobalArgs {
    /// Output format.
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,
    /// Monomial order overriding the session file.
    #[arg(long, value_enum, global = true)]
    order: Option<OrderArg>,
    /// Maximum pending S-pairs per basis computation.
    #[arg(long, default_value_t = Limits::default().spair_cap, global = true)]
    spair_cap: usize,
    /// Largest N tried when stabilizing a multiplicity.
    #[arg(long, default_value_t = Limits::default().n_cap, global = true)]
    n_cap: u64,
    /// Seed for the random fixture families.
    #[arg(long, default_value_t = DEFAULT_SEED, global = true)]
    seed: u64,
    /// Worker threads (0 = one per core).
    #[arg(long, default_value_t = 0, global = true)]
    jobs: usize,
}

#[derive(Debug, Args)]
struct InputArgs {
    /// Session file in the ring description language.
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,
}

#[derive(Debug, Args)]
struct IdealArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Name of a declared ideal or prime; `m` and `R` are predefined.
    #[arg(long, default_value = "m")]
    ideal: String,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Reduced Gröbner basis of an ideal plus the ring relations.
    Gb(IdealArgs),
    /// Krull dimension of R/I.
    Dim(IdealArgs),
    /// Number of standard monomials of R/I.
    Colength(IdealArgs),
    /// Length of R/I localized at the origin.
    LocalColength(IdealArgs),
    /// Hilbert-Samuel multiplicity e(x; R/J) of a parameter.
    Mult {
        #[command(flatten)]
        ideal: IdealArgs,
        /// Declared parameter name or a polynomial.
        #[arg(long)]
        param: String,
    },
    /// Hilbert-Kunz function rows for e = 1..emax.
    Hk {
        #[command(flatten)]
        ideal: IdealArgs,
        #[arg(long)]
        emax: Option<u32>,
    },
    /// Two-point estimate of the Hilbert-Kunz multiplicity.
    Ehk {
        #[command(flatten)]
        ideal: IdealArgs,
        #[arg(long)]
        emax: Option<u32>,
    },
    /// Run one theorem check.
    #[command(subcommand)]
    Check(CheckCommand),
    /// List or run the fixture corpus.
    #[command(subcommand)]
    Corpus(CorpusCommand),
}

#[derive(Debug, Subcommand)]
enum CheckCommand {
    /// lambda(R/m^[q]) >= q^d.
    Kunz {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_delimiter = ',', required = true)]
        q: Vec<u64>,
    },
    /// lambda(R/I^[q]) = q^d lambda(R/I) on a polynomial ring.
    Flatness {
        #[command(flatten)]
        ideal: IdealArgs,
        #[arg(long, value_delimiter = ',', required = true)]
        q: Vec<u64>,
    },
    /// lambda(R/I^[q]) <= lambda(J/I) lambda(R/m^[q]) + lambda(R/J^[q]).
    Lemma21 {
        #[command(flatten)]
        ideal: IdealArgs,
        #[arg(long = "ideal-j")]
        ideal_j: String,
        #[arg(long, value_delimiter = ',', required = true)]
        q: Vec<u64>,
    },
    /// e_HK(J + (x)) >= lambda(R/(J + (x))).
    Thm23 {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long = "ideal-j")]
        ideal_j: String,
        #[arg(long)]
        param: String,
        /// Declared minimal primes of J, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        prime: Vec<String>,
        #[arg(long)]
        emax: Option<u32>,
    },
    /// q lambda_P(R/P^[q]) <= lambda(R/m^[q]).
    Thm33 {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        prime: String,
        #[arg(long)]
        param: String,
        #[arg(long, value_delimiter = ',', required = true)]
        q: Vec<u64>,
    },
    /// lambda(R/(m^[p])^[p^e]) = lambda(R/m^[p^(e+1)]).
    Rescaling {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 1)]
        e: u32,
    },
}

#[derive(Debug, Subcommand)]
enum CorpusCommand {
    /// Fixture ids and descriptions.
    List,
    /// Run fixtures and aggregate their reports.
    Run {
        #[arg(long, conflicts_with = "id", required_unless_present = "id")]
        all: bool,
        #[arg(long)]
        id: Vec<String>,
    },
}

/// Default `e_max`: 3 up to dimension 2, otherwise 2.
pub fn default_emax(d: usize) -> u32 {
    if d <= 2 {
        3
    } else {
        2
    }
}

struct Context {
    format: Format,
    order: Option<OrderKind>,
    limits: Limits,
    seed: u64,
}

impl Context {
    fn session(&self, input: &InputArgs) -> Result<Session> {
        let text = std::fs::read_to_string(&input.input)
            .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", input.input.display())))?;
        SessionInput::parse(&text)?.build(self.order, self.limits)
    }
}

/// Rendered output and the exit code to report.
struct Output {
    text: String,
    code: i32,
}

fn json<T: Serialize>(v: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(v).map_err(|e| Error::InvalidInput(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn csv_table(header: &[&str], rows: Vec<Vec<String>>) -> Result<String> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    let io = |e: csv::Error| Error::InvalidInput(e.to_string());
    w.write_record(header).map_err(io)?;
    for r in rows {
        w.write_record(&r).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::InvalidInput(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

fn verdict_code(v: Verdict) -> i32 {
    match v {
        Verdict::Fail => 1,
        Verdict::Pass | Verdict::Inapplicable => 0,
    }
}

#[derive(Serialize)]
struct BasisOut {
    ring: String,
    ideal: String,
    order: String,
    basis: Vec<String>,
}

#[derive(Serialize)]
struct DimOut {
    ideal: String,
    dimension: usize,
}

#[derive(Serialize)]
struct ColengthOut {
    ideal: String,
    local: bool,
    colength: Length,
}

#[derive(Serialize)]
struct MultOut {
    ideal: String,
    param: String,
    #[serde(flatten)]
    result: MultiplicityResult,
}

#[derive(Serialize)]
struct FixtureSummary {
    id: String,
    notes: String,
    expectations: usize,
}

fn hk_csv(report: &HkReport) -> Result<String> {
    let rows = report
        .rows
        .iter()
        .map(|r| {
            vec![
                r.e.to_string(),
                r.q.to_string(),
                r.colength.to_string(),
                r.ratio.numer().to_string(),
                r.ratio.denom().to_string(),
            ]
        })
        .collect();
    csv_table(&["e", "q", "colength", "ratio_num", "ratio_den"], rows)
}

fn value_text(v: &checks::Value) -> (String, String) {
    match v {
        checks::Value::Rational(r) => (r.numer().to_string(), r.denom().to_string()),
        checks::Value::Integer(i) => (i.to_string(), "1".into()),
        checks::Value::Length(l) => (l.to_string(), "1".into()),
        checks::Value::Bool(b) => (b.to_string(), String::new()),
        checks::Value::Text(t) => (t.clone(), String::new()),
    }
}

fn check_output(rep: CheckReport, format: Format) -> Result<Output> {
    let code = verdict_code(rep.verdict);
    let text = match format {
        Format::Json => json(&rep)?,
        Format::Csv => {
            let mut rows = vec![vec!["verdict".to_string(), rep.verdict.as_str().into(), String::new()]];
            for q in &rep.quantities {
                let (num, den) = value_text(&q.value);
                rows.push(vec![q.name.clone(), num, den]);
            }
            csv_table(&["name", "value", "den"], rows)?
        }
    };
    Ok(Output { text, code })
}

fn corpus_output(rep: &CorpusReport, format: Format) -> Result<Output> {
    let text = match format {
        Format::Json => json(rep)?,
        Format::Csv => {
            let mut rows = Vec::new();
            for f in &rep.fixtures {
                for r in &f.results {
                    let (check, verdict) = match &r.outcome {
                        corpus::Outcome::Report(c) => (c.check.clone(), c.verdict.as_str().to_string()),
                        corpus::Outcome::Error { error, .. } => (String::new(), format!("ERROR: {error}")),
                    };
                    let prov = serde_json::to_value(r.provenance).unwrap();
                    rows.push(vec![
                        f.id.clone(),
                        r.claim.clone(),
                        prov.as_str().unwrap_or_default().to_string(),
                        check,
                        verdict,
                    ]);
                }
            }
            csv_table(&["fixture", "claim", "provenance", "check", "verdict"], rows)?
        }
    };
    Ok(Output {
        text,
        code: rep.exit_code(),
    })
}

fn simple(format: Format, header: &[&str], row: Vec<String>, value: &impl Serialize) -> Result<Output> {
    let text = match format {
        Format::Json => json(value)?,
        Format::Csv => csv_table(header, vec![row])?,
    };
    Ok(Output { text, code: 0 })
}

fn dispatch(command: Command, ctx: &Context) -> Result<Output> {
    let f = ctx.format;
    match command {
        Command::Gb(a) => {
            let s = ctx.session(&a.input)?;
            let ideal = s.ideal(&a.ideal)?;
            let gb = ideal.groebner_basis()?;
            let out = BasisOut {
                ring: s.ring().name().to_string(),
                ideal: ideal.label(),
                order: s.ring().order().kind().to_string(),
                basis: gb.polys().iter().map(|g| g.to_string()).collect(),
            };
            let text = match f {
                Format::Json => json(&out)?,
                Format::Csv => csv_table(&["generator"], out.basis.iter().map(|g| vec![g.clone()]).collect())?,
            };
            Ok(Output { text, code: 0 })
        }
        Command::Dim(a) => {
            let s = ctx.session(&a.input)?;
            let ideal = s.ideal(&a.ideal)?;
            let out = DimOut {
                ideal: ideal.label(),
                dimension: numerics::dimension(&ideal)?,
            };
            simple(
                f,
                &["ideal", "dimension"],
                vec![out.ideal.clone(), out.dimension.to_string()],
                &out,
            )
        }
        Command::Colength(a) => colength_cmd(a, ctx, false),
        Command::LocalColength(a) => colength_cmd(a, ctx, true),
        Command::Mult { ideal, param } => {
            let s = ctx.session(&ideal.input)?;
            let j = s.ideal(&ideal.ideal)?;
            let x = s.param(&param)?;
            let out = MultOut {
                ideal: j.label(),
                param: x.to_string(),
                result: numerics::hilbert_samuel(&x, &j)?,
            };
            let r = &out.result;
            simple(
                f,
                &["ideal", "param", "value", "stabilized_at", "certified"],
                vec![
                    out.ideal.clone(),
                    out.param.clone(),
                    r.value.to_string(),
                    r.stabilized_at.to_string(),
                    r.certified.to_string(),
                ],
                &out,
            )
        }
        Command::Hk { ideal, emax } => {
            let s = ctx.session(&ideal.input)?;
            let i = s.ideal(&ideal.ideal)?;
            let rep = hilbert_kunz::hk_function(&i, emax.unwrap_or(default_emax(s.ring().dim())))?;
            let text = match f {
                Format::Json => json(&rep)?,
                Format::Csv => hk_csv(&rep)?,
            };
            Ok(Output { text, code: 0 })
        }
        Command::Ehk { ideal, emax } => {
            let s = ctx.session(&ideal.input)?;
            let i = s.ideal(&ideal.ideal)?;
            let est = hilbert_kunz::ehk_estimate(&i, emax.unwrap_or(default_emax(s.ring().dim())))?;
            let text = match f {
                Format::Json => json(&est)?,
                Format::Csv => csv_table(
                    &[
                        "estimate_num",
                        "estimate_den",
                        "last_ratio_num",
                        "last_ratio_den",
                        "gap_num",
                        "gap_den",
                        "method",
                    ],
                    vec![vec![
                        est.estimate.numer().to_string(),
                        est.estimate.denom().to_string(),
                        est.last_ratio.numer().to_string(),
                        est.last_ratio.denom().to_string(),
                        est.gap.numer().to_string(),
                        est.gap.denom().to_string(),
                        est.method.tag().to_string(),
                    ]],
                )?,
            };
            Ok(Output { text, code: 0 })
        }
        Command::Check(c) => check_output(run_check(c, ctx)?, f),
        Command::Corpus(CorpusCommand::List) => {
            let list: Vec<FixtureSummary> = corpus::corpus(ctx.seed)
                .into_iter()
                .map(|fx| FixtureSummary {
                    id: fx.id,
                    notes: fx.notes,
                    expectations: fx.expectations.len(),
                })
                .collect();
            let text = match f {
                Format::Json => json(&list)?,
                Format::Csv => csv_table(
                    &["id", "notes", "expectations"],
                    list.iter()
                        .map(|s| vec![s.id.clone(), s.notes.clone(), s.expectations.to_string()])
                        .collect(),
                )?,
            };
            Ok(Output { text, code: 0 })
        }
        Command::Corpus(CorpusCommand::Run { all, id }) => {
            let fixtures = if all {
                corpus::corpus(ctx.seed)
            } else {
                id.iter()
                    .map(|i| corpus::fixture(i, ctx.seed))
                    .collect::<Result<Vec<_>>>()?
            };
            corpus_output(&corpus::run_corpus(&fixtures, ctx.seed, ctx.limits), f)
        }
    }
}

fn colength_cmd(a: IdealArgs, ctx: &Context, local: bool) -> Result<Output> {
    let s = ctx.session(&a.input)?;
    let ideal = s.ideal(&a.ideal)?;
    let colength = if local {
        numerics::local_colength(&ideal)?
    } else {
        numerics::colength(&ideal)?
    };
    let out = ColengthOut {
        ideal: ideal.label(),
        local,
        colength,
    };
    simple(
        ctx.format,
        &["ideal", "local", "colength"],
        vec![out.ideal.clone(), local.to_string(), out.colength.to_string()],
        &out,
    )
}

fn run_check(c: CheckCommand, ctx: &Context) -> Result<CheckReport> {
    match c {
        CheckCommand::Kunz { input, q } => checks::check_kunz(ctx.session(&input)?.ring(), &q),
        CheckCommand::Flatness { ideal, q } => {
            let s = ctx.session(&ideal.input)?;
            checks::check_flatness(&s.ideal(&ideal.ideal)?, &q)
        }
        CheckCommand::Lemma21 { ideal, ideal_j, q } => {
            let s = ctx.session(&ideal.input)?;
            checks::check_lemma21(&s.ideal(&ideal.ideal)?, &s.ideal(&ideal_j)?, &q)
        }
        CheckCommand::Thm23 {
            input,
            ideal_j,
            param,
            prime,
            emax,
        } => {
            let s = ctx.session(&input)?;
            let primes = prime.iter().map(|p| s.prime(p)).collect::<Result<Vec<_>>>()?;
            checks::check_thm23(
                &s.ideal(&ideal_j)?,
                &s.param(&param)?,
                &primes,
                emax.unwrap_or(default_emax(s.ring().dim())),
                &checks::limit_tolerance(),
            )
        }
        CheckCommand::Thm33 { input, prime, param, q } => {
            let s = ctx.session(&input)?;
            checks::check_thm33(&s.ideal(&prime)?, &s.param(&param)?, &q)
        }
        CheckCommand::Rescaling { input, e } => checks::check_rescaling(ctx.session(&input)?.ring(), e),
    }
}

/// Runs the command line `args` (program name first), writing results to
/// `out` and diagnostics to `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(rendered.as_bytes())
            } else {
                err.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let g = &cli.global;
    let ctx = Context {
        format: g.format,
        order: g.order.map(Into::into),
        limits: Limits {
            spair_cap: g.spair_cap,
            n_cap: g.n_cap,
            ..Limits::default()
        },
        seed: g.seed,
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(g.jobs).build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: cannot start worker pool: {e}");
            return 2;
        }
    };
    match pool.install(|| dispatch(cli.command, &ctx)) {
        Ok(o) => {
            if out.write_all(o.text.as_bytes()).is_err() {
                return 2;
            }
            o.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

//! `tpres`: classify, build and test rank-one Toeplitz preservers from the
//! command line. Every command prints one JSON document.

use std::fmt;
use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use toeplitz_preservers::classifier::{classify, determinant_report};
use toeplitz_preservers::generators::{build_preserver, induced_coordinate_matrix};
use toeplitz_preservers::json::{
    self as docs, spec_from_value, CensusDoc, DeterminantDoc, FactorDoc, MatrixBody, MatrixDoc, ReportDoc, SpecDoc,
    VerdictDoc,
};
use toeplitz_preservers::moment::rank_one_toeplitz_factor;
use toeplitz_preservers::oracle::{compare_classifier_oracle, rank_one_census, OracleMode, DEFAULT_BUDGET, DEFAULT_SEED};
use toeplitz_preservers::{
    hankel_conjugate, toeplitz_conjugate, Error, Field, FieldDescriptor, FieldKind, Fp, PreserverVerdict, Q, QI,
};

#[derive(Parser, Debug)]
#[command(name = "tpres", version, about = "Rank-one preservers of Toeplitz matrices over exact fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Options,
}

#[derive(Args, Debug)]
struct Options {
    /// Scalar field: q, qi or gf:<p>. Defaults to the field of the input document, then q.
    #[arg(long, global = true)]
    field: Option<FieldDescriptor>,
    /// Square size n (coordinate length 2n-1)
    #[arg(long, global = true, conflicts_with = "rect")]
    n: Option<usize>,
    /// Rectangular size m,n with m <= n
    #[arg(long, global = true, value_parser = parse_rect)]
    rect: Option<(usize, usize)>,
    /// Input JSON file, or - for standard input
    #[arg(long, short, global = true, conflicts_with = "json")]
    input: Option<String>,
    /// Inline JSON input
    #[arg(long, global = true)]
    json: Option<String>,
    /// Write the JSON document here instead of standard output
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Random samples for `oracle --mode random`
    #[arg(long, global = true, default_value_t = 10_000)]
    samples: usize,
    /// Enumeration budget for exhaustive runs
    #[arg(long, global = true, env = "TPRES_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: u128,
    /// Pretty-print the JSON and add a one-line summary on standard error
    #[arg(long, global = true)]
    pretty: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify a coordinate matrix L
    Classify,
    /// Build L, M and N from a generator spec or a canonical verdict
    Build {
        /// Report the left factor of the Hankel form F M F instead of M
        #[arg(long)]
        hankel: bool,
    },
    /// Factor a rank-one Toeplitz matrix as mu h(xi)
    Factor,
    /// Determinant-preserver test for a canonical map
    DetCheck,
    /// Compare the classifier against the direct oracle
    Oracle {
        #[arg(long, value_enum, default_value_t = Mode::Families)]
        mode: Mode,
    },
    /// Count rank-one Toeplitz matrices two ways over a prime field
    Census,
    /// Translate between Toeplitz and Hankel coordinates
    Hankel,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Mode {
    Families,
    Random,
    Exhaustive,
}

fn parse_rect(s: &str) -> Result<(usize, usize), String> {
    let (m, n) = s.split_once(',').ok_or_else(|| format!("expected m,n, got {s:?}"))?;
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"));
    Ok((parse(m)?, parse(n)?))
}

#[derive(Debug)]
enum CliError {
    Core(Error),
    Io(String, io::Error),
    Usage(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        Self::Core(e)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Core(e) => write!(f, "{e}"),
            Self::Io(what, e) => write!(f, "{what}: {e}"),
            Self::Usage(msg) => f.write_str(msg),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            Self::Core(Error::BudgetExceeded { .. }) => 3,
            _ => 2,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

impl Options {
    fn shape(&self) -> CliResult<Option<(usize, usize)>> {
        let shape = match (self.n, self.rect) {
            (Some(n), _) => Some((n, n)),
            (None, r) => r,
        };
        match shape {
            Some((m, n)) if m < 2 || n < 2 => Err(CliError::Usage(format!("sizes must be at least 2, got {m}x{n}"))),
            other => Ok(other),
        }
    }

    fn read_input(&self) -> CliResult<Option<Value>> {
        let text = match (&self.input, &self.json) {
            (Some(path), _) if path == "-" => {
                let mut buf = String::new();
                io::stdin().read_to_string(&mut buf).map_err(|e| CliError::Io("standard input".into(), e))?;
                buf
            }
            (Some(path), _) => fs::read_to_string(path).map_err(|e| CliError::Io(path.clone(), e))?,
            (None, Some(inline)) => inline.clone(),
            (None, None) => return Ok(None),
        };
        Ok(Some(docs::from_str(&text)?))
    }
}

fn require(input: &Option<Value>) -> CliResult<&Value> {
    input
        .as_ref()
        .ok_or_else(|| CliError::Usage("this command needs --input or --json".into()))
}

/// The coordinate matrix inside a matrix document or a `build` output.
fn matrix_doc(v: &Value) -> CliResult<MatrixDoc> {
    Ok(docs::from_value(v.get("coordinate_matrix").unwrap_or(v).clone())?)
}

fn to_value<T: serde::Serialize>(doc: &T) -> Value {
    serde_json::to_value(doc).expect("documents serialize")
}

fn check_ell(opts: &Options, ell: usize) -> CliResult<()> {
    if let Some((m, n)) = opts.shape()? {
        if m + n - 1 != ell {
            return Err(Error::DimensionMismatch(format!("L is {ell}x{ell} but {m}x{n} matrices need {}", m + n - 1)).into());
        }
    }
    Ok(())
}

fn run_classify<F: Field>(opts: &Options, input: &Value) -> CliResult<Value> {
    let l = matrix_doc(input)?.to_dense::<F>()?;
    check_ell(opts, l.rows())?;
    let verdict = classify(&l)?;
    Ok(to_value(&VerdictDoc::new(&verdict, &l)?))
}

fn run_build<F: Field>(opts: &Options, input: &Value, hankel: bool) -> CliResult<Value> {
    let spec = spec_from_value::<F>(input)?;
    let ell_hint = input.get("ell").and_then(Value::as_u64).map(|e| e as usize);
    let (m, n) = match (opts.shape()?, ell_hint) {
        (Some(shape), _) => shape,
        (None, Some(ell)) if ell % 2 == 1 => ((ell + 1) / 2, (ell + 1) / 2),
        _ => return Err(CliError::Usage("build needs --n or --rect".into())),
    };
    let pair = build_preserver(&spec, m, n)?;
    let l = induced_coordinate_matrix(&pair)?;
    let left = if hankel { pair.hankel_form().0 } else { pair.left.clone() };
    Ok(json!({
        "field": F::descriptor(),
        "m": m,
        "n": n,
        "spec": SpecDoc::from_spec(&spec),
        "hankel": hankel,
        "coordinate_matrix": MatrixDoc::from_dense(&l),
        "left": MatrixDoc::from_dense(&left),
        "right": MatrixDoc::from_dense(&pair.right),
    }))
}

fn run_factor<F: Field>(input: &Value) -> CliResult<Value> {
    let a = matrix_doc(input)?.to_toeplitz::<F>()?;
    Ok(to_value(&FactorDoc::new(rank_one_toeplitz_factor(&a).as_ref())))
}

fn run_det_check<F: Field>(opts: &Options, input: &Value) -> CliResult<Value> {
    let is_spec = input.get("form").is_some() || input.get("kind").is_some();
    let (verdict, ell) = if is_spec {
        let verdict = match spec_from_value::<F>(input) {
            Ok(spec) => PreserverVerdict::Canonical { spec },
            Err(Error::NotCanonical) => PreserverVerdict::NotPreserver { witness: None },
            Err(e) => return Err(e.into()),
        };
        (verdict, input.get("ell").and_then(Value::as_u64).map(|e| e as usize))
    } else {
        let l = matrix_doc(input)?.to_dense::<F>()?;
        (classify(&l)?, Some(l.rows()))
    };
    let n = match (opts.shape()?, ell) {
        (Some((m, n)), _) if m == n => n,
        (Some((m, n)), _) => return Err(Error::NonSquare { rows: m, cols: n }.into()),
        (None, Some(ell)) if ell % 2 == 1 => (ell + 1) / 2,
        (None, Some(ell)) => return Err(Error::DimensionMismatch(format!("ell = {ell} is not 2n - 1")).into()),
        (None, None) => return Err(CliError::Usage("det-check needs --n".into())),
    };
    if let Some(ell) = ell {
        check_ell(opts, ell)?;
    }
    if !verdict.is_canonical() {
        return Ok(json!({
            "field": F::descriptor(),
            "n": n,
            "canonical": false,
            "det_preserver": false,
        }));
    }
    let mut doc = to_value(&DeterminantDoc::new(n, &determinant_report(&verdict, n)?));
    doc["canonical"] = Value::Bool(true);
    Ok(doc)
}

fn run_oracle<F: Field>(opts: &Options, mode: Mode) -> CliResult<Value> {
    let (m, n) = opts.shape()?.unwrap_or((2, 2));
    let mode = match mode {
        Mode::Families => OracleMode::Families,
        Mode::Random => OracleMode::Random {
            samples: opts.samples,
            seed: opts.seed,
        },
        Mode::Exhaustive => OracleMode::Exhaustive,
    };
    let report = compare_classifier_oracle::<F>(m + n - 1, mode, opts.budget)?;
    Ok(to_value(&ReportDoc::new(&report)?))
}

fn run_census<F: Field>(opts: &Options) -> CliResult<Value> {
    let (m, n) = opts.shape()?.unwrap_or((2, 2));
    Ok(to_value(&CensusDoc::new(&rank_one_census::<F>(m, n, opts.budget)?)))
}

fn run_hankel<F: Field>(input: &Value) -> CliResult<Value> {
    let doc = matrix_doc(input)?;
    Ok(match doc.body {
        MatrixBody::Hankel(_) => to_value(&MatrixDoc::from_toeplitz(&toeplitz_conjugate(&doc.to_hankel::<F>()?)?)),
        _ => to_value(&MatrixDoc::from_hankel(&hankel_conjugate(&doc.to_toeplitz::<F>()?)?)),
    })
}

fn run<F: Field>(cli: &Cli, input: &Option<Value>) -> CliResult<Value> {
    let opts = &cli.opts;
    let needs_input = !matches!(cli.command, Command::Oracle { .. } | Command::Census);
    if !needs_input && input.is_some() {
        return Err(CliError::Usage("this command takes no input document".into()));
    }
    match cli.command {
        Command::Classify => run_classify::<F>(opts, require(input)?),
        Command::Build { hankel } => run_build::<F>(opts, require(input)?, hankel),
        Command::Factor => run_factor::<F>(require(input)?),
        Command::DetCheck => run_det_check::<F>(opts, require(input)?),
        Command::Oracle { mode } => run_oracle::<F>(opts, mode),
        Command::Census => run_census::<F>(opts),
        Command::Hankel => run_hankel::<F>(require(input)?),
    }
}

/// Runtime prime to const-generic field type.
macro_rules! dispatch_prime {
    ($p:expr, $cli:expr, $input:expr; $($q:literal)*) => {
        match $p {
            $($q => run::<Fp<$q>>($cli, $input),)*
            p => Err(CliError::Usage(format!(
                "gf:{p} is not built in; supported primes: {}",
                [$($q),*].map(|q: u64| q.to_string()).join(", ")
            ))),
        }
    };
}

fn dispatch(cli: &Cli, field: FieldDescriptor, input: &Option<Value>) -> CliResult<Value> {
    match field.kind() {
        FieldKind::Rational => run::<Q>(cli, input),
        FieldKind::GaussianRational => run::<QI>(cli, input),
        FieldKind::PrimeField => dispatch_prime!(field.characteristic(), cli, input;
            2 3 5 7 11 13 17 19 23 29 31 37 41 43 47 53 59 61 67 71 73 79 83 89 97 101 127 257 65537),
    }
}

fn summary(command: &Command, v: &Value) -> String {
    let text = |x: &Value| x.as_str().map_or_else(|| x.to_string(), str::to_string);
    let s = |k: &str| v.get(k).map(text).unwrap_or_default();
    match command {
        Command::Classify => format!("{}: kind {}, preserver {}, regime {}", s("field"), s("kind"), s("preserver"), s("regime")),
        Command::Build { .. } => format!("{}: {}x{} preserver of form {}", s("field"), s("m"), s("n"), text(&v["spec"]["form"])),
        Command::Factor => format!("{}: rank one {}, mu {}, xi {}", s("field"), s("rank_one"), s("mu"), s("xi")),
        Command::DetCheck => format!("{}: n = {}, determinant preserver {}", s("field"), s("n"), s("det_preserver")),
        Command::Oracle { .. } => format!(
            "{}: {} tested, {} agree, {} disagreements ({})",
            s("field"),
            s("tested"),
            s("agreements"),
            v["disagreements"].as_array().map_or(0, Vec::len),
            s("regime")
        ),
        Command::Census => format!("{}: {} rank-one matrices, enumerations agree {}", s("field"), s("count"), s("agree")),
        Command::Hankel => "conjugated".to_string(),
    }
}

fn emit(cli: &Cli, v: &Value) -> CliResult<()> {
    let text = if cli.opts.pretty {
        serde_json::to_string_pretty(v)
    } else {
        serde_json::to_string(v)
    }
    .expect("values serialize");
    match &cli.opts.output {
        Some(path) => fs::write(path, text + "\n").map_err(|e| CliError::Io(path.display().to_string(), e))?,
        None => writeln!(io::stdout(), "{text}").map_err(|e| CliError::Io("standard output".into(), e))?,
    }
    if cli.opts.pretty {
        eprintln!("{}", summary(&cli.command, v));
    }
    Ok(())
}

fn main_inner(cli: &Cli) -> CliResult<()> {
    let input = cli.opts.read_input()?;
    let doc_field = match input.as_ref().and_then(|v| v.get("field")) {
        Some(tag) => Some(docs::from_value::<FieldDescriptor>(tag.clone())?),
        None => None,
    };
    let field = cli.opts.field.or(doc_field).unwrap_or(FieldDescriptor::RATIONAL);
    let out = dispatch(cli, field, &input)?;
    emit(cli, &out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match main_inner(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("tpres: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

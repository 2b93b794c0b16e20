//! Command-line front end: constant tables, certification runs, Fischer
//! decompositions, Cauchy–Kovalevskaya extensions and subharmonicity checks.
//!
//! Exit codes: 0 success, 1 refuted certificate or sampled violation,
//! 2 usage or input error.

pub mod render;

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use monogenic::extremal::{alpha0, certify_m_with, CertifyOptions, DEFAULT_SEED};
use monogenic::poly::parse_poly;
use monogenic::rational::parse_rational;
use monogenic::spaces::{ck_extend, fischer_decompose, is_monogenic};
use monogenic::subharmonic::{
    check_points, random_monogenic, sample_points, sharpness_witness, GradientField, SamplerConfig, Verdict,
    DEFAULT_SAMPLE_SEED,
};
use monogenic::{Error, HPolynomial, Rational, Setting};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use render::{CheckOutput, CertifyOutput, DecomposeOutput, ExtendOutput, Format, Rendered, TableOutput};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "monogenic", version, about = "Exact constants for gradients of monogenic functions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Tabulate M and α₀ for m = 0..=m-max, certifying every row.
    Table(TableArgs),
    /// Certify M for one m and print the full report.
    Certify(CertifyArgs),
    /// Fischer decomposition of a homogeneous hyperplane polynomial.
    Decompose(PolyArgs),
    /// Monogenic extension of a hyperplane polynomial.
    Extend(PolyArgs),
    /// Sample the sign of Δ(|∇ᵐf|^α) at seeded rational points.
    Check(CheckArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SettingName {
    Quaternion,
    Clifford,
    Octonion,
}

#[derive(Args, Debug)]
pub struct SettingArgs {
    #[arg(long, value_enum, default_value_t = SettingName::Quaternion)]
    pub setting: SettingName,
    /// Number of Clifford generators; required for and only valid with `clifford`.
    #[arg(long)]
    pub n: Option<usize>,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    #[command(flatten)]
    pub setting: SettingArgs,
    #[arg(long = "m-max", default_value_t = 2)]
    pub m_max: usize,
    /// Seed of the random directions.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct CertifyArgs {
    #[command(flatten)]
    pub setting: SettingArgs,
    #[arg(long, default_value_t = 0)]
    pub m: usize,
    /// Seed of the random directions.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct PolyArgs {
    #[command(flatten)]
    pub setting: SettingArgs,
    /// Polynomial text, or `@path` to read it from a file.
    #[arg(long)]
    pub input: String,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    #[command(flatten)]
    pub setting: SettingArgs,
    #[arg(long, default_value_t = 1)]
    pub m: usize,
    /// Exponent `p/q` in (0, 2]; defaults to the sharp exponent α₀.
    #[arg(long)]
    pub alpha: Option<String>,
    /// Seed of the sample points (and of the random function without `--input`).
    #[arg(long, default_value_t = DEFAULT_SAMPLE_SEED)]
    pub seed: u64,
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    /// Use the sharpness witness and include the origin among the points.
    #[arg(long, conflicts_with = "input")]
    pub witness: bool,
    /// Monogenic polynomial text, or `@path`.
    #[arg(long)]
    pub input: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

/// Failure of a command, mapped onto an exit code.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Failed(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Internal(_) | Error::WitnessInvalid(_) => Failure::Failed(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl SettingArgs {
    pub fn resolve(&self) -> Result<Setting, Failure> {
        match (self.setting, self.n) {
            (SettingName::Clifford, Some(n)) => Setting::clifford(n).map_err(Failure::from),
            (SettingName::Clifford, None) => Err(Failure::Usage("--setting clifford requires --n".into())),
            (_, Some(_)) => Err(Failure::Usage("--n only applies to --setting clifford".into())),
            (SettingName::Quaternion, None) => Ok(Setting::Quaternion),
            (SettingName::Octonion, None) => Ok(Setting::Octonion),
        }
    }
}

fn read_input(text: &str) -> Result<String, Failure> {
    match text.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {path}: {e}"))),
        None => Ok(text.to_string()),
    }
}

fn parse_input(text: &str, setting: Setting) -> Result<HPolynomial, Failure> {
    Ok(parse_poly(&read_input(text)?, setting.kind(), setting.nvars())?)
}

fn parse_alpha(text: &str) -> Result<Rational, Failure> {
    parse_rational(text).ok_or_else(|| Failure::Usage(format!("cannot parse exponent '{text}' as p/q")))
}

/// Outcome of a command: rendered output and whether every check passed.
pub struct Outcome {
    pub output: Rendered,
    pub passed: bool,
}

pub fn cmd_table(args: &TableArgs) -> Result<Outcome, Failure> {
    let setting = args.setting.resolve()?;
    let options = CertifyOptions { seed: args.seed, ..Default::default() };
    let reports = std::thread::scope(|scope| {
        let handles: Vec<_> =
            (0..=args.m_max).map(|m| scope.spawn(move || certify_m_with(setting, m, options))).collect();
        handles.into_iter().map(|h| h.join().expect("certification thread panicked")).collect::<Result<Vec<_>, _>>()
    })?;
    let passed = reports.iter().all(|r| r.all_passed());
    Ok(Outcome { output: TableOutput::new(setting, args.seed, &reports).render(args.format), passed })
}

pub fn cmd_certify(args: &CertifyArgs) -> Result<Outcome, Failure> {
    let setting = args.setting.resolve()?;
    let report = certify_m_with(setting, args.m, CertifyOptions { seed: args.seed, ..Default::default() })?;
    let passed = report.all_passed();
    Ok(Outcome { output: CertifyOutput::new(&report, args.seed).render(args.format), passed })
}

pub fn cmd_decompose(args: &PolyArgs) -> Result<Outcome, Failure> {
    let setting = args.setting.resolve()?;
    let p = parse_input(&args.input, setting)?;
    let degree = p
        .homogeneous_degree()
        .ok_or_else(|| Failure::Usage("decompose needs a homogeneous polynomial".into()))?;
    let dist = setting.distinguished_var();
    if p.uses_variable(dist) {
        return Err(Failure::Usage(format!("decompose needs a polynomial free of x{dist}")));
    }
    let pieces = fischer_decompose(&p, &setting.vector_pairs())?;
    Ok(Outcome { output: DecomposeOutput::new(setting, &p, degree, &pieces).render(args.format), passed: true })
}

pub fn cmd_extend(args: &PolyArgs) -> Result<Outcome, Failure> {
    let setting = args.setting.resolve()?;
    let p = parse_input(&args.input, setting)?;
    let f = ck_extend(&p, setting)?;
    let monogenic = is_monogenic(&f, &setting.ambient_operator())?;
    Ok(Outcome { output: ExtendOutput::new(setting, &p, &f, monogenic).render(args.format), passed: monogenic })
}

pub fn cmd_check(args: &CheckArgs) -> Result<Outcome, Failure> {
    let setting = args.setting.resolve()?;
    let alpha = match &args.alpha {
        Some(text) => parse_alpha(text)?,
        None => alpha0(setting, args.m),
    };
    let (f, source) = if args.witness {
        (sharpness_witness(setting, args.m)?.0, "witness")
    } else if let Some(text) = &args.input {
        (parse_input(text, setting)?, "input")
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
        (random_monogenic(setting, &[args.m, args.m + 1, args.m + 2], &mut rng)?, "random")
    };
    let field = GradientField::new(&f, args.m)?;
    let config = SamplerConfig { samples: args.samples, seed: args.seed, include_origin: args.witness };
    let points = sample_points(&config, setting.nvars());
    let check = check_points(&f, args.m, &alpha, &field, points)?;
    let passed = check.verdict == Verdict::AllNonnegative;
    let output = CheckOutput::new(setting, &check, &field, source, args.seed)?.render(args.format);
    Ok(Outcome { output, passed })
}

/// Parses `args`, runs the command and writes its output; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let result = match &cli.command {
        Command::Table(a) => cmd_table(a),
        Command::Certify(a) => cmd_certify(a),
        Command::Decompose(a) => cmd_decompose(a),
        Command::Extend(a) => cmd_extend(a),
        Command::Check(a) => cmd_check(a),
    };
    match result {
        Ok(outcome) => {
            if out.write_all(outcome.output.as_bytes()).is_err() {
                return EXIT_FAILED;
            }
            if outcome.passed {
                EXIT_OK
            } else {
                EXIT_FAILED
            }
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Failed(msg)) => {
            let _ = writeln!(err, "failed: {msg}");
            EXIT_FAILED
        }
    }
}

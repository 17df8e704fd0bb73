//! Command-line front end. [`run`] takes the argument list and two output
//! streams and returns the process exit status, so it can be driven from
//! tests without spawning a process.

use std::ffi::OsString;
use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::error::ErrorKind as ClapErrorKind;
use clap::{Args, Parser, Subcommand};

use crate::body::BodyOfEvidence;
use crate::codon::{decode_codon, evolve_code, translate, GeneticCode};
use crate::entropy::entropy;
use crate::error::{Error, ErrorKind, Result};
use crate::evaluation::{interval, EvalMode, Hypothesis};
use crate::format::{self, AnyBundle, AnyCode, Bundle};
use crate::fusion::{combine_all, Rule};
use crate::numeric::{Mass, NumericMode};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_COMPUTATION: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "evidentia",
    version,
    about = "Evidence fusion over overlapping frames and codon decoding"
)]
pub struct Cli {
    /// Write the result here instead of standard output.
    #[arg(long, short, global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fold every body of a bundle into one.
    Combine(CombineArgs),
    /// Belief and plausibility of one hypothesis.
    Eval(EvalArgs),
    /// Entropy report of a body.
    Entropy(EntropyArgs),
    /// Step-by-step decoding of one codon, as CSV.
    Decode(DecodeArgs),
    /// Sample protein sequences for an mRNA string, as JSON.
    Translate(TranslateArgs),
    /// Entropy descent over genetic codes, as CSV.
    Evolve(EvolveArgs),
}

#[derive(Debug, Args)]
pub struct CombineArgs {
    /// Bundle file, or `-` for standard input.
    pub input: PathBuf,
    #[arg(long, default_value = "smets")]
    pub rule: Rule,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// Bundle file, or `-` for standard input.
    pub input: PathBuf,
    /// Possibility name, `theta` or `empty`.
    #[arg(long)]
    pub hypothesis: String,
    #[arg(long, default_value = "literal")]
    pub mode: EvalMode,
    /// Used when the bundle holds more than one body.
    #[arg(long, default_value = "smets")]
    pub rule: Rule,
}

#[derive(Debug, Args)]
pub struct EntropyArgs {
    /// Bundle file, or `-` for standard input.
    pub input: PathBuf,
    #[arg(long, default_value = "literal")]
    pub mode: EvalMode,
    #[arg(long, default_value = "smets")]
    pub rule: Rule,
}

#[derive(Debug, Args)]
pub struct DecodeArgs {
    /// Code file, or builtin:toy, builtin:toy-ambiguous, builtin:standard.
    #[arg(long, default_value = "builtin:toy")]
    pub code: String,
    #[arg(long)]
    pub codon: String,
    #[arg(long, default_value = "smets")]
    pub rule: Rule,
    #[arg(long, default_value = "literal")]
    pub mode: EvalMode,
}

#[derive(Debug, Args)]
pub struct TranslateArgs {
    #[arg(long, default_value = "builtin:toy")]
    pub code: String,
    #[arg(long)]
    pub mrna: String,
    #[arg(long, default_value_t = 1000)]
    pub samples: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct EvolveArgs {
    #[arg(long, default_value = "builtin:toy-ambiguous")]
    pub code: String,
    #[arg(long, default_value_t = 200)]
    pub steps: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = "literal")]
    pub mode: EvalMode,
}

pub fn exit_code(err: &Error) -> i32 {
    match err.kind() {
        ErrorKind::Validation => EXIT_VALIDATION,
        ErrorKind::Computation => EXIT_COMPUTATION,
    }
}

/// Parses `args` (program name first), executes, and reports on the given
/// streams. Returns the exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let informational = matches!(e.kind(), ClapErrorKind::DisplayHelp | ClapErrorKind::DisplayVersion);
            let rendered = e.render().to_string();
            if informational {
                let _ = stdout.write_all(rendered.as_bytes());
                return EXIT_OK;
            }
            let _ = stderr.write_all(rendered.as_bytes());
            return EXIT_VALIDATION;
        }
    };
    match execute(&cli) {
        Ok(text) => {
            let written = match &cli.output {
                Some(path) => fs::write(path, &text).map_err(|e| Error::Io(format!("{}: {e}", path.display()))),
                None => stdout.write_all(text.as_bytes()).map_err(|e| Error::Io(e.to_string())),
            };
            match written {
                Ok(()) => EXIT_OK,
                Err(e) => report(stderr, &e),
            }
        }
        Err(e) => report(stderr, &e),
    }
}

fn report(stderr: &mut dyn Write, err: &Error) -> i32 {
    let _ = writeln!(stderr, "error: {err}");
    exit_code(err)
}

/// Runs the parsed command and returns the document to emit.
pub fn execute(cli: &Cli) -> Result<String> {
    let forced = format::numeric_mode_from_env()?;
    match &cli.command {
        Command::Combine(args) => match load_bundle(&args.input, forced)? {
            AnyBundle::Rational(b) => combine_doc(&b, args.rule),
            AnyBundle::Float(b) => combine_doc(&b, args.rule),
        },
        Command::Eval(args) => match load_bundle(&args.input, forced)? {
            AnyBundle::Rational(b) => eval_doc(&b, args),
            AnyBundle::Float(b) => eval_doc(&b, args),
        },
        Command::Entropy(args) => match load_bundle(&args.input, forced)? {
            AnyBundle::Rational(b) => entropy_doc(&b, args),
            AnyBundle::Float(b) => entropy_doc(&b, args),
        },
        Command::Decode(args) => match load_code(&args.code, forced)? {
            AnyCode::Rational(c) => decode_doc(&c, args),
            AnyCode::Float(c) => decode_doc(&c, args),
        },
        Command::Translate(args) => {
            let protein = match load_code(&args.code, forced)? {
                AnyCode::Rational(c) => translate(&c, &args.mrna, args.samples, args.seed)?,
                AnyCode::Float(c) => translate(&c, &args.mrna, args.samples, args.seed)?,
            };
            Ok(format::to_pretty(&format::protein_to_json(&protein)))
        }
        Command::Evolve(args) => match load_code(&args.code, forced)? {
            AnyCode::Rational(c) => evolve_doc(&c, args),
            AnyCode::Float(c) => evolve_doc(&c, args),
        },
    }
}

fn read_input(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Error::Io(format!("standard input: {e}")))?;
        return Ok(text);
    }
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn load_bundle(path: &Path, forced: Option<NumericMode>) -> Result<AnyBundle> {
    format::read_bundle(&read_input(path)?, forced)
}

fn load_code(spec: &str, forced: Option<NumericMode>) -> Result<AnyCode> {
    if let Some(name) = spec.strip_prefix("builtin:") {
        return format::builtin_code(name, forced).map_err(|e| e.at("--code"));
    }
    format::read_code(&read_input(Path::new(spec))?, forced)
}

/// The bundle's only body, or the fold of all of them under `rule`.
fn single_body<M: Mass>(bundle: &Bundle<M>, rule: Rule) -> Result<BodyOfEvidence<M>> {
    match bundle.bodies.as_slice() {
        [] => Err(Error::EmptyList.at("bodies")),
        [only] => Ok(only.clone()),
        many => Ok(combine_all(rule, many)?.result),
    }
}

fn combine_doc<M: Mass>(bundle: &Bundle<M>, rule: Rule) -> Result<String> {
    if bundle.bodies.is_empty() {
        return Err(Error::EmptyList.at("bodies"));
    }
    let report = combine_all(rule, &bundle.bodies)?;
    Ok(format::to_pretty(&format::combination_to_json(&report)))
}

fn eval_doc<M: Mass>(bundle: &Bundle<M>, args: &EvalArgs) -> Result<String> {
    let body = single_body(bundle, args.rule)?;
    let hypothesis = Hypothesis::parse(body.frame(), &args.hypothesis).map_err(|e| e.at("--hypothesis"))?;
    let result = interval(&body, &hypothesis, args.mode)?;
    Ok(format::to_pretty(&format::eval_to_json(&result, &args.hypothesis)))
}

fn entropy_doc<M: Mass>(bundle: &Bundle<M>, args: &EntropyArgs) -> Result<String> {
    let body = single_body(bundle, args.rule)?;
    let report = entropy(&body, args.mode)?;
    Ok(format::to_pretty(&format::entropy_to_json(&report)))
}

fn decode_doc<M: Mass>(code: &GeneticCode<M>, args: &DecodeArgs) -> Result<String> {
    let trace = decode_codon(code, &args.codon, args.rule, args.mode).map_err(|e| e.at("--codon"))?;
    format::trace_to_csv(&trace)
}

fn evolve_doc<M: Mass>(code: &GeneticCode<M>, args: &EvolveArgs) -> Result<String> {
    if args.steps == 0 {
        return Err(Error::Parse("--steps must be at least 1".into()));
    }
    let trajectory = evolve_code(code, args.steps, args.seed, args.mode)?;
    format::trajectory_to_csv(&trajectory)
}

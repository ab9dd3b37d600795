use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use flagcode::algebra::{FieldSpec, DEFAULT_ENUMERATION_CAP};
use flagcode::construction::{build_code, CodeFile, FlagListFile, SandwichParams};
use flagcode::decoder::{decode, erase, simulate, BudgetMode, DecodeStatus, ReceivedFile};
use flagcode::metrics::{
    aq_exact, cardinality_bound_check, classify, full_max_distance, BoundCheck,
};
use flagcode::Error;
use serde::Serialize;

mod output;
mod verify;

use output::{render, Format};

const SEED_ENV: &str = "FLAGCODE_SEED";

/// Sandwich full flag codes: construction, inspection, verification and
/// erasure decoding.
#[derive(Parser, Debug)]
#[command(name = "flagcode", version)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value = "json")]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build the code for (q, k1, r) and write it as JSON.
    Construct(ConstructArgs),
    /// Distance report for a code file or a flag-list file.
    Report {
        #[arg(long)]
        input: PathBuf,
    },
    /// Run the invariant suite on a code file; exit 1 on any failure.
    Verify {
        #[arg(long)]
        input: PathBuf,
        /// Largest subspace count the maximality check will enumerate.
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        max_enumeration: u128,
    },
    /// Partial spread bounds for (q, n, k), or for a code file.
    Bounds(BoundsArgs),
    /// Erase dimensions from one codeword and write the received sequence.
    Erase {
        #[arg(long)]
        input: PathBuf,
        /// Zero-based codeword index.
        #[arg(long)]
        index: usize,
        /// Erasures per shot, comma separated, one entry for each of the n - 1 shots.
        #[arg(long, value_delimiter = ',', required = true)]
        erasures: Vec<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Decode a received sequence; exit 3 when the decoder gives up.
    Decode {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        received: PathBuf,
    },
    /// Seeded erase/decode trials on random codewords.
    Simulate {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long)]
        seed: Option<u64>,
        /// Erasures per trial; defaults to floor((d_f - 1)/2).
        #[arg(long)]
        budget: Option<usize>,
    },
}

#[derive(Args, Debug)]
struct FieldArgs {
    /// Field characteristic.
    #[arg(long)]
    p: u64,
    /// Extension degree, q = p^m.
    #[arg(long, default_value_t = 1)]
    m: u32,
    /// Modulus coefficients low to high, leading 1 included.
    #[arg(long, value_delimiter = ',')]
    modulus: Option<Vec<u64>>,
}

impl FieldArgs {
    fn field(&self) -> Result<FieldSpec, CliError> {
        Ok(FieldSpec::new(self.p, self.m, self.modulus.as_deref())?)
    }
}

#[derive(Args, Debug)]
struct ConstructArgs {
    #[command(flatten)]
    field: FieldArgs,
    #[arg(long)]
    k1: usize,
    #[arg(long)]
    r: usize,
    /// Primitive polynomial of degree k1 + r as element reps, low to high,
    /// leading 1 included.
    #[arg(long, value_delimiter = ',')]
    prim_poly: Option<Vec<u64>>,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct BoundsArgs {
    #[arg(long)]
    p: Option<u64>,
    #[arg(long, default_value_t = 1)]
    m: u32,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    /// Code file; compares its cardinality with the bounds.
    #[arg(long, conflicts_with_all = ["p", "n", "k"])]
    input: Option<PathBuf>,
}

/// Error with the process exit code it maps to.
#[derive(Debug)]
struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Ambiguous { .. } | Error::NoCandidate { .. } => 1,
            _ => 2,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))
}

fn write_or_print(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, format!("{text}\n"))
            .map_err(|e| CliError::usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn seed_or_env(seed: Option<u64>) -> Result<u64, CliError> {
    if let Some(s) = seed {
        return Ok(s);
    }
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::usage(format!("{SEED_ENV}={v} is not an unsigned integer"))),
        Err(_) => Ok(0),
    }
}

fn load_code_file(path: &Path) -> Result<CodeFile, CliError> {
    Ok(CodeFile::from_json(&read(path)?)?)
}

fn load_code(path: &Path) -> Result<flagcode::FlagCode, CliError> {
    Ok(load_code_file(path)?.to_code()?)
}

#[derive(Serialize)]
struct ConstructSummary {
    n: usize,
    cardinality: usize,
    prim_poly: Vec<u32>,
}

fn cmd_construct(args: &ConstructArgs, format: Format) -> Result<(), CliError> {
    let field = args.field.field()?;
    let poly = args
        .prim_poly
        .as_ref()
        .map(|coeffs| {
            coeffs
                .iter()
                .map(|&c| field.element(c))
                .collect::<Result<Vec<_>, _>>()
        })
        .transpose()?;
    let params = SandwichParams::new(field, args.k1, args.r, poly)?;
    let code = build_code(&params)?;
    let json = CodeFile::from_code(&code).to_json();
    let summary = ConstructSummary {
        n: code.n(),
        cardinality: code.len(),
        prim_poly: params.prim_poly().iter().map(|c| c.rep()).collect(),
    };
    let line = format!(
        "n={} |C|={} prim_poly={:?}",
        summary.n, summary.cardinality, summary.prim_poly
    );
    match &args.output {
        Some(path) => {
            write_or_print(Some(path), &json)?;
            match format {
                Format::Text => println!("{line}"),
                Format::Json => println!("{}", render(&summary, format)),
            }
        }
        None => {
            println!("{json}");
            eprintln!("{line}");
        }
    }
    Ok(())
}

fn cmd_report(input: &Path, format: Format) -> Result<(), CliError> {
    let text = read(input)?;
    let flags = match CodeFile::from_json(&text) {
        Ok(file) => file.to_code()?.flags().to_vec(),
        Err(_) => FlagListFile::from_json(&text)
            .map_err(|_| {
                CliError::usage(format!(
                    "{} is neither a code file nor a flag list",
                    input.display()
                ))
            })?
            .to_flags()?,
    };
    println!("{}", render(&classify(&flags)?, format));
    Ok(())
}

fn cmd_verify(input: &Path, cap: u128, format: Format) -> Result<ExitCode, CliError> {
    let file = load_code_file(input)?;
    let params = file.params.to_params()?;
    let report = verify::verify(&file, &params, cap);
    println!("{}", render(&report, format));
    Ok(if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

#[derive(Serialize)]
#[serde(untagged)]
enum MaybeCount {
    Count(u128),
    NotApplicable(&'static str),
}

#[derive(Serialize)]
struct BoundsOutput {
    q: u64,
    n: usize,
    k: usize,
    lemma21: u128,
    lemma22: MaybeCount,
    #[serde(rename = "D_n")]
    d_n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    code: Option<BoundCheck>,
}

fn cmd_bounds(args: &BoundsArgs, format: Format) -> Result<(), CliError> {
    let out = if let Some(path) = &args.input {
        let code = load_code(path)?;
        let p = code.params();
        let q = p.field().q() as u64;
        let d_f = flagcode::metrics::min_flag_distance(code.flags())?;
        let check = cardinality_bound_check(q, p.k1(), p.r(), d_f, code.len());
        bounds_output(q, p.n(), p.k1(), Some(check))
    } else {
        let (Some(p), Some(n), Some(k)) = (args.p, args.n, args.k) else {
            return Err(CliError::usage("bounds needs --p, --n and --k, or --input"));
        };
        if k == 0 || k > n {
            return Err(CliError::usage(format!(
                "need 1 <= k <= n, got k={k} n={n}"
            )));
        }
        let field = FieldSpec::new(p, args.m, None)?;
        bounds_output(field.q() as u64, n, k, None)
    };
    println!("{}", render(&out, format));
    Ok(())
}

fn bounds_output(q: u64, n: usize, k: usize, code: Option<BoundCheck>) -> BoundsOutput {
    BoundsOutput {
        q,
        n,
        k,
        lemma21: flagcode::metrics::partial_spread_bound(q, n, k),
        lemma22: aq_exact(q, n, k).map_or(MaybeCount::NotApplicable("n/a"), MaybeCount::Count),
        d_n: full_max_distance(n),
        code,
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    let format = cli.format;
    match cli.command {
        Command::Construct(args) => cmd_construct(&args, format)?,
        Command::Report { input } => cmd_report(&input, format)?,
        Command::Verify {
            input,
            max_enumeration,
        } => return cmd_verify(&input, max_enumeration, format),
        Command::Bounds(args) => cmd_bounds(&args, format)?,
        Command::Erase {
            input,
            index,
            erasures,
            seed,
            output,
        } => {
            let code = load_code(&input)?;
            let flag = code.flags().get(index).ok_or_else(|| {
                CliError::usage(format!(
                    "codeword index {index} out of range 0..{}",
                    code.len()
                ))
            })?;
            let received = erase(flag, &erasures, seed_or_env(seed)?)?;
            write_or_print(
                output.as_deref(),
                &ReceivedFile::from_received(&received).to_json(),
            )?;
        }
        Command::Decode { input, received } => {
            let code = load_code(&input)?;
            let received = ReceivedFile::from_json(&read(&received)?)?.to_received()?;
            let outcome = decode(&code, &received)?;
            println!("{}", render(&outcome, format));
            if outcome.status == DecodeStatus::Failure {
                return Ok(ExitCode::from(3));
            }
        }
        Command::Simulate {
            input,
            trials,
            seed,
            budget,
        } => {
            let code = load_code(&input)?;
            let mode = budget.map_or(BudgetMode::Correctable, BudgetMode::Total);
            let report = simulate(&code, trials, seed_or_env(seed)?, mode)?;
            println!("{}", render(&report, format));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

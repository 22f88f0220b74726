//! Command-line front end: generate cycles (streamed or materialized),
//! verify sequences, cross-check all implementations against each other,
//! query maximum lengths (optionally oracle-confirmed), and benchmark the
//! streaming engines with deterministic operation counts.
//!
//! Exit codes: 0 success, 2 parameter error, 3 verification failure,
//! 4 scale-guard refusal.

use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::time::Instant;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use graycycle::{
    build, cross_check, max_cycle_len, max_cycle_len_bruteforce, verify_gray_cycle, Alphabet,
    CycleSpec, DistanceMode, Error, Generator, GeneratorConfig, Parity, RunMode, Strategy, Support,
    SupportSpec, Variant, Word, DEFAULT_PREPROCESS_THRESHOLD,
};

const THRESHOLD_ENV: &str = "GRAYCYCLE_PREPROCESS_THRESHOLD";
const MAX_TEXT_ALPHABET: u32 = 36;

const EXIT_OK: i32 = 0;
const EXIT_PARAM: i32 = 2;
const EXIT_VERIFICATION: i32 = 3;
const EXIT_SCALE: i32 = 4;

#[derive(Parser)]
#[command(
    name = "graycycle",
    version,
    about = "Generate, verify, and benchmark maximum-length fixed-distance cyclic word sequences"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit the cycle for a parameter set, one word per line.
    Generate(GenerateArgs),
    /// Check a sequence read from input against the cycle conditions.
    Verify(VerifyArgs),
    /// Compare builder, both engines, and the verifier on one spec.
    Crosscheck(SpecArgs),
    /// Print the maximum cycle length for the parameters.
    Lambda(LambdaArgs),
    /// Measure per-step operation counts and wall-clock delays.
    Bench(BenchArgs),
}

#[derive(Args, Clone)]
struct SpecArgs {
    /// Alphabet size.
    #[arg(long)]
    p: u32,
    /// Word length.
    #[arg(long)]
    n: usize,
    /// Step distance: consecutive words differ in exactly this many positions.
    #[arg(long)]
    k: usize,
    /// Construction family; auto picks the natural one for (p, n, k).
    #[arg(long, value_enum, default_value_t = VariantArg::Auto)]
    variant: VariantArg,
}

#[derive(Args)]
struct GenerateArgs {
    #[command(flatten)]
    spec: SpecArgs,
    /// How to produce terms: materialize recursively, or stream.
    #[arg(long, value_enum, default_value_t = ModeArg::Auto)]
    mode: ModeArg,
    #[arg(long, value_enum, default_value_t = FormatArg::Lines)]
    format: FormatArg,
    /// Stop after this many terms.
    #[arg(long)]
    limit: Option<u64>,
    /// Loopless preprocessing cap, in base-table entries
    /// (overrides the GRAYCYCLE_PREPROCESS_THRESHOLD environment variable).
    #[arg(long)]
    preprocess_threshold: Option<u64>,
    /// Write to this file instead of standard output.
    #[arg(long)]
    output: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Alphabet size.
    #[arg(long)]
    p: u32,
    /// Expected word length (checked against the input when given).
    #[arg(long)]
    n: Option<usize>,
    /// Step distance.
    #[arg(long)]
    k: usize,
    /// Construction family used to derive the expected support in auto mode.
    #[arg(long, value_enum, default_value_t = VariantArg::Auto)]
    variant: VariantArg,
    /// Accept steps of distance at most k instead of exactly k.
    #[arg(long)]
    at_most: bool,
    /// Which word set the cycle must cover exactly once.
    #[arg(long, value_enum, default_value_t = SupportArg::Auto)]
    support: SupportArg,
    /// Read the sequence from this file instead of standard input.
    #[arg(long)]
    input: Option<String>,
}

#[derive(Args)]
struct LambdaArgs {
    #[arg(long)]
    p: u32,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    /// Confirm the closed form by exhaustive search (small parameters only).
    #[arg(long)]
    bruteforce: bool,
}

#[derive(Args)]
struct BenchArgs {
    #[command(flatten)]
    spec: SpecArgs,
    /// Streaming strategy to measure.
    #[arg(long, value_enum, default_value_t = ModeArg::Auto)]
    mode: ModeArg,
    /// Measure at most this many steps.
    #[arg(long)]
    limit: Option<u64>,
    #[arg(long)]
    preprocess_threshold: Option<u64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    Auto,
    Nary,
    BinaryOdd,
    BinaryOddCompanion,
    BinaryEven,
    BinaryEvenOdd,
    ComplementPair,
}

impl VariantArg {
    fn to_option(self) -> Option<Variant> {
        match self {
            VariantArg::Auto => None,
            VariantArg::Nary => Some(Variant::Nary),
            VariantArg::BinaryOdd => Some(Variant::BinaryOdd),
            VariantArg::BinaryOddCompanion => Some(Variant::BinaryOddCompanion),
            VariantArg::BinaryEven => Some(Variant::BinaryEven(Parity::Even)),
            VariantArg::BinaryEvenOdd => Some(Variant::BinaryEven(Parity::Odd)),
            VariantArg::ComplementPair => Some(Variant::ComplementPair),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Auto,
    Recursive,
    Cat,
    Loopless,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Lines,
    Csv,
    Raw,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SupportArg {
    Auto,
    All,
    EvenWeight,
    OddWeight,
}

fn main() {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Generate(args) => run_generate(args),
        Command::Verify(args) => run_verify(args),
        Command::Crosscheck(args) => run_crosscheck(args),
        Command::Lambda(args) => run_lambda(args),
        Command::Bench(args) => run_bench(args),
    };
    let code = match outcome {
        Ok(code) => code,
        Err(err) if is_broken_pipe(&err) => EXIT_OK,
        Err(err) => {
            eprintln!("error: {err:#}");
            classify(&err)
        }
    };
    std::process::exit(code);
}

/// A closed stdout reader (`generate ... | head`) ends the stream early;
/// that is normal pipeline behavior, not a failure.
fn is_broken_pipe(err: &anyhow::Error) -> bool {
    err.chain()
        .filter_map(|cause| cause.downcast_ref::<std::io::Error>())
        .any(|io| io.kind() == std::io::ErrorKind::BrokenPipe)
}

/// Map library errors to the documented exit classes; anything else is a
/// parameter/usage problem.
fn classify(err: &anyhow::Error) -> i32 {
    match err.downcast_ref::<Error>() {
        Some(Error::ScaleGuard(_)) => EXIT_SCALE,
        _ => EXIT_PARAM,
    }
}

fn resolve_threshold(flag: Option<u64>) -> anyhow::Result<u64> {
    if let Some(v) = flag {
        return Ok(v);
    }
    match std::env::var(THRESHOLD_ENV) {
        Ok(text) => text
            .trim()
            .parse::<u64>()
            .map_err(|_| anyhow!("{THRESHOLD_ENV} must be an unsigned integer, got {text:?}")),
        Err(_) => Ok(DEFAULT_PREPROCESS_THRESHOLD),
    }
}

fn output_writer(path: Option<&str>) -> anyhow::Result<Box<dyn Write>> {
    Ok(match path {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).with_context(|| format!("creating {path}"))?,
        )),
        None => Box::new(BufWriter::new(std::io::stdout())),
    })
}

fn require_text_alphabet(p: u32) -> anyhow::Result<()> {
    if p > MAX_TEXT_ALPHABET {
        return Err(anyhow!(
            "text formats render with 36 symbols (0-9, a-z); alphabet size {p} needs --format raw"
        ));
    }
    Ok(())
}

/// Build a streaming generator, falling back from loopless to the
/// constant-amortized strategy when preprocessing is refused.
fn streaming_generator(
    spec: &CycleSpec,
    mode: ModeArg,
    threshold: u64,
) -> anyhow::Result<Generator> {
    let strategy = match mode {
        ModeArg::Cat => Strategy::Cat,
        ModeArg::Loopless | ModeArg::Auto => Strategy::Loopless,
        ModeArg::Recursive => unreachable!("recursive mode does not stream"),
    };
    let cfg = GeneratorConfig {
        strategy,
        run_mode: RunMode::Bounded,
        preprocess_threshold: threshold,
    };
    match Generator::with_config(spec, &cfg) {
        Err(Error::ScaleGuard(msg)) if strategy == Strategy::Loopless => {
            eprintln!("note: {msg}; continuing with constant-amortized stepping");
            let cfg = GeneratorConfig { strategy: Strategy::Cat, ..cfg };
            Ok(Generator::with_config(spec, &cfg)?)
        }
        other => Ok(other?),
    }
}

fn run_generate(args: GenerateArgs) -> anyhow::Result<i32> {
    let spec = CycleSpec::new(args.spec.p, args.spec.n, args.spec.k, args.spec.variant.to_option())?;
    if args.format != FormatArg::Raw {
        require_text_alphabet(args.spec.p)?;
    }
    let mut writer = output_writer(args.output.as_deref())?;
    let limit = args.limit.unwrap_or(u64::MAX) as u128;

    let emit = |index: u128, word: &Word, writer: &mut dyn Write| -> anyhow::Result<()> {
        match args.format {
            FormatArg::Lines => writeln!(writer, "{}", word.render())?,
            FormatArg::Csv => writeln!(writer, "{index},{}", word.render())?,
            FormatArg::Raw => writer.write_all(word.letters())?,
        }
        Ok(())
    };

    match args.mode {
        ModeArg::Recursive => {
            let cycle = build(&spec)?.cycle;
            for (i, word) in cycle.terms().iter().enumerate() {
                if (i as u128) >= limit {
                    break;
                }
                emit(i as u128, word, &mut writer)?;
            }
        }
        mode => {
            let threshold = resolve_threshold(args.preprocess_threshold)?;
            let mut generator = streaming_generator(&spec, mode, threshold)?;
            let mut index: u128 = 0;
            loop {
                if index >= limit {
                    break;
                }
                emit(index, &generator.current(), &mut writer)?;
                index += 1;
                if index == generator.len() || generator.advance().is_err() {
                    break;
                }
            }
        }
    }
    writer.flush()?;
    Ok(EXIT_OK)
}

fn read_words(input: Option<&str>, alphabet: Alphabet) -> anyhow::Result<Vec<Word>> {
    let mut text = String::new();
    match input {
        Some(path) => {
            File::open(path)
                .with_context(|| format!("opening {path}"))?
                .read_to_string(&mut text)?;
        }
        None => {
            std::io::stdin().read_to_string(&mut text)?;
        }
    }
    let mut words = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        words.push(Word::parse(line, alphabet)?);
    }
    if words.is_empty() {
        return Err(anyhow!("no words in input"));
    }
    Ok(words)
}

fn run_verify(args: VerifyArgs) -> anyhow::Result<i32> {
    require_text_alphabet(args.p)?;
    let alphabet = Alphabet::new(args.p)?;
    let words = read_words(args.input.as_deref(), alphabet)?;
    let word_len = words[0].letters().len();
    if let Some(n) = args.n {
        if n != word_len {
            return Err(anyhow!(
                "input words have length {word_len}, but --n {n} was given"
            ));
        }
    }

    let support = match args.support {
        SupportArg::All => Support::All,
        SupportArg::EvenWeight => Support::EvenWeight,
        SupportArg::OddWeight => Support::OddWeight,
        SupportArg::Auto => {
            if args.at_most {
                // The relaxed distance semantics target full-coverage cycles.
                Support::All
            } else {
                CycleSpec::new(args.p, word_len, args.k, args.variant.to_option())?.support()
            }
        }
    };
    let support = SupportSpec { alphabet, word_len, support };

    let mode = if args.at_most { DistanceMode::AtMost } else { DistanceMode::Exact };
    let report = verify_gray_cycle(&words, args.k, mode, Some(&support))?;
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(if report.ok { EXIT_OK } else { EXIT_VERIFICATION })
}

fn run_crosscheck(args: SpecArgs) -> anyhow::Result<i32> {
    let spec = CycleSpec::new(args.p, args.n, args.k, args.variant.to_option())?;
    let report = cross_check(&spec)?;
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(if report.ok { EXIT_OK } else { EXIT_VERIFICATION })
}

fn run_lambda(args: LambdaArgs) -> anyhow::Result<i32> {
    let value = max_cycle_len(args.p, args.n, args.k)?;
    if !args.bruteforce {
        println!("{value}");
        return Ok(EXIT_OK);
    }
    let found = max_cycle_len_bruteforce(args.p, args.n, args.k)?;
    if found as u128 == value {
        println!("{value} (confirmed by oracle)");
        Ok(EXIT_OK)
    } else {
        println!("{value} (oracle found {found})");
        eprintln!(
            "error: exhaustive search disagrees with the closed form for p={} n={} k={}",
            args.p, args.n, args.k
        );
        Ok(EXIT_VERIFICATION)
    }
}

fn run_bench(args: BenchArgs) -> anyhow::Result<i32> {
    if args.mode == ModeArg::Recursive {
        return Err(anyhow!(
            "bench measures the streaming engines; pick --mode auto, cat, or loopless"
        ));
    }
    let spec = CycleSpec::new(args.spec.p, args.spec.n, args.spec.k, args.spec.variant.to_option())?;
    let threshold = resolve_threshold(args.preprocess_threshold)?;
    let mut generator = streaming_generator(&spec, args.mode, threshold)?;
    let strategy = match generator.strategy() {
        Strategy::Loopless => "loopless",
        Strategy::Cat => "cat",
    };

    let limit = args.limit.unwrap_or(u64::MAX);
    let mut delays_ns: Vec<u64> = Vec::new();
    let mut total_ops: u64 = 0;
    let mut max_ops: u64 = 0;
    let mut first_ops: Option<u64> = None;
    let mut steps: u64 = 0;
    while steps < limit {
        let tick = Instant::now();
        if generator.advance().is_err() {
            break;
        }
        delays_ns.push(tick.elapsed().as_nanos() as u64);
        let ops = generator.last_step_cost();
        total_ops += ops;
        max_ops = max_ops.max(ops);
        first_ops.get_or_insert(ops);
        steps += 1;
    }
    if steps == 0 {
        return Err(anyhow!("nothing to measure: the run has no steps"));
    }

    println!("strategy {strategy}");
    println!("steps {steps}");
    println!("ops_first {}", first_ops.unwrap_or(0));
    println!("ops_max {max_ops}");
    println!("ops_mean {:.3}", total_ops as f64 / steps as f64);
    delays_ns.sort_unstable();
    for (label, q) in [("p50", 50u64), ("p90", 90), ("p99", 99)] {
        let idx = ((steps - 1) * q / 100) as usize;
        println!("wall_{label}_ns {}", delays_ns[idx]);
    }
    println!("wall_max_ns {}", delays_ns[steps as usize - 1]);
    Ok(EXIT_OK)
}

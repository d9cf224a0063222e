use std::env;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use tonalspace::analysis::{analyze, AnalysisOptions};
use tonalspace::descriptors::{
    cosine_distance, cosine_similarity, euclid, ChangeOptions, CoefficientSet, ThresholdPolicy,
};
use tonalspace::ingest::{
    global_chroma, load_sequence, write_chroma_csv, write_chroma_json, ExtractorConfig, InputFormat,
};
use tonalspace::key::ProfileData;
use tonalspace::{combine, estimate_key, KeyProfileSet, ProfileName, Tiv, WeightVector};

const PROFILE_DIR_ENV: &str = "TONALSPACE_PROFILE_DIR";

#[derive(Parser)]
#[command(
    name = "tonalspace",
    version,
    about = "Tonal Interval Vector analysis of chroma features"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Framewise and global descriptors for one input.
    Analyze(AnalyzeArgs),
    /// Key estimate of the time-averaged chroma.
    Key(KeyArgs),
    /// Energy-weighted mix of the global TIVs of several inputs.
    Combine(CombineArgs),
    /// Distance between the global TIVs of two inputs.
    Distance(DistanceArgs),
    /// Chroma frames from a WAV file.
    ExtractChroma(ExtractArgs),
}

#[derive(Args)]
struct InputOpts {
    /// Input format; inferred from the file extension when omitted.
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Six comma-separated TIV weights.
    #[arg(long, value_parser = parse_weights, default_value = "3,8,11.5,15,14.5,7.5")]
    weights: WeightVector,
    #[command(flatten)]
    extractor: ExtractorOpts,
}

#[derive(Args)]
struct ExtractorOpts {
    /// STFT window length in samples (power of two).
    #[arg(long, default_value_t = 4096)]
    window_size: usize,
    #[arg(long, default_value_t = 2048)]
    hop_size: usize,
    #[arg(long, default_value_t = 55.0)]
    min_freq: f64,
    #[arg(long, default_value_t = 5000.0)]
    max_freq: f64,
    /// Reference frequency of A4 in Hz.
    #[arg(long, default_value_t = 440.0)]
    a4: f64,
}

impl ExtractorOpts {
    fn config(&self) -> ExtractorConfig {
        ExtractorConfig {
            window_size: self.window_size,
            hop_size: self.hop_size,
            min_freq: self.min_freq,
            max_freq: self.max_freq,
            reference_hz: self.a4,
        }
    }
}

#[derive(Args)]
struct ProfileOpts {
    /// Built-in key profile set.
    #[arg(long, value_enum, default_value_t = ProfileArg::Temperley)]
    profile: ProfileArg,
    /// Custom profile JSON file; overrides --profile.
    #[arg(long)]
    profile_file: Option<PathBuf>,
    /// Major/minor bias; defaults to the profile's value.
    #[arg(long)]
    alpha: Option<f64>,
}

#[derive(Args)]
struct AnalyzeArgs {
    input: PathBuf,
    #[command(flatten)]
    input_opts: InputOpts,
    #[command(flatten)]
    profile: ProfileOpts,
    /// Average this many consecutive chroma frames before the TIV.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    window_avg: u32,
    /// Coefficients used by the harmonic change curve.
    #[arg(long, value_enum, default_value_t = CoeffArg::All)]
    hchange_coeffs: CoeffArg,
    /// Peak threshold: `adaptive`, `adaptive:<k>` (mean + k std) or a number.
    #[arg(long, value_parser = parse_threshold, default_value = "adaptive")]
    threshold: ThresholdPolicy,
    #[arg(long, short)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OutFormat::Csv)]
    out_format: OutFormat,
}

#[derive(Args)]
struct KeyArgs {
    input: PathBuf,
    #[command(flatten)]
    input_opts: InputOpts,
    #[command(flatten)]
    profile: ProfileOpts,
}

#[derive(Args)]
struct CombineArgs {
    #[arg(required = true, num_args = 2..)]
    inputs: Vec<PathBuf>,
    #[command(flatten)]
    input_opts: InputOpts,
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DistanceArgs {
    a: PathBuf,
    b: PathBuf,
    #[arg(long, value_enum, default_value_t = MetricArg::Euclid)]
    metric: MetricArg,
    #[command(flatten)]
    input_opts: InputOpts,
}

#[derive(Args)]
struct ExtractArgs {
    input: PathBuf,
    #[command(flatten)]
    extractor: ExtractorOpts,
    #[arg(long, short)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OutFormat::Csv)]
    out_format: OutFormat,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
    Wav,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProfileArg {
    Temperley,
    Shaath,
}

#[derive(Clone, Copy, ValueEnum)]
enum CoeffArg {
    All,
    Harte,
}

#[derive(Clone, Copy, ValueEnum)]
enum MetricArg {
    Euclid,
    /// 1 - cosine similarity.
    Cosine,
    CosineSimilarity,
}

fn parse_weights(s: &str) -> Result<WeightVector, String> {
    s.parse().map_err(|e: tonalspace::Error| e.to_string())
}

fn parse_threshold(s: &str) -> Result<ThresholdPolicy, String> {
    if s == "adaptive" {
        return Ok(ThresholdPolicy::default());
    }
    if let Some(k) = s.strip_prefix("adaptive:") {
        let std_multiplier = k.parse::<f64>().map_err(|e| e.to_string())?;
        return Ok(ThresholdPolicy::Adaptive { std_multiplier });
    }
    s.parse::<f64>()
        .map(ThresholdPolicy::Fixed)
        .map_err(|_| format!("expected `adaptive`, `adaptive:<k>` or a number, got `{s}`"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> tonalspace::Result<()> {
    match command {
        Command::Analyze(args) => {
            let seq = load(&args.input, &args.input_opts)?;
            let options = AnalysisOptions {
                weights: args.input_opts.weights,
                window_avg: args.window_avg as usize,
                change: ChangeOptions {
                    coefficients: match args.hchange_coeffs {
                        CoeffArg::All => CoefficientSet::All,
                        CoeffArg::Harte => CoefficientSet::Harte,
                    },
                    threshold: args.threshold,
                },
                profiles: load_profiles(&args.profile, &args.input_opts.weights)?,
            };
            let report = analyze(&seq, &options)?;
            let out = open_output(args.out.as_deref())?;
            match args.out_format {
                OutFormat::Csv => report.write_csv(out),
                OutFormat::Json => report.write_json(out),
            }
        }
        Command::Key(args) => {
            let tiv = global_tiv(&args.input, &args.input_opts)?;
            let profiles = load_profiles(&args.profile, &args.input_opts.weights)?;
            let key = estimate_key(&tiv, &profiles)?;
            println!("{} {}", key.index, key.label());
            Ok(())
        }
        Command::Combine(args) => {
            let tivs = args
                .inputs
                .iter()
                .map(|p| global_tiv(p, &args.input_opts))
                .collect::<tonalspace::Result<Vec<_>>>()?;
            let mixed = combine(&tivs)?;
            let mut out = open_output(args.out.as_deref())?;
            serde_json::to_writer(&mut out, &mixed)?;
            writeln!(out)?;
            out.flush()?;
            Ok(())
        }
        Command::Distance(args) => {
            let a = global_tiv(&args.a, &args.input_opts)?;
            let b = global_tiv(&args.b, &args.input_opts)?;
            let d = match args.metric {
                MetricArg::Euclid => euclid(&a, &b)?,
                MetricArg::Cosine => cosine_distance(&a, &b)?,
                MetricArg::CosineSimilarity => cosine_similarity(&a, &b)?,
            };
            println!("{d}");
            Ok(())
        }
        Command::ExtractChroma(args) => {
            let seq = load_sequence(
                &args.input,
                Some(InputFormat::Wav),
                &args.extractor.config(),
            )?;
            let out = open_output(args.out.as_deref())?;
            match args.out_format {
                OutFormat::Csv => write_chroma_csv(&seq, out),
                OutFormat::Json => write_chroma_json(&seq, out),
            }
        }
    }
}

fn load(path: &Path, opts: &InputOpts) -> tonalspace::Result<tonalspace::ChromaSequence> {
    let format = opts.format.map(|f| match f {
        FormatArg::Csv => InputFormat::Csv,
        FormatArg::Json => InputFormat::Json,
        FormatArg::Wav => InputFormat::Wav,
    });
    load_sequence(path, format, &opts.extractor.config())
}

fn global_tiv(path: &Path, opts: &InputOpts) -> tonalspace::Result<Tiv> {
    let seq = load(path, opts)?;
    Ok(Tiv::from_chroma(&global_chroma(&seq, None)?, &opts.weights))
}

fn load_profiles(opts: &ProfileOpts, weights: &WeightVector) -> tonalspace::Result<KeyProfileSet> {
    let (name, data) = match &opts.profile_file {
        Some(path) => {
            let data = ProfileData::from_file(path)?;
            let name = data.name.parse().unwrap_or(ProfileName::Custom);
            (name, data)
        }
        None => {
            let name = match opts.profile {
                ProfileArg::Temperley => ProfileName::Temperley,
                ProfileArg::Shaath => ProfileName::Shaath,
            };
            let data = match env::var_os(PROFILE_DIR_ENV) {
                Some(dir) => ProfileData::from_dir(Path::new(&dir), name)?,
                None => ProfileData::builtin(name)?,
            };
            (name, data)
        }
    };
    KeyProfileSet::from_data(name, &data, opts.alpha, weights)
}

fn open_output(path: Option<&Path>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

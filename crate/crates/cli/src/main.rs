use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use zpstab::continuous::ChordSelection;
use zpstab::oracle::fuzz::{FuzzConfig, FuzzMode};
use zpstab::render::RenderOptions;
use zpstab_cli::commands::{self, CurveSource};
use zpstab_cli::service::{DEFAULT_PORT, PORT_ENV};
use zpstab_cli::{CliError, Format};

/// Stabbing information and internal/external visibility classification for simple polygons.
#[derive(Parser)]
#[command(name = "zpstab", version)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Vertex flags and the Tail/Body/Head table of every ordered pair.
    Analyze {
        polygon: PathBuf,
        /// Add wall-clock timing to the output.
        #[arg(long)]
        timing: bool,
    },
    /// Classify every visible pair from zero-parity data.
    Classify { polygon: PathBuf },
    /// Compare the ZP tables of two polygons.
    VerifyPair {
        a: PathBuf,
        b: PathBuf,
        /// Vertex i of A corresponds to entry i, comma separated; identity by default.
        #[arg(long, value_delimiter = ',')]
        correspondence: Option<Vec<usize>>,
    },
    /// Randomised search for collisions, ambiguous pairs and classifier errors.
    Fuzz {
        #[arg(long)]
        mode: FuzzMode,
        #[arg(long, default_value_t = 1000)]
        budget: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        n_min: Option<usize>,
        #[arg(long)]
        n_max: Option<usize>,
        /// Append findings to this JSON-lines corpus.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also run the frozen counterexample pair through the campaign.
        #[arg(long)]
        include_counterexample: bool,
    },
    /// Classify chords of a sampled closed curve.
    Continuous {
        /// Curve file: {"samples": [[x, y], ...], "closed": true}.
        #[arg(long, conflicts_with = "shape", required_unless_present = "shape")]
        curve: Option<PathBuf>,
        /// Built-in curve instead of a file.
        #[arg(long, value_parser = ["ellipse", "bean", "star"])]
        shape: Option<String>,
        #[arg(long, default_value_t = 2000)]
        samples: usize,
        /// `all` or `random:K`.
        #[arg(long, default_value = "random:500")]
        chords: ChordSelection,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write every chord with its class and the oracle's to this file.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Write the sampled curve to this file.
        #[arg(long)]
        save_curve: Option<PathBuf>,
    },
    /// Draw the polygon and its classified pairs as SVG.
    Render {
        polygon: PathBuf,
        #[arg(long, short)]
        out: PathBuf,
        /// Pairs to highlight, e.g. `0-8,2-5`.
        #[arg(long, value_delimiter = ',', value_parser = parse_pair)]
        highlight: Vec<(usize, usize)>,
        #[arg(long)]
        no_labels: bool,
        #[arg(long)]
        title: Option<String>,
    },
    /// Print the frozen ZP-equivalent pair, optionally writing each polygon to a file.
    Counterexample {
        #[arg(long)]
        out_a: Option<PathBuf>,
        #[arg(long)]
        out_b: Option<PathBuf>,
    },
    /// Serve the analysis over HTTP.
    Serve {
        #[arg(long, env = PORT_ENV, default_value_t = DEFAULT_PORT)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
    },
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once('-').ok_or_else(|| format!("expected x-y, got {s:?}"))?;
    Ok((a.trim().parse().map_err(|e| format!("{e}"))?, b.trim().parse().map_err(|e| format!("{e}"))?))
}

fn run(cli: Cli) -> Result<String, CliError> {
    let format = cli.format;
    match cli.command {
        Command::Analyze { polygon, timing } => commands::cmd_analyze(&polygon, format, timing),
        Command::Classify { polygon } => commands::cmd_classify(&polygon, format),
        Command::VerifyPair { a, b, correspondence } => commands::cmd_verify_pair(&a, &b, correspondence, format),
        Command::Fuzz { mode, budget, seed, n_min, n_max, out, include_counterexample } => {
            let mut cfg = FuzzConfig::new(mode, budget, seed);
            cfg.n_min = n_min.unwrap_or(cfg.n_min);
            cfg.n_max = n_max.unwrap_or(cfg.n_max);
            cfg.include_counterexample = include_counterexample;
            commands::cmd_fuzz(&cfg, out.as_deref(), format)
        }
        Command::Continuous { curve, shape, samples, chords, seed, report, save_curve } => {
            let src = match (&curve, &shape) {
                (Some(p), _) => CurveSource::File(p),
                (None, Some(name)) => CurveSource::Shape { name, samples },
                (None, None) => return Err(CliError::Usage("give --curve or --shape".into())),
            };
            if let Some(p) = &save_curve {
                commands::save_curve(&src, p)?;
            }
            commands::cmd_continuous(&src, chords, seed, report.as_deref(), format)
        }
        Command::Render { polygon, out, highlight, no_labels, title } => {
            let opts = RenderOptions { title, highlight, labels: !no_labels };
            commands::cmd_render(&polygon, &out, &opts, format)
        }
        Command::Counterexample { out_a, out_b } => commands::cmd_counterexample(out_a.as_deref(), out_b.as_deref(), format),
        Command::Serve { port, host } => {
            let rt = tokio::runtime::Runtime::new().map_err(|source| CliError::Io { path: "runtime".into(), source })?;
            rt.block_on(zpstab_cli::service::serve(&host, port))
                .map_err(|source| CliError::Io { path: format!("{host}:{port}"), source })?;
            Ok(String::new())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            match format {
                Format::Json => eprintln!("{}", e.to_json()),
                Format::Text => eprintln!("error [{}]: {e}", e.kind()),
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

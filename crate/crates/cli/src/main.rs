mod config;
mod pipeline;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use scenecloud::render::Layout;

use config::FileConfig;
use pipeline::{Job, Settings};

/// Scene-ordered semantic tag clouds from filmscripts.
///
/// Exit codes: 0 ok, 2 input/output or parse error, 3 numeric failure,
/// 4 unknown or empty candidate set, 5 too few factors.
#[derive(Parser, Debug)]
#[command(name = "scenecloud", version)]
struct Cli {
    /// Directory for written artifacts [default: current directory]
    #[arg(long, global = true, value_name = "DIR")]
    out_dir: Option<PathBuf>,

    /// TOML file with default settings; flags override it
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct InputArgs {
    /// Script text files, or `*.script.json` / `*.matrix.json` / `*.model.json` artifacts
    #[arg(required = true, value_name = "INPUT")]
    inputs: Vec<PathBuf>,

    /// Regex marking a scene header line (repeatable, replaces the defaults)
    #[arg(long = "header-pattern", value_name = "REGEX")]
    header_patterns: Vec<String>,

    /// Shortest token kept [default: 2]
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    min_word_len: Option<u32>,

    /// Keep text before the first header as a scene
    #[arg(long)]
    keep_frontpiece: bool,

    /// Count words of the header lines themselves
    #[arg(long)]
    count_headers: bool,

    /// Title used in reports and rendered pages
    #[arg(long)]
    title: Option<String>,
}

#[derive(Args, Debug)]
struct CloudArgs {
    /// Number of font bands [default: 6]
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    bands: Option<u32>,

    /// flow or grid [default: flow]
    #[arg(long)]
    layout: Option<Layout>,

    /// Shade tags by band as well as sizing them
    #[arg(long)]
    color_by_band: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Scene and word counts, most frequent words
    Stats {
        #[command(flatten)]
        input: InputArgs,
        /// Number of top words listed [default: 10]
        #[arg(long)]
        top_k: Option<usize>,
    },
    /// Fit the correspondence analysis and save the model
    Analyze {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Tag cloud of the most pertinent word per scene
    Cloud {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        cloud: CloudArgs,
        /// Also write an alphabetical frequency cloud
        #[arg(long)]
        baseline: bool,
        /// Words in the frequency cloud [default: 50]
        #[arg(long)]
        top_k: Option<usize>,
    },
    /// Nearest principal character per scene
    Characters {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        cloud: CloudArgs,
        /// File with names, or a comma separated list [default: the six CSI leads]
        #[arg(long, value_name = "FILE|LIST")]
        characters: Option<String>,
    },
    /// Scenes and words on a factor plane, as SVG
    Map {
        #[command(flatten)]
        input: InputArgs,
        /// Two 1-based factor numbers
        #[arg(long, value_name = "A,B", value_parser = parse_axes)]
        axes: Option<(usize, usize)>,
        /// Label every point
        #[arg(long)]
        label: bool,
    },
}

fn parse_axes(s: &str) -> Result<(usize, usize), String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [a, b] = parts.as_slice() else {
        return Err("expected two factor numbers, like 1,2".into());
    };
    let a: usize = a.parse().map_err(|_| format!("bad factor number `{a}`"))?;
    let b: usize = b.parse().map_err(|_| format!("bad factor number `{b}`"))?;
    if a == 0 || b == 0 || a == b {
        return Err("factor numbers start at 1 and must differ".into());
    }
    Ok((a, b))
}

fn settings(cli: Cli) -> anyhow::Result<(Vec<PathBuf>, Settings, Job)> {
    let file = match &cli.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    let (input, cloud, job) = match cli.command {
        Command::Stats { input, top_k } => (input, None, Job::Stats { top_k }),
        Command::Analyze { input } => (input, None, Job::Analyze),
        Command::Cloud {
            input,
            cloud,
            baseline,
            top_k,
        } => (input, Some(cloud), Job::Cloud { baseline, top_k }),
        Command::Characters {
            input,
            cloud,
            characters,
        } => (input, Some(cloud), Job::Characters { list: characters }),
        Command::Map { input, axes, label } => (input, None, Job::Map { axes, label }),
    };
    let s = Settings::merge(
        file,
        cli.out_dir,
        pipeline::Flags {
            header_patterns: input.header_patterns,
            min_word_len: input.min_word_len.map(|n| n as usize),
            keep_frontpiece: input.keep_frontpiece,
            count_headers: input.count_headers,
            title: input.title,
            bands: cloud.as_ref().and_then(|c| c.bands).map(|n| n as usize),
            layout: cloud.as_ref().and_then(|c| c.layout),
            color_by_band: cloud.is_some_and(|c| c.color_by_band),
        },
    )?;
    Ok((input.inputs, s, job))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (inputs, settings, job) = match settings(cli) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(pipeline::exit_code(&e));
        }
    };
    if let Err(e) = std::fs::create_dir_all(&settings.out_dir) {
        eprintln!("error: creating {}: {e}", settings.out_dir.display());
        return ExitCode::from(2);
    }

    let outcomes: Vec<_> = inputs
        .par_iter()
        .map(|path| pipeline::run(path, &settings, &job))
        .collect();

    let mut code = 0;
    for (path, outcome) in inputs.iter().zip(outcomes) {
        for w in &outcome.warnings {
            eprintln!("warning: {}: {w}", path.display());
        }
        match outcome.result {
            Ok(report) => print!("{report}"),
            Err(e) => {
                eprintln!("error: {}: {e:#}", path.display());
                if code == 0 {
                    code = pipeline::exit_code(&e);
                }
            }
        }
    }
    ExitCode::from(code)
}

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use log::error;

use knowtherm::config::{RunConfig, TopicSource};
use knowtherm::ingest::ingest;
use knowtherm::pipeline::topic_years;
use knowtherm::{run_pipeline, Artifacts, Error, Execution};

#[derive(Parser)]
#[command(name = "knowtherm", version, about = "Knowledge temperature of citation topics")]
struct Cli {
    /// More log output (-v info, -vv debug).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a topic file and print a summary.
    IngestValidate {
        #[arg(long)]
        input: PathBuf,
    },
    /// Skeleton trees per snapshot (DOT and JSON).
    Tree(RunArgs),
    /// Topic temperature series.
    Temperature(RunArgs),
    /// Per-paper temperatures by heat diffusion.
    Heat(RunArgs),
    /// Forest helping within the configured groups.
    Forest(RunArgs),
    /// Every artifact.
    All(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    /// TOML run configuration.
    #[arg(long, conflicts_with = "input")]
    config: Option<PathBuf>,
    /// Single topic file, used instead of a configuration.
    #[arg(long, required_unless_present = "config")]
    input: Option<PathBuf>,
    /// Output directory (overrides the configuration).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Restrict to these topics; with --input, the topic's name.
    #[arg(long, value_delimiter = ',')]
    topic: Vec<String>,
    /// Snapshot years, as a list (2010,2012) or a range (2010:2015).
    #[arg(long)]
    years: Option<String>,
    /// Snapshot stride in years.
    #[arg(long)]
    stride: Option<u32>,
    /// Disable data parallelism.
    #[arg(long)]
    sequential: bool,
}

fn parse_years(spec: &str) -> Result<Vec<i32>, Error> {
    let bad = || Error::Config(format!("cannot parse years `{spec}`"));
    if let Some((a, b)) = spec.split_once(':') {
        let a: i32 = a.trim().parse().map_err(|_| bad())?;
        let b: i32 = b.trim().parse().map_err(|_| bad())?;
        if a > b {
            return Err(bad());
        }
        return Ok((a..=b).collect());
    }
    spec.split(',')
        .map(|y| y.trim().parse().map_err(|_| bad()))
        .collect()
}

fn build_config(args: &RunArgs) -> Result<RunConfig, Error> {
    let mut cfg = match (&args.config, &args.input) {
        (Some(path), _) => {
            let mut cfg = RunConfig::load(path)?;
            if !args.topic.is_empty() {
                if let Some(missing) = args.topic.iter().find(|n| !cfg.topics.iter().any(|t| &t.name == *n)) {
                    return Err(Error::Config(format!("unknown topic `{missing}`")));
                }
                cfg.topics.retain(|t| args.topic.contains(&t.name));
                cfg.groups
                    .retain(|g| g.topics.iter().all(|n| args.topic.contains(n)));
            }
            cfg
        }
        (None, Some(input)) => {
            let name = match args.topic.as_slice() {
                [] => input
                    .file_stem()
                    .and_then(|s| s.to_str())
                    .unwrap_or("topic")
                    .to_string(),
                [one] => one.clone(),
                _ => return Err(Error::Config("--input takes a single --topic name".into())),
            };
            RunConfig::for_topics(vec![TopicSource {
                name,
                path: input.clone(),
            }])
        }
        (None, None) => return Err(Error::Config("either --config or --input is required".into())),
    };
    if let Some(out) = &args.out {
        cfg.output_dir = out.clone();
    }
    if let Some(spec) = &args.years {
        cfg.snapshots.years = Some(parse_years(spec)?);
    }
    if let Some(stride) = args.stride {
        cfg.snapshots.stride = stride;
        cfg.snapshots.years = None;
    }
    if args.sequential {
        cfg.analysis.exec = Execution::Sequential;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn exit_for(e: &Error) -> ExitCode {
    if e.is_validation() {
        ExitCode::from(1)
    } else {
        ExitCode::from(2)
    }
}

fn run(args: &RunArgs, artifacts: Artifacts) -> ExitCode {
    let cfg = match build_config(args) {
        Ok(cfg) => cfg,
        Err(e) => {
            error!("{e}");
            return exit_for(&e);
        }
    };
    match run_pipeline(&cfg, artifacts) {
        Ok(summary) => {
            for t in &summary.topics {
                if let Some(last) = t.years.last() {
                    println!(
                        "{}: {} snapshots, T({}) = {:.3}",
                        t.name,
                        t.years.len(),
                        last.record.year,
                        last.record.t_total
                    );
                }
            }
            println!("wrote {}", cfg.output_dir.display());
            match summary.failures.first() {
                None => ExitCode::SUCCESS,
                Some(_) => {
                    for (_, e) in &summary.failures {
                        error!("{e}");
                    }
                    let worst = summary.failures.iter().any(|(_, e)| !e.is_validation());
                    ExitCode::from(if worst { 2 } else { 1 })
                }
            }
        }
        Err(e) => {
            error!("{e}");
            exit_for(&e)
        }
    }
}

fn validate(input: &Path) -> ExitCode {
    match ingest(input) {
        Ok(topic) => {
            let p = topic.pioneer();
            let years = topic.years();
            println!("papers: {}", topic.len());
            println!("citations: {}", topic.edge_count());
            println!("pioneer: {} ({})", topic.id(p), topic.year(p));
            println!(
                "years: {}..{}",
                years.first().copied().unwrap_or_default(),
                years.last().copied().unwrap_or_default()
            );
            match topic_years(&topic, &Default::default()) {
                Ok(ys) => println!("snapshots: {}", ys.len()),
                Err(e) => println!("snapshots: none ({e})"),
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("invalid: {e}");
            exit_for(&e)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    let only = |f: fn(&mut Artifacts)| {
        let mut a = Artifacts::NONE;
        f(&mut a);
        a
    };
    match &cli.command {
        Command::IngestValidate { input } => validate(input),
        Command::Tree(a) => run(a, only(|x| x.trees = true)),
        Command::Temperature(a) => run(a, only(|x| x.series = true)),
        Command::Heat(a) => run(a, only(|x| x.heat = true)),
        Command::Forest(a) => run(a, only(|x| x.groups = true)),
        Command::All(a) => run(a, Artifacts::ALL),
    }
}

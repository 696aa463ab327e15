use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use lingo_core::bench::{compare_strategies, emit_comparison_csv};
use lingo_core::synth::{generate, write_corpus, PlantedCorpusSpec};
use lingo_core::{load_config, load_corpus, run_lingo, write_outputs, LingoConfig, Strategy};

#[derive(Parser)]
#[command(
    name = "lingo",
    version,
    about = "Search-results clustering with LINGO label induction"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Vsm,
    Lsi,
    #[value(name = "lsi-bm25")]
    LsiBm25,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Vsm => Strategy::Vsm,
            StrategyArg::Lsi => Strategy::Lsi,
            StrategyArg::LsiBm25 => Strategy::LsiBm25,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Cluster one corpus and write result.json, clusters.txt and clusters.csv.
    Cluster {
        /// Corpus directory or JSON-lines file.
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        config: Option<PathBuf>,
        /// Overrides the strategy in the config file.
        #[arg(long, value_enum)]
        strategy: Option<StrategyArg>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Cluster one corpus with several strategies and write a comparison CSV.
    Compare {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(
            long,
            value_enum,
            value_delimiter = ',',
            default_value = "vsm,lsi,lsi-bm25"
        )]
        strategies: Vec<StrategyArg>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Generate a seeded planted-topic corpus, one file per document.
    GenCorpus {
        #[arg(long, default_value_t = 3)]
        topics: usize,
        #[arg(long, default_value_t = 30)]
        docs_per_topic: usize,
        #[arg(long, default_value_t = 5)]
        synonym_pairs: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

fn dataset_name(input: &Path) -> String {
    input
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "corpus".to_string())
}

fn read_config(path: Option<&Path>) -> lingo_core::Result<LingoConfig> {
    match path {
        Some(p) => load_config(p),
        None => Ok(LingoConfig::default()),
    }
}

fn execute(command: Command) -> lingo_core::Result<()> {
    match command {
        Command::Cluster {
            input,
            config,
            strategy,
            out,
        } => {
            let mut config = read_config(config.as_deref())?;
            if let Some(s) = strategy {
                config.strategy = s.into();
            }
            let docs = load_corpus(&input)?;
            let result = run_lingo(&docs, &config)?;
            write_outputs(&result, &dataset_name(&input), &out)?;
            println!(
                "{}: {} clusters, {} other documents",
                config.strategy,
                result.clusters.len(),
                result.others.len()
            );
        }
        Command::Compare {
            input,
            config,
            strategies,
            out,
        } => {
            let config = read_config(config.as_deref())?;
            let docs = load_corpus(&input)?;
            let strategies: Vec<Strategy> = strategies.into_iter().map(Strategy::from).collect();
            let name = dataset_name(&input);
            let report = compare_strategies(&name, &docs, &config, &strategies)?;
            for run in &report.runs {
                write_outputs(&run.result, &name, out.join(run.strategy.as_str()))?;
                let s = run.summary();
                println!(
                    "{}: {} clusters, {} assigned, {} others, total score {:.4}",
                    run.strategy,
                    s.cluster_count,
                    s.assigned_doc_count,
                    s.others_count,
                    s.total_score
                );
            }
            emit_comparison_csv(&report, out.join("comparison.csv"))?;
        }
        Command::GenCorpus {
            topics,
            docs_per_topic,
            synonym_pairs,
            seed,
            out,
        } => {
            let spec = PlantedCorpusSpec {
                topics,
                docs_per_topic,
                synonym_pairs,
                seed,
                ..PlantedCorpusSpec::default()
            };
            let corpus = generate(&spec);
            write_corpus(&corpus, &out)?;
            println!(
                "wrote {} documents to {}",
                corpus.documents.len(),
                out.display()
            );
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("error")).init();
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

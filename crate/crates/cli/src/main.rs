use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use herdscope::{cmd_analyze, cmd_plot, cmd_score, cmd_validate, Outcome, RunArgs};

#[derive(Parser)]
#[command(name = "herdscope", version, about = "Sentiment, clustering and herd analysis of tweet corpora")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Run {
    /// Run configuration (JSON)
    #[arg(long)]
    config: PathBuf,
    /// Line-delimited corpus file; repeat for several
    #[arg(long = "corpus", required = true)]
    corpora: Vec<PathBuf>,
    /// Output directory
    #[arg(long)]
    out: PathBuf,
    /// Keep only tweets carrying this hashtag
    #[arg(long)]
    hashtag: Option<String>,
}

impl From<Run> for RunArgs {
    fn from(r: Run) -> Self {
        RunArgs {
            config: r.config,
            corpora: r.corpora,
            out: r.out,
            hashtag: r.hashtag,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check corpus files and list invalid lines
    Validate {
        #[arg(long = "corpus", required = true)]
        corpora: Vec<PathBuf>,
    },
    /// Score tweets and print label shares
    Score(Run),
    /// Run the full pipeline and write the report bundle
    Analyze(Run),
    /// Render SVG plots from a report bundle
    Plot {
        bundle: PathBuf,
        /// Where to write the SVGs (defaults to the bundle directory)
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let Outcome { code, stdout, stderr } = match cli.command {
        Command::Validate { corpora } => cmd_validate(&corpora),
        Command::Score(run) => cmd_score(&run.into()),
        Command::Analyze(run) => cmd_analyze(&run.into()),
        Command::Plot { bundle, out } => cmd_plot(&bundle, out.as_deref()),
    };
    print!("{stdout}");
    eprint!("{stderr}");
    ExitCode::from(code as u8)
}

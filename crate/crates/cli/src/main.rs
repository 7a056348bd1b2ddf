//! `adrank`: distribution fitting, model selection and adaptive ranking
//! from the command line.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use adrank::config::CONFIG_ENV;
use adrank::Error;
use clap::{Args, Parser, Subcommand};

const SPEC_HELP: &str = "\
Model spec grammar: <randomness>[L|B][0|1|2][-<scheme>]
  randomness  P, G, In, IF, Ine, YS (Yule-Simon ADR), PL (power-law ADR), LL, SPL
  L | B       first normalisation: Laplace or Bernoulli (omit for none; LL and SPL take none)
  0 | 1 | 2   second normalisation: none, uniform, logarithmic (c from --c)
  scheme      Ttc, Tdc, Ttc2, Tdc2, Ttc+1, Tdc+1 or a fixed number (default Tdc; Tdc+1 for PL)
PL2 is Poisson with Laplace; the power-law model is PLL2. LMDir selects the
Dirichlet language model (mu from --mu).
Examples: YSL2-Tdc2, PL2-Tdc, PLL2-Tdc+1, LL2-Ttc, SPL2-Tdc, LMDir";

#[derive(Parser, Debug)]
#[command(name = "adrank", version, about = "Statistical model selection and adaptive distributional ranking", after_help = SPEC_HELP)]
struct Cli {
    /// key = value configuration file.
    #[arg(long, global = true, env = CONFIG_ENV)]
    config: Option<PathBuf>,
    /// Seed for every random choice.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Override one configuration key (repeatable), e.g. --set alpha=0.01.
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    overrides: Vec<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Fit candidate models and print the Vuong table with the selected model.
    Fit(FitArgs),
    /// Two-column series for the graphical methods, optionally with a log-log fit.
    Plotdata(PlotArgs),
    /// Tokenise documents and save a binary index.
    Ingest(IngestArgs),
    /// Corpus statistics, property samples and term-weight dumps.
    Stats(StatsArgs),
    /// Partition the vocabulary into informative and non-informative terms.
    Classify(ClassifyArgs),
    /// Classify, subsample and fit the non-informative term frequencies.
    Cascade(CascadeArgs),
    /// Rank documents for a query file and write a TREC run.
    Rank(RankArgs),
    /// Evaluate a TREC run against qrels, optionally against a baseline run.
    Eval(EvalArgs),
    /// Cross-validate one ranking hyperparameter.
    Tune(TuneArgs),
}

#[derive(Args, Debug)]
struct SourceArgs {
    /// File of counts or real values, one per line.
    #[arg(long, conflicts_with_all = ["index", "queries"])]
    input: Option<PathBuf>,
    /// Index to extract a property from.
    #[arg(long)]
    index: Option<PathBuf>,
    /// Query log to extract a property from.
    #[arg(long, conflicts_with = "index")]
    queries: Option<PathBuf>,
    /// tf, dl (index) or qf, ql (query log).
    #[arg(long)]
    property: Option<String>,
}

#[derive(Args, Debug)]
struct FitArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Comma-separated model names, or "all".
    #[arg(long)]
    models: Option<String>,
    #[arg(long)]
    alpha: Option<f64>,
    /// default, bic_style, hq or hq:<phi>.
    #[arg(long)]
    criterion: Option<String>,
    /// Write the TSV table here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the table as JSON lines.
    #[arg(long)]
    jsonl: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct PlotArgs {
    #[arg(long)]
    input: PathBuf,
    /// gm1 (raw histogram), gm2 (ECCDF) or gm3 (logarithmic bins).
    #[arg(long, default_value = "gm1")]
    method: String,
    /// Log-bin base for gm3.
    #[arg(long, default_value_t = 2)]
    base: u64,
    /// Highest log-bin index for gm3; by default the first bin covering the maximum.
    #[arg(long)]
    bins: Option<u32>,
    /// Append the OLS log-log fit as comment lines.
    #[arg(long)]
    fitline: bool,
    /// Exponent correction added to the fitted slope (default +1 for gm2, 0 otherwise).
    #[arg(long, allow_hyphen_values = true)]
    correction: Option<f64>,
    /// Prefix the series with gnuplot comment lines.
    #[arg(long)]
    gnuplot: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct IngestArgs {
    /// Directory with one file per document, or a JSON-lines / TSV file.
    #[arg(long)]
    docs: PathBuf,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct StatsArgs {
    #[arg(long)]
    index: Option<PathBuf>,
    #[arg(long)]
    queries: Option<PathBuf>,
    /// Dump this property sample (tf, dl, qf, ql), one value per line.
    #[arg(long)]
    property: Option<String>,
    /// Write the term-weight table (TSV) here.
    #[arg(long)]
    weights: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ClassifyArgs {
    #[arg(long)]
    index: PathBuf,
    /// Threshold rule; without a target prefix it selects non-informative terms.
    #[arg(long)]
    rule: Option<String>,
    /// Take the non-informative terms from this list instead of a rule.
    #[arg(long, conflicts_with = "rule")]
    terms: Option<PathBuf>,
    #[arg(long)]
    non_informative_out: Option<PathBuf>,
    #[arg(long)]
    informative_out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CascadeArgs {
    #[arg(long)]
    index: PathBuf,
    /// Fraction of the non-informative frequencies to fit, in (0, 1].
    #[arg(long)]
    fraction: Option<f64>,
    #[arg(long)]
    rule: Option<String>,
    #[arg(long, conflicts_with = "rule")]
    terms: Option<PathBuf>,
    #[arg(long)]
    models: Option<String>,
    /// Adopt the best discrete model (default) or the best overall.
    #[arg(long, default_value = "discrete")]
    scope: String,
    /// Subsampling method: simple or systematic.
    #[arg(long, default_value = "simple")]
    method: String,
    /// Write the Vuong table (TSV) here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the non-informative term list here.
    #[arg(long)]
    terms_out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct RankArgs {
    #[arg(long)]
    index: PathBuf,
    /// Query file: "qid<TAB>text" lines or one query per line.
    #[arg(long)]
    queries: PathBuf,
    /// Compact model spec, e.g. YSL2-Tdc2 (see the grammar below).
    #[arg(long)]
    model: String,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    c: Option<f64>,
    #[arg(long)]
    mu: Option<f64>,
    #[arg(long)]
    pl_xmin: Option<f64>,
    /// Run tag written in the last column.
    #[arg(long)]
    tag: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct EvalArgs {
    #[arg(long)]
    run: PathBuf,
    #[arg(long)]
    qrels: PathBuf,
    /// Comma-separated metrics (map, P@10, ndcg, ndcg@10, bpref, err@20); all by default.
    #[arg(long)]
    metrics: Option<String>,
    /// Paired two-tailed t-test against this run.
    #[arg(long)]
    baseline_run: Option<PathBuf>,
    /// Name printed in the first column.
    #[arg(long, default_value = "run")]
    name: String,
    /// Write per-query values (TSV) here.
    #[arg(long)]
    per_query: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct TuneArgs {
    #[arg(long)]
    index: PathBuf,
    #[arg(long)]
    queries: PathBuf,
    #[arg(long)]
    qrels: PathBuf,
    #[arg(long)]
    model: String,
    /// Hyperparameter to vary: c (logarithmic normalisation) or mu (LMDir).
    #[arg(long)]
    param: Option<String>,
    /// Comma-separated grid; defaults to the configured c_grid or mu_grid.
    #[arg(long)]
    grid: Option<String>,
    #[arg(long)]
    folds: Option<usize>,
    #[arg(long)]
    objective: Option<String>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Usage(_) | Error::Config(_) => 1,
        Error::Numerical(_) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("adrank: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

use std::path::PathBuf;
use std::process::ExitCode;

use brandt_cli::{
    cmd_eval, cmd_sweep, cmd_verify, emit, load_group_spec, parse_epsilon, CliError, CliResult, EvalArgs,
    OutputFormat, RunConfig,
};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "brandt")]
#[command(about = "Exact verification of approximate diagonals for Brandt semigroup algebras")]
#[command(version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Group spec: a JSON file path or inline JSON
    #[arg(long)]
    group: String,

    /// Output format
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,

    /// Write output here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,

    /// Worker threads (defaults to all cores)
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Run every invariant suite over the group
    Verify {
        #[command(flatten)]
        common: Common,

        /// Enumerate indices 0..=n
        #[arg(long, default_value_t = 3)]
        index_bound: usize,

        /// Random samples per suite
        #[arg(long, default_value_t = 200)]
        samples: usize,

        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
    },
    /// Sweep W_{F,λ} along the chain ({0..k}, k) and tabulate defects
    Sweep {
        #[command(flatten)]
        common: Common,

        /// l1(T) element file
        #[arg(long)]
        element: PathBuf,

        #[arg(long, default_value = "1/10")]
        epsilon: String,

        /// Number of chain indices k = 1..=length
        #[arg(long, default_value_t = 5)]
        length: usize,
    },
    /// Evaluate one operation on element files
    Eval {
        #[command(flatten)]
        common: Common,

        /// Operation name, e.g. convolve_t, pi, block, psi
        op: String,

        /// Operand element files
        operands: Vec<PathBuf>,

        /// Comma-separated indices for block/embed_e/embed_h/brandt_w
        #[arg(long, value_delimiter = ',')]
        indices: Vec<usize>,

        /// Følner index for folner_diagonal
        #[arg(long)]
        lambda: Option<usize>,
    },
}

fn config(common: &Common) -> CliResult<RunConfig> {
    let mut cfg = RunConfig::new(load_group_spec(&common.group)?);
    cfg.format = common.format;
    cfg.jobs = common.jobs;
    Ok(cfg)
}

fn run(cli: Cli) -> CliResult<i32> {
    let (output, out) = match cli.command {
        Command::Verify { common, index_bound, samples, seed } => {
            let mut cfg = config(&common)?;
            cfg.index_bound = index_bound;
            cfg.samples = samples;
            cfg.seed = seed;
            (cmd_verify(&cfg)?, common.out)
        }
        Command::Sweep { common, element, epsilon, length } => {
            let mut cfg = config(&common)?;
            cfg.element = Some(element);
            cfg.epsilon = parse_epsilon(&epsilon)?;
            cfg.length = length;
            (cmd_sweep(&cfg)?, common.out)
        }
        Command::Eval { common, op, operands, indices, lambda } => {
            let cfg = config(&common)?;
            (cmd_eval(&cfg, &EvalArgs { op, operands, indices, lambda })?, common.out)
        }
    };
    emit(&output, out.as_deref())?;
    Ok(output.exit_code())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            if let CliError::Invariant(_) | CliError::Input(brandt_l1::Error::Axiom { .. }) = e {
                println!("{}", serde_json::json!({"passed": false, "failures": [e.to_string()]}));
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

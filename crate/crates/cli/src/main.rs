use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Args, Parser, Subcommand};

use cellswitch::{DemandKind, Method, OffloadMode, PriceKind};

mod commands;

#[derive(Parser, Debug)]
#[command(name = "cellswitch", version, about = "Cell switching and spectrum leasing revenue experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve one day with a single method.
    Run {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[arg(long, default_value = "sa")]
        method: Method,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Solve one day with several methods, side by side.
    Compare {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[arg(long, value_delimiter = ',', default_value = "es,sa,a-type,d-type")]
        methods: Vec<Method>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Runtime and evaluation counts against the number of small cells.
    Bench {
        #[arg(long, value_delimiter = ',', default_value = "4,8,12,16,20,24")]
        n_list: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_value = "es,sa")]
        methods: Vec<Method>,
        /// Seed for both the synthetic traffic and annealing.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Largest N exhaustive search is run on.
        #[arg(long, default_value_t = 20)]
        es_cap: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// What the secondary network spends on leased spectrum.
    Market {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Args, Debug)]
struct ScenarioArgs {
    #[arg(long)]
    config: PathBuf,
    /// Annealing seed; overrides the config.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    offload_mode: Option<OffloadMode>,
    #[arg(long)]
    pricing: Option<PriceKind>,
    #[arg(long)]
    demand: Option<DemandKind>,
}

#[derive(Args, Debug)]
struct OutArgs {
    #[arg(long, env = "CELLSWITCH_OUT", default_value = "out")]
    out: PathBuf,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match dispatch(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn dispatch(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Run {
            scenario,
            method,
            out,
        } => commands::run(&scenario.load()?, method, &out.out),
        Command::Compare {
            scenario,
            methods,
            out,
        } => commands::compare(&scenario.load()?, &methods, &out.out),
        Command::Bench {
            n_list,
            methods,
            seed,
            es_cap,
            out,
        } => commands::bench(&n_list, &methods, seed, es_cap, &out.out),
        Command::Market { scenario, out } => commands::market(&scenario.load()?, &out.out),
    }
}

impl ScenarioArgs {
    fn load(&self) -> Result<commands::Loaded> {
        let mut cfg = cellswitch::ScenarioConfig::load(&self.config)?;
        if let Some(seed) = self.seed {
            cfg.solver.sa.rng_seed = seed;
        }
        if let Some(mode) = self.offload_mode {
            cfg.offload_mode = mode;
        }
        if let Some(kind) = self.pricing {
            cfg.pricing.kind = kind;
        }
        if let Some(kind) = self.demand {
            cfg.demand.kind = kind;
        }
        let scenario = cfg.build_scenario()?;
        Ok(commands::Loaded { cfg, scenario })
    }
}

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use udqkd::runner::{cmd_keyrate, cmd_region, cmd_simulate, cmd_sweep_distance, cmd_sweep_r, Report, Scenario};

#[derive(Parser)]
#[command(name = "udqkd", version, about = "Unidimensional CV-QKD key rates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Minimum key rate at the expected line, with every intermediate quantity.
    Keyrate(Opts),
    /// Physical-region boundary, safe line and expected line.
    Region(Opts),
    /// Minimum key rate against distance for each r.
    SweepDistance(Opts),
    /// Parabola parameters and minimum key rate against r.
    SweepR(Opts),
    /// Monte Carlo run of the prepare-and-measure scheme.
    Simulate(Opts),
}

/// Every scenario key is also a flag of the same name.
#[derive(Args)]
struct Opts {
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    out: Option<String>,
    #[arg(long)]
    json: bool,
    #[arg(long)]
    atten: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    #[arg(long)]
    r: Option<String>,
    #[arg(long = "v_mod")]
    v_mod: Option<String>,
    #[arg(long = "t_x")]
    t_x: Option<String>,
    #[arg(long = "eps_x")]
    eps_x: Option<String>,
    #[arg(long)]
    eta: Option<String>,
    #[arg(long = "v_el")]
    v_el: Option<String>,
    #[arg(long)]
    beta: Option<String>,
    #[arg(long = "distance_min")]
    distance_min: Option<String>,
    #[arg(long = "distance_max")]
    distance_max: Option<String>,
    #[arg(long = "distance_points")]
    distance_points: Option<String>,
    #[arg(long = "r_grid")]
    r_grid: Option<String>,
    #[arg(long = "vy_span")]
    vy_span: Option<String>,
    #[arg(long = "vy_points")]
    vy_points: Option<String>,
    #[arg(long = "eps_y_expected")]
    eps_y_expected: Option<String>,
    #[arg(long = "t_y")]
    t_y: Option<String>,
    #[arg(long = "eps_y")]
    eps_y: Option<String>,
    #[arg(long = "n_pulses")]
    n_pulses: Option<String>,
    #[arg(long = "reveal_fraction")]
    reveal_fraction: Option<String>,
    #[arg(long)]
    raw: Option<String>,
}

impl Opts {
    fn overrides(&self) -> Vec<(String, String)> {
        let fields = [
            ("out", &self.out),
            ("atten", &self.atten),
            ("seed", &self.seed),
            ("r", &self.r),
            ("v_mod", &self.v_mod),
            ("t_x", &self.t_x),
            ("eps_x", &self.eps_x),
            ("eta", &self.eta),
            ("v_el", &self.v_el),
            ("beta", &self.beta),
            ("distance_min", &self.distance_min),
            ("distance_max", &self.distance_max),
            ("distance_points", &self.distance_points),
            ("r_grid", &self.r_grid),
            ("vy_span", &self.vy_span),
            ("vy_points", &self.vy_points),
            ("eps_y_expected", &self.eps_y_expected),
            ("t_y", &self.t_y),
            ("eps_y", &self.eps_y),
            ("n_pulses", &self.n_pulses),
            ("reveal_fraction", &self.reveal_fraction),
            ("raw", &self.raw),
        ];
        let mut pairs: Vec<(String, String)> = fields
            .into_iter()
            .filter_map(|(k, v)| v.as_ref().map(|v| (k.to_string(), v.clone())))
            .collect();
        if self.json {
            pairs.push(("json".into(), "true".into()));
        }
        pairs
    }

    fn scenario(&self) -> udqkd::Result<Scenario> {
        match &self.config {
            Some(path) => Scenario::from_file(path, &self.overrides()),
            None => Scenario::resolve(&[], &self.overrides()),
        }
    }
}

fn run(cli: Cli) -> udqkd::Result<()> {
    let (opts, cmd): (&Opts, fn(&Scenario) -> udqkd::Result<Report>) = match &cli.command {
        Command::Keyrate(o) => (o, cmd_keyrate),
        Command::Region(o) => (o, cmd_region),
        Command::SweepDistance(o) => (o, cmd_sweep_distance),
        Command::SweepR(o) => (o, cmd_sweep_r),
        Command::Simulate(o) => (o, cmd_simulate),
    };
    let scenario = opts.scenario()?;
    cmd(&scenario)?.write(scenario.out.as_deref(), scenario.json)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let line = serde_json::json!({ "error": e.kind(), "message": e.to_string() });
            eprintln!("{line}");
            ExitCode::FAILURE
        }
    }
}

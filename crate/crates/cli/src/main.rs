use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use nltv::analysis::{bounds_csv, BoundReport};
use nltv::harness::{
    run_characteristics, run_mechanism_demo, run_simulate, run_sweep_to_dir, run_verify,
    write_output, EpsilonSpec, Manifest, RunConfig, SweepSpec,
};
use nltv::Error;

const EXIT_FAILURE: u8 = 1;
const EXIT_CONFIG: u8 = 2;

#[derive(Parser)]
#[command(name = "nltv", version, about = "Nonlocal traffic flow: simulation, characteristics and total-variation bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve and write snapshot CSVs.
    Simulate {
        #[command(flatten)]
        common: Common,
        /// Solve the local equation with the Godunov scheme.
        #[arg(long)]
        local: bool,
    },
    /// Trace characteristics and write one CSV per path.
    Characteristics {
        #[command(flatten)]
        common: Common,
        /// Starting points, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        starts: Option<String>,
    },
    /// Measured, reconstructed and analytic total variation over (tau, j).
    Sweep {
        #[command(flatten)]
        common: Common,
        /// Dyadic indices, comma separated.
        #[arg(long)]
        j_list: Option<String>,
    },
    /// Single-block demonstration.
    Mechanism {
        #[command(flatten)]
        common: Common,
        /// Block width.
        #[arg(long)]
        h: Option<String>,
    },
    /// Analytic lower bounds.
    Bounds {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        j_list: Option<String>,
    },
    /// Run verification suites (max-principle, monotonicity, plateau,
    /// characteristics, bounds, all).
    Verify {
        suites: Vec<String>,
    },
}

/// Options shared by the subcommands; they override the config file.
#[derive(Args)]
struct Common {
    /// `key = value` configuration file.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, conflicts_with = "dyadic_j")]
    epsilon: Option<String>,
    /// Use epsilon = 2^-j.
    #[arg(long)]
    dyadic_j: Option<String>,
    #[arg(long)]
    dx: Option<String>,
    /// Domain as `a,b`.
    #[arg(long, allow_hyphen_values = true)]
    domain: Option<String>,
    #[arg(long)]
    t_final: Option<String>,
    /// Output times, comma separated.
    #[arg(long)]
    tau: Option<String>,
    /// blowup[:K], bar-u:h, step, riemann:ul,ur or file:path.
    #[arg(long)]
    datum: Option<String>,
    /// upwind or lax-friedrichs.
    #[arg(long)]
    scheme: Option<String>,
    #[arg(long)]
    cfl: Option<String>,
    #[arg(long)]
    out: Option<String>,
}

impl Common {
    fn load(&self, extra: &[(&str, &Option<String>)]) -> nltv::Result<RunConfig> {
        let mut cfg = RunConfig::default();
        if let Some(path) = &self.config {
            let text = std::fs::read_to_string(path).map_err(|e| {
                Error::InvalidConfiguration(format!("cannot read {}: {e}", path.display()))
            })?;
            cfg.apply_text(&text)?;
        }
        let flags = [
            ("epsilon", &self.epsilon),
            ("dyadic_j", &self.dyadic_j),
            ("dx", &self.dx),
            ("domain", &self.domain),
            ("t_final", &self.t_final),
            ("tau", &self.tau),
            ("datum", &self.datum),
            ("scheme", &self.scheme),
            ("cfl", &self.cfl),
            ("out", &self.out),
        ];
        for (key, value) in flags.iter().chain(extra) {
            if let Some(v) = value {
                cfg.set(key, v)?;
            }
        }
        Ok(cfg)
    }
}

fn write_manifest(dir: &Path, command: &str, parameters: String, files: Vec<PathBuf>, start: std::time::Instant) -> nltv::Result<()> {
    Manifest {
        command: command.into(),
        parameters,
        wall_time: start.elapsed(),
        files,
    }
    .write(dir)
    .map(|_| ())
}

fn run(command: Command) -> nltv::Result<bool> {
    let start = std::time::Instant::now();
    match command {
        Command::Simulate { common, local } => {
            let mut cfg = common.load(&[])?;
            cfg.local |= local;
            let out = run_simulate(&cfg)?;
            for f in &out.files {
                println!("{}", out.dir.join(f).display());
            }
            Ok(true)
        }
        Command::Characteristics { common, starts } => {
            let cfg = common.load(&[("starts", &starts)])?;
            let out = run_characteristics(&cfg)?;
            for f in &out.files {
                println!("{}", out.dir.join(f).display());
            }
            Ok(true)
        }
        Command::Sweep { common, j_list } => {
            let cfg = common.load(&[("j_list", &j_list)])?;
            let spec = SweepSpec::from_run_config(&cfg);
            let (report, _) = run_sweep_to_dir(&spec, &cfg.out)?;
            print!("{}", report.to_csv());
            for row in &report.rows {
                if let Some(msg) = &row.report.failure {
                    eprintln!("j = {:?}, tau = {}: {msg}", row.report.j, row.report.tau);
                }
            }
            Ok(!report.any_failed())
        }
        Command::Mechanism { common, h } => {
            let cfg = common.load(&[("h", &h)])?;
            let epsilon = cfg.epsilon.map_or(0.4, |e| e.value());
            let tau = cfg.tau.first().copied().unwrap_or(0.05);
            let report = run_mechanism_demo(cfg.h, epsilon, tau)?;
            let text = format!("{report}\n");
            print!("{text}");
            let files = vec![write_output(&cfg.out, "mechanism.txt", &text)?];
            let parameters = format!(
                "h = {}\nepsilon = {}\ntau = {}\ndx = {}\n",
                report.h, report.epsilon, report.tau, report.dx
            );
            write_manifest(&cfg.out, "mechanism", parameters, files, start)?;
            Ok(report.passed())
        }
        Command::Bounds { common, j_list } => {
            let cfg = common.load(&[("j_list", &j_list)])?;
            let taus = if cfg.tau.is_empty() { vec![0.2] } else { cfg.tau.clone() };
            let eps_list: Vec<(f64, Option<u32>)> = match cfg.epsilon {
                Some(EpsilonSpec::Dyadic(j)) => vec![(0.5f64.powi(j as i32), Some(j))],
                Some(EpsilonSpec::Value(e)) => vec![(e, None)],
                None => cfg.j_list.iter().map(|&j| (0.5f64.powi(j as i32), Some(j))).collect(),
            };
            let mut rows = Vec::new();
            for &(eps, j) in &eps_list {
                for &tau in &taus {
                    rows.push(BoundReport::analytic(tau, eps, j)?);
                }
            }
            let csv = bounds_csv(&rows);
            print!("{csv}");
            let files = vec![write_output(&cfg.out, "bounds.csv", &csv)?];
            let join = |v: Vec<String>| v.join(",");
            let parameters = format!(
                "tau = {}\nepsilon = {}\n",
                join(taus.iter().map(f64::to_string).collect()),
                join(eps_list.iter().map(|e| e.0.to_string()).collect())
            );
            write_manifest(&cfg.out, "bounds", parameters, files, start)?;
            Ok(rows.iter().all(BoundReport::chain_holds))
        }
        Command::Verify { suites } => {
            let reports = run_verify(&suites)?;
            for r in &reports {
                println!("{r}");
            }
            Ok(reports.iter().all(|r| r.passed))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_FAILURE),
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_configuration() {
                ExitCode::from(EXIT_CONFIG)
            } else {
                ExitCode::from(EXIT_FAILURE)
            }
        }
    }
}

//! Command-line driver for the junction library.

mod commands;
mod config;

use config::CliError;
use std::process::ExitCode;

const USAGE: &str = "\
junction <command> [--key value ...]

commands:
  profile      1d interface profile constants and samples
               --a --m [--limit neumann|dirichlet] [--limit-tmax T]
               [--tmax T] [--samples N]
  solve        steady state on the disk-in-disk domain
               --mode radial|cart --a --m --eps --r1 --r2
               radial: --n CELLS      cart: --h STEP (fractions like 1/128 ok)
               [--init profile|constant:V|random:SEED] [--tol T] [--max-iters K]
  eigen        principal linearization eigenvalue (radial)
               --a --m --eps --r1 --r2 [--n CELLS]
  sweep        radial solves over an epsilon list
               --eps E1,E2,... [--nodes-per-eps N] [--jobs J]
  asymptotics  two-term energy fit from a sweep table
               --table sweep.csv --a --m --r1 --r2

common flags:
  --out DIR          output directory (default .)
  --config FILE      key=value file; command-line flags override it
  --no-timestamp     omit the timestamp field from JSON reports

exit codes: 0 success, 2 configuration error, 3 numerical failure";

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let Some(command) = args.first() else {
        eprintln!("{USAGE}");
        return ExitCode::from(2);
    };
    let rest = &args[1..];
    let result = match command.as_str() {
        "profile" => commands::cmd_profile(rest),
        "solve" => commands::cmd_solve(rest),
        "eigen" => commands::cmd_eigen(rest),
        "sweep" => commands::cmd_sweep(rest),
        "asymptotics" => commands::cmd_asymptotics(rest),
        "help" | "--help" | "-h" => {
            println!("{USAGE}");
            return ExitCode::SUCCESS;
        }
        other => {
            eprintln!("error: unknown command '{other}'\n{USAGE}");
            return ExitCode::from(2);
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Numerical(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

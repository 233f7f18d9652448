mod args;
mod commands;
mod error;
mod experiment;
mod plot;

use clap::Parser;
use energy_lab::experiments::ExperimentKind;
use energy_lab::Limits;

use args::{Cli, Command};
use error::{CliError, CliResult};

fn dispatch(cli: Cli) -> CliResult<i32> {
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(CliError::Usage("--threads must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(format!("cannot configure thread pool: {e}")))?;
    }
    let limits = Limits::from_env();
    let one_shot = |v: CliResult<serde_json::Value>| {
        commands::emit(v?);
        Ok(0)
    };
    match cli.command {
        Command::Energy(a) => one_shot(commands::energy(&a, &limits)),
        Command::ZetaMoment(a) => one_shot(commands::zeta_moment(&a, &limits)),
        Command::Gcdsum(a) => one_shot(commands::gcdsum(&a)),
        Command::Primes(a) => one_shot(commands::primes(&a, &limits)),
        Command::Factor(a) => one_shot(commands::factor(&a, &limits)),
        Command::Set(a) => one_shot(commands::set(&a, &limits)),
        Command::Bound(a) => one_shot(commands::bound(&a.formula, &limits)),
        Command::Plot(a) => plot::plot(&a).map(|()| 0),
        Command::Repulsion(a) => experiment::execute(
            ExperimentKind::Repulsion,
            &a.common,
            experiment::repulsion(&a),
            limits,
        ),
        Command::ApSearch(a) => experiment::execute(
            ExperimentKind::ApSearch,
            &a.common,
            experiment::ap_search(&a),
            limits,
        ),
        Command::ShiftGrowth(a) => experiment::execute(
            ExperimentKind::ShiftGrowth,
            &a.common,
            experiment::shift_growth(&a),
            limits,
        ),
        Command::TlScan(a) => experiment::execute(
            ExperimentKind::TlScan,
            &a.common,
            experiment::tl_scan(&a),
            limits,
        ),
        Command::Incidence(a) => experiment::execute(
            ExperimentKind::Incidence,
            &a.common,
            experiment::incidence(&a),
            limits,
        ),
        Command::ProductGrowth(a) => experiment::execute(
            ExperimentKind::ProductGrowth,
            &a.common,
            experiment::product_growth(&a),
            limits,
        ),
        Command::Identities(a) => experiment::execute(
            ExperimentKind::Identities,
            &a.common,
            experiment::identities(&a),
            limits,
        ),
    }
}

fn main() {
    let code = match dispatch(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("energy-lab: {e}");
            e.exit_code()
        }
    };
    std::process::exit(code);
}

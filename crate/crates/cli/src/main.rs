use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

mod commands;
mod diagram;
mod parse;
mod report;

use commands::*;
use report::{error_body, is_usage_error, usage_json, Precision, Report, SCHEMA_VERSION};

/// p-adic height pairings on Tate curves. Reports are JSON; exit status 0 on
/// PASS, 2 on a mathematical FAIL, 1 on a usage error.
#[derive(Debug, Parser)]
#[command(name = "padic-heights", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compare the Mazur–Tate and unit-root splittings on random points.
    Compare {
        #[command(flatten)]
        args: CompareArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Mazur–Tate splitting of one biextension point.
    Mt {
        #[command(flatten)]
        args: MtArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Unit-root splitting constants, and optionally its value at a point.
    Unitroot {
        #[command(flatten)]
        args: UnitRootArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Frobenius matrix on H^1_dR of a good ordinary curve.
    Frobenius {
        #[command(flatten)]
        args: FrobeniusArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Lift the unit-root splitting through a semiabelian diagram.
    Lift {
        #[command(flatten)]
        args: LiftArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Reduce a closed log-form on a split torus.
    DerhamReduce {
        #[command(flatten)]
        args: DerhamArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Global height pairing of two rational points.
    GlobalHeight {
        #[command(flatten)]
        args: GlobalHeightArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Sum of the local functionals over all places.
    ProductFormula {
        #[command(flatten)]
        args: ProductFormulaArgs,
        #[command(flatten)]
        common: Common,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Compare { .. } => "compare",
            Command::Mt { .. } => "mt",
            Command::Unitroot { .. } => "unitroot",
            Command::Frobenius { .. } => "frobenius",
            Command::Lift { .. } => "lift",
            Command::DerhamReduce { .. } => "derham-reduce",
            Command::GlobalHeight { .. } => "global-height",
            Command::ProductFormula { .. } => "product-formula",
        }
    }

    fn common(&self) -> &Common {
        match self {
            Command::Compare { common, .. }
            | Command::Mt { common, .. }
            | Command::Unitroot { common, .. }
            | Command::Frobenius { common, .. }
            | Command::Lift { common, .. }
            | Command::DerhamReduce { common, .. }
            | Command::GlobalHeight { common, .. }
            | Command::ProductFormula { common, .. } => common,
        }
    }

    fn run(&self, prec: i64) -> padic_heights::Result<report::Outcome> {
        match self {
            Command::Compare { args, .. } => compare(args, prec),
            Command::Mt { args, .. } => mt(args, prec),
            Command::Unitroot { args, .. } => unitroot(args, prec),
            Command::Frobenius { args, .. } => frobenius(args, prec),
            Command::Lift { args, .. } => lift(args),
            Command::DerhamReduce { args, .. } => derham_reduce(args, prec),
            Command::GlobalHeight { args, .. } => global(args, prec),
            Command::ProductFormula { args, .. } => product_formula(args, prec),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprintln!("{}", usage_json(None, "usage", &e.render().to_string()));
            return ExitCode::from(1);
        }
    };
    let name = cli.command.name();
    let common = cli.command.common();
    if common.prec < 10 {
        eprintln!("{}", usage_json(Some(name), "usage", "--prec must be at least 10"));
        return ExitCode::from(1);
    }
    let report = match cli.command.run(common.prec) {
        Ok(o) => Report {
            schema_version: SCHEMA_VERSION,
            command: name.into(),
            pass: o.pass,
            precision: o.precision,
            result: o.result,
            error: None,
        },
        Err(e) if is_usage_error(&e) => {
            let body = error_body(&e);
            eprintln!("{}", usage_json(Some(name), &body.kind, &body.message));
            return ExitCode::from(1);
        }
        Err(e) => Report {
            schema_version: SCHEMA_VERSION,
            command: name.into(),
            pass: false,
            precision: Precision { requested: common.prec, target: None, achieved: None },
            result: serde_json::Value::Null,
            error: Some(error_body(&e)),
        },
    };
    let text = serde_json::to_string_pretty(&report).expect("reports serialize");
    match &common.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text + "\n") {
                eprintln!("{}", usage_json(Some(name), "io", &format!("{}: {e}", path.display())));
                return ExitCode::from(1);
            }
        }
        None => {
            // a closed pipe downstream is not our failure
            let _ = writeln!(std::io::stdout(), "{text}");
        }
    }
    if report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    }
}

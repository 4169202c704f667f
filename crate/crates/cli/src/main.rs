mod args;
mod batch;
mod commands;
mod failure;

use std::process::ExitCode;

use clap::error::ErrorKind as ClapKind;
use clap::Parser;

use args::{Cli, Command};
use failure::{Failure, Outcome};

fn name(cmd: &Command) -> &'static str {
    match cmd {
        Command::MaskGen(_) => "mask-gen",
        Command::Simulate(_) => "simulate",
        Command::Refine(_) => "refine",
        Command::Pool(_) => "pool",
        Command::Blend(_) => "blend",
        Command::TonemapFit(_) => "tonemap-fit",
        Command::TonemapApply(_) => "tonemap-apply",
        Command::Eval(_) => "eval",
    }
}

fn dispatch(cmd: &Command) -> Outcome<()> {
    match cmd {
        Command::MaskGen(a) => commands::mask_gen(a),
        Command::Simulate(a) => commands::simulate(a),
        Command::Refine(a) => commands::refine(a),
        Command::Pool(a) => commands::pool(a),
        Command::Blend(a) => commands::blend(a),
        Command::TonemapFit(a) => commands::tonemap_fit(a),
        Command::TonemapApply(a) => commands::tonemap_apply(a),
        Command::Eval(a) => commands::eval(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ClapKind::DisplayHelp | ClapKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) if e.kind() == ClapKind::DisplayHelpOnMissingArgumentOrSubcommand => {
            eprint!("{e}");
            return ExitCode::from(failure::USAGE as u8);
        }
        Err(e) => {
            let message = e.to_string();
            let first = message.lines().next().unwrap_or("invalid arguments");
            let f = Failure::usage(first.trim_start_matches("error: ").to_string());
            eprintln!("{}", f.to_json());
            return ExitCode::from(failure::USAGE as u8);
        }
    };
    match dispatch(&cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let f = f.within(name(&cli.command));
            eprintln!("{}", f.to_json());
            ExitCode::from(f.code as u8)
        }
    }
}

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use plektonlab::cli::{
    cmd_model_validate, cmd_normal_form, cmd_winding, load_model, load_scene, load_word, suites::Context, sweep_factor,
    verify, CliError, Format, Report, Scene, Suite, SWEEP_ENV,
};
use plektonlab::sector::AnyonModel;

#[derive(Parser)]
#[command(name = "plektonlab", version, about = "Exact checks for anyonic fields in 2+1 dimensions")]
struct Args {
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a model file against the spin-statistics and root-of-unity rules.
    ModelValidate {
        #[arg(long)]
        model: PathBuf,
    },
    /// Winding numbers N(A, B) between scene paths.
    Winding {
        #[arg(long)]
        scene: PathBuf,
        /// Ordered pair `A:B`; repeatable. Defaults to all ordered pairs.
        #[arg(long = "pair", value_parser = parse_pair)]
        pairs: Vec<(String, String)>,
    },
    /// Reorder a field word by angle and compare with the lattice model.
    NormalForm {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        scene: PathBuf,
        #[arg(long)]
        word: PathBuf,
    },
    /// Run verification suites.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        /// Defaults to the fermion with unit mass.
        #[arg(long)]
        model: Option<PathBuf>,
        #[arg(long)]
        scene: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        parallel: bool,
    },
}

fn parse_pair(s: &str) -> Result<(String, String), String> {
    match s.split_once(':') {
        Some((a, b)) if !a.is_empty() && !b.is_empty() => Ok((a.to_string(), b.to_string())),
        _ => Err(format!("expected A:B, got {s:?}")),
    }
}

fn run(command: Command) -> Result<Report, CliError> {
    match command {
        Command::ModelValidate { model } => Ok(cmd_model_validate(&load_model(&model)?)),
        Command::Winding { scene, pairs } => {
            let scene = load_scene(&scene)?;
            cmd_winding(&scene, (!pairs.is_empty()).then_some(pairs.as_slice()))
        }
        Command::NormalForm { model, scene, word } => {
            let model = load_model(&model)?;
            let scene = load_scene(&scene)?;
            Ok(cmd_normal_form(&model, &load_word(&word, &scene)?))
        }
        Command::Verify { suite, model, scene, seed, parallel } => {
            let sweep = sweep_factor(std::env::var(SWEEP_ENV).ok().as_deref())?;
            let model = match model {
                Some(p) => load_model(&p)?,
                None => AnyonModel::fermion().with_mass(1.0),
            };
            let scene: Option<Scene> = scene.map(|p| load_scene(&p)).transpose()?;
            Ok(verify(suite, &Context::new(model, scene, seed, sweep), parallel))
        }
    }
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { CliError::EXIT_CODE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match run(args.command) {
        Ok(report) => {
            print!("{}", report.render(args.format));
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("plektonlab: {e}");
            ExitCode::from(CliError::EXIT_CODE as u8)
        }
    }
}

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use wonderful::geometry::{GaussRat, SetPartition};
use wonderful::hilbert::{consistency, deficiency_effective_gm, deficiency_general, SmithData};
use wonderful::models::{build_config, build_dcp, build_moduli, ConfigModel, DcpInput, Model, ModuliSpec, SpaceData};
use wonderful::report::{render_step, render_steps, render_text};
use wonderful::verify::run_suite;
use wonderful::{wonderful_run, Error, KnownSpaces, Result, RunReport};

#[derive(Parser)]
#[command(
    name = "wonderful",
    version,
    about = "Betti numbers and real-structure verdicts of wonderful compactifications"
)]
struct Cli {
    /// Print the per-step blow-up table.
    #[arg(long, global = true)]
    trace: bool,

    /// Also write the machine-readable JSON report to this path.
    #[arg(long, global = true, value_name = "PATH")]
    machine: Option<PathBuf>,

    /// JSON object of extra known-space flags, accepted as axioms.
    #[arg(long, global = true, value_name = "FILE")]
    seed_flags: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Subspace arrangement in projective space, read from a JSON file.
    Dcp { file: PathBuf },

    /// Moduli of stable marked rational curves with the real structure twisted by σ.
    Moduli {
        #[arg(long)]
        n: usize,
        /// Involution of the marks in cycle notation, e.g. "(1 2)(3 4)", or "id".
        #[arg(long, default_value = "id")]
        sigma: String,
        /// Curve parameters of the non-distinguished marks, space separated.
        #[arg(long)]
        params: Option<String>,
    },

    /// Configuration-space compactification of X^n.
    Config {
        #[arg(long, value_enum)]
        model: ModelArg,
        #[arg(long)]
        n: usize,
        /// Built-in space (P1, P2, ...) or a JSON file describing X.
        #[arg(long, default_value = "P1")]
        space: String,
        /// Building set for the kt model, e.g. "{1,2,3} {1,2,3,4}".
        #[arg(long)]
        building: Option<String>,
    },

    /// Hilbert-square deficiency from Smith data or from a previous report.
    Hilb2 { file: PathBuf },

    /// Run a self-verification suite.
    Verify {
        #[arg(long, default_value = "core")]
        suite: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    Fm,
    Ulyanov,
    Kt,
}

impl From<ModelArg> for ConfigModel {
    fn from(m: ModelArg) -> Self {
        match m {
            ModelArg::Fm => ConfigModel::Fm,
            ModelArg::Ulyanov => ConfigModel::Ulyanov,
            ModelArg::Kt => ConfigModel::Kt,
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn known_spaces(cli: &Cli) -> Result<KnownSpaces> {
    let mut known = KnownSpaces::default();
    if let Some(path) = &cli.seed_flags {
        known.merge_json(&read(path)?)?;
    }
    Ok(known)
}

/// Splits `{1,2}{3,4} {1,2,3}` into whitespace-separated partitions.
fn parse_building(n: usize, text: &str) -> Result<Vec<SetPartition>> {
    text.split_whitespace().map(|p| SetPartition::parse(n, p)).collect()
}

fn build(cli: &Cli, known: &KnownSpaces) -> Result<Model> {
    match &cli.command {
        Command::Dcp { file } => {
            let input: DcpInput = serde_json::from_str(&read(file)?)?;
            build_dcp(&input, known)
        }
        Command::Moduli { n, sigma, params } => {
            let mut spec = ModuliSpec::new(*n, sigma)?;
            if let Some(p) = params {
                spec.params = Some(p.split_whitespace().map(str::parse::<GaussRat>).collect::<Result<_>>()?);
            }
            build_moduli(&spec, known)
        }
        Command::Config { model, n, space, building } => {
            let x = if Path::new(space).is_file() {
                serde_json::from_str::<SpaceData>(&read(Path::new(space))?)?
            } else {
                SpaceData::builtin(space)?
            };
            let list = building.as_deref().map(|b| parse_building(*n, b)).transpose()?;
            build_config((*model).into(), *n, &x, list.as_deref(), known)
        }
        Command::Hilb2 { .. } | Command::Verify { .. } => unreachable!("not a model command"),
    }
}

fn write_machine(cli: &Cli, text: &str) -> Result<()> {
    if let Some(path) = &cli.machine {
        fs::write(path, text)?;
    }
    Ok(())
}

fn run_model(cli: &Cli) -> Result<bool> {
    let known = known_spaces(cli)?;
    let model = build(cli, &known)?;
    let run = wonderful_run(&model.arrangement)?;
    let report = RunReport::new(&model, &run)?;
    let mut out = std::io::stdout().lock();
    if cli.trace {
        // rows go out one by one so long runs show progress
        let header = render_steps(&[]);
        out.write_all(header.as_bytes())?;
        for (i, s) in report.steps.iter().enumerate() {
            out.write_all(render_step(i, s).as_bytes())?;
        }
    }
    out.write_all(render_text(&report, false).as_bytes())?;
    write_machine(cli, &report.to_json())?;
    Ok(report.all_checks_pass())
}

fn run_hilb2(cli: &Cli, file: &Path) -> Result<bool> {
    let text = read(file)?;
    let value: serde_json::Value = serde_json::from_str(&text)?;
    let smith = if value.get("schema_version").is_some() {
        RunReport::from_json(&text)?.smith_data()?
    } else {
        serde_json::from_value::<SmithData>(value)?
    };
    let issues = consistency(&smith);
    let general = smith.rank_mu.map(|_| deficiency_general(&smith)).transpose()?;
    let special = if smith.effective_gm { Some(deficiency_effective_gm(&smith)?) } else { None };
    if issues.is_empty() && general.is_none() && special.is_none() {
        return Err(Error::Input("give rank_mu or attest effective_gm to evaluate a formula".into()));
    }

    let mut out = std::io::stdout().lock();
    writeln!(out, "n            {}", smith.n)?;
    writeln!(out, "beta         total {}, fixed {}, odd {}", smith.beta_total, smith.beta_fixed, smith.beta_odd)?;
    writeln!(out, "deficiency   {}", smith.a())?;
    for issue in &issues {
        writeln!(out, "inconsistent {issue}")?;
    }
    if let Some(g) = &general {
        writeln!(out, "general      {g}")?;
    }
    if let Some(s) = &special {
        writeln!(out, "effective gm {s}")?;
    }
    let machine = json!({
        "smith": smith,
        "consistency": issues,
        "general": general.map(|g| g.to_string()),
        "effective_gm": special.map(|s| s.to_string()),
    });
    write_machine(cli, &format!("{}\n", serde_json::to_string_pretty(&machine)?))?;
    Ok(issues.is_empty())
}

fn run_verify(cli: &Cli, suite: &str) -> Result<bool> {
    let checks = run_suite(suite)?;
    let mut out = std::io::stdout().lock();
    for c in &checks {
        if c.passed {
            writeln!(out, "PASS {}", c.name)?;
        } else {
            writeln!(out, "FAIL {}: {}", c.name, c.detail)?;
        }
    }
    let passed = checks.iter().filter(|c| c.passed).count();
    writeln!(out, "{passed}/{} checks passed", checks.len())?;
    write_machine(cli, &format!("{}\n", serde_json::to_string_pretty(&checks)?))?;
    Ok(passed == checks.len())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Hilb2 { file } => run_hilb2(&cli, file),
        Command::Verify { suite } => run_verify(&cli, suite),
        _ => run_model(&cli),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(3),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_input() { 2 } else { 3 })
        }
    }
}

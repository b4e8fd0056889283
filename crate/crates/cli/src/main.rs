use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use tcsim::analysis::{
    distance_to_set, dominant_frequencies, find_revivals, predicted_frequencies,
};
use tcsim::output::{parse_csv, render_svg, write_csv};
use tcsim::presets::{figure_presets, preset, PRESET_IDS};
use tcsim::scenario::{Model, Scenario, ScenarioError};
use tcsim::{Error, TcModel};

#[derive(Parser)]
#[command(
    name = "tcsim",
    version,
    about = "Linear entropy of a qubit in the two-atom Tavis-Cummings model"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a scenario file and write the CSV.
    Run {
        file: PathBuf,
        /// Output CSV path (stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write an SVG plot next to the CSV.
        #[arg(long)]
        svg: bool,
    },
    /// Reproduce one of the figure presets (1-6).
    Figure {
        id: u8,
        #[arg(long)]
        svg: bool,
        #[arg(long)]
        t_end: Option<f64>,
        #[arg(long)]
        points: Option<usize>,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Compare the closed form against the brute-force oracle.
    OracleCheck {
        file: PathBuf,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Revivals, time average and spectral peaks of a CSV trace.
    Analyze {
        csv: PathBuf,
        /// Only consider minima after this time.
        #[arg(long, default_value_t = 5.0)]
        after: f64,
        #[arg(long, default_value_t = 8)]
        peaks: usize,
    },
    /// Print a preset as a scenario file.
    Preset { id: String },
}

enum Failure {
    Io(String),
    Parse(String),
    Invalid(String),
    Truncation(String),
    Tolerance,
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Self::Io(_) => 1,
            Self::Parse(_) => 2,
            Self::Invalid(_) => 3,
            Self::Truncation(_) => 4,
            Self::Tolerance => 5,
        }
    }
}

impl From<ScenarioError> for Failure {
    fn from(e: ScenarioError) -> Self {
        if e.is_truncation() {
            Self::Truncation(e.to_string())
        } else {
            match e {
                ScenarioError::Parse(m) => Self::Parse(m),
                ScenarioError::Invalid(e) => Self::Invalid(e.to_string()),
            }
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        ScenarioError::from(e).into()
    }
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> Failure + '_ {
    move |e| Failure::Io(format!("{}: {e}", path.display()))
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(io_err(path))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(io_err(path))
}

fn load(path: &Path) -> Result<Scenario, Failure> {
    Ok(Scenario::parse(&read(path)?)?)
}

fn run(file: &Path, out: Option<&Path>, svg: bool) -> Result<(), Failure> {
    let scenario = load(file)?;
    let result = scenario.run(false)?;
    let csv = write_csv(&scenario, &result);
    match out {
        Some(path) => write(path, &csv)?,
        None => io::stdout()
            .write_all(csv.as_bytes())
            .map_err(|e| Failure::Io(e.to_string()))?,
    }
    if svg {
        let path = out.unwrap_or(file).with_extension("svg");
        let title = file
            .file_stem()
            .map_or_else(String::new, |s| s.to_string_lossy().into_owned());
        write(&path, &render_svg(&result.closed, &title))?;
    }
    Ok(())
}

fn figure(
    id: u8,
    svg: bool,
    t_end: Option<f64>,
    points: Option<usize>,
    out_dir: &Path,
) -> Result<(), Failure> {
    let panels = figure_presets(id)
        .ok_or_else(|| Failure::Invalid(format!("no figure {id}; expected 1 to 6")))?;
    for (name, mut scenario) in panels {
        if let Some(t) = t_end {
            scenario.grid.t_end = t;
        }
        if let Some(n) = points {
            scenario.grid.points = n;
        }
        let result = scenario.run(false)?;
        let path = out_dir.join(format!("fig{name}.csv"));
        write(&path, &write_csv(&scenario, &result))?;
        println!("{}", path.display());
        if svg {
            let path = out_dir.join(format!("fig{name}.svg"));
            write(
                &path,
                &render_svg(&result.closed, &format!("Figure {name}")),
            )?;
            println!("{}", path.display());
        }
    }
    Ok(())
}

fn oracle_check(file: &Path, tol: f64) -> Result<(), Failure> {
    let scenario = load(file)?;
    let result = scenario.run(true)?;
    let err = result.max_abs_err().unwrap_or(f64::NAN);
    let pass = err <= tol;
    println!("max |zeta_closed - zeta_oracle| = {err:.3e}");
    println!("{} (tol {tol:e})", if pass { "PASS" } else { "FAIL" });
    if pass {
        Ok(())
    } else {
        Err(Failure::Tolerance)
    }
}

fn analyze(csv: &Path, after: f64, peaks: usize) -> Result<(), Failure> {
    let parsed = parse_csv(&read(csv)?)?;
    let series = parsed.zeta_series()?;
    let report = find_revivals(&series, after)?;
    println!(
        "time average over [{after}, end]: {:.10}",
        report.time_average
    );
    match report.global_min {
        Some((t, z)) => println!("lowest minimum after t = {after}: zeta = {z:.10e} at t = {t:.6}"),
        None => println!("no local minima after t = {after}"),
    }
    println!("local minima: {}", report.minima.len());
    for (t, z) in report.minima.iter().take(20) {
        println!("  t = {t:<12.6} zeta = {z:.10e}");
    }

    let predicted = match parsed.scenario.as_ref().map(Scenario::resolve) {
        Some(Ok(Model::TavisCummings { config, reading })) => Some(predicted_frequencies(
            &TcModel::with_reading(&config, reading)?,
        )),
        _ => None,
    };
    let spectrum = dominant_frequencies(&series, peaks)?;
    println!(
        "dominant angular frequencies (bin {:.6}, nyquist {:.3}):",
        spectrum.resolution, spectrum.nyquist
    );
    for p in &spectrum.peaks {
        match &predicted {
            Some(set) => println!(
                "  {:>12.6}  amplitude {:.4e}  nearest prediction {:.3} bins",
                p.frequency,
                p.amplitude,
                distance_to_set(p.frequency, set) / spectrum.resolution
            ),
            None => println!("  {:>12.6}  amplitude {:.4e}", p.frequency, p.amplitude),
        }
    }
    Ok(())
}

fn print_preset(id: &str) -> Result<(), Failure> {
    let s = preset(id).ok_or_else(|| {
        Failure::Invalid(format!("no preset {id}; known: {}", PRESET_IDS.join(", ")))
    })?;
    print!("{}", s.to_toml());
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Run { file, out, svg } => run(file, out.as_deref(), *svg),
        Command::Figure {
            id,
            svg,
            t_end,
            points,
            out_dir,
        } => figure(*id, *svg, *t_end, *points, out_dir),
        Command::OracleCheck { file, tol } => oracle_check(file, *tol),
        Command::Analyze { csv, after, peaks } => analyze(csv, *after, *peaks),
        Command::Preset { id } => print_preset(id),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Io(m) => eprintln!("error: {m}"),
                Failure::Parse(m) => eprintln!("parse error: {m}"),
                Failure::Invalid(m) => eprintln!("invalid scenario: {m}"),
                Failure::Truncation(m) => eprintln!("{m}"),
                Failure::Tolerance => {}
            }
            ExitCode::from(f.code())
        }
    }
}

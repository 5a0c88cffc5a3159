use std::path::{Path, PathBuf};
use std::process::ExitCode;

use armdgf_core::sweep::{plot_script, run_loaded_sweep};
use armdgf_core::verify::{self, VerifyLevel};
use armdgf_core::{
    CoeffTable, Error, FieldSelector, OffsetAxis, ScenarioFile, SweepConfig, TruncationSpec,
};
use clap::{Parser, Subcommand, ValueEnum};

/// Orders allowed for the total field when no truncation is given. The
/// direct term converges slowly when source and receiver radii are close.
const TOTAL_FIELD_MAX_ORDER: usize = 600;

#[derive(Parser)]
#[command(name = "armdgf", version, about = "Dielectric-sphere dyadic Green's function channel model")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep the receiver over polar angles, azimuths and offsets.
    Simulate(SimulateArgs),
    /// Run the self-verification checks.
    Verify {
        /// Full sample counts instead of the reduced quick grids.
        #[arg(long)]
        full: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FieldArg {
    Scattered,
    Total,
}

#[derive(Clone, Copy, ValueEnum)]
enum AxisArg {
    Radial,
    Vertical,
}

#[derive(clap::Args)]
#[command(allow_negative_numbers = true)]
struct SimulateArgs {
    /// Scenario JSON file.
    #[arg(long)]
    config: PathBuf,
    /// Output CSV path.
    #[arg(long)]
    out: PathBuf,
    /// Comma-separated polar angles in radians; `pi`, `pi/6`, `2pi/3` accepted.
    #[arg(long, value_delimiter = ',', value_parser = parse_angle)]
    theta: Option<Vec<f64>>,
    /// Comma-separated receiver offsets in metres.
    #[arg(long, value_delimiter = ',')]
    offsets: Option<Vec<f64>>,
    #[arg(long, value_enum, default_value = "scattered")]
    field: FieldArg,
    /// Maximum mode order Q.
    #[arg(long)]
    truncation_q: Option<usize>,
    /// Sum every order up to Q instead of stopping once converged.
    #[arg(long)]
    fixed_truncation: bool,
    /// Direction in which the offset moves the receiver.
    #[arg(long, value_enum, default_value = "radial")]
    offset_axis: AxisArg,
    /// Also write a gnuplot script next to the CSV.
    #[arg(long)]
    plot_script: bool,
    /// Write the interface coefficients to this CSV.
    #[arg(long)]
    dump_coefficients: Option<PathBuf>,
}

fn parse_angle(s: &str) -> Result<f64, String> {
    let t = s.trim().to_ascii_lowercase();
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim().parse::<f64>().map_err(|e| format!("{s}: {e}"))?),
        None => (t.as_str(), 1.0),
    };
    let value = match num.strip_suffix("pi") {
        Some("") => std::f64::consts::PI,
        Some(k) => k.trim_end_matches('*').parse::<f64>().map_err(|e| format!("{s}: {e}"))? * std::f64::consts::PI,
        None => num.parse::<f64>().map_err(|e| format!("{s}: {e}"))?,
    };
    Ok(value / den)
}

fn exit_code(e: &Error) -> u8 {
    match e.root() {
        Error::Io { .. } => 3,
        Error::Domain(_)
        | Error::Index { .. }
        | Error::Interface { .. }
        | Error::Coincident
        | Error::Invalid { .. } => 1,
        _ => 2,
    }
}

fn io_error(path: &Path, e: std::io::Error) -> Error {
    Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    }
}

fn simulate(args: &SimulateArgs) -> Result<(), Error> {
    let loaded = ScenarioFile::load(&args.config)?;
    let mut config = SweepConfig::default();
    if let Some(t) = &args.theta {
        config.theta_values = t.clone();
    }
    if let Some(o) = &args.offsets {
        config.offsets_m = o.clone();
    }
    config.field = match args.field {
        FieldArg::Scattered => FieldSelector::Scattered,
        FieldArg::Total => FieldSelector::Total,
    };
    config.offset_axis = match args.offset_axis {
        AxisArg::Radial => OffsetAxis::Radial,
        AxisArg::Vertical => OffsetAxis::Vertical,
    };
    let q = match (args.truncation_q, config.field) {
        (Some(q), _) => q,
        (None, FieldSelector::Total) => TOTAL_FIELD_MAX_ORDER,
        (None, FieldSelector::Scattered) => config.truncation.max_order,
    };
    config.truncation = if args.fixed_truncation {
        TruncationSpec::fixed(q)
    } else {
        TruncationSpec::with_max_order(q)
    };

    if let Some(path) = &args.dump_coefficients {
        CoeffTable::new(&loaded.scenario, q)?.write_csv(path)?;
        eprintln!("coefficients for n = 1..={q} written to {}", path.display());
    }

    let summary = run_loaded_sweep(&loaded, &config, &args.out)?;
    println!("{} points written to {}", summary.rows, args.out.display());
    println!("|E| range {:.2} dB to {:.2} dB", summary.min_db, summary.max_db);
    for t in &summary.trends {
        let means: Vec<String> = t.mean_abs_eph.iter().map(|v| format!("{v:.4e}")).collect();
        println!(
            "theta = {:.4}: mean |E_phi| by offset [{}]{}",
            t.theta,
            means.join(", "),
            if t.monotone { "" } else { "  (not monotone)" }
        );
    }

    if args.plot_script {
        let script_path = args.out.with_extension("gp");
        let csv_name = args
            .out
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_default();
        std::fs::write(&script_path, plot_script(&csv_name, &config))
            .map_err(|e| io_error(&script_path, e))?;
        println!("plot script written to {}", script_path.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match cli.command {
        Command::Simulate(args) => match simulate(&args) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(exit_code(&e))
            }
        },
        Command::Verify { full } => {
            let level = if full { VerifyLevel::Full } else { VerifyLevel::Quick };
            let report = verify::run(level);
            for c in &report.checks {
                println!("{c}");
            }
            if report.passed() {
                println!("all {} checks passed", report.checks.len());
                ExitCode::SUCCESS
            } else {
                let failed = report.checks.iter().filter(|c| !c.passed).count();
                println!("{failed} of {} checks failed", report.checks.len());
                ExitCode::from(2)
            }
        }
    }
}

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rfvlc_cli::config::{parse_assignment, parse_layer};
use rfvlc_cli::error::EXIT_VALIDATION;
use rfvlc_cli::{explain, presets, validate, CliError, Layers, Outputs, Params, SweepSpec, SweepVar};

/// Outage and BER of dual-hop mixed RF-VLC relaying: analytic sweeps and
/// Monte Carlo cross-checks.
#[derive(Parser, Debug)]
#[command(name = "rfvlc", version, about)]
struct Cli {
    /// Worker threads (default: one per core)
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate metrics over a one-dimensional grid and write CSV
    Sweep(SweepArgs),
    /// Compare analytic metrics with Monte Carlo on a fixed grid
    Validate(ValidateArgs),
    /// Print the derived constants of a configuration
    Explain(ConfigArgs),
    /// List figure presets
    Presets,
}

#[derive(Args, Debug)]
struct ConfigArgs {
    /// Figure preset (fig3..fig9); see `rfvlc presets`
    #[arg(long)]
    preset: Option<String>,

    /// TOML config file, applied after the preset
    #[arg(long)]
    config: Option<PathBuf>,

    /// Override one key, e.g. `--set rho=0.5`; repeatable, applied last
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,

    /// Number of base stations (same as `--set k=N`)
    #[arg(long = "K")]
    k: Option<u32>,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[command(flatten)]
    config: ConfigArgs,

    /// pt_dbm, mu_rf_db, l_m, semi_angle_deg, rho or k
    #[arg(long)]
    var: Option<String>,

    #[arg(long, allow_negative_numbers = true)]
    from: Option<f64>,

    #[arg(long, allow_negative_numbers = true)]
    to: Option<f64>,

    #[arg(long)]
    step: Option<f64>,

    /// Tie mu_rf [dB] to P_t [dBm]
    #[arg(long)]
    coupled: bool,

    /// Comma-separated subset of exact, floors, mc
    #[arg(long)]
    outputs: Option<String>,

    /// Monte Carlo samples per grid point (accepts 1e6)
    #[arg(long, value_parser = parse_count)]
    samples: Option<u64>,

    #[arg(long)]
    seed: Option<u64>,

    /// Write CSV here instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,

    /// Print derived constants of the fixed configuration to standard error
    #[arg(long)]
    explain: bool,
}

#[derive(Args, Debug)]
struct ValidateArgs {
    #[arg(long, default_value = "default")]
    grid: String,

    /// Samples per grid point (accepts 1e7)
    #[arg(long, default_value = "1e7", value_parser = parse_count)]
    samples: u64,

    #[arg(long, default_value_t = 42)]
    seed: u64,

    /// Independent random streams per point
    #[arg(long, default_value_t = 64)]
    streams: u32,

    #[arg(long, default_value_t = 4096)]
    batch_size: u32,

    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_count(s: &str) -> Result<u64, String> {
    let v: f64 = s.parse().map_err(|_| format!("`{s}` is not a number"))?;
    if v >= 0.0 && v.fract() == 0.0 && v <= u64::MAX as f64 {
        Ok(v as u64)
    } else {
        Err(format!("`{s}` is not a non-negative integer"))
    }
}

fn layers(args: &ConfigArgs) -> Result<(Layers, Option<&'static presets::Preset>), CliError> {
    let mut l = Layers::default();
    let preset = match &args.preset {
        Some(name) => {
            let p = presets::find(name).ok_or_else(|| CliError::Usage(format!("unknown preset `{name}`")))?;
            l.push(parse_layer(p.name, p.params)?);
            Some(p)
        }
        None => None,
    };
    if let Some(path) = &args.config {
        let src = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        l.push(parse_layer(&path.display().to_string(), &src)?);
    }
    for s in &args.set {
        l.push(parse_assignment(s)?);
    }
    if let Some(k) = args.k {
        l.set("k", i64::from(k));
    }
    Ok((l, preset))
}

fn write_out(path: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn sweep(args: SweepArgs) -> Result<ExitCode, CliError> {
    let (mut l, preset) = layers(&args.config)?;
    if let Some(n) = args.samples {
        l.set("samples", n as i64);
    }
    if let Some(s) = args.seed {
        l.set("seed", s as i64);
    }
    let params: Params = l.build()?;
    let var = match (&args.var, preset) {
        (Some(v), _) => SweepVar::from_name(v).ok_or_else(|| {
            let names: Vec<_> = SweepVar::ALL.iter().map(|v| v.name()).collect();
            CliError::Usage(format!("unknown sweep variable `{v}`; expected one of {}", names.join(", ")))
        })?,
        (None, Some(p)) => p.var,
        (None, None) => return Err(CliError::Usage("--var is required without --preset".into())),
    };
    let from_preset = preset.filter(|p| p.var == var);
    let pick = |v: Option<f64>, f: fn(&presets::Preset) -> f64, name: &str| {
        v.or(from_preset.map(f)).ok_or_else(|| CliError::Usage(format!("--{name} is required")))
    };
    let outputs = match &args.outputs {
        Some(s) => Outputs::parse(s)?,
        None => preset.map_or(Outputs { exact: true, floors: true, mc: false }, |p| p.outputs),
    };
    let spec = SweepSpec {
        params,
        var,
        from: pick(args.from, |p| p.from, "from")?,
        to: pick(args.to, |p| p.to, "to")?,
        step: pick(args.step, |p| p.step, "step")?,
        coupled: args.coupled || preset.is_some_and(|p| p.coupled),
        outputs,
    };
    if args.explain {
        eprint!("{}", explain::explain(&spec.params)?);
    }
    let table = spec.run()?;
    write_out(&args.out, &table.to_csv())?;
    Ok(ExitCode::SUCCESS)
}

fn run_validate(args: ValidateArgs) -> Result<ExitCode, CliError> {
    let points = validate::grid(&args.grid)?;
    let sim = rfvlc_core::SimConfig {
        n_samples: args.samples,
        seed: args.seed,
        n_streams: args.streams,
        batch_size: args.batch_size,
    };
    sim.validate()?;
    let report = validate::run(points, sim)?;
    write_out(&args.out, &report.to_csv())?;
    let failed = report.checks.iter().filter(|c| !c.pass()).count();
    eprintln!(
        "{} of {} checks within {} standard errors (largest |z| = {:.2})",
        report.checks.len() - failed,
        report.checks.len(),
        validate::Z_LIMIT,
        report.max_abs_z()
    );
    Ok(if failed == 0 { ExitCode::SUCCESS } else { ExitCode::from(EXIT_VALIDATION as u8) })
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    match cli.command {
        Command::Sweep(a) => sweep(a),
        Command::Validate(a) => run_validate(a),
        Command::Explain(a) => {
            let (l, _) = layers(&a)?;
            print!("{}", explain::explain(&l.build()?)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Presets => {
            for p in &presets::PRESETS {
                let coupled = if p.coupled { " (coupled)" } else { "" };
                println!("{:<5} {:<15} {} .. {} step {}{}  {}", p.name, p.var.name(), p.from, p.to, p.step, coupled, p.about);
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

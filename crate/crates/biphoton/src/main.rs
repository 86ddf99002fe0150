//! Command-line front end: config ingestion, subcommand dispatch, atomic
//! CSV emission, and reproducibility metadata.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use biphoton::config::RunConfig;
use biphoton::error::{Error, Result};
use biphoton::pump::{pump_g2, synthesize_pump, PumpModel};
use biphoton::scans::{ensemble_average, scan_spec, Reducer};
use biphoton::signals::{
    coherent_closed, coherent_general, coincidence_rates, effective_pulse, incoherent_closed,
    incoherent_general, Regime,
};

const PRESETS: &[(&str, &str)] = &[
    ("fig1", include_str!("../presets/fig1.toml")),
    ("fig2", include_str!("../presets/fig2.toml")),
    ("fig3", include_str!("../presets/fig3.toml")),
    ("fig4", include_str!("../presets/fig4.toml")),
];

#[derive(Parser)]
#[command(
    name = "biphoton",
    about = "Two-photon signals from broadband down-converted light",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Path to a TOML run configuration.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Name of a built-in preset (fig1, fig2, fig3, fig4).
    #[arg(long, global = true, value_name = "NAME")]
    preset: Option<String>,
    /// Output directory for CSV files.
    #[arg(long, global = true, value_name = "DIR", default_value = ".")]
    out: PathBuf,
    /// Override the master seed.
    #[arg(long, global = true, value_name = "N")]
    seed: Option<u64>,
    /// Evaluate signals by the transform-based integral path instead of the
    /// regime closed forms.
    #[arg(long, global = true)]
    general: bool,
    /// Override the ensemble size.
    #[arg(long, global = true, value_name = "N")]
    ensemble: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Delay response of the down-converted band (the effective pulse).
    EffectivePulse,
    /// Coherent/incoherent signal versus signal-idler delay.
    Signal,
    /// Pump intensity correlation g2 versus delay.
    G2,
    /// Run the scan configured in the [scan] section.
    Scan,
    /// Check the configuration and report which closed forms are admissible.
    Validate,
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(&cli) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}

fn run(cli: &Cli) -> Result<()> {
    let config = load_config(cli)?;
    match cli.command {
        Command::Validate => validate(&config),
        Command::EffectivePulse => effective_pulse_cmd(cli, &config),
        Command::Signal => signal_cmd(cli, &config),
        Command::G2 => g2_cmd(cli, &config),
        Command::Scan => scan_cmd(cli, &config),
    }
}

fn load_config(cli: &Cli) -> Result<RunConfig> {
    let mut config = match (&cli.config, &cli.preset) {
        (Some(_), Some(_)) => {
            return Err(Error::Config("give --config or --preset, not both".into()))
        }
        (Some(path), None) => RunConfig::from_path(path)?,
        (None, Some(name)) => {
            let text = PRESETS
                .iter()
                .find(|(n, _)| n == name)
                .map(|(_, t)| *t)
                .ok_or_else(|| {
                    Error::Config(format!(
                        "unknown preset '{name}' (available: {})",
                        PRESETS
                            .iter()
                            .map(|(n, _)| *n)
                            .collect::<Vec<_>>()
                            .join(", ")
                    ))
                })?;
            RunConfig::from_toml(text)?
        }
        (None, None) => {
            return Err(Error::Config("a --config file or --preset is required".into()))
        }
    };
    if let Some(seed) = cli.seed {
        config.seed = seed;
    }
    if let Some(ensemble) = cli.ensemble {
        if let Some(scan) = &mut config.scan {
            scan.ensemble = ensemble;
        }
    }
    Ok(config)
}

/// Write a file atomically: temp file in the same directory, then rename.
fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
    if let Some(dir) = dir {
        std::fs::create_dir_all(dir)
            .map_err(|e| Error::Config(format!("cannot create {}: {e}", dir.display())))?;
    }
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, contents)
        .map_err(Error::Io)?;
    std::fs::rename(&tmp, path)
        .map_err(Error::Io)?;
    Ok(())
}

fn print_warnings(warnings: &[String]) {
    for w in warnings {
        eprintln!("warning: {w}");
    }
}

fn validate(config: &RunConfig) -> Result<()> {
    let warnings = config.validate()?;
    print_warnings(&warnings);
    let gamma = config.kernel_gamma()?;
    let delta_p = config.pump_bandwidth()?;
    let delta = config.dc_bandwidth()?;
    if delta_p == 0.0 {
        println!("NarrowPump admissible (ideal CW pump)");
    } else if gamma >= 5.0 * delta_p {
        println!("NarrowPump admissible (gamma/delta_p \u{2248} {:.1})", gamma / delta_p);
    } else {
        println!(
            "NarrowPump not admissible (gamma/delta_p \u{2248} {:.2}, needs >= 5)",
            gamma / delta_p
        );
    }
    if delta_p >= 5.0 * gamma {
        println!("BroadPump admissible (delta_p/gamma \u{2248} {:.1})", delta_p / gamma);
    } else {
        println!(
            "BroadPump not admissible (delta_p/gamma \u{2248} {:.2}, needs >= 5)",
            delta_p / gamma
        );
    }
    if let Some(gate) = config.kernel.gate.as_deref() {
        let gate = biphoton::units::Quantity::parse(gate)?.as_time()?;
        if gate * delta >= 10.0 {
            println!("Coincidence admissible (Tg*Delta \u{2248} {:.0})", gate * delta);
        } else {
            println!(
                "Coincidence not admissible (Tg*Delta \u{2248} {:.2}, needs >= 10)",
                gate * delta
            );
        }
    }
    println!("configuration ok");
    Ok(())
}

fn effective_pulse_cmd(cli: &Cli, config: &RunConfig) -> Result<()> {
    let grid = config.dc_grid()?;
    let dc = config.dc(grid)?;
    let (theta_s, theta_i) = config.filter_phases(grid)?;
    let pe = effective_pulse(&dc, &theta_s, &theta_i)?;
    let mut csv = String::from("delay_s,pe\n");
    for (t, v) in pe.delays.iter().zip(&pe.values) {
        writeln!(csv, "{t:e},{v:e}").unwrap();
    }
    let path = cli.out.join("effective_pulse.csv");
    write_atomic(&path, &csv)?;
    match pe.fwhm() {
        Ok(w) => println!(
            "effective pulse: FWHM {:.4e} s, peak {:.6} -> {}",
            w,
            pe.value_at(0.0),
            path.display()
        ),
        Err(_) => println!(
            "effective pulse: peak {:.6} (FWHM unresolved) -> {}",
            pe.value_at(0.0),
            path.display()
        ),
    }
    Ok(())
}

fn closed_g2(config: &RunConfig, delays: &[f64], ensemble: usize) -> Result<Vec<f64>> {
    let model = config.pump_model()?;
    match model {
        PumpModel::StochasticQuasiCw { .. } => {
            pump_g2(&model, config.pump_grid()?, delays, ensemble)
        }
        _ => Ok(vec![1.0; delays.len()]),
    }
}

fn signal_cmd(cli: &Cli, config: &RunConfig) -> Result<()> {
    let delays = config.delay_axis()?;
    let n = config.downconversion.mean_photon_number.unwrap_or(1.0);
    let (coherent, incoherent) = if cli.general {
        general_signal(cli, config, &delays)?
    } else {
        let grid = config.dc_grid()?;
        let dc = config.dc_with_photon_number(grid, n)?;
        let (theta_s, theta_i) = config.filter_phases(grid)?;
        let pe = effective_pulse(&dc, &theta_s, &theta_i)?;
        let inputs = config.closed_inputs(n)?;
        let g2 = closed_g2(config, &delays, cli.ensemble.unwrap_or(200))?;
        let regime = config.resolve_regime()?;
        if regime == Regime::Coincidence {
            let trace = coincidence_rates(&inputs, &pe, &g2, &delays)?;
            (trace.coherent, trace.incoherent)
        } else {
            (
                coherent_closed(regime, &inputs, &pe, &delays)?.coherent,
                incoherent_closed(regime, &inputs, &g2, &delays)?.incoherent,
            )
        }
    };
    let mut csv = String::from("delay_s,coherent,incoherent,ratio\n");
    for i in 0..delays.len() {
        let ratio = if incoherent[i] != 0.0 {
            coherent[i] / incoherent[i]
        } else {
            f64::NAN
        };
        writeln!(csv, "{:e},{:e},{:e},{:e}", delays[i], coherent[i], incoherent[i], ratio).unwrap();
    }
    let path = cli.out.join("signal.csv");
    write_atomic(&path, &csv)?;
    let peak = coherent.iter().cloned().fold(0.0, f64::max);
    println!(
        "signal: {} delays, peak coherent {:.4e} -> {}",
        delays.len(),
        peak,
        path.display()
    );
    Ok(())
}

/// Integral-path signal versus delay, sampled at the pump envelope peak and
/// averaged over the seed ensemble for stochastic pumps.
fn general_signal(cli: &Cli, config: &RunConfig, delays: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
    let pump_grid = config.pump_grid()?;
    let dc_grid = config.dc_grid()?;
    let dc = config.dc(dc_grid)?;
    let response = config.kernel_on(pump_grid)?;
    let pair = config.pair_kernel(dc_grid)?;
    let model = config.pump_model()?;
    let reps = match model {
        PumpModel::StochasticQuasiCw { .. } => cli.ensemble.unwrap_or(20),
        _ => 1,
    };
    let peak_index = (0..pump_grid.count())
        .min_by(|&a, &b| {
            pump_grid
                .time(a)
                .abs()
                .partial_cmp(&pump_grid.time(b).abs())
                .unwrap()
        })
        .unwrap();
    let mut coherent = vec![0.0; delays.len()];
    let mut incoherent = vec![0.0; delays.len()];
    for r in 0..reps {
        let seeded = match model {
            PumpModel::StochasticQuasiCw { seed, .. } => {
                model.with_seed(seed ^ (r as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
            }
            _ => model,
        };
        let pump = synthesize_pump(&seeded, pump_grid)?;
        for (i, &tau) in delays.iter().enumerate() {
            let c = coherent_general(&pump, &dc, &response, &pair, 0.0, tau)?;
            let ic = incoherent_general(&pump, &dc, &response, &pair, 0.0, tau)?;
            coherent[i] += c.coherent[peak_index] / reps as f64;
            incoherent[i] += ic.incoherent[peak_index] / reps as f64;
        }
    }
    Ok((coherent, incoherent))
}

fn g2_cmd(cli: &Cli, config: &RunConfig) -> Result<()> {
    let delays = config.delay_axis()?;
    let model = config.pump_model()?;
    print_warnings(&model.validate()?);
    let g2 = match model {
        PumpModel::StochasticQuasiCw { .. } => pump_g2(
            &model,
            config.pump_grid()?,
            &delays,
            cli.ensemble.unwrap_or(400),
        )?,
        _ => vec![1.0; delays.len()],
    };
    let mut csv = String::from("delay_s,g2\n");
    for (t, v) in delays.iter().zip(&g2) {
        writeln!(csv, "{t:e},{v:e}").unwrap();
    }
    let path = cli.out.join("g2.csv");
    write_atomic(&path, &csv)?;
    let peak = g2.iter().cloned().fold(0.0, f64::max);
    println!("g2: {} delays, peak {:.4} -> {}", delays.len(), peak, path.display());
    Ok(())
}

fn scan_cmd(cli: &Cli, config: &RunConfig) -> Result<()> {
    let section = config
        .scan
        .as_ref()
        .ok_or_else(|| Error::Config("the config has no [scan] section".into()))?;
    let spec = scan_spec(section, config)?;
    let reducer = if spec.ensemble_size >= 2 {
        Reducer::MeanAndStderr
    } else {
        Reducer::Mean
    };
    let table = ensemble_average(&spec, config, reducer)?;
    let csv_path = cli.out.join("scan.csv");
    write_atomic(&csv_path, &table.to_csv_string())?;
    let mut meta = String::new();
    for (k, v) in &table.metadata {
        writeln!(meta, "# {k} = {v}").unwrap();
    }
    let resolved = toml::to_string(config)
        .map_err(|e| Error::Config(format!("cannot serialize the resolved config: {e}")))?;
    meta.push_str(&resolved);
    let meta_path = cli.out.join("scan_meta.toml");
    write_atomic(&meta_path, &meta)?;
    println!(
        "scan: {} x {} rows -> {} (+ {})",
        table.kind.name(),
        table.rows.len(),
        csv_path.display(),
        meta_path.display()
    );
    Ok(())
}

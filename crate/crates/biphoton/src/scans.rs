//! Parameter sweeps and ensemble averaging: photon-number power sweeps,
//! signal-idler delay sweeps, excitation spectra, pump-wavelength scans
//! across a final-state distribution, and attenuation sweeps.
//!
//! Every row carries the coherent and incoherent signal and their ratio;
//! stochastic sweeps average over a seed ensemble derived deterministically
//! from the master seed, so identical spec + seed means identical tables.

use crate::config::{RunConfig, ScanSection};
use crate::error::{Error, Result};
use crate::pump::{derived_seed, expected_intensity, synthesize_pump, PumpModel};
use crate::signals::{
    coherent_closed, coincidence_rates, effective_pulse, incoherent_closed,
    inhomogeneous_average, sfg_excitation_spectrum, ClosedInputs, EffectivePulse, Regime,
};

const LN2: f64 = std::f64::consts::LN_2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanKind {
    /// Mean photon number axis at zero delay.
    PowerSweep,
    /// Signal-idler delay axis.
    DelaySweep,
    /// Excitation-spectrum axis (absolute angular frequency).
    SfgSpectrum,
    /// Pump center frequency axis across the final-state distribution.
    PumpWavelengthScan,
    /// Intensity transmission axis, applied to both beams.
    AttenuationSweep,
}

impl ScanKind {
    pub fn axis_label(&self) -> &'static str {
        match self {
            ScanKind::PowerSweep => "photon_number",
            ScanKind::DelaySweep => "delay_s",
            ScanKind::SfgSpectrum => "frequency_rad_s",
            ScanKind::PumpWavelengthScan => "pump_frequency_rad_s",
            ScanKind::AttenuationSweep => "transmission",
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ScanKind::PowerSweep => "power-sweep",
            ScanKind::DelaySweep => "delay-sweep",
            ScanKind::SfgSpectrum => "sfg-spectrum",
            ScanKind::PumpWavelengthScan => "pump-wavelength-scan",
            ScanKind::AttenuationSweep => "attenuation-sweep",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxisScale {
    Linear,
    Log,
}

#[derive(Debug, Clone, Copy)]
pub struct ScanAxis {
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    pub scale: AxisScale,
}

impl ScanAxis {
    pub fn new(start: f64, stop: f64, points: usize, scale: AxisScale) -> Result<ScanAxis> {
        if points < 2 {
            return Err(Error::Config("scan axis needs at least 2 points".into()));
        }
        if !(start.is_finite() && stop.is_finite()) {
            return Err(Error::Config("scan axis bounds must be finite".into()));
        }
        if scale == AxisScale::Log && !(start > 0.0 && stop > 0.0) {
            return Err(Error::Config("log scan axis needs positive bounds".into()));
        }
        Ok(ScanAxis {
            start,
            stop,
            points,
            scale,
        })
    }

    pub fn values(&self) -> Vec<f64> {
        let m = (self.points - 1) as f64;
        (0..self.points)
            .map(|i| {
                let t = i as f64 / m;
                match self.scale {
                    AxisScale::Linear => self.start + (self.stop - self.start) * t,
                    AxisScale::Log => self.start * (self.stop / self.start).powf(t),
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct ScanSpec {
    pub kind: ScanKind,
    pub axis: ScanAxis,
    pub ensemble_size: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct ScanRow {
    pub axis: f64,
    pub coherent: f64,
    pub incoherent: f64,
    pub ratio: f64,
    pub stderr: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct ScanTable {
    pub kind: ScanKind,
    pub rows: Vec<ScanRow>,
    pub metadata: Vec<(String, String)>,
}

impl ScanTable {
    /// CSV body with full round-trip precision.
    pub fn to_csv_string(&self) -> String {
        let has_stderr = self.rows.iter().any(|r| r.stderr.is_some());
        let mut out = String::new();
        out.push_str(self.kind.axis_label());
        out.push_str(",coherent,incoherent,ratio");
        if has_stderr {
            out.push_str(",stderr");
        }
        out.push('\n');
        for row in &self.rows {
            out.push_str(&format!(
                "{:e},{:e},{:e},{:e}",
                row.axis, row.coherent, row.incoherent, row.ratio
            ));
            if has_stderr {
                out.push_str(&format!(",{:e}", row.stderr.unwrap_or(0.0)));
            }
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reducer {
    Mean,
    MeanAndStderr,
}

/// Parse a `[scan]` config section into a spec, resolving axis units by
/// the scan kind (dimensionless, time, or optical frequency).
pub fn scan_spec(section: &ScanSection, _config: &RunConfig) -> Result<ScanSpec> {
    let kind = match section.kind.as_str() {
        "power-sweep" => ScanKind::PowerSweep,
        "delay-sweep" => ScanKind::DelaySweep,
        "sfg-spectrum" => ScanKind::SfgSpectrum,
        "pump-wavelength-scan" => ScanKind::PumpWavelengthScan,
        "attenuation-sweep" => ScanKind::AttenuationSweep,
        other => return Err(Error::Config(format!("unknown scan kind '{other}'"))),
    };
    let scale = match section.scale.as_str() {
        "linear" => AxisScale::Linear,
        "log" => AxisScale::Log,
        other => return Err(Error::Config(format!("unknown scan scale '{other}'"))),
    };
    let bound = |s: &str| -> Result<f64> {
        use crate::units::Quantity;
        match kind {
            ScanKind::PowerSweep | ScanKind::AttenuationSweep => s
                .trim()
                .parse::<f64>()
                .or_else(|_| Quantity::parse(s).and_then(|q| q.as_rate()))
                .map_err(|_| Error::Config(format!("scan bound '{s}' must be a number"))),
            ScanKind::DelaySweep => Quantity::parse(s)?.as_time(),
            ScanKind::SfgSpectrum | ScanKind::PumpWavelengthScan => {
                Quantity::parse(s)?.as_optical_frequency()
            }
        }
    };
    let axis = ScanAxis::new(bound(&section.start)?, bound(&section.stop)?, section.points, scale)?;
    if kind == ScanKind::AttenuationSweep {
        let values = axis.values();
        if values.iter().any(|&t| !(0.0..=1.0).contains(&t)) {
            return Err(Error::Config(
                "attenuation sweep transmissions must lie in [0, 1]".into(),
            ));
        }
    }
    Ok(ScanSpec {
        kind,
        axis,
        ensemble_size: section.ensemble.max(1),
    })
}

/// Run a scan with ensemble-mean reduction.
pub fn run_scan(spec: &ScanSpec, config: &RunConfig) -> Result<ScanTable> {
    ensemble_average(spec, config, Reducer::Mean)
}

/// Run a scan, reducing the seed ensemble to per-row means (and standard
/// errors of the summed signal when requested).
pub fn ensemble_average(
    spec: &ScanSpec,
    config: &RunConfig,
    reducer: Reducer,
) -> Result<ScanTable> {
    let reps = spec.ensemble_size;
    if reps == 0 {
        return Err(Error::Config("ensemble size must be at least 1".into()));
    }
    if reducer == Reducer::MeanAndStderr && reps < 2 {
        return Err(Error::Config(
            "standard errors need an ensemble of at least 2".into(),
        ));
    }
    let axis = spec.axis.values();
    let points = axis.len();
    let mut sum_c = vec![0.0f64; points];
    let mut sum_ic = vec![0.0f64; points];
    let mut sum_total_sq = vec![0.0f64; points];
    for r in 0..reps {
        let (coherent, incoherent) = scan_once(spec, config, &axis, r as u64)?;
        for i in 0..points {
            sum_c[i] += coherent[i];
            sum_ic[i] += incoherent[i];
            let total = coherent[i] + incoherent[i];
            sum_total_sq[i] += total * total;
        }
    }
    let n = reps as f64;
    let rows: Vec<ScanRow> = (0..points)
        .map(|i| {
            let coherent = sum_c[i] / n;
            let incoherent = sum_ic[i] / n;
            let stderr = if reducer == Reducer::MeanAndStderr {
                let mean_total = coherent + incoherent;
                let var = ((sum_total_sq[i] - n * mean_total * mean_total) / (n - 1.0)).max(0.0);
                Some((var / n).sqrt())
            } else {
                None
            };
            ScanRow {
                axis: axis[i],
                coherent,
                incoherent,
                ratio: if incoherent != 0.0 {
                    coherent / incoherent
                } else {
                    f64::NAN
                },
                stderr,
            }
        })
        .collect();
    let mut metadata = vec![
        ("scan".into(), spec.kind.name().into()),
        ("ensemble".into(), reps.to_string()),
        ("seed".into(), config.seed.to_string()),
    ];
    if let Ok(regime) = config.resolve_regime() {
        metadata.push(("regime".into(), regime.to_string()));
    }
    Ok(ScanTable {
        kind: spec.kind,
        rows,
        metadata,
    })
}

/// Pump intensity correlation at zero delay, by pump statistics: 2 for a
/// chaotic pump, 1 otherwise.
fn g2_zero(model: &PumpModel) -> f64 {
    match model {
        PumpModel::StochasticQuasiCw { .. } => 2.0,
        _ => 1.0,
    }
}

fn zero_phase_pulse(config: &RunConfig, n: f64) -> Result<EffectivePulse> {
    let grid = config.dc_grid()?;
    let dc = config.dc_with_photon_number(grid, n)?;
    let zeros = vec![0.0; grid.count()];
    effective_pulse(&dc, &zeros, &zeros)
}

fn photon_number(config: &RunConfig) -> f64 {
    config.downconversion.mean_photon_number.unwrap_or(1.0)
}

/// One realization of the scan: (coherent, incoherent) per axis point.
fn scan_once(
    spec: &ScanSpec,
    config: &RunConfig,
    axis: &[f64],
    realization: u64,
) -> Result<(Vec<f64>, Vec<f64>)> {
    match spec.kind {
        ScanKind::PowerSweep => power_sweep(config, axis),
        ScanKind::AttenuationSweep => attenuation_sweep(config, axis),
        ScanKind::DelaySweep => delay_sweep(config, axis, realization),
        ScanKind::SfgSpectrum => excitation_rows(config, axis, realization),
        ScanKind::PumpWavelengthScan => pump_frequency_rows(config, axis),
    }
}

/// Closed-form signals at zero delay for one set of inputs.
fn point_signals(
    config: &RunConfig,
    inputs: &ClosedInputs,
    pe: &EffectivePulse,
    g2: f64,
) -> Result<(f64, f64)> {
    let regime = config.resolve_regime()?;
    if regime == Regime::Coincidence {
        let trace = coincidence_rates(inputs, pe, &[g2], &[0.0])?;
        return Ok((trace.coherent[0], trace.incoherent[0]));
    }
    let coherent = coherent_closed(regime, inputs, pe, &[0.0])?.coherent[0];
    let incoherent = incoherent_closed(regime, inputs, &[g2], &[0.0])?.incoherent[0];
    Ok((coherent, incoherent))
}

fn power_sweep(config: &RunConfig, axis: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
    let g2 = g2_zero(&config.pump_model()?);
    let pe = zero_phase_pulse(config, photon_number(config))?;
    let mut coherent = Vec::with_capacity(axis.len());
    let mut incoherent = Vec::with_capacity(axis.len());
    for &n in axis {
        if !(n > 0.0) {
            return Err(Error::Parameter(format!(
                "power sweep photon number {n} must be positive"
            )));
        }
        let inputs = config.closed_inputs(n)?;
        let (c, ic) = point_signals(config, &inputs, &pe, g2)?;
        coherent.push(c);
        incoherent.push(ic);
    }
    Ok((coherent, incoherent))
}

fn attenuation_sweep(config: &RunConfig, axis: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
    let g2 = g2_zero(&config.pump_model()?);
    let n = photon_number(config);
    let pe = zero_phase_pulse(config, n)?;
    let base = config.closed_inputs(n)?;
    let mut coherent = Vec::with_capacity(axis.len());
    let mut incoherent = Vec::with_capacity(axis.len());
    for &t in axis {
        // Intensity transmission t on each beam: the pair amplitude carries
        // one factor of amplitude transmission per photon, so both signals
        // scale by t^2.
        let mut inputs = base.clone();
        inputs.f_avg_sq *= t * t;
        if t == 0.0 {
            coherent.push(0.0);
            incoherent.push(0.0);
            continue;
        }
        let (c, ic) = point_signals(config, &inputs, &pe, g2)?;
        coherent.push(c);
        incoherent.push(ic);
    }
    Ok((coherent, incoherent))
}

fn delay_sweep(
    config: &RunConfig,
    axis: &[f64],
    realization: u64,
) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = photon_number(config);
    let pe = zero_phase_pulse(config, n)?;
    let inputs = config.closed_inputs(n)?;
    let model = config.pump_model()?;
    let g2 = match model {
        PumpModel::StochasticQuasiCw { seed, .. } => {
            let grid = config.pump_grid()?;
            let real = synthesize_pump(&model.with_seed(derived_seed(seed, realization)), grid)?;
            single_realization_g2(
                &real.temporal.intensity(),
                &expected_intensity(&model, grid),
                &real.support,
                grid.time_step(),
                axis,
            )?
        }
        _ => vec![1.0; axis.len()],
    };
    let regime = config.resolve_regime()?;
    if regime == Regime::Coincidence {
        let trace = coincidence_rates(&inputs, &pe, &g2, axis)?;
        return Ok((trace.coherent, trace.incoherent));
    }
    let coherent = coherent_closed(regime, &inputs, &pe, axis)?.coherent;
    let incoherent = incoherent_closed(regime, &inputs, &g2, axis)?.incoherent;
    Ok((coherent, incoherent))
}

/// Intensity correlation of a single realization, normalized by the
/// deterministic expected profile so the estimator is unbiased for the
/// ensemble g2 and keeps its seed-to-seed spread.
fn single_realization_g2(
    intensity: &[f64],
    expected: &[f64],
    support: &[bool],
    dt: f64,
    delays: &[f64],
) -> Result<Vec<f64>> {
    let n = intensity.len() as isize;
    delays
        .iter()
        .map(|&tau| {
            let shift = (tau / dt).round();
            if shift.abs() >= n as f64 {
                return Err(Error::Parameter(format!(
                    "delay {tau:.3e} s exceeds the pump grid window"
                )));
            }
            let shift = shift as isize;
            let mut num = 0.0;
            let mut den = 0.0;
            for j in 0..n {
                let k = j + shift;
                if k < 0 || k >= n {
                    continue;
                }
                let (j, k) = (j as usize, k as usize);
                if support[j] && support[k] {
                    num += intensity[k] * intensity[j];
                    den += expected[k] * expected[j];
                }
            }
            if den > 0.0 {
                Ok(num / den)
            } else {
                Err(Error::Numeric("empty correlation window".into()))
            }
        })
        .collect()
}

fn excitation_rows(
    config: &RunConfig,
    axis: &[f64],
    realization: u64,
) -> Result<(Vec<f64>, Vec<f64>)> {
    let pump_grid = config.pump_grid()?;
    let dc_grid = config.dc_grid()?;
    let model = config.pump_model()?;
    let pump = synthesize_pump(
        &model.with_seed(derived_seed(config.seed, realization)),
        pump_grid,
    )?;
    let response = config.kernel_on(pump_grid)?;
    let pair = config.pair_kernel(dc_grid)?;
    let dc = config.dc(dc_grid)?;
    let trace = sfg_excitation_spectrum(&pump, &dc, &response, &pair, 1.0)?;
    let sample = |target: &[f64], omega: f64| -> f64 {
        let lo = pump_grid.frequency(0);
        let pos = (omega - lo) / pump_grid.spacing();
        if pos <= 0.0 {
            return target[0];
        }
        let k = pos.floor() as usize;
        if k + 1 >= target.len() {
            return target[target.len() - 1];
        }
        let frac = pos - k as f64;
        target[k] * (1.0 - frac) + target[k + 1] * frac
    };
    let coherent = axis.iter().map(|&w| sample(&trace.coherent, w)).collect();
    let incoherent = axis.iter().map(|&w| sample(&trace.incoherent, w)).collect();
    Ok((coherent, incoherent))
}

fn pump_frequency_rows(config: &RunConfig, axis: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = photon_number(config);
    let pe = zero_phase_pulse(config, n)?;
    let base = config.closed_inputs(n)?;
    let model = config.pump_model()?;
    let g2 = g2_zero(&model);
    let regime = config.resolve_regime()?;
    let nodes = config.final_state_nodes()?;
    let kind = config.kernel.kind.clone();
    // Resonance line versus pump-to-state detuning: in the narrow-pump
    // regime the response |g|^2 sets it; with a broad pump the pump's own
    // spectral line does.
    let line = |xi: f64| -> f64 {
        match regime {
            Regime::BroadPump => {
                let dp = base.delta_p;
                (-4.0 * LN2 * xi * xi / (dp * dp)).exp()
            }
            _ => match kind.as_str() {
                "tpa" => {
                    let gamma = base.gamma;
                    gamma * gamma / (xi * xi + gamma * gamma)
                }
                _ => {
                    // sinc^2 with intensity FWHM equal to the response
                    // bandwidth.
                    let x = 2.0 * 1.391_557_378_251_51 * xi / base.gamma;
                    if x.abs() < 1e-12 {
                        1.0
                    } else {
                        let s = x.sin() / x;
                        s * s
                    }
                }
            },
        }
    };
    let mut coherent = Vec::with_capacity(axis.len());
    let mut incoherent = Vec::with_capacity(axis.len());
    for &pump_center in axis {
        let trace = inhomogeneous_average(
            |omega0| {
                let factor = line(pump_center - omega0);
                let mut inputs = base.clone();
                let (mut c, ic) = if regime == Regime::NarrowPump {
                    inputs.g_at_pump_sq = factor.max(1e-300);
                    point_signals(config, &inputs, &pe, g2)?
                } else {
                    let (c, ic) = point_signals(config, &inputs, &pe, g2)?;
                    (c * factor, ic)
                };
                if regime == Regime::NarrowPump {
                    // Undo the floor used to keep the inputs positive.
                    if factor == 0.0 {
                        c = 0.0;
                    }
                }
                let mut t = crate::signals::SignalTrace::new(
                    crate::signals::AxisKind::Frequency,
                    vec![pump_center],
                    vec![c],
                    vec![ic],
                    regime,
                )?;
                t.metadata.push(("state_rad_s".into(), format!("{omega0:e}")));
                Ok(t)
            },
            &nodes,
        )?;
        coherent.push(trace.coherent[0]);
        incoherent.push(trace.incoherent[0]);
    }
    Ok((coherent, incoherent))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::RunConfig;
    use crate::units::bandwidth_to_angular;
    use approx::assert_relative_eq;

    fn sfg_cw_config() -> RunConfig {
        RunConfig::from_toml(
            r#"
            seed = 3
            [grid]
            center = "1033 nm"
            span = "240 nm"
            points = 2048
            [pump]
            model = "cw"
            center = "516.5 nm"
            mean_flux = "1e18 1/s"
            [downconversion]
            shape = "flat"
            center = "1033 nm"
            bandwidth = "80 nm"
            mean_photon_number = 0.2
            [kernel]
            kind = "sfg"
            center = "516.5 nm"
            bandwidth = "0.3 nm"
            [scan]
            kind = "power-sweep"
            start = "1e-3"
            stop = "1e2"
            points = 21
            scale = "log"
            "#,
        )
        .unwrap()
    }

    fn stochastic_tpa_config() -> RunConfig {
        RunConfig::from_toml(
            r#"
            seed = 11
            [grid]
            center = "1033 nm"
            span = "240 nm"
            points = 1024
            [pump]
            model = "stochastic"
            center = "516.5 nm"
            mean_flux = "1e18 1/s"
            duration = "3 ns"
            bandwidth = "0.01 nm"
            [pump_grid]
            span = "0.08 nm"
            points = 1024
            [downconversion]
            shape = "flat"
            center = "1033 nm"
            bandwidth = "80 nm"
            mean_photon_number = 0.1
            [kernel]
            kind = "tpa"
            center = "516.5 nm"
            lifetime = "30 ns"
            [scan]
            kind = "delay-sweep"
            start = "-200 ps"
            stop = "200 ps"
            points = 21
            ensemble = 8
            "#,
        )
        .unwrap()
    }

    #[test]
    fn power_sweep_follows_the_photon_number_law() {
        let config = sfg_cw_config();
        let spec = scan_spec(config.scan.as_ref().unwrap(), &config).unwrap();
        let table = run_scan(&spec, &config).unwrap();
        let at = |n: f64| -> &ScanRow {
            table
                .rows
                .iter()
                .min_by(|a, b| {
                    (a.axis - n).abs().partial_cmp(&(b.axis - n).abs()).unwrap()
                })
                .unwrap()
        };
        let reference = at(1.0);
        assert_relative_eq!(reference.axis, 1.0, max_relative = 1e-12);
        for row in &table.rows {
            let n = row.axis;
            assert_relative_eq!(
                row.coherent / reference.coherent,
                (n * n + n) / 2.0,
                max_relative = 1e-12
            );
            assert_relative_eq!(
                row.incoherent / reference.incoherent,
                n * n,
                max_relative = 1e-12
            );
        }
    }

    #[test]
    fn attenuation_scales_both_signals_quadratically() {
        let mut config = sfg_cw_config();
        config.scan = Some(crate::config::ScanSection {
            kind: "attenuation-sweep".into(),
            start: "0".into(),
            stop: "1".into(),
            points: 11,
            scale: "linear".into(),
            ensemble: 1,
        });
        let spec = scan_spec(config.scan.as_ref().unwrap(), &config).unwrap();
        let table = run_scan(&spec, &config).unwrap();
        let full = table.rows.last().unwrap();
        assert_relative_eq!(full.axis, 1.0, max_relative = 1e-12);
        for row in &table.rows {
            let t = row.axis;
            assert_relative_eq!(
                row.coherent,
                full.coherent * t * t,
                max_relative = 1e-9,
                epsilon = full.coherent * 1e-15
            );
            assert_relative_eq!(
                row.incoherent,
                full.incoherent * t * t,
                max_relative = 1e-9,
                epsilon = full.incoherent * 1e-15
            );
        }
    }

    #[test]
    fn identical_seed_gives_identical_tables() {
        let config = stochastic_tpa_config();
        let spec = scan_spec(config.scan.as_ref().unwrap(), &config).unwrap();
        let a = run_scan(&spec, &config).unwrap();
        let b = run_scan(&spec, &config).unwrap();
        assert_eq!(a.to_csv_string(), b.to_csv_string());
    }

    #[test]
    fn single_realization_mean_is_that_realization() {
        let mut config = stochastic_tpa_config();
        config.scan.as_mut().unwrap().ensemble = 1;
        let spec = scan_spec(config.scan.as_ref().unwrap(), &config).unwrap();
        let mean = run_scan(&spec, &config).unwrap();
        let axis = spec.axis.values();
        let (coherent, incoherent) = scan_once(&spec, &config, &axis, 0).unwrap();
        for (i, row) in mean.rows.iter().enumerate() {
            assert_eq!(row.coherent, coherent[i]);
            assert_eq!(row.incoherent, incoherent[i]);
        }
    }

    #[test]
    fn coherent_delay_trace_shape_is_seed_independent() {
        let config = stochastic_tpa_config();
        let spec = scan_spec(config.scan.as_ref().unwrap(), &config).unwrap();
        let axis = spec.axis.values();
        let (c0, _) = scan_once(&spec, &config, &axis, 0).unwrap();
        let (c9, _) = scan_once(&spec, &config, &axis, 9).unwrap();
        let p0 = c0.iter().cloned().fold(0.0, f64::max);
        let p9 = c9.iter().cloned().fold(0.0, f64::max);
        for (a, b) in c0.iter().zip(&c9) {
            assert!((a / p0 - b / p9).abs() < 1e-6);
        }
    }

    #[test]
    fn standard_error_shrinks_with_the_ensemble() {
        let mut config = stochastic_tpa_config();
        let mut spec = scan_spec(config.scan.as_ref().unwrap(), &config).unwrap();
        // Keep it cheap: a couple of delays inside the bunching peak.
        spec.axis = ScanAxis::new(-20e-12, 20e-12, 3, AxisScale::Linear).unwrap();
        let stderr_at = |reps: usize, config: &RunConfig, spec: &ScanSpec| -> f64 {
            let mut spec = spec.clone();
            spec.ensemble_size = reps;
            let table = ensemble_average(&spec, config, Reducer::MeanAndStderr).unwrap();
            table.rows[1].stderr.unwrap()
        };
        config.seed = 21;
        let e100 = stderr_at(100, &config, &spec);
        let e400 = stderr_at(400, &config, &spec);
        let shrink = e100 / e400;
        assert!(
            (shrink - 2.0).abs() < 0.4,
            "stderr ratio over 4x the ensemble was {shrink}, expected about 2"
        );
    }

    #[test]
    fn doublet_scan_shows_two_peaks_and_a_flat_incoherent_trace() {
        let config = RunConfig::from_toml(
            r#"
            seed = 5
            [grid]
            center = "1033 nm"
            span = "240 nm"
            points = 1024
            [pump]
            model = "stochastic"
            center = "516.5 nm"
            mean_flux = "1e18 1/s"
            duration = "3 ns"
            bandwidth = "0.01 nm"
            [downconversion]
            shape = "flat"
            center = "1033 nm"
            bandwidth = "80 nm"
            mean_photon_number = 0.1
            [kernel]
            kind = "tpa"
            center = "516.5 nm"
            lifetime = "30 ns"
            [[final_states]]
            detuning = "0 Hz"
            weight = 0.6
            [[final_states]]
            detuning = "13.4 GHz"
            weight = 0.4
            [scan]
            kind = "pump-wavelength-scan"
            start = "516.47 nm"
            stop = "516.53 nm"
            points = 481
            "#,
        )
        .unwrap();
        let spec = scan_spec(config.scan.as_ref().unwrap(), &config).unwrap();
        let table = run_scan(&spec, &config).unwrap();
        let coherent: Vec<f64> = table.rows.iter().map(|r| r.coherent).collect();
        let maxima: Vec<usize> = (1..coherent.len() - 1)
            .filter(|&i| coherent[i] > coherent[i - 1] && coherent[i] >= coherent[i + 1])
            .collect();
        assert_eq!(maxima.len(), 2, "expected a resolved doublet");
        let incoherent: Vec<f64> = table.rows.iter().map(|r| r.incoherent).collect();
        let (lo, hi) = incoherent
            .iter()
            .fold((f64::INFINITY, 0.0f64), |(lo, hi), &v| (lo.min(v), hi.max(v)));
        assert!(hi / lo - 1.0 < 1e-9, "incoherent trace should be flat");
        // The pump line of width delta_p pulls the two maxima together a
        // little; check they stay near the physical splitting.
        let separation =
            (table.rows[maxima[1]].axis - table.rows[maxima[0]].axis).abs();
        let split = 2.0 * std::f64::consts::PI * 13.4e9;
        let dp = bandwidth_to_angular(0.01e-9, 516.5e-9);
        assert!(separation < split && separation > split - dp / 2.0);
    }

    #[test]
    fn log_axis_rejects_nonpositive_bounds() {
        assert!(ScanAxis::new(-1.0, 1.0, 5, AxisScale::Log).is_err());
        assert!(ScanAxis::new(1.0, 2.0, 1, AxisScale::Linear).is_err());
    }
}

//! Declarative run configuration: a sectioned TOML file with explicit unit
//! suffixes on every physical quantity, plus builders that turn the parsed
//! sections into engine objects (grids, pump models, spectra, kernels,
//! closed-form inputs).
//!
//! All wavelengths, times and bandwidths are strings like "516.5 nm",
//! "3 ns" or "0.3 nm"; a number without a unit suffix is a parse error.

use serde::{Deserialize, Serialize};

use crate::crystal::{dc_spectrum, Beta, CouplingModel, DcSpectrum, DispersionModel};
use crate::error::{Error, Result};
use crate::grid::{make_grid, FrequencyGrid};
use crate::kernels::{
    apply_filter, coincidence_kernel, sfg_kernel, tpa_kernel, uc_dispersion_for_bandwidth,
    InteractionKernel, PhaseFilter,
};
use crate::pump::PumpModel;
use crate::signals::ClosedInputs;
use crate::signals::Regime;
use crate::units::{angular_to_wavelength, Quantity};

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// Master seed for every stochastic ensemble in the run.
    #[serde(default)]
    pub seed: u64,
    pub grid: GridSection,
    /// Grid for pump-side synthesis (g2, general path, excitation spectra).
    /// Centered on the pump line; optional when no pump-side grid is needed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pump_grid: Option<PumpGridSection>,
    pub pump: PumpSection,
    pub downconversion: DcSection,
    pub kernel: KernelSection,
    #[serde(default)]
    pub filters: FilterSection,
    #[serde(default)]
    pub signal: SignalSection,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scan: Option<ScanSection>,
    /// Final-state distribution for inhomogeneously broadened targets;
    /// detunings are relative to the kernel center, weights must sum to 1.
    #[serde(default)]
    pub final_states: Vec<FinalStateEntry>,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct GridSection {
    /// Center of the down-converted band, e.g. "1033 nm".
    pub center: String,
    /// Full span of the frequency grid, e.g. "240 nm".
    pub span: String,
    /// Number of bins; must be a power of two.
    pub points: usize,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct PumpGridSection {
    pub span: String,
    pub points: usize,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct PumpSection {
    /// "cw", "pulse" or "stochastic".
    pub model: String,
    /// Pump center, e.g. "516.5 nm".
    pub center: String,
    /// Mean photon flux, e.g. "1e18 1/s" (cw, stochastic).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mean_flux: Option<String>,
    /// Peak photon flux (pulse).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub peak_flux: Option<String>,
    /// Intensity-FWHM pulse duration, e.g. "3 ns" (pulse, stochastic).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub duration: Option<String>,
    /// Intensity-FWHM spectral width, e.g. "0.01 nm" (stochastic).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bandwidth: Option<String>,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct DcSection {
    /// "flat", "gaussian" or "crystal".
    pub shape: String,
    /// Band center, e.g. "1033 nm"; must match the grid center.
    pub center: String,
    /// Band width (intensity FWHM for "gaussian", full width for "flat"),
    /// e.g. "80 nm"; for "crystal" this is the averaging band for the mean
    /// photon number.
    pub bandwidth: String,
    /// Mean photon number per mode (flat, gaussian).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mean_photon_number: Option<f64>,
    /// Crystal parameters (shape = "crystal").
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gv_difference: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gvd_difference: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub crystal_length: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coupling: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pump_flux: Option<String>,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct KernelSection {
    /// "sfg", "tpa" or "coincidence".
    pub kind: String,
    /// Two-photon resonance (sum frequency), e.g. "516.5 nm".
    pub center: String,
    /// Phase-matching bandwidth (sfg) or detection bandwidth (coincidence),
    /// e.g. "0.3 nm".
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bandwidth: Option<String>,
    /// Final-state linewidth as an angular rate, e.g. "5 MHz" (tpa).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub linewidth: Option<String>,
    /// Final-state lifetime, e.g. "30 ns"; alternative to `linewidth`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lifetime: Option<String>,
    /// Up-conversion crystal length (sfg), e.g. "1 mm".
    #[serde(skip_serializing_if = "Option::is_none")]
    pub crystal_length: Option<String>,
    /// Coincidence gating time, e.g. "1 ns".
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gate: Option<String>,
}

#[derive(Debug, Clone, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct FilterSection {
    /// Two-column CSV paths (rad/s, value); all optional.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub signal_phase: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub idler_phase: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub signal_transmission: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub idler_transmission: Option<String>,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct SignalSection {
    /// Closed-form regime: "auto", "narrow-pump" or "broad-pump".
    #[serde(default = "default_regime")]
    pub regime: String,
    /// Both photons taken from a single beam (doubles the incoherent term).
    #[serde(default)]
    pub self_mixing: bool,
    /// Delay axis for the `signal` subcommand.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delay_start: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delay_stop: Option<String>,
    #[serde(default = "default_delay_points")]
    pub delay_points: usize,
}

fn default_regime() -> String {
    "auto".into()
}

fn default_delay_points() -> usize {
    201
}

impl Default for SignalSection {
    fn default() -> Self {
        SignalSection {
            regime: default_regime(),
            self_mixing: false,
            delay_start: None,
            delay_stop: None,
            delay_points: default_delay_points(),
        }
    }
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ScanSection {
    /// "power-sweep", "delay-sweep", "sfg-spectrum", "pump-wavelength-scan"
    /// or "attenuation-sweep".
    pub kind: String,
    /// Axis bounds; units depend on the kind (dimensionless "1", times,
    /// wavelengths).
    pub start: String,
    pub stop: String,
    pub points: usize,
    #[serde(default = "default_scale")]
    pub scale: String,
    #[serde(default = "default_ensemble")]
    pub ensemble: usize,
}

fn default_scale() -> String {
    "linear".into()
}

fn default_ensemble() -> usize {
    1
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct FinalStateEntry {
    /// Offset from the kernel center, e.g. "13.4 GHz".
    pub detuning: String,
    pub weight: f64,
}

impl RunConfig {
    /// Parse a TOML document; syntax errors carry line/column context.
    pub fn from_toml(text: &str) -> Result<RunConfig> {
        toml::from_str(text).map_err(|e| Error::Config(format!("config parse error: {e}")))
    }

    pub fn from_path(path: &std::path::Path) -> Result<RunConfig> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            Error::Config(format!("cannot read config {}: {e}", path.display()))
        })?;
        RunConfig::from_toml(&text)
    }

    /// Check every section builds, without running anything.
    pub fn validate(&self) -> Result<Vec<String>> {
        let grid = self.dc_grid()?;
        self.dc(grid)?;
        self.pair_kernel(grid)?;
        let model = self.pump_model()?;
        let mut warnings = model.validate()?;
        if let Some(pg) = &self.pump_grid {
            let pgrid = self.pump_grid_built(pg)?;
            if matches!(model, PumpModel::StochasticQuasiCw { bandwidth, .. }
                if pgrid.span() < 6.0 * bandwidth)
            {
                warnings.push("pump grid span is below 6x the pump bandwidth".into());
            }
        }
        if let Some(scan) = &self.scan {
            crate::scans::scan_spec(scan, self)?;
        }
        if !self.final_states.is_empty() {
            let total: f64 = self.final_states.iter().map(|f| f.weight).sum();
            if (total - 1.0).abs() > 1e-6 {
                return Err(Error::Config(format!(
                    "final-state weights sum to {total}, expected 1"
                )));
            }
        }
        Ok(warnings)
    }

    /// Grid over the down-converted band.
    pub fn dc_grid(&self) -> Result<FrequencyGrid> {
        let center = Quantity::parse(&self.grid.center)?.as_optical_frequency()?;
        let lambda = angular_to_wavelength(center);
        let span = Quantity::parse(&self.grid.span)?.as_bandwidth(lambda)?;
        make_grid(center, span, self.grid.points)
    }

    /// Grid over the pump line, when a `[pump_grid]` section is present.
    pub fn pump_grid(&self) -> Result<FrequencyGrid> {
        let section = self.pump_grid.as_ref().ok_or_else(|| {
            Error::Config("this operation needs a [pump_grid] section".into())
        })?;
        self.pump_grid_built(section)
    }

    fn pump_grid_built(&self, section: &PumpGridSection) -> Result<FrequencyGrid> {
        let center = Quantity::parse(&self.pump.center)?.as_optical_frequency()?;
        let lambda = angular_to_wavelength(center);
        let span = Quantity::parse(&section.span)?.as_bandwidth(lambda)?;
        make_grid(center, span, section.points)
    }

    pub fn pump_model(&self) -> Result<PumpModel> {
        let center = Quantity::parse(&self.pump.center)?.as_optical_frequency()?;
        let lambda = angular_to_wavelength(center);
        let flux = |field: &Option<String>, name: &str| -> Result<f64> {
            field
                .as_deref()
                .ok_or_else(|| Error::Config(format!("pump.{name} is required")))
                .and_then(Quantity::parse)?
                .as_rate()
        };
        let time = |field: &Option<String>, name: &str| -> Result<f64> {
            field
                .as_deref()
                .ok_or_else(|| Error::Config(format!("pump.{name} is required")))
                .and_then(Quantity::parse)?
                .as_time()
        };
        let model = match self.pump.model.as_str() {
            "cw" => PumpModel::Cw {
                mean_flux: flux(&self.pump.mean_flux, "mean_flux")?,
            },
            "pulse" => PumpModel::TransformLimitedPulse {
                duration: time(&self.pump.duration, "duration")?,
                peak_flux: flux(&self.pump.peak_flux, "peak_flux")?,
                center,
            },
            "stochastic" => PumpModel::StochasticQuasiCw {
                envelope_duration: time(&self.pump.duration, "duration")?,
                bandwidth: self
                    .pump
                    .bandwidth
                    .as_deref()
                    .ok_or_else(|| Error::Config("pump.bandwidth is required".into()))
                    .and_then(Quantity::parse)?
                    .as_bandwidth(lambda)?,
                mean_flux: flux(&self.pump.mean_flux, "mean_flux")?,
                center,
                seed: self.seed,
            },
            other => {
                return Err(Error::Config(format!(
                    "unknown pump model '{other}' (expected cw, pulse or stochastic)"
                )))
            }
        };
        model.validate()?;
        Ok(model)
    }

    /// Pump spectral width in rad/s; 0 for an ideal CW pump.
    pub fn pump_bandwidth(&self) -> Result<f64> {
        Ok(self.pump_model()?.bandwidth())
    }

    /// Down-converted band width in rad/s.
    pub fn dc_bandwidth(&self) -> Result<f64> {
        let center = Quantity::parse(&self.downconversion.center)?.as_optical_frequency()?;
        Quantity::parse(&self.downconversion.bandwidth)?
            .as_bandwidth(angular_to_wavelength(center))
    }

    /// Down-converted spectrum on `grid`, at the configured photon number.
    pub fn dc(&self, grid: FrequencyGrid) -> Result<DcSpectrum> {
        let n = self.downconversion.mean_photon_number.unwrap_or(1.0);
        self.dc_with_photon_number(grid, n)
    }

    /// Down-converted spectrum with the band scaled to mean photon number `n`
    /// (used by power sweeps; ignored for the "crystal" shape).
    pub fn dc_with_photon_number(&self, grid: FrequencyGrid, n: f64) -> Result<DcSpectrum> {
        let bandwidth = self.dc_bandwidth()?;
        match self.downconversion.shape.as_str() {
            "flat" => DcSpectrum::flat_band(grid, n, bandwidth),
            "gaussian" => DcSpectrum::gaussian_band(grid, n, bandwidth),
            "crystal" => {
                let missing = |name: &str| {
                    Error::Config(format!("downconversion.{name} is required for shape = \"crystal\""))
                };
                let length = Quantity::parse(
                    self.downconversion
                        .crystal_length
                        .as_deref()
                        .ok_or_else(|| missing("crystal_length"))?,
                )?;
                let length = match length {
                    Quantity::Length(l) => l,
                    _ => return Err(Error::Config("crystal_length must be a length".into())),
                };
                let dispersion = DispersionModel {
                    gv_difference: self
                        .downconversion
                        .gv_difference
                        .ok_or_else(|| missing("gv_difference"))?,
                    gvd_difference: self.downconversion.gvd_difference.unwrap_or(0.0),
                    degenerate_frequency: grid.center(),
                    crystal_length: length,
                    tabulated: None,
                };
                let coupling = CouplingModel {
                    beta: Beta::Constant(self.downconversion.coupling.ok_or_else(|| missing("coupling"))?),
                    pump_flux: Quantity::parse(
                        self.downconversion
                            .pump_flux
                            .as_deref()
                            .ok_or_else(|| missing("pump_flux"))?,
                    )?
                    .as_rate()?,
                };
                dc_spectrum(&coupling, &dispersion, grid, true)
            }
            other => Err(Error::Config(format!(
                "unknown down-conversion shape '{other}'"
            ))),
        }
    }

    /// Two-photon resonance frequency (rad/s).
    pub fn kernel_center(&self) -> Result<f64> {
        Quantity::parse(&self.kernel.center)?.as_optical_frequency()
    }

    /// Response bandwidth gamma (rad/s): phase-matching width for sfg, the
    /// final-state linewidth for tpa, twice the detection bandwidth for
    /// coincidence.
    pub fn kernel_gamma(&self) -> Result<f64> {
        let center = self.kernel_center()?;
        let lambda = angular_to_wavelength(center);
        let bandwidth = || -> Result<f64> {
            Quantity::parse(
                self.kernel
                    .bandwidth
                    .as_deref()
                    .ok_or_else(|| Error::Config("kernel.bandwidth is required".into()))?,
            )?
            .as_bandwidth(lambda)
        };
        match self.kernel.kind.as_str() {
            "sfg" => bandwidth(),
            "coincidence" => Ok(2.0 * bandwidth()?),
            "tpa" => self.final_state_linewidth(),
            other => Err(Error::Config(format!("unknown kernel kind '{other}'"))),
        }
    }

    /// Final-state linewidth gamma_f (rad/s) from `linewidth` or `lifetime`.
    pub fn final_state_linewidth(&self) -> Result<f64> {
        match (&self.kernel.linewidth, &self.kernel.lifetime) {
            (Some(_), Some(_)) => Err(Error::Config(
                "give kernel.linewidth or kernel.lifetime, not both".into(),
            )),
            (Some(l), None) => match Quantity::parse(l)? {
                Quantity::AngularFrequency(w) if w > 0.0 => Ok(w),
                q => Err(Error::Config(format!(
                    "kernel.linewidth must be a positive angular rate, got {q:?}"
                ))),
            },
            (None, Some(t)) => {
                let t = Quantity::parse(t)?.as_time()?;
                if t > 0.0 {
                    Ok(1.0 / t)
                } else {
                    Err(Error::Config("kernel.lifetime must be positive".into()))
                }
            }
            (None, None) => Err(Error::Config(
                "tpa kernel needs kernel.linewidth or kernel.lifetime".into(),
            )),
        }
    }

    fn kernel_crystal_length(&self) -> Result<f64> {
        match self.kernel.crystal_length.as_deref() {
            None => Ok(1e-3),
            Some(s) => match Quantity::parse(s)? {
                Quantity::Length(l) if l > 0.0 => Ok(l),
                q => Err(Error::Config(format!(
                    "kernel.crystal_length must be a positive length, got {q:?}"
                ))),
            },
        }
    }

    /// Interaction kernel on `grid` (pair side: dc grid; response side: pump
    /// grid), with any configured filters already applied.
    pub fn kernel_on(&self, grid: FrequencyGrid) -> Result<InteractionKernel> {
        let omega0 = self.kernel_center()?;
        let kernel = match self.kernel.kind.as_str() {
            "sfg" => {
                let gamma = self.kernel_gamma()?;
                let length = self.kernel_crystal_length()?;
                let uc = uc_dispersion_for_bandwidth(gamma, omega0, length)?;
                let coupling = CouplingModel {
                    beta: Beta::Constant(1.0),
                    pump_flux: 1.0,
                };
                sfg_kernel(&uc, None, &coupling, omega0, grid)?
            }
            "tpa" => tpa_kernel(self.final_state_linewidth()?, omega0, &[], grid)?,
            "coincidence" => {
                let lambda = angular_to_wavelength(omega0);
                let delta = Quantity::parse(
                    self.kernel
                        .bandwidth
                        .as_deref()
                        .ok_or_else(|| Error::Config("kernel.bandwidth is required".into()))?,
                )?
                .as_bandwidth(lambda)?;
                coincidence_kernel(delta, omega0, grid)?
            }
            other => return Err(Error::Config(format!("unknown kernel kind '{other}'"))),
        };
        self.filtered(kernel, grid)
    }

    /// Pair kernel on the down-conversion grid.
    pub fn pair_kernel(&self, grid: FrequencyGrid) -> Result<InteractionKernel> {
        self.kernel_on(grid)
    }

    fn filtered(&self, kernel: InteractionKernel, grid: FrequencyGrid) -> Result<InteractionKernel> {
        let f = &self.filters;
        if f.signal_phase.is_none()
            && f.idler_phase.is_none()
            && f.signal_transmission.is_none()
            && f.idler_transmission.is_none()
        {
            return Ok(kernel);
        }
        let read = |p: &Option<String>| -> Result<Option<String>> {
            match p {
                None => Ok(None),
                Some(path) => std::fs::read_to_string(path)
                    .map(Some)
                    .map_err(|e| Error::Config(format!("cannot read filter {path}: {e}"))),
            }
        };
        let signal = PhaseFilter::from_csv(
            grid,
            read(&f.signal_phase)?.as_deref(),
            read(&f.signal_transmission)?.as_deref(),
        )?;
        let idler = PhaseFilter::from_csv(
            grid,
            read(&f.idler_phase)?.as_deref(),
            read(&f.idler_transmission)?.as_deref(),
        )?;
        apply_filter(&kernel, &signal, &idler)
    }

    /// Spectral phases applied to the effective pulse by the configured
    /// phase filters (zeros when absent).
    pub fn filter_phases(&self, grid: FrequencyGrid) -> Result<(Vec<f64>, Vec<f64>)> {
        let read = |p: &Option<String>| -> Result<Option<String>> {
            match p {
                None => Ok(None),
                Some(path) => std::fs::read_to_string(path)
                    .map(Some)
                    .map_err(|e| Error::Config(format!("cannot read filter {path}: {e}"))),
            }
        };
        let signal = PhaseFilter::from_csv(grid, read(&self.filters.signal_phase)?.as_deref(), None)?;
        let idler = PhaseFilter::from_csv(grid, read(&self.filters.idler_phase)?.as_deref(), None)?;
        Ok((signal.theta, idler.theta))
    }

    /// Closed-form regime: explicit from [signal], or decided by the
    /// bandwidth ordering of the response and the pump.
    pub fn resolve_regime(&self) -> Result<Regime> {
        match self.signal.regime.as_str() {
            "narrow-pump" => Ok(Regime::NarrowPump),
            "broad-pump" => Ok(Regime::BroadPump),
            "auto" => {
                if self.kernel.kind == "coincidence" {
                    return Ok(Regime::Coincidence);
                }
                let gamma = self.kernel_gamma()?;
                let delta_p = self.pump_bandwidth()?;
                if delta_p == 0.0 || gamma >= 5.0 * delta_p {
                    Ok(Regime::NarrowPump)
                } else if delta_p >= 5.0 * gamma {
                    Ok(Regime::BroadPump)
                } else {
                    Err(Error::Regime(format!(
                        "no closed-form regime: response bandwidth {gamma:.3e} and pump \
                         bandwidth {delta_p:.3e} rad/s are not separated by a factor of 5"
                    )))
                }
            }
            other => Err(Error::Config(format!(
                "unknown regime '{other}' (expected auto, narrow-pump or broad-pump)"
            ))),
        }
    }

    /// Scalar closed-form inputs at mean photon number `n`.
    pub fn closed_inputs(&self, n: f64) -> Result<ClosedInputs> {
        let gamma = self.kernel_gamma()?;
        let delta_p = self.pump_bandwidth()?;
        let delta = self.dc_bandwidth()?;
        let model = self.pump_model()?;
        let pump_time_scale = match model {
            PumpModel::Cw { .. } => std::f64::consts::TAU / gamma,
            PumpModel::TransformLimitedPulse { duration, .. } => duration,
            PumpModel::StochasticQuasiCw {
                envelope_duration, ..
            } => envelope_duration,
        };
        let gate_time = match self.kernel.gate.as_deref() {
            Some(s) => Quantity::parse(s)?.as_time()?,
            None => 0.0,
        };
        // Equivalent-width convention: the response integral |g|^2 over
        // detuning equals gamma at unit resonant response, so closed traces
        // and the ratio formulas stay mutually consistent.
        Ok(ClosedInputs {
            n,
            delta,
            f_avg_sq: 1.0,
            gamma,
            delta_p,
            g_at_pump_sq: 1.0,
            g_sq_integral: gamma,
            pump_time_scale,
            kappa_scale: 1.0,
            gate_time,
            self_mixing: self.signal.self_mixing,
        })
    }

    /// Final-state nodes as (absolute frequency, weight) pairs; a single
    /// node at the kernel center when the distribution is empty.
    pub fn final_state_nodes(&self) -> Result<Vec<(f64, f64)>> {
        let center = self.kernel_center()?;
        if self.final_states.is_empty() {
            return Ok(vec![(center, 1.0)]);
        }
        self.final_states
            .iter()
            .map(|entry| {
                let q = Quantity::parse(&entry.detuning)?;
                let detuning = match q {
                    Quantity::AngularFrequency(w) => w,
                    other => {
                        return Err(Error::Config(format!(
                            "final-state detuning must be an angular frequency, got {other:?}"
                        )))
                    }
                };
                Ok((center + detuning, entry.weight))
            })
            .collect()
    }

    /// Delay axis for the `signal` subcommand.
    pub fn delay_axis(&self) -> Result<Vec<f64>> {
        let start = match self.signal.delay_start.as_deref() {
            Some(s) => Quantity::parse(s)?.as_time()?,
            None => -2.0 * std::f64::consts::TAU / self.dc_bandwidth()?* 50.0,
        };
        let stop = match self.signal.delay_stop.as_deref() {
            Some(s) => Quantity::parse(s)?.as_time()?,
            None => -start,
        };
        let points = self.signal.delay_points.max(2);
        if !(stop > start) {
            return Err(Error::Config("delay_stop must exceed delay_start".into()));
        }
        let step = (stop - start) / (points - 1) as f64;
        Ok((0..points).map(|i| start + step * i as f64).collect())
    }
}

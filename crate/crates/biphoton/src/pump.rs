//! Pump-field synthesis and intensity statistics.
//!
//! Three pump models: ideal CW, a transform-limited Gaussian pulse, and a
//! stochastic quasi-continuous pulse. The stochastic model draws independent
//! circular-Gaussian complex amplitudes per spectral bin, shaped by a
//! Gaussian envelope of intensity FWHM delta_p, transforms to time, and
//! applies a Gaussian temporal envelope of intensity FWHM tau_p. This is the
//! minimal chaotic model: g2_p(0) -> 2 with coherence time 2 pi / delta_p.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};
use crate::grid::{to_frequency_domain, to_time_domain, FrequencyGrid, SpectralField, TemporalField};

const LN2: f64 = std::f64::consts::LN_2;
const TAU: f64 = 2.0 * std::f64::consts::PI;

/// Mixing constant for deriving per-realization seeds from a master seed.
pub(crate) const SEED_MIX: u64 = 0x9E37_79B9_7F4A_7C15;

pub(crate) fn derived_seed(master: u64, realization: u64) -> u64 {
    master ^ realization.wrapping_mul(SEED_MIX)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PumpModel {
    /// Constant flux over the whole grid window.
    Cw { mean_flux: f64 },
    /// Gaussian pulse; `duration` is the intensity FWHM.
    TransformLimitedPulse {
        duration: f64,
        peak_flux: f64,
        center: f64,
    },
    /// Chaotic quasi-continuous pulse; `bandwidth` is the intensity FWHM of
    /// the spectrum, `envelope_duration` the intensity FWHM in time.
    StochasticQuasiCw {
        envelope_duration: f64,
        bandwidth: f64,
        mean_flux: f64,
        center: f64,
        seed: u64,
    },
}

impl PumpModel {
    /// Validate model parameters; returns non-fatal warnings.
    pub fn validate(&self) -> Result<Vec<String>> {
        let mut warnings = Vec::new();
        match *self {
            PumpModel::Cw { mean_flux } => {
                if !(mean_flux > 0.0) {
                    return Err(Error::Parameter("CW mean_flux must be positive".into()));
                }
            }
            PumpModel::TransformLimitedPulse {
                duration,
                peak_flux,
                center,
            } => {
                if !(duration > 0.0 && peak_flux > 0.0 && center > 0.0) {
                    return Err(Error::Parameter(
                        "pulse duration, peak_flux, and center must be positive".into(),
                    ));
                }
            }
            PumpModel::StochasticQuasiCw {
                envelope_duration,
                bandwidth,
                mean_flux,
                center,
                ..
            } => {
                if !(envelope_duration > 0.0 && bandwidth > 0.0 && mean_flux > 0.0 && center > 0.0)
                {
                    return Err(Error::Parameter(
                        "stochastic pump duration, bandwidth, mean_flux, and center must be positive"
                            .into(),
                    ));
                }
                let coherence = TAU / bandwidth;
                if envelope_duration < 5.0 * coherence {
                    return Err(Error::Parameter(format!(
                        "pump is not quasi-continuous: envelope {:.3e} s < 5x coherence time {:.3e} s",
                        envelope_duration, coherence
                    )));
                }
                if envelope_duration < 20.0 * coherence {
                    warnings.push(format!(
                        "pump envelope {:.3e} s is under 20x the coherence time {:.3e} s; \
                         quasi-continuous statistics are marginal",
                        envelope_duration, coherence
                    ));
                }
            }
        }
        Ok(warnings)
    }

    /// Spectral intensity FWHM (rad/s); transform-limited pulses use the
    /// Gaussian time-bandwidth product.
    pub fn bandwidth(&self) -> f64 {
        match *self {
            PumpModel::Cw { .. } => 0.0,
            PumpModel::TransformLimitedPulse { duration, .. } => 4.0 * LN2 / duration,
            PumpModel::StochasticQuasiCw { bandwidth, .. } => bandwidth,
        }
    }

    fn envelope_duration(&self) -> f64 {
        match *self {
            PumpModel::Cw { .. } => 0.0,
            PumpModel::TransformLimitedPulse { duration, .. } => duration,
            PumpModel::StochasticQuasiCw {
                envelope_duration, ..
            } => envelope_duration,
        }
    }

    /// Copy of the model with the master seed replaced (stochastic only).
    pub fn with_seed(&self, new_seed: u64) -> PumpModel {
        match *self {
            PumpModel::StochasticQuasiCw {
                envelope_duration,
                bandwidth,
                mean_flux,
                center,
                ..
            } => PumpModel::StochasticQuasiCw {
                envelope_duration,
                bandwidth,
                mean_flux,
                center,
                seed: new_seed,
            },
            other => other,
        }
    }
}

/// One synthesized pump field: matched spectral/temporal samples, the
/// support mask of its intensity envelope (> 1% of peak), and the flux
/// averaged over that support.
#[derive(Debug, Clone)]
pub struct PumpRealization {
    pub spectral: SpectralField,
    pub temporal: TemporalField,
    pub support: Vec<bool>,
    pub mean_flux: f64,
    pub warnings: Vec<String>,
}

/// Deterministic intensity envelope (relative, peak 1) of a model on a grid.
fn intensity_envelope(model: &PumpModel, grid: FrequencyGrid) -> Vec<f64> {
    match *model {
        PumpModel::Cw { .. } => vec![1.0; grid.count()],
        PumpModel::TransformLimitedPulse { duration, .. }
        | PumpModel::StochasticQuasiCw {
            envelope_duration: duration,
            ..
        } => grid
            .times()
            .map(|t| (-4.0 * LN2 * t * t / (duration * duration)).exp())
            .collect(),
    }
}

fn support_mask(envelope: &[f64]) -> Vec<bool> {
    let peak = envelope.iter().cloned().fold(0.0, f64::max);
    envelope.iter().map(|&e| e > 0.01 * peak).collect()
}

/// Synthesize a pump realization on `grid`. Deterministic given the model
/// (including its seed). For CW the grid window acts as the averaging period.
pub fn synthesize_pump(model: &PumpModel, grid: FrequencyGrid) -> Result<PumpRealization> {
    let warnings = model.validate()?;
    let bw = model.bandwidth();
    if bw > 0.0 && grid.span() < 6.0 * bw {
        return Err(Error::Grid(format!(
            "grid span {:.3e} rad/s is narrower than 6x the pump bandwidth {:.3e} rad/s",
            grid.span(),
            bw
        )));
    }
    let dur = model.envelope_duration();
    if dur > 0.0 && grid.duration() < 3.0 * dur {
        return Err(Error::Grid(format!(
            "grid window {:.3e} s is shorter than 3x the pump envelope {:.3e} s",
            grid.duration(),
            dur
        )));
    }
    if let Some(center) = match *model {
        PumpModel::TransformLimitedPulse { center, .. } => Some(center),
        PumpModel::StochasticQuasiCw { center, .. } => Some(center),
        PumpModel::Cw { .. } => None,
    } {
        if grid.index_of(center).is_none() {
            return Err(Error::Grid(format!(
                "pump center {:.6e} rad/s lies outside the grid",
                center
            )));
        }
    }

    let envelope = intensity_envelope(model, grid);
    let support = support_mask(&envelope);

    let temporal = match *model {
        PumpModel::Cw { mean_flux } => {
            let amp = Complex64::new(mean_flux.sqrt(), 0.0);
            TemporalField {
                grid,
                amplitudes: vec![amp; grid.count()],
            }
        }
        PumpModel::TransformLimitedPulse {
            peak_flux, center, ..
        } => {
            let detune = center - grid.center();
            let amps = grid
                .times()
                .zip(&envelope)
                .map(|(t, &e)| {
                    peak_flux.sqrt() * e.sqrt() * Complex64::new(0.0, -detune * t).exp()
                })
                .collect();
            TemporalField { grid, amplitudes: amps }
        }
        PumpModel::StochasticQuasiCw {
            bandwidth,
            mean_flux,
            center,
            seed,
            ..
        } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let normal = Normal::new(0.0, std::f64::consts::FRAC_1_SQRT_2).unwrap();
            // Spectral amplitude std shaped so E|X(w)|^2 is Gaussian with
            // intensity FWHM `bandwidth` about the model center.
            let sigma: Vec<f64> = grid
                .frequencies()
                .map(|w| {
                    let d = w - center;
                    (-2.0 * LN2 * d * d / (bandwidth * bandwidth)).exp()
                })
                .collect();
            let amps: Vec<Complex64> = sigma
                .iter()
                .map(|&s| Complex64::new(s * normal.sample(&mut rng), s * normal.sample(&mut rng)))
                .collect();
            let spectral = SpectralField::new(grid, amps)?;
            let mut field = to_time_domain(&spectral);
            for (a, &e) in field.amplitudes.iter_mut().zip(&envelope) {
                *a *= e.sqrt();
            }
            // Deterministic normalization: scale so the *expected*
            // support-averaged flux equals mean_flux. The stationary
            // pre-envelope intensity is E0 = (dw^2 / 2 pi) sum sigma^2.
            let e0 = grid.spacing() * grid.spacing() / TAU
                * sigma.iter().map(|s| s * s).sum::<f64>();
            let (env_sum, n_sup) = envelope
                .iter()
                .zip(&support)
                .filter(|(_, &m)| m)
                .fold((0.0, 0usize), |(s, n), (&e, _)| (s + e, n + 1));
            let expected = e0 * env_sum / n_sup as f64;
            let scale = (mean_flux / expected).sqrt();
            for a in &mut field.amplitudes {
                *a *= scale;
            }
            field
        }
    };

    let spectral = to_frequency_domain(&temporal);
    let intensity = temporal.intensity();
    let (flux_sum, n_sup) = intensity
        .iter()
        .zip(&support)
        .filter(|(_, &m)| m)
        .fold((0.0, 0usize), |(s, n), (&i, _)| (s + i, n + 1));
    if flux_sum <= 0.0 {
        return Err(Error::Numeric("pump field is all zero".into()));
    }
    Ok(PumpRealization {
        spectral,
        temporal,
        support,
        mean_flux: flux_sum / n_sup as f64,
        warnings,
    })
}

/// Deterministic expected intensity profile of a model on a grid, in flux
/// units. For the stochastic model this is the envelope scaled so its
/// support average equals the nominal mean flux, matching the
/// normalization applied by `synthesize_pump`.
pub fn expected_intensity(model: &PumpModel, grid: FrequencyGrid) -> Vec<f64> {
    let envelope = intensity_envelope(model, grid);
    match *model {
        PumpModel::Cw { mean_flux } => vec![mean_flux; grid.count()],
        PumpModel::TransformLimitedPulse { peak_flux, .. } => {
            envelope.iter().map(|&e| peak_flux * e).collect()
        }
        PumpModel::StochasticQuasiCw { mean_flux, .. } => {
            let support = support_mask(&envelope);
            let (env_sum, n_sup) = envelope
                .iter()
                .zip(&support)
                .filter(|(_, &m)| m)
                .fold((0.0, 0usize), |(s, n), (&e, _)| (s + e, n + 1));
            let scale = mean_flux * n_sup as f64 / env_sum;
            envelope.iter().map(|&e| e * scale).collect()
        }
    }
}

/// Flux averaged over the envelope support.
pub fn pump_mean_flux(realization: &PumpRealization) -> f64 {
    realization.mean_flux
}

/// Ensemble/time-averaged normalized intensity correlation
/// g2(tau) = <I(t+tau) I(t)> / (<I(t+tau)><I(t)>), evaluated at each delay.
/// Delays are rounded to grid time steps; averaging runs over times where
/// both samples fall in the envelope support.
pub fn pump_g2(
    model: &PumpModel,
    grid: FrequencyGrid,
    delays: &[f64],
    realizations: usize,
) -> Result<Vec<f64>> {
    if realizations == 0 {
        return Err(Error::Parameter("need at least one realization".into()));
    }
    let dt = grid.time_step();
    let n = grid.count();
    let shifts: Vec<isize> = delays
        .iter()
        .map(|&tau| {
            let s = (tau / dt).round();
            if s.abs() >= n as f64 {
                Err(Error::Parameter(format!(
                    "delay {tau:.3e} s exceeds the grid window"
                )))
            } else {
                Ok(s as isize)
            }
        })
        .collect::<Result<_>>()?;

    let master = match *model {
        PumpModel::StochasticQuasiCw { seed, .. } => seed,
        _ => 0,
    };
    let mut mean_i = vec![0.0f64; n];
    let mut corr = vec![0.0f64; shifts.len()];
    let mut support = vec![true; n];
    for r in 0..realizations {
        let real = synthesize_pump(&model.with_seed(derived_seed(master, r as u64)), grid)?;
        let i = real.temporal.intensity();
        support = real.support.clone();
        for (m, &v) in mean_i.iter_mut().zip(&i) {
            *m += v;
        }
        for (c, &s) in corr.iter_mut().zip(&shifts) {
            let mut acc = 0.0;
            for t in 0..n {
                let u = t as isize + s;
                if u < 0 || u >= n as isize {
                    continue;
                }
                let u = u as usize;
                if support[t] && support[u] {
                    acc += i[t] * i[u];
                }
            }
            *c += acc;
        }
    }
    let m = realizations as f64;
    for v in &mut mean_i {
        *v /= m;
    }
    Ok(shifts
        .iter()
        .zip(&corr)
        .map(|(&s, &c)| {
            let mut den = 0.0;
            for t in 0..n {
                let u = t as isize + s;
                if u < 0 || u >= n as isize {
                    continue;
                }
                let u = u as usize;
                if support[t] && support[u] {
                    den += mean_i[t] * mean_i[u];
                }
            }
            c / m / den
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::make_grid;
    use crate::units::{bandwidth_to_angular, wavelength_to_angular};
    use approx::assert_relative_eq;

    fn pump_grid(count: usize) -> FrequencyGrid {
        // 9 ns window around 516.5 nm; resolves 0.01 nm pump structure.
        let center = wavelength_to_angular(516.5e-9);
        let spacing = TAU / 9e-9;
        make_grid(center, spacing * count as f64, count).unwrap()
    }

    #[test]
    fn cw_is_flat() {
        let grid = pump_grid(1024);
        let real = synthesize_pump(&PumpModel::Cw { mean_flux: 1e18 }, grid).unwrap();
        for i in real.temporal.intensity() {
            assert_relative_eq!(i, 1e18, max_relative = 1e-12);
        }
        assert_relative_eq!(pump_mean_flux(&real), 1e18, max_relative = 1e-12);
        // Spectrally a single center bin with |A0|^2 = 2 pi I_p / dw^2.
        let k0 = grid.count() / 2;
        let expect = TAU * 1e18 / (grid.spacing() * grid.spacing());
        assert_relative_eq!(
            real.spectral.amplitudes[k0].norm_sqr(),
            expect,
            max_relative = 1e-9
        );
        let off: f64 = real
            .spectral
            .amplitudes
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != k0)
            .map(|(_, a)| a.norm_sqr())
            .sum();
        assert!(off < 1e-12 * expect);
    }

    #[test]
    fn transform_limited_time_bandwidth() {
        // Long window so the narrow spectral line spans many bins.
        let center = wavelength_to_angular(516.5e-9);
        let grid = make_grid(center, (TAU / 72e-9) * 8192.0, 8192).unwrap();
        let model = PumpModel::TransformLimitedPulse {
            duration: 3e-9,
            peak_flux: 1e18,
            center: grid.center(),
        };
        let real = synthesize_pump(&model, grid).unwrap();
        // Spectral intensity FWHM of a Gaussian pulse: 0.441 * 2 pi / tau_p,
        // recovered from the rms width of the (Gaussian) spectrum.
        let spec: Vec<f64> = real.spectral.amplitudes.iter().map(|a| a.norm_sqr()).collect();
        let total: f64 = spec.iter().sum();
        let var = grid
            .frequencies()
            .zip(&spec)
            .map(|(w, &v)| (w - grid.center()).powi(2) * v)
            .sum::<f64>()
            / total;
        let fwhm = (8.0 * LN2 * var).sqrt();
        assert_relative_eq!(fwhm, 4.0 * LN2 / 3e-9, max_relative = 0.02);
        // Gaussian support-average/peak ratio oracle by direct quadrature.
        let env = intensity_envelope(&model, grid);
        let sup = support_mask(&env);
        let avg = env
            .iter()
            .zip(&sup)
            .filter(|(_, &m)| m)
            .map(|(&e, _)| e)
            .sum::<f64>()
            / sup.iter().filter(|&&m| m).count() as f64;
        assert_relative_eq!(pump_mean_flux(&real), 1e18 * avg, max_relative = 1e-6);
    }

    #[test]
    fn stochastic_flux_and_determinism() {
        let grid = pump_grid(4096);
        let delta_p = bandwidth_to_angular(0.01e-9, 516.5e-9);
        let model = PumpModel::StochasticQuasiCw {
            envelope_duration: 3e-9,
            bandwidth: delta_p,
            mean_flux: 1e18,
            center: grid.center(),
            seed: 7,
        };
        let a = synthesize_pump(&model, grid).unwrap();
        let b = synthesize_pump(&model, grid).unwrap();
        assert_eq!(a.temporal.amplitudes, b.temporal.amplitudes);

        // Ensemble mean of the support-averaged flux converges to mean_flux.
        let mut acc = 0.0;
        let reps = 500;
        for r in 0..reps {
            let real =
                synthesize_pump(&model.with_seed(derived_seed(7, r)), grid).unwrap();
            acc += real.mean_flux;
        }
        assert_relative_eq!(acc / reps as f64, 1e18, max_relative = 0.05);
    }

    #[test]
    fn stochastic_spectrum_matches_envelope() {
        let grid = pump_grid(2048);
        let delta_p = bandwidth_to_angular(0.01e-9, 516.5e-9);
        let model = PumpModel::StochasticQuasiCw {
            envelope_duration: 3e-9,
            bandwidth: delta_p,
            mean_flux: 1e18,
            center: grid.center(),
            seed: 11,
        };
        let mut mean = vec![0.0; grid.count()];
        let reps = 500;
        for r in 0..reps {
            let real = synthesize_pump(&model.with_seed(derived_seed(11, r)), grid).unwrap();
            for (m, a) in mean.iter_mut().zip(&real.spectral.amplitudes) {
                *m += a.norm_sqr();
            }
        }
        let peak = mean.iter().cloned().fold(0.0, f64::max);
        // At the half-maximum detunings the averaged spectrum should sit at
        // peak/2 within Monte-Carlo error.
        for sign in [-1.0, 1.0] {
            let k = grid.index_of(grid.center() + sign * delta_p / 2.0).unwrap();
            assert_relative_eq!(mean[k] / peak, 0.5, max_relative = 0.25);
        }
    }

    #[test]
    fn g2_bunching_and_baseline() {
        let grid = pump_grid(2048);
        let delta_p = bandwidth_to_angular(0.01e-9, 516.5e-9);
        let model = PumpModel::StochasticQuasiCw {
            envelope_duration: 3e-9,
            bandwidth: delta_p,
            mean_flux: 1e18,
            center: grid.center(),
            seed: 21,
        };
        let g2 = pump_g2(&model, grid, &[0.0, 1e-9], 400).unwrap();
        assert!((g2[0] - 2.0).abs() < 0.1, "g2(0) = {}", g2[0]);
        assert!((g2[1] - 1.0).abs() < 0.05, "g2(1ns) = {}", g2[1]);

        let cw = pump_g2(&PumpModel::Cw { mean_flux: 1e18 }, grid, &[0.0, 2e-9], 1).unwrap();
        for v in cw {
            assert_relative_eq!(v, 1.0, max_relative = 1e-12);
        }
    }

    #[test]
    fn quasi_continuous_enforcement() {
        let delta_p = bandwidth_to_angular(0.01e-9, 516.5e-9);
        let coherence = TAU / delta_p;
        let with_duration = |envelope_duration: f64| PumpModel::StochasticQuasiCw {
            envelope_duration,
            bandwidth: delta_p,
            mean_flux: 1e18,
            center: wavelength_to_angular(516.5e-9),
            seed: 0,
        };
        assert!(matches!(
            with_duration(3.0 * coherence).validate(),
            Err(Error::Parameter(_))
        ));
        assert_eq!(with_duration(10.0 * coherence).validate().unwrap().len(), 1);
        assert!(with_duration(30.0 * coherence).validate().unwrap().is_empty());
    }

    #[test]
    fn grid_preconditions() {
        let center = wavelength_to_angular(516.5e-9);
        let narrow = make_grid(center, 1e10, 256).unwrap();
        let model = PumpModel::StochasticQuasiCw {
            envelope_duration: 3e-9,
            bandwidth: bandwidth_to_angular(0.01e-9, 516.5e-9),
            mean_flux: 1e18,
            center,
            seed: 0,
        };
        assert!(matches!(
            synthesize_pump(&model, narrow),
            Err(Error::Grid(_))
        ));
        // Short window: large spacing => window << 3 tau_p.
        let short = make_grid(center, 1e13, 256).unwrap();
        assert!(matches!(
            synthesize_pump(&model, short),
            Err(Error::Grid(_))
        ));
    }
}

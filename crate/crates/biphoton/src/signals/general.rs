//! Transform-based evaluation of the coherent and incoherent signals without
//! regime approximations.
//!
//! The coherent signal factorizes into a pair-spectrum integral over the
//! down-converted band and a pump-response overlap in time:
//!   I^c(t) = |S_pair(tau_i - tau_s)|^2 |y(t - tau_i)|^2 / I_p,
//! with y = F^{-1}{ g A_p }.
//!
//! The incoherent signal is a chaotic-intensity term: the time response
//! |F^{-1}{g}|^2 convolved with the instantaneous pump intensity correlation
//! I_p(t - tau_i) I_p(t - tau_s), scaled by the band integral of
//! |f|^2 n_s n_i. Both reduce exactly to the narrow-pump closed forms for a
//! CW pump.

use num_complex::Complex64;

use crate::crystal::DcSpectrum;
use crate::error::{Error, Result};
use crate::grid::{to_frequency_domain, to_time_domain, SpectralField, TemporalField};
use crate::kernels::{InteractionKernel, KernelKind};
use crate::pump::PumpRealization;
use crate::signals::{AxisKind, Regime, SignalTrace};

const TAU: f64 = 2.0 * std::f64::consts::PI;

/// Largest grid the general incoherent path will accept.
const MAX_GENERAL_COUNT: usize = 1 << 18;

/// Pair-spectrum integral
/// S = Integral dw f(w) e^{-i dk L} sqrt((1+n_s(w)) n_i(W0-w)) e^{-i w tau}.
fn pair_spectral_sum(dc: &DcSpectrum, pair: &InteractionKernel, tau: f64) -> Complex64 {
    let grid = dc.grid;
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 0..grid.count() {
        let m = grid.mirror_index(k);
        let mag = ((1.0 + dc.n_s[k]) * dc.n_i[m]).sqrt();
        if mag == 0.0 && pair.f[k].norm_sqr() == 0.0 {
            continue;
        }
        let phase = -dc.dispersion_phase[k] - grid.detuning(k) * tau;
        sum += pair.f[k] * mag * Complex64::new(0.0, phase).exp();
    }
    sum * grid.spacing()
}

fn check_general_grids(
    pump: &PumpRealization,
    dc: &DcSpectrum,
    response: &InteractionKernel,
    pair: &InteractionKernel,
) -> Result<()> {
    if response.grid != pump.spectral.grid {
        return Err(Error::Grid(
            "response kernel grid does not match the pump grid".into(),
        ));
    }
    if pair.grid != dc.grid {
        return Err(Error::Grid(
            "pair kernel grid does not match the down-conversion grid".into(),
        ));
    }
    Ok(())
}

/// Pump intensity shifted by `tau` (sub-sample shifts via spectral ramps).
fn shifted_pump_intensity(pump: &PumpRealization, tau: f64) -> Vec<f64> {
    if tau == 0.0 {
        return pump.temporal.intensity();
    }
    let grid = pump.spectral.grid;
    let shifted: Vec<Complex64> = pump
        .spectral
        .amplitudes
        .iter()
        .enumerate()
        .map(|(k, a)| a * Complex64::new(0.0, grid.detuning(k) * tau).exp())
        .collect();
    to_time_domain(&SpectralField::new(grid, shifted).unwrap()).intensity()
}

/// Coherent signal over the pump time grid for fixed signal/idler delays.
pub fn coherent_general(
    pump: &PumpRealization,
    dc: &DcSpectrum,
    response: &InteractionKernel,
    pair: &InteractionKernel,
    tau_s: f64,
    tau_i: f64,
) -> Result<SignalTrace> {
    check_general_grids(pump, dc, response, pair)?;
    let grid = pump.spectral.grid;
    let pair_sq = pair_spectral_sum(dc, pair, tau_i - tau_s).norm_sqr();
    // y(t - tau_i): ramp the spectrum by e^{+i xi tau_i} before transforming.
    let driven: Vec<Complex64> = (0..grid.count())
        .map(|k| {
            response.g[k]
                * pump.spectral.amplitudes[k]
                * Complex64::new(0.0, grid.detuning(k) * tau_i).exp()
        })
        .collect();
    let y = to_time_domain(&SpectralField::new(grid, driven)?);
    let coherent: Vec<f64> = y
        .amplitudes
        .iter()
        .map(|v| pair_sq * v.norm_sqr() / pump.mean_flux)
        .collect();
    let n = coherent.len();
    let mut trace = SignalTrace::new(
        AxisKind::Time,
        grid.times().collect(),
        coherent,
        vec![0.0; n],
        Regime::General,
    )?;
    trace
        .prefactors
        .push(("one_over_2pi_flux".into(), 1.0 / (TAU * pump.mean_flux)));
    Ok(trace)
}

/// Incoherent signal over the pump time grid for fixed signal/idler delays.
pub fn incoherent_general(
    pump: &PumpRealization,
    dc: &DcSpectrum,
    response: &InteractionKernel,
    pair: &InteractionKernel,
    tau_s: f64,
    tau_i: f64,
) -> Result<SignalTrace> {
    check_general_grids(pump, dc, response, pair)?;
    let grid = pump.spectral.grid;
    if grid.count() > MAX_GENERAL_COUNT {
        return Err(Error::Grid(format!(
            "grid count {} exceeds the general-path limit {MAX_GENERAL_COUNT}",
            grid.count()
        )));
    }
    // Band integral of |f|^2 n_s n_i on the signal grid.
    let s_f: f64 = (0..dc.grid.count())
        .map(|k| pair.f[k].norm_sqr() * dc.n_s[k] * dc.n_i[dc.grid.mirror_index(k)])
        .sum::<f64>()
        * dc.grid.spacing();
    // Intensity correlation C(t) = I_p(t - tau_i) I_p(t - tau_s).
    let i_shift_i = shifted_pump_intensity(pump, tau_i);
    let i_shift_s = shifted_pump_intensity(pump, tau_s);
    let c: Vec<f64> = i_shift_i
        .iter()
        .zip(&i_shift_s)
        .map(|(a, b)| a * b)
        .collect();
    // |G(t)|^2 with G = F^{-1}{g}.
    let g_time = to_time_domain(&SpectralField::new(grid, response.g.clone())?);
    let memory: Vec<f64> = g_time.amplitudes.iter().map(|v| v.norm_sqr()).collect();
    let conv = circular_convolution(grid, &memory, &c);
    let flux_sq = pump.mean_flux * pump.mean_flux;
    let incoherent: Vec<f64> = conv.iter().map(|&v| s_f * v.max(0.0) / flux_sq).collect();
    let n = incoherent.len();
    let mut trace = SignalTrace::new(
        AxisKind::Time,
        grid.times().collect(),
        vec![0.0; n],
        incoherent,
        Regime::General,
    )?;
    trace.prefactors.push(("band_integral".into(), s_f));
    Ok(trace)
}

/// Circular convolution (a * b)(t) = Integral a(t - t') b(t') dt' on the
/// grid's time axis, via the transform pair.
fn circular_convolution(
    grid: crate::grid::FrequencyGrid,
    a: &[f64],
    b: &[f64],
) -> Vec<f64> {
    let wrap = |v: &[f64]| TemporalField {
        grid,
        amplitudes: v.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
    };
    let fa = to_frequency_domain(&wrap(a));
    let fb = to_frequency_domain(&wrap(b));
    let product: Vec<Complex64> = fa
        .amplitudes
        .iter()
        .zip(&fb.amplitudes)
        .map(|(x, y)| TAU.sqrt() * x * y)
        .collect();
    to_time_domain(&SpectralField::new(grid, product).unwrap())
        .amplitudes
        .iter()
        .map(|v| v.re)
        .collect()
}

/// Energy of the phase-ramped pump spectral autoconvolution,
/// Integral dv |Integral dw_p A_p(w_p) A_p(v - w_p) e^{i w_p tau}|^2.
/// By Parseval this equals 2 pi Integral I_p(t' + tau) I_p(t') dt'.
pub fn pump_autoconvolution_energy(pump: &PumpRealization, tau: f64) -> f64 {
    let grid = pump.spectral.grid;
    // The ramped product in time is a(t) a(t - tau); transform and sum.
    let shifted: Vec<Complex64> = pump
        .spectral
        .amplitudes
        .iter()
        .enumerate()
        .map(|(k, v)| v * Complex64::new(0.0, grid.detuning(k) * tau).exp())
        .collect();
    let a = pump.temporal.amplitudes.clone();
    let b = to_time_domain(&SpectralField::new(grid, shifted).unwrap());
    let product = TemporalField {
        grid,
        amplitudes: a.iter().zip(&b.amplitudes).map(|(x, y)| x * y).collect(),
    };
    // |F{a(t) a(t-tau)}|^2 integrated over frequency = (1/2pi) * the
    // autoconvolution energy in the convention above.
    TAU * to_frequency_domain(&product).spectral_energy()
}

/// Excitation spectrum of an SFG signal: the coherent part follows the
/// pump spectrum filtered by the phase-matching response, |g A_p|^2; the
/// incoherent part follows |g|^2 alone.
pub fn sfg_excitation_spectrum(
    pump: &PumpRealization,
    dc: &DcSpectrum,
    response: &InteractionKernel,
    pair: &InteractionKernel,
    pe_at_delay: f64,
) -> Result<SignalTrace> {
    if response.kind != KernelKind::Sfg {
        return Err(Error::Parameter(
            "excitation spectrum requires an SFG response kernel".into(),
        ));
    }
    check_general_grids(pump, dc, response, pair)?;
    let grid = pump.spectral.grid;
    let s_pair = pair_spectral_sum(dc, pair, 0.0).norm_sqr() * pe_at_delay.max(0.0).min(1.0);
    let s_f: f64 = (0..dc.grid.count())
        .map(|k| pair.f[k].norm_sqr() * dc.n_s[k] * dc.n_i[dc.grid.mirror_index(k)])
        .sum::<f64>()
        * dc.grid.spacing();
    let coherent: Vec<f64> = (0..grid.count())
        .map(|k| {
            s_pair * (response.g[k] * pump.spectral.amplitudes[k]).norm_sqr()
                / (TAU * pump.mean_flux)
        })
        .collect();
    let incoherent: Vec<f64> = response.g.iter().map(|g| s_f * g.norm_sqr()).collect();
    let mut trace = SignalTrace::new(
        AxisKind::Frequency,
        grid.frequencies().collect(),
        coherent,
        incoherent,
        Regime::General,
    )?;
    trace.metadata.push(("spectrum".into(), "excitation".into()));
    Ok(trace)
}

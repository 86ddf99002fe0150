//! The effective pulse: the temporal shape that the coherent two-photon
//! signal follows as a function of the signal-idler delay.
//!
//! P_e(tau) = (2 pi / P0) |F^{-1}{ sqrt((1 + n_s(w)) n_i(W0 - w))
//!            e^{i[theta_s(w) + theta_i(W0 - w)]} e^{-i dk(w) L} }|^2,
//! with P0 the squared area of the unphased magnitude, so that a flat
//! dispersion-free band gives P_e(0) = 1 and P_e <= 1 always.

use num_complex::Complex64;

use crate::crystal::DcSpectrum;
use crate::error::{Error, Result};
use crate::grid::{to_time_domain, FrequencyGrid, SpectralField};

const TAU: f64 = 2.0 * std::f64::consts::PI;

#[derive(Debug, Clone)]
pub struct EffectivePulse {
    grid: FrequencyGrid,
    /// Phased spectral amplitude sqrt((1+n_s) n_i) e^{i(theta sum - dk L)}.
    amplitude: Vec<Complex64>,
    /// Squared area of the unphased amplitude.
    pub p0: f64,
    /// Grid-sampled delays and P_e values.
    pub delays: Vec<f64>,
    pub values: Vec<f64>,
}

/// Build the effective pulse of a down-converted spectrum under the given
/// signal/idler spectral phases (radians per grid bin; zero slices allowed).
pub fn effective_pulse(
    dc: &DcSpectrum,
    theta_s: &[f64],
    theta_i: &[f64],
) -> Result<EffectivePulse> {
    let grid = dc.grid;
    let n = grid.count();
    if theta_s.len() != n || theta_i.len() != n {
        return Err(Error::Grid(
            "spectral phase length does not match the grid".into(),
        ));
    }
    let mut magnitude = vec![0.0; n];
    let mut amplitude = vec![Complex64::new(0.0, 0.0); n];
    for k in 0..n {
        let m = grid.mirror_index(k);
        let mag = ((1.0 + dc.n_s[k]) * dc.n_i[m]).sqrt();
        let phase = theta_s[k] + theta_i[m] - dc.dispersion_phase[k];
        magnitude[k] = mag;
        amplitude[k] = mag * Complex64::new(0.0, phase).exp();
    }
    let area: f64 = magnitude.iter().sum::<f64>() * grid.spacing();
    if area <= 0.0 {
        return Err(Error::Parameter("down-converted spectrum is all zero".into()));
    }
    let p0 = area * area;
    let temporal = to_time_domain(&SpectralField::new(grid, amplitude.clone())?);
    let values: Vec<f64> = temporal
        .amplitudes
        .iter()
        .map(|x| TAU * x.norm_sqr() / p0)
        .collect();
    Ok(EffectivePulse {
        grid,
        amplitude,
        p0,
        delays: grid.times().collect(),
        values,
    })
}

impl EffectivePulse {
    /// Exact P_e at an arbitrary (sub-sample) delay by direct summation.
    pub fn value_at(&self, delay: f64) -> f64 {
        let mut sum = Complex64::new(0.0, 0.0);
        for (k, a) in self.amplitude.iter().enumerate() {
            if a.norm_sqr() == 0.0 {
                continue;
            }
            sum += a * Complex64::new(0.0, -self.grid.detuning(k) * delay).exp();
        }
        let dw = self.grid.spacing();
        dw * dw * sum.norm_sqr() / self.p0
    }

    /// Delay-integrated effective pulse (s), from the grid samples.
    pub fn integral(&self) -> f64 {
        self.values.iter().sum::<f64>() * self.grid.time_step()
    }

    /// FWHM of the main peak, located from the grid samples and refined by
    /// bisection on the exact sub-sample evaluation.
    pub fn fwhm(&self) -> Result<f64> {
        let m = self
            .values
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
            .map(|(i, _)| i)
            .unwrap();
        let dt = self.grid.time_step();
        let t_peak = golden_max(|t| self.value_at(t), self.delays[m] - dt, self.delays[m] + dt);
        let peak = self.value_at(t_peak);
        if peak <= 0.0 {
            return Err(Error::Numeric("effective pulse is zero everywhere".into()));
        }
        let half = peak / 2.0;
        let crossing = |dir: f64| -> Result<f64> {
            // Step outward until below half, then bisect.
            let mut lo = t_peak;
            let mut hi = t_peak;
            let mut step = dt / 4.0;
            for _ in 0..200 {
                hi = lo + dir * step;
                if self.value_at(hi) < half {
                    break;
                }
                lo = hi;
                step *= 1.5;
            }
            if self.value_at(hi) >= half {
                return Err(Error::Numeric(
                    "effective pulse never falls below half maximum".into(),
                ));
            }
            for _ in 0..80 {
                let mid = 0.5 * (lo + hi);
                if self.value_at(mid) >= half {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            Ok(0.5 * (lo + hi))
        };
        Ok(crossing(1.0)? - crossing(-1.0)?)
    }
}

fn golden_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..60 {
        let c = b - phi * (b - a);
        let d = a + phi * (b - a);
        if f(c) > f(d) {
            b = d;
        } else {
            a = c;
        }
    }
    0.5 * (a + b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crystal::DcSpectrum;
    use crate::grid::make_grid;
    use crate::units::{bandwidth_to_angular, wavelength_to_angular};
    use approx::assert_relative_eq;

    fn signal_grid(count: usize) -> FrequencyGrid {
        let center = wavelength_to_angular(1033e-9);
        make_grid(center, 1.2e15, count).unwrap()
    }

    fn zeros(grid: FrequencyGrid) -> Vec<f64> {
        vec![0.0; grid.count()]
    }

    #[test]
    fn flat_band_peak_and_bounds() {
        let grid = signal_grid(8192);
        let delta = bandwidth_to_angular(80e-9, 1033e-9);
        let n = 0.5;
        let dc = DcSpectrum::flat_band(grid, n, delta).unwrap();
        let pe = effective_pulse(&dc, &zeros(grid), &zeros(grid)).unwrap();
        assert_relative_eq!(pe.value_at(0.0), 1.0, max_relative = 1e-9);
        assert!(pe.values.iter().all(|&v| v <= 1.0 + 1e-9 && v >= 0.0));
        // P0 for the flat band is (n^2 + n) times the squared band width
        // actually covered by grid bins.
        let bins = dc.n_s.iter().filter(|&&v| v > 0.0).count() as f64;
        let width = bins * grid.spacing();
        assert_relative_eq!(pe.p0, (n * n + n) * width * width, max_relative = 1e-9);
        // Flat band: P_e(tau) = sinc^2(width tau / 2); integral 2 pi / width.
        assert_relative_eq!(pe.integral(), TAU / width, max_relative = 1e-3);
        let tau = 3.0 / width;
        let x = width * tau / 2.0;
        assert_relative_eq!(
            pe.value_at(tau),
            (x.sin() / x).powi(2),
            max_relative = 1e-6
        );
    }

    #[test]
    fn gaussian_band_width_oracle() {
        // 80 nm band at 1033 nm. With n >> 1 the amplitude follows n itself,
        // so P_e is Gaussian with FWHM 4 sqrt(2) ln2 / dw; with n << 1 it
        // follows sqrt(n), whose wider spectrum shrinks the pulse by sqrt(2).
        let grid = signal_grid(16384);
        let dw = bandwidth_to_angular(80e-9, 1033e-9);
        for (n, scale) in [(1e6, 1.0), (1e-4, std::f64::consts::FRAC_1_SQRT_2)] {
            let dc = DcSpectrum::gaussian_band(grid, n, dw).unwrap();
            let pe = effective_pulse(&dc, &zeros(grid), &zeros(grid)).unwrap();
            let expect = scale * 4.0 * std::f64::consts::SQRT_2 * std::f64::consts::LN_2 / dw;
            assert_relative_eq!(pe.fwhm().unwrap(), expect, max_relative = 0.01);
        }
    }

    #[test]
    fn pi_step_phase_suppresses_peak() {
        let grid = signal_grid(4096);
        let delta = bandwidth_to_angular(80e-9, 1033e-9);
        let dc = DcSpectrum::flat_band(grid, 1.0, delta).unwrap();
        // pi phase step at the band center on the signal arm.
        let mut theta = zeros(grid);
        for k in 0..grid.count() {
            if grid.frequency(k) > grid.center() {
                theta[k] = std::f64::consts::PI;
            }
        }
        let pe = effective_pulse(&dc, &theta, &zeros(grid)).unwrap();
        assert!(pe.value_at(0.0) < 0.05);
        // Side lobes: some delay carries more than the center.
        let side = pe.values.iter().cloned().fold(0.0, f64::max);
        assert!(side > pe.value_at(0.0));

        // Cross-check a few delays against a 4x finer grid.
        let fine_grid = signal_grid(16384);
        let fine_dc = DcSpectrum::flat_band(fine_grid, 1.0, delta).unwrap();
        let mut fine_theta = zeros(fine_grid);
        for k in 0..fine_grid.count() {
            if fine_grid.frequency(k) > fine_grid.center() {
                fine_theta[k] = std::f64::consts::PI;
            }
        }
        let fine = effective_pulse(&fine_dc, &fine_theta, &zeros(fine_grid)).unwrap();
        for tau in [2e-14, 5e-14, 1.2e-13] {
            assert_relative_eq!(pe.value_at(tau), fine.value_at(tau), max_relative = 0.02);
        }
    }

    #[test]
    fn phase_sum_invariances() {
        let grid = signal_grid(2048);
        let dw = bandwidth_to_angular(80e-9, 1033e-9);
        let dc = DcSpectrum::gaussian_band(grid, 2.0, dw).unwrap();
        let phi: Vec<f64> = (0..grid.count())
            .map(|k| 0.7 * (grid.detuning(k) / dw).sin())
            .collect();
        // Moving an arbitrary phase from the signal arm to the idler arm
        // (mirrored) leaves P_e unchanged.
        let base = effective_pulse(&dc, &zeros(grid), &zeros(grid)).unwrap();
        let minus_mirror: Vec<f64> = (0..grid.count())
            .map(|k| -phi[grid.mirror_index(k)])
            .collect();
        let moved = effective_pulse(&dc, &phi, &minus_mirror).unwrap();
        for tau in [0.0, 1e-14, 7e-14] {
            assert_relative_eq!(base.value_at(tau), moved.value_at(tau), max_relative = 1e-9);
        }
        // Antisymmetric phase applied identically to both arms cancels.
        let odd: Vec<f64> = (0..grid.count())
            .map(|k| 1.3 * grid.detuning(k) / dw)
            .collect();
        let both = effective_pulse(&dc, &odd, &odd).unwrap();
        for tau in [0.0, 3e-14] {
            assert_relative_eq!(base.value_at(tau), both.value_at(tau), max_relative = 1e-9);
        }
    }

    #[test]
    fn empty_spectrum_rejected() {
        let grid = signal_grid(256);
        let dc = DcSpectrum::flat_band(grid, 0.0, 1e14).unwrap();
        assert!(effective_pulse(&dc, &zeros(grid), &zeros(grid)).is_err());
    }
}

//! Uniform frequency/time grids and the symmetric Fourier transform pair
//! x(t) = (1/sqrt(2 pi)) Integral X(w) e^{-i w t} dw shared by all modules.
//!
//! Spectral samples are ordered by monotonically increasing physical
//! frequency. Temporal samples are envelope samples relative to the grid
//! center frequency (the overall carrier phase e^{-i w0 t} is omitted; it
//! never enters intensities or relative spectral phases). With spacing dw and
//! count N the implied time grid has window T = 2 pi / dw and step
//! dt = T / N, centered on t = 0.

use num_complex::Complex64;
use once_cell::sync::Lazy;
use rustfft::{Fft, FftDirection, FftPlanner};
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};

/// Uniform grid of positive angular frequencies, count a power of two.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrequencyGrid {
    center: f64,
    spacing: f64,
    count: usize,
}

impl FrequencyGrid {
    pub fn center(&self) -> f64 {
        self.center
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn span(&self) -> f64 {
        self.spacing * self.count as f64
    }

    /// Angular frequency of sample k; k = count/2 is the center.
    pub fn frequency(&self, k: usize) -> f64 {
        self.center + (k as isize - (self.count / 2) as isize) as f64 * self.spacing
    }

    pub fn frequencies(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.count).map(move |k| self.frequency(k))
    }

    /// Detuning of sample k from the grid center.
    pub fn detuning(&self, k: usize) -> f64 {
        (k as isize - (self.count / 2) as isize) as f64 * self.spacing
    }

    /// Index of the sample nearest to the angular frequency `omega`.
    pub fn index_of(&self, omega: f64) -> Option<usize> {
        let rel = (omega - self.center) / self.spacing + (self.count / 2) as f64;
        let k = rel.round();
        if k >= 0.0 && (k as usize) < self.count {
            Some(k as usize)
        } else {
            None
        }
    }

    /// Implied time-grid window 2 pi / spacing.
    pub fn duration(&self) -> f64 {
        2.0 * std::f64::consts::PI / self.spacing
    }

    /// Implied time step 2 pi / (count * spacing).
    pub fn time_step(&self) -> f64 {
        self.duration() / self.count as f64
    }

    /// Time of sample j; j = count/2 is t = 0.
    pub fn time(&self, j: usize) -> f64 {
        (j as isize - (self.count / 2) as isize) as f64 * self.time_step()
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.count).map(move |j| self.time(j))
    }

    /// Index of the mirror frequency 2*center - w(k); bin 0 maps onto itself.
    pub fn mirror_index(&self, k: usize) -> usize {
        (self.count - k) % self.count
    }
}

/// Build a grid centered on `center` covering `center +/- span/2`.
pub fn make_grid(center: f64, span: f64, count: usize) -> Result<FrequencyGrid> {
    if count < 2 || !count.is_power_of_two() {
        return Err(Error::Grid(format!(
            "count {count} must be a power of two >= 2"
        )));
    }
    if !(span > 0.0) {
        return Err(Error::Grid(format!("span {span} must be positive")));
    }
    if !(center - span / 2.0 > 0.0) {
        return Err(Error::Grid(format!(
            "grid [{:.3e}, {:.3e}] extends to non-positive frequencies",
            center - span / 2.0,
            center + span / 2.0
        )));
    }
    Ok(FrequencyGrid {
        center,
        spacing: span / count as f64,
        count,
    })
}

/// Complex amplitude samples on a frequency grid. |A(w)|^2 integrates over w
/// (times 1/2pi via the transform convention) to photon flux.
#[derive(Debug, Clone)]
pub struct SpectralField {
    pub grid: FrequencyGrid,
    pub amplitudes: Vec<Complex64>,
}

/// Complex envelope samples on the implied time grid of a frequency grid.
#[derive(Debug, Clone)]
pub struct TemporalField {
    pub grid: FrequencyGrid,
    pub amplitudes: Vec<Complex64>,
}

impl SpectralField {
    pub fn new(grid: FrequencyGrid, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != grid.count() {
            return Err(Error::Grid(format!(
                "amplitude length {} does not match grid count {}",
                amplitudes.len(),
                grid.count()
            )));
        }
        Ok(SpectralField { grid, amplitudes })
    }

    pub fn zeros(grid: FrequencyGrid) -> Self {
        SpectralField {
            grid,
            amplitudes: vec![Complex64::new(0.0, 0.0); grid.count()],
        }
    }

    /// Sum |A|^2 dw.
    pub fn spectral_energy(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>() * self.grid.spacing()
    }
}

impl TemporalField {
    /// Sum |a|^2 dt.
    pub fn temporal_energy(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>() * self.grid.time_step()
    }

    pub fn intensity(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }
}

static PLANNER: Lazy<Mutex<FftPlanner<f64>>> = Lazy::new(|| Mutex::new(FftPlanner::new()));
static PLANS: Lazy<Mutex<HashMap<(usize, bool), Arc<dyn Fft<f64>>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

fn plan(count: usize, forward: bool) -> Arc<dyn Fft<f64>> {
    let mut plans = PLANS.lock().unwrap();
    plans
        .entry((count, forward))
        .or_insert_with(|| {
            let mut planner = PLANNER.lock().unwrap();
            planner.plan_fft(
                count,
                if forward {
                    FftDirection::Forward
                } else {
                    FftDirection::Inverse
                },
            )
        })
        .clone()
}

fn shifted_fft(data: &mut [Complex64], forward: bool) {
    let n = data.len();
    // For even n the fftshift is its own inverse, so one rotation on each
    // side of the FFT realizes the centered-index transform.
    data.rotate_left(n / 2);
    plan(n, forward).process(data);
    data.rotate_left(n / 2);
}

/// Spectral -> temporal: x(t_j) = (dw/sqrt(2 pi)) Sum_k X_k e^{-i (w_k - w0) t_j}.
pub fn to_time_domain(field: &SpectralField) -> TemporalField {
    let mut data = field.amplitudes.clone();
    shifted_fft(&mut data, true);
    let scale = field.grid.spacing() / (2.0 * std::f64::consts::PI).sqrt();
    for v in &mut data {
        *v *= scale;
    }
    TemporalField {
        grid: field.grid,
        amplitudes: data,
    }
}

/// Temporal -> spectral: X(w_k) = (dt/sqrt(2 pi)) Sum_j x_j e^{+i (w_k - w0) t_j}.
pub fn to_frequency_domain(field: &TemporalField) -> SpectralField {
    let mut data = field.amplitudes.clone();
    shifted_fft(&mut data, false);
    let scale = field.grid.time_step() / (2.0 * std::f64::consts::PI).sqrt();
    for v in &mut data {
        *v *= scale;
    }
    SpectralField {
        grid: field.grid,
        amplitudes: data,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use num_complex::Complex64;
    use proptest::prelude::*;
    use rand::{Rng as _, SeedableRng as _};
    use rand_chacha::ChaCha8Rng;

    fn random_field(seed: u64, grid: FrequencyGrid) -> SpectralField {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let amps = (0..grid.count())
            .map(|_| Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
            .collect();
        SpectralField::new(grid, amps).unwrap()
    }

    #[test]
    fn make_grid_examples() {
        let g = make_grid(3.65e15, 1.5e14, 4096).unwrap();
        assert_relative_eq!(g.spacing(), 1.5e14 / 4096.0, max_relative = 1e-14);
        assert!(make_grid(1.0, 1.0, 3).is_err());
        assert!(make_grid(5e13, 2e14, 1024).is_err());
    }

    #[test]
    fn delta_spectrum_gives_constant_modulus() {
        let grid = make_grid(1e15, 1e13, 256).unwrap();
        let mut f = SpectralField::zeros(grid);
        f.amplitudes[77] = Complex64::new(1.0, 0.0);
        let t = to_time_domain(&f);
        let m0 = t.amplitudes[0].norm();
        for a in &t.amplitudes {
            assert_relative_eq!(a.norm(), m0, max_relative = 1e-12);
        }
    }

    #[test]
    fn gaussian_pair_widths() {
        // Spectral rms sigma_w maps to temporal envelope rms 1/sigma_w.
        let grid = make_grid(1e15, 4e13, 4096).unwrap();
        let sigma = 1.2e12;
        let amps: Vec<Complex64> = grid
            .frequencies()
            .map(|w| {
                let d = (w - grid.center()) / sigma;
                Complex64::new((-0.25 * d * d).exp(), 0.0)
            })
            .collect();
        let f = SpectralField::new(grid, amps).unwrap();
        // |X|^2 above has rms width sigma; |x(t)|^2 = exp(-2 sigma^2 t^2)
        // has rms width 1/(2 sigma).
        let t = to_time_domain(&f);
        let i: Vec<f64> = t.intensity();
        let total: f64 = i.iter().sum();
        let mean: f64 = grid
            .times()
            .zip(&i)
            .map(|(tt, w)| tt * w)
            .sum::<f64>()
            / total;
        let var: f64 = grid
            .times()
            .zip(&i)
            .map(|(tt, w)| (tt - mean).powi(2) * w)
            .sum::<f64>()
            / total;
        assert_relative_eq!(var.sqrt(), 0.5 / sigma, max_relative = 1e-6);
    }

    #[test]
    fn round_trip_and_parseval() {
        let grid = make_grid(2e15, 8e13, 1024).unwrap();
        let f = random_field(3, grid);
        let t = to_time_domain(&f);
        assert_relative_eq!(
            f.spectral_energy(),
            t.temporal_energy(),
            max_relative = 1e-10
        );
        let back = to_frequency_domain(&t);
        for (a, b) in f.amplitudes.iter().zip(&back.amplitudes) {
            assert!((a - b).norm() <= 1e-12 * a.norm().max(1.0));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        #[test]
        fn round_trip_random(seed in 0u64..1000) {
            let grid = make_grid(1e15, 5e13, 256).unwrap();
            let f = random_field(seed, grid);
            let back = to_frequency_domain(&to_time_domain(&f));
            for (a, b) in f.amplitudes.iter().zip(&back.amplitudes) {
                prop_assert!((a - b).norm() <= 1e-12);
            }
        }

        #[test]
        fn linearity(seed in 0u64..1000, a in -2.0f64..2.0, b in -2.0f64..2.0) {
            let grid = make_grid(1e15, 5e13, 256).unwrap();
            let x = random_field(seed, grid);
            let y = random_field(seed.wrapping_add(101), grid);
            let combo = SpectralField::new(
                grid,
                x.amplitudes.iter().zip(&y.amplitudes).map(|(u, v)| a * u + b * v).collect(),
            ).unwrap();
            let lhs = to_time_domain(&combo);
            let tx = to_time_domain(&x);
            let ty = to_time_domain(&y);
            for ((l, u), v) in lhs.amplitudes.iter().zip(&tx.amplitudes).zip(&ty.amplitudes) {
                let scale = a.abs() * u.norm() + b.abs() * v.norm() + 1.0;
                prop_assert!((l - (a * u + b * v)).norm() <= 1e-12 * scale);
            }
        }
    }
}

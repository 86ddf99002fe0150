//! Down-conversion model: phase mismatch, parametric gain, and the
//! photon-flux spectral densities n_s(w), n_i(w) of the generated light.
//!
//! The gain is kappa(w) = sqrt(2 pi I_p beta(w)^2 - dk(w)^2 / 4) (principal
//! root; purely imaginary when the mismatch dominates, where sinh turns into
//! bounded oscillation). The normalized density is n = sinh^2(kappa L) under
//! perfect phase matching; away from it n = 2 pi I_p beta^2
//! |sinh(kappa L)|^2 / |kappa|^2, which reduces to the same expression at
//! dk = 0 and differs by the kappa^2/(2 pi I_p beta^2) factor otherwise.
//! Down-converted spectra can also be supplied directly as flat or Gaussian
//! bands with a given density, bypassing the crystal model entirely.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::FrequencyGrid;

const TAU: f64 = 2.0 * std::f64::consts::PI;
const LN2: f64 = std::f64::consts::LN_2;

/// Phase mismatch dk(w) about the degenerate frequency: group-velocity and
/// group-velocity-dispersion difference terms, or tabulated samples.
#[derive(Debug, Clone)]
pub struct DispersionModel {
    /// Linear coefficient (s/m): dk += gv_difference * (w - w_deg).
    pub gv_difference: f64,
    /// Quadratic coefficient (s^2/m): dk += gvd_difference * (w - w_deg)^2.
    pub gvd_difference: f64,
    pub degenerate_frequency: f64,
    pub crystal_length: f64,
    /// Tabulated (w, dk) override; linearly interpolated, must cover the grid.
    pub tabulated: Option<Vec<(f64, f64)>>,
}

impl DispersionModel {
    pub fn validate(&self, grid: Option<FrequencyGrid>) -> Result<()> {
        if !(self.crystal_length > 0.0) {
            return Err(Error::Parameter("crystal length must be positive".into()));
        }
        if let (Some(table), Some(g)) = (&self.tabulated, grid) {
            if table.len() < 2 || table.windows(2).any(|w| w[1].0 <= w[0].0) {
                return Err(Error::Parameter(
                    "tabulated dispersion must have >= 2 strictly increasing frequencies".into(),
                ));
            }
            let lo = g.frequency(0);
            let hi = g.frequency(g.count() - 1);
            if table[0].0 > lo || table[table.len() - 1].0 < hi {
                return Err(Error::Grid(format!(
                    "tabulated dispersion [{:.3e}, {:.3e}] does not cover the grid [{lo:.3e}, {hi:.3e}]",
                    table[0].0,
                    table[table.len() - 1].0
                )));
            }
        }
        Ok(())
    }

    /// Phase mismatch dk (1/m) at angular frequency w.
    pub fn delta_k(&self, omega: f64) -> f64 {
        if let Some(table) = &self.tabulated {
            let i = match table.binary_search_by(|&(w, _)| w.partial_cmp(&omega).unwrap()) {
                Ok(i) => return table[i].1,
                Err(i) => i.clamp(1, table.len() - 1),
            };
            let (w0, k0) = table[i - 1];
            let (w1, k1) = table[i];
            k0 + (k1 - k0) * (omega - w0) / (w1 - w0)
        } else {
            let d = omega - self.degenerate_frequency;
            self.gv_difference * d + self.gvd_difference * d * d
        }
    }

    /// Accumulated dispersion phase factor e^{-i dk(w) L} per grid bin.
    pub fn phase_factor(&self, grid: FrequencyGrid) -> Vec<Complex64> {
        grid.frequencies()
            .map(|w| Complex64::new(0.0, -self.delta_k(w) * self.crystal_length).exp())
            .collect()
    }
}

/// Parametric coupling: beta(w) (units so kappa is 1/m) and pump mean flux.
#[derive(Debug, Clone)]
pub struct CouplingModel {
    pub beta: Beta,
    pub pump_flux: f64,
}

#[derive(Debug, Clone)]
pub enum Beta {
    Constant(f64),
    /// Per-bin samples matching the working grid.
    Samples(Vec<f64>),
}

impl CouplingModel {
    pub fn validate(&self, grid: Option<FrequencyGrid>) -> Result<()> {
        if !(self.pump_flux >= 0.0) {
            return Err(Error::Parameter("pump flux must be non-negative".into()));
        }
        let finite = match &self.beta {
            Beta::Constant(b) => b.is_finite(),
            Beta::Samples(s) => {
                if let Some(g) = grid {
                    if s.len() != g.count() {
                        return Err(Error::Parameter(format!(
                            "beta sample count {} does not match grid count {}",
                            s.len(),
                            g.count()
                        )));
                    }
                }
                s.iter().all(|b| b.is_finite())
            }
        };
        if !finite {
            return Err(Error::Parameter("beta values must be finite".into()));
        }
        Ok(())
    }

    fn beta_at(&self, bin: usize) -> f64 {
        match &self.beta {
            Beta::Constant(b) => *b,
            Beta::Samples(s) => s[bin],
        }
    }
}

/// Parametric gain kappa (1/m) at grid bin `bin`; principal square root, so
/// mismatch-dominated bins come out purely imaginary.
pub fn kappa(coupling: &CouplingModel, dispersion: &DispersionModel, grid: FrequencyGrid, bin: usize) -> Complex64 {
    let beta = coupling.beta_at(bin);
    let dk = dispersion.delta_k(grid.frequency(bin));
    Complex64::new(TAU * coupling.pump_flux * beta * beta - dk * dk / 4.0, 0.0).sqrt()
}

/// Down-converted photon-flux spectral densities on a signal-side grid
/// centered on the degenerate frequency. n_i(w) mirrors n_s(2 w_deg - w)
/// exactly by construction.
#[derive(Debug, Clone)]
pub struct DcSpectrum {
    pub grid: FrequencyGrid,
    pub n_s: Vec<f64>,
    pub n_i: Vec<f64>,
    pub degenerate_frequency: f64,
    /// dk(w) L per bin; zero for analytic band shapes.
    pub dispersion_phase: Vec<f64>,
}

impl DcSpectrum {
    fn from_signal(grid: FrequencyGrid, n_s: Vec<f64>, phase: Vec<f64>) -> Result<DcSpectrum> {
        if n_s.iter().any(|&v| !(v >= 0.0) || !v.is_finite()) {
            return Err(Error::Numeric(
                "photon density must be finite and non-negative".into(),
            ));
        }
        let n_i = (0..grid.count()).map(|k| n_s[grid.mirror_index(k)]).collect();
        Ok(DcSpectrum {
            grid,
            n_s,
            n_i,
            degenerate_frequency: grid.center(),
            dispersion_phase: phase,
        })
    }

    /// Flat band: density `n` within `bandwidth` of the grid center, 0 outside.
    pub fn flat_band(grid: FrequencyGrid, n: f64, bandwidth: f64) -> Result<DcSpectrum> {
        let n_s = grid
            .frequencies()
            .map(|w| {
                if (w - grid.center()).abs() <= bandwidth / 2.0 {
                    n
                } else {
                    0.0
                }
            })
            .collect();
        Self::from_signal(grid, n_s, vec![0.0; grid.count()])
    }

    /// Gaussian band with peak density `n` and the given FWHM.
    pub fn gaussian_band(grid: FrequencyGrid, n: f64, fwhm: f64) -> Result<DcSpectrum> {
        let n_s = grid
            .frequencies()
            .map(|w| {
                let d = w - grid.center();
                n * (-4.0 * LN2 * d * d / (fwhm * fwhm)).exp()
            })
            .collect();
        Self::from_signal(grid, n_s, vec![0.0; grid.count()])
    }
}

/// Normalized density from the gain: 2 pi I_p beta^2 |sinh(kL)/k|^2, with a
/// series expansion of sinh(z)/z below |z| = 1e-4 to cross k = 0 smoothly.
fn density(kappa: Complex64, beta: f64, pump_flux: f64, length: f64) -> f64 {
    let z = kappa * length;
    let sinh_over = if z.norm() < 1e-4 {
        // sinh(z)/z = 1 + z^2/6 + z^4/120 + ...
        let z2 = z * z;
        length * (Complex64::new(1.0, 0.0) + z2 / 6.0 + z2 * z2 / 120.0)
    } else {
        z.sinh() / kappa
    };
    TAU * pump_flux * beta * beta * sinh_over.norm_sqr()
}

/// Evaluate the down-converted spectrum of a crystal. With `phase_matched`
/// the mismatch is ignored in the magnitude (n = sinh^2(kappa L) with
/// kappa = sqrt(2 pi I_p) beta) but still sets the exported phase.
pub fn dc_spectrum(
    coupling: &CouplingModel,
    dispersion: &DispersionModel,
    grid: FrequencyGrid,
    phase_matched: bool,
) -> Result<DcSpectrum> {
    coupling.validate(Some(grid))?;
    dispersion.validate(Some(grid))?;
    let length = dispersion.crystal_length;
    let n_s: Vec<f64> = (0..grid.count())
        .map(|k| {
            let beta = coupling.beta_at(k);
            let kap = if phase_matched {
                Complex64::new((TAU * coupling.pump_flux).sqrt() * beta, 0.0)
            } else {
                kappa(coupling, dispersion, grid, k)
            };
            density(kap, beta, coupling.pump_flux, length)
        })
        .collect();
    let phase = grid
        .frequencies()
        .map(|w| dispersion.delta_k(w) * length)
        .collect();
    DcSpectrum::from_signal(grid, n_s, phase)
}

/// Arithmetic mean of n_s over a band of the given width centered on the
/// degenerate frequency.
pub fn mean_photon_density(dc: &DcSpectrum, band: f64) -> Result<f64> {
    let (sum, count) = dc
        .grid
        .frequencies()
        .zip(&dc.n_s)
        .filter(|(w, _)| (w - dc.degenerate_frequency).abs() <= band / 2.0)
        .fold((0.0, 0usize), |(s, c), (_, &n)| (s + n, c + 1));
    if count == 0 {
        return Err(Error::Parameter(format!(
            "band {band:.3e} rad/s contains no grid samples"
        )));
    }
    Ok(sum / count as f64)
}

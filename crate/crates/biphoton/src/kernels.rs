//! Final-state kernels for two-photon processes.
//!
//! Each process is described by a narrow response g(xi) in the two-photon
//! detuning xi and a slow pair amplitude f(w) across the down-converted
//! band: sum-frequency generation (phase-matching sinc), two-photon
//! absorption (final-level Lorentzian, resonant or non-resonant), and
//! coincidence detection (exact boxes). Spectral filters multiply f by
//! amplitude/phase masks on the signal and idler arms.
//!
//! g is normalized to max|g| = 1; physical scale factors ride along in
//! `prefactor` so traces can be produced in absolute or relative units.

use num_complex::Complex64;

use crate::crystal::{CouplingModel, DispersionModel};
use crate::error::{Error, Result};
use crate::grid::FrequencyGrid;

/// Relative |f| threshold below which a bin does not count as part of the
/// kernel band when computing f_avg and the band width.
const BAND_THRESHOLD: f64 = 1e-9;

fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-8 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelKind {
    Sfg,
    Tpa,
    TpaNonresonant,
    Coincidence,
}

/// One intermediate level of a resonant two-photon transition.
#[derive(Debug, Clone, Copy)]
pub struct IntermediateLevel {
    /// Transition frequency from the ground state (rad/s).
    pub frequency: f64,
    /// Level linewidth (rad/s).
    pub linewidth: f64,
    /// Product of the two dipole matrix elements (arbitrary units).
    pub dipole_product: f64,
}

#[derive(Debug, Clone)]
pub struct InteractionKernel {
    pub kind: KernelKind,
    pub grid: FrequencyGrid,
    /// Final-state center frequency (rad/s); the grid center is its half.
    pub omega0: f64,
    /// Final-state bandwidth (rad/s): FWHM of |g|^2 (boxes: support width).
    pub gamma: f64,
    /// Response g(xi) sampled at the grid detunings.
    pub g: Vec<Complex64>,
    /// Pair amplitude f(w) sampled on the grid.
    pub f: Vec<Complex64>,
    /// Band average of f over its support.
    pub f_avg: Complex64,
    /// Width of the surviving f band (rad/s).
    pub delta: f64,
    /// Physical scale carried outside g and f; 1 when working in relative
    /// units (`absolute_units` false).
    pub prefactor: f64,
    pub absolute_units: bool,
}

fn band_stats(f: &[Complex64], spacing: f64) -> (Complex64, f64) {
    let peak = f.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let mut sum = Complex64::new(0.0, 0.0);
    let mut count = 0usize;
    for v in f {
        if v.norm() > BAND_THRESHOLD * peak {
            sum += v;
            count += 1;
        }
    }
    if count == 0 {
        (Complex64::new(0.0, 0.0), 0.0)
    } else {
        (sum / count as f64, count as f64 * spacing)
    }
}

/// FWHM of |g|^2 around the center bin, linear interpolation at the half
/// crossings; falls back to the grid span when |g|^2 never falls below half.
fn g_intensity_fwhm(g: &[Complex64], grid: FrequencyGrid) -> f64 {
    let c = grid.count() / 2;
    let half = g[c].norm_sqr() / 2.0;
    let cross = |mut k: usize, step: isize| -> Option<f64> {
        loop {
            let next = k as isize + step;
            if next < 0 || next >= grid.count() as isize {
                return None;
            }
            let nk = next as usize;
            let a = g[k].norm_sqr();
            let b = g[nk].norm_sqr();
            if a >= half && b < half {
                let frac = (a - half) / (a - b);
                return Some(grid.detuning(k) + frac * step as f64 * grid.spacing());
            }
            k = nk;
        }
    };
    match (cross(c, -1), cross(c, 1)) {
        (Some(lo), Some(hi)) => hi - lo,
        _ => grid.span(),
    }
}

/// SFG kernel: g(xi) = e^{-i dk(xi) L/2} sinc(dk(xi) L/2) from the
/// up-conversion dispersion (expanded about Omega_0), and
/// f(w) = beta(w) e^{-i dk_dc(w) L/2} sinc(dk_dc(w) L/2) from the optional
/// down-conversion phase-matching model (f = beta alone when absent).
pub fn sfg_kernel(
    uc_dispersion: &DispersionModel,
    dc_dispersion: Option<&DispersionModel>,
    coupling: &CouplingModel,
    omega0: f64,
    grid: FrequencyGrid,
) -> Result<InteractionKernel> {
    uc_dispersion.validate(None)?;
    coupling.validate(Some(grid))?;
    let half_l = uc_dispersion.crystal_length / 2.0;
    let g: Vec<Complex64> = (0..grid.count())
        .map(|k| {
            let x = uc_dispersion.delta_k(omega0 + grid.detuning(k)) * half_l;
            Complex64::new(0.0, -x).exp() * sinc(x)
        })
        .collect();
    let beta_at = |k: usize| match &coupling.beta {
        crate::crystal::Beta::Constant(b) => *b,
        crate::crystal::Beta::Samples(s) => s[k],
    };
    let f: Vec<Complex64> = (0..grid.count())
        .map(|k| {
            let pm = match dc_dispersion {
                Some(d) => {
                    let x = d.delta_k(grid.frequency(k)) * d.crystal_length / 2.0;
                    Complex64::new(0.0, -x).exp() * sinc(x)
                }
                None => Complex64::new(1.0, 0.0),
            };
            beta_at(k) * pm
        })
        .collect();
    let (f_avg, delta) = band_stats(&f, grid.spacing());
    let gamma = g_intensity_fwhm(&g, grid);
    Ok(InteractionKernel {
        kind: KernelKind::Sfg,
        grid,
        omega0,
        gamma,
        g,
        f,
        f_avg,
        delta,
        prefactor: 1.0,
        absolute_units: false,
    })
}

/// Up-conversion dispersion with a linear mismatch slope chosen so the SFG
/// response |g|^2 = sinc^2 has the requested intensity FWHM.
pub fn uc_dispersion_for_bandwidth(
    gamma_uc: f64,
    omega0: f64,
    crystal_length: f64,
) -> Result<DispersionModel> {
    if !(gamma_uc > 0.0 && crystal_length > 0.0) {
        return Err(Error::Parameter(
            "SFG bandwidth and crystal length must be positive".into(),
        ));
    }
    // sinc^2(x) reaches half maximum at x = 1.39155737825151.
    let slope = 4.0 * 1.391_557_378_251_51 / (gamma_uc * crystal_length);
    Ok(DispersionModel {
        gv_difference: slope,
        gvd_difference: 0.0,
        degenerate_frequency: omega0,
        crystal_length,
        tabulated: None,
    })
}

/// Two-photon-absorption kernel: final level at omega_fg with linewidth
/// gamma_f, g(xi) = gamma_f / (xi + i gamma_f). Without intermediate levels
/// the pair amplitude is the slow non-resonant sqrt(w (omega_fg - w)); with
/// levels it is the resonant sum over 1/(w - w_n + i gamma_n) terms for both
/// photon orderings.
pub fn tpa_kernel(
    gamma_f: f64,
    omega_fg: f64,
    levels: &[IntermediateLevel],
    grid: FrequencyGrid,
) -> Result<InteractionKernel> {
    if !(gamma_f > 0.0) {
        return Err(Error::Parameter("final-level linewidth must be positive".into()));
    }
    if levels.iter().any(|l| !(l.linewidth > 0.0)) {
        return Err(Error::Parameter(
            "intermediate-level linewidths must be positive".into(),
        ));
    }
    let g: Vec<Complex64> = (0..grid.count())
        .map(|k| gamma_f / Complex64::new(grid.detuning(k), gamma_f))
        .collect();
    let f: Vec<Complex64> = grid
        .frequencies()
        .map(|w| {
            if levels.is_empty() {
                Complex64::new((w * (omega_fg - w)).max(0.0).sqrt(), 0.0)
            } else {
                levels
                    .iter()
                    .map(|l| {
                        l.dipole_product
                            * (1.0 / Complex64::new(w - l.frequency, l.linewidth)
                                + 1.0 / Complex64::new(omega_fg - w - l.frequency, l.linewidth))
                    })
                    .sum()
            }
        })
        .collect();
    let (f_avg, delta) = band_stats(&f, grid.spacing());
    Ok(InteractionKernel {
        kind: if levels.is_empty() {
            KernelKind::TpaNonresonant
        } else {
            KernelKind::Tpa
        },
        grid,
        omega0: omega_fg,
        gamma: gamma_f,
        g,
        f,
        f_avg,
        delta,
        prefactor: 1.0,
        absolute_units: false,
    })
}

/// Coincidence detection within an optical bandwidth `delta` around half the
/// pair frequency: f and g are exact boxes, and the process behaves like SFG
/// with an effective response bandwidth of 2 delta.
pub fn coincidence_kernel(delta: f64, omega0: f64, grid: FrequencyGrid) -> Result<InteractionKernel> {
    if !(delta > 0.0) {
        return Err(Error::Parameter("coincidence bandwidth must be positive".into()));
    }
    if delta >= omega0 {
        return Err(Error::Parameter(format!(
            "coincidence bandwidth {delta:.3e} must be below the pair frequency {omega0:.3e}"
        )));
    }
    let g: Vec<Complex64> = (0..grid.count())
        .map(|k| {
            if grid.detuning(k).abs() < delta {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
        .collect();
    let f: Vec<Complex64> = grid
        .frequencies()
        .map(|w| {
            if (w - omega0 / 2.0).abs() < delta / 2.0 {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
        .collect();
    let (f_avg, band) = band_stats(&f, grid.spacing());
    Ok(InteractionKernel {
        kind: KernelKind::Coincidence,
        grid,
        omega0,
        gamma: 2.0 * delta,
        g,
        f,
        f_avg,
        delta: band,
        prefactor: 1.0,
        absolute_units: false,
    })
}

/// Amplitude/phase spectral filter on one arm.
#[derive(Debug, Clone)]
pub struct PhaseFilter {
    pub grid: FrequencyGrid,
    /// Spectral phase (rad) per bin.
    pub theta: Vec<f64>,
    /// Amplitude transmission in [0, 1] per bin.
    pub transmission: Vec<f64>,
}

impl PhaseFilter {
    pub fn identity(grid: FrequencyGrid) -> PhaseFilter {
        PhaseFilter {
            grid,
            theta: vec![0.0; grid.count()],
            transmission: vec![1.0; grid.count()],
        }
    }

    /// Uniform amplitude transmission, zero phase.
    pub fn attenuator(grid: FrequencyGrid, transmission: f64) -> Result<PhaseFilter> {
        let mut filter = PhaseFilter::identity(grid);
        filter.transmission = vec![transmission; grid.count()];
        filter.validate()?;
        Ok(filter)
    }

    pub fn validate(&self) -> Result<()> {
        if self.theta.len() != self.grid.count() || self.transmission.len() != self.grid.count() {
            return Err(Error::Parameter("filter length does not match grid".into()));
        }
        if self.theta.iter().any(|t| !t.is_finite()) {
            return Err(Error::Parameter("filter phase must be finite".into()));
        }
        if self.transmission.iter().any(|&t| !(0.0..=1.0).contains(&t)) {
            return Err(Error::Parameter(
                "filter transmission must lie in [0, 1]".into(),
            ));
        }
        Ok(())
    }

    /// Build from two-column CSV bodies "omega_rad_s,value": one for phase
    /// (rad), one for amplitude transmission. Either may be omitted; values
    /// are linearly interpolated onto the grid and must cover it.
    pub fn from_csv(
        grid: FrequencyGrid,
        theta_csv: Option<&str>,
        transmission_csv: Option<&str>,
    ) -> Result<PhaseFilter> {
        let mut filter = PhaseFilter::identity(grid);
        if let Some(text) = theta_csv {
            filter.theta = interpolate_table(&parse_two_column_csv(text)?, grid)?;
        }
        if let Some(text) = transmission_csv {
            filter.transmission = interpolate_table(&parse_two_column_csv(text)?, grid)?;
        }
        filter.validate()?;
        Ok(filter)
    }
}

/// Parse "x,y" rows; blank lines and lines starting with '#' are skipped, as
/// is a non-numeric header row.
pub fn parse_two_column_csv(text: &str) -> Result<Vec<(f64, f64)>> {
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split(',').map(str::trim);
        let (a, b) = (parts.next(), parts.next());
        match (a.and_then(|v| v.parse::<f64>().ok()), b.and_then(|v| v.parse::<f64>().ok())) {
            (Some(x), Some(y)) => rows.push((x, y)),
            _ if lineno == 0 && rows.is_empty() => continue, // header row
            _ => {
                return Err(Error::Config(format!(
                    "CSV line {}: expected two numeric columns, got '{line}'",
                    lineno + 1
                )))
            }
        }
    }
    if rows.len() < 2 {
        return Err(Error::Config("CSV needs at least two data rows".into()));
    }
    if rows.windows(2).any(|w| w[1].0 <= w[0].0) {
        return Err(Error::Config(
            "CSV first column must be strictly increasing".into(),
        ));
    }
    Ok(rows)
}

fn interpolate_table(table: &[(f64, f64)], grid: FrequencyGrid) -> Result<Vec<f64>> {
    let lo = grid.frequency(0);
    let hi = grid.frequency(grid.count() - 1);
    if table[0].0 > lo || table[table.len() - 1].0 < hi {
        return Err(Error::Grid(format!(
            "table [{:.3e}, {:.3e}] does not cover the grid [{lo:.3e}, {hi:.3e}]",
            table[0].0,
            table[table.len() - 1].0
        )));
    }
    Ok(grid
        .frequencies()
        .map(|w| {
            let i = table
                .partition_point(|&(x, _)| x < w)
                .clamp(1, table.len() - 1);
            let (x0, y0) = table[i - 1];
            let (x1, y1) = table[i];
            y0 + (y1 - y0) * (w - x0) / (x1 - x0)
        })
        .collect())
}

/// Multiply the pair amplitude by signal/idler filters:
/// f(w) <- f(w) T_s(w) T_i(W0 - w) e^{i [theta_s(w) + theta_i(W0 - w)]},
/// then recompute the band average and band width.
pub fn apply_filter(
    kernel: &InteractionKernel,
    signal_filter: &PhaseFilter,
    idler_filter: &PhaseFilter,
) -> Result<InteractionKernel> {
    for filter in [signal_filter, idler_filter] {
        filter.validate()?;
        if filter.grid != kernel.grid {
            return Err(Error::Grid("filter grid does not match kernel grid".into()));
        }
    }
    let grid = kernel.grid;
    let mut out = kernel.clone();
    for k in 0..grid.count() {
        let m = grid.mirror_index(k);
        let amp = signal_filter.transmission[k] * idler_filter.transmission[m];
        let phase = signal_filter.theta[k] + idler_filter.theta[m];
        out.f[k] *= amp * Complex64::new(0.0, phase).exp();
    }
    let (f_avg, delta) = band_stats(&out.f, grid.spacing());
    out.f_avg = f_avg;
    out.delta = delta;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crystal::Beta;
    use crate::grid::make_grid;
    use crate::units::{bandwidth_to_angular, wavelength_to_angular};
    use approx::assert_relative_eq;

    const TAU: f64 = 2.0 * std::f64::consts::PI;

    fn sum_grid() -> FrequencyGrid {
        // Around 516.5 nm, fine enough to resolve a 0.3 nm SFG response.
        let center = wavelength_to_angular(516.5e-9);
        make_grid(center, 4e13, 8192).unwrap()
    }

    fn unit_coupling() -> CouplingModel {
        CouplingModel {
            beta: Beta::Constant(1.0),
            pump_flux: 1e18,
        }
    }

    #[test]
    fn sfg_flat_dispersion() {
        let grid = sum_grid();
        let omega0 = grid.center();
        let disp = DispersionModel {
            gv_difference: 0.0,
            gvd_difference: 0.0,
            degenerate_frequency: omega0,
            crystal_length: 0.01,
            tabulated: None,
        };
        let k = sfg_kernel(&disp, None, &unit_coupling(), omega0, grid).unwrap();
        for v in &k.g {
            assert_relative_eq!(v.re, 1.0, max_relative = 1e-12);
        }
        assert_relative_eq!(k.gamma, grid.span(), max_relative = 1e-12);
    }

    #[test]
    fn sfg_bandwidth_tuning() {
        let grid = sum_grid();
        let omega0 = grid.center();
        // 0.3 nm at 516.5 nm is about 2.1185e12 rad/s.
        let gamma_uc = bandwidth_to_angular(0.3e-9, 516.5e-9);
        assert_relative_eq!(gamma_uc, 2.1185e12, max_relative = 1e-3);
        let disp = uc_dispersion_for_bandwidth(gamma_uc, omega0, 0.01).unwrap();
        let k = sfg_kernel(&disp, None, &unit_coupling(), omega0, grid).unwrap();
        assert_relative_eq!(k.gamma, gamma_uc, max_relative = 1e-3);
        assert_relative_eq!(k.g[grid.count() / 2].norm(), 1.0, max_relative = 1e-9);
    }

    #[test]
    fn sfg_pair_amplitude_zeroes() {
        // Down-conversion phase matching with a sinc zero inside the band.
        let center = wavelength_to_angular(1033e-9);
        let grid = make_grid(center, 3e14, 4096).unwrap();
        let length = 0.01;
        let slope = 2.0 * std::f64::consts::PI / (1e14 * length / 2.0) / 2.0;
        let dc = DispersionModel {
            gv_difference: slope,
            gvd_difference: 0.0,
            degenerate_frequency: center,
            crystal_length: length,
            tabulated: None,
        };
        let uc = DispersionModel {
            gv_difference: 0.0,
            gvd_difference: 0.0,
            degenerate_frequency: 2.0 * center,
            crystal_length: length,
            tabulated: None,
        };
        let k = sfg_kernel(&uc, Some(&dc), &unit_coupling(), 2.0 * center, grid).unwrap();
        // dk L/2 = pi at detuning d where slope*d*L/2 = pi.
        let d_zero = std::f64::consts::PI / (slope * length / 2.0);
        let bin = grid.index_of(center + d_zero).unwrap();
        assert!(k.f[bin].norm() < 1e-3 * k.f[grid.count() / 2].norm());
    }

    #[test]
    fn tpa_shapes() {
        let center = wavelength_to_angular(516.5e-9);
        let grid = make_grid(center, 2e9, 4096).unwrap();
        let gamma_f = TAU * 5e6;
        let omega_fg = center;
        let k = tpa_kernel(gamma_f, omega_fg, &[], grid).unwrap();
        assert_eq!(k.kind, KernelKind::TpaNonresonant);
        // |g|^2 Lorentzian with FWHM 2 gamma_f.
        assert_relative_eq!(g_intensity_fwhm(&k.g, grid), 2.0 * gamma_f, max_relative = 1e-2);
        assert_relative_eq!(k.g[grid.count() / 2].norm(), 1.0, max_relative = 1e-12);
        // f peaks at omega_fg / 2 with value omega_fg / 2; at the grid
        // (centered on omega_fg, far from omega_fg/2) f < peak.
        let f_mid = (omega_fg / 2.0 * (omega_fg - omega_fg / 2.0)).sqrt();
        assert_relative_eq!(f_mid, omega_fg / 2.0, max_relative = 1e-12);
        assert!(k.f[0].norm() < f_mid);
        // Symmetry of the non-resonant f about omega_fg / 2 (exact formula).
        let fval = |w: f64| (w * (omega_fg - w)).max(0.0).sqrt();
        for d in [1e12, 7e13, 3e14] {
            assert_relative_eq!(
                fval(omega_fg / 2.0 + d),
                fval(omega_fg / 2.0 - d),
                max_relative = 1e-12
            );
        }

        assert!(tpa_kernel(0.0, omega_fg, &[], grid).is_err());
    }

    #[test]
    fn tpa_resonant_level() {
        let center = wavelength_to_angular(516.5e-9);
        let grid = make_grid(center, 4e14, 4096).unwrap();
        let omega_fg = 2.0 * center;
        let level = IntermediateLevel {
            frequency: center + 5e13,
            linewidth: 1e12,
            dipole_product: 1.0,
        };
        let k = tpa_kernel(TAU * 5e6, omega_fg, &[level], grid).unwrap();
        assert_eq!(k.kind, KernelKind::Tpa);
        let peak_bin = (0..grid.count())
            .max_by(|&a, &b| k.f[a].norm().partial_cmp(&k.f[b].norm()).unwrap())
            .unwrap();
        let near = grid.index_of(level.frequency).unwrap();
        assert!((peak_bin as isize - near as isize).abs() <= 2);
    }

    #[test]
    fn coincidence_boxes() {
        let center = wavelength_to_angular(1033e-9);
        let grid = make_grid(center, 6e14, 4096).unwrap();
        let delta = bandwidth_to_angular(80e-9, 1033e-9);
        assert_relative_eq!(delta, 1.41222e14, max_relative = 1e-4);
        let k = coincidence_kernel(delta, 2.0 * center, grid).unwrap();
        assert_relative_eq!(k.gamma, 2.824e14, max_relative = 1e-3);
        assert_relative_eq!(k.f[grid.count() / 2].re, 1.0, max_relative = 1e-12);
        let far = grid.index_of(center + 0.75 * delta).unwrap();
        assert_eq!(k.f[far], Complex64::new(0.0, 0.0));
        let xi_out = grid
            .frequencies()
            .position(|w| w - center > 1.5 * delta)
            .unwrap();
        assert_eq!(k.g[xi_out], Complex64::new(0.0, 0.0));
        assert_relative_eq!(k.f_avg.re, 1.0, max_relative = 1e-12);
        assert_relative_eq!(k.delta, delta, max_relative = 2e-3);

        assert!(coincidence_kernel(delta, delta / 2.0, grid).is_err());
    }

    #[test]
    fn filters() {
        let center = wavelength_to_angular(1033e-9);
        let grid = make_grid(center, 6e14, 1024).unwrap();
        let delta = 1.41e14;
        let k = coincidence_kernel(delta, 2.0 * center, grid).unwrap();

        let id = PhaseFilter::identity(grid);
        let same = apply_filter(&k, &id, &id).unwrap();
        for (a, b) in k.f.iter().zip(&same.f) {
            assert_eq!(a, b);
        }
        assert_eq!(k.f_avg, same.f_avg);

        // Equal attenuation of both arms: |f_avg|^2 scales as t^4.
        let t = 0.6;
        let att = PhaseFilter::attenuator(grid, t).unwrap();
        let dimmed = apply_filter(&k, &att, &att).unwrap();
        assert_relative_eq!(
            dimmed.f_avg.norm_sqr(),
            t.powi(4) * k.f_avg.norm_sqr(),
            max_relative = 1e-12
        );
        assert_relative_eq!(dimmed.delta, k.delta, max_relative = 1e-12);

        // Composition: filtering by t1 then t2 equals filtering by t1 t2.
        let t1 = PhaseFilter::attenuator(grid, 0.8).unwrap();
        let t2 = PhaseFilter::attenuator(grid, 0.5).unwrap();
        let t12 = PhaseFilter::attenuator(grid, 0.4).unwrap();
        let seq = apply_filter(&apply_filter(&k, &t1, &t1).unwrap(), &t2, &t2).unwrap();
        let once = apply_filter(&k, &t12, &t12).unwrap();
        for (a, b) in seq.f.iter().zip(&once.f) {
            assert!((a - b).norm() <= 1e-12);
        }

        // Antisymmetric phase on both arms cancels in the pair sum.
        let mut odd = PhaseFilter::identity(grid);
        for bin in 0..grid.count() {
            odd.theta[bin] = 0.3 * grid.detuning(bin) / grid.span();
        }
        let phased = apply_filter(&k, &odd, &odd).unwrap();
        for (k_bin, (a, b)) in k.f.iter().zip(&phased.f).enumerate() {
            if k_bin == 0 {
                continue; // bin 0 has no mirror partner on an even grid
            }
            assert!((a - b).norm() <= 1e-12, "bin {k_bin}");
        }

        let other = make_grid(center, 6e14, 512).unwrap();
        let bad = PhaseFilter::identity(other);
        assert!(matches!(apply_filter(&k, &bad, &bad), Err(Error::Grid(_))));
    }

    #[test]
    fn csv_filters() {
        let center = wavelength_to_angular(1033e-9);
        let grid = make_grid(center, 1e14, 256).unwrap();
        let lo = grid.frequency(0);
        let hi = grid.frequency(grid.count() - 1);
        let theta = format!("omega,theta\n{lo},0.0\n{hi},1.0\n");
        let trans = format!("# transmission\n{lo},1.0\n{hi},0.5\n");
        let f = PhaseFilter::from_csv(grid, Some(&theta), Some(&trans)).unwrap();
        assert_relative_eq!(f.theta[0], 0.0, epsilon = 1e-12);
        assert_relative_eq!(*f.theta.last().unwrap(), 1.0, max_relative = 1e-12);
        assert_relative_eq!(f.transmission[grid.count() / 2], 0.75, max_relative = 1e-2);

        assert!(parse_two_column_csv("a,b\n1.0\n").is_err());
        assert!(parse_two_column_csv("2,1\n1,2\n").is_err());
        let short = format!("{},0\n{},1\n", lo + 1e12, hi);
        assert!(PhaseFilter::from_csv(grid, Some(&short), None).is_err());
    }
}

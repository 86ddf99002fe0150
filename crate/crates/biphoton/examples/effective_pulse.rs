//! The delay response of a broadband down-converted band behaves like a
//! femtosecond pulse, even when the beams themselves are stationary: an
//! 80 nm band at 1033 nm compresses to a few tens of femtoseconds.
//!
//! Spectral phase reshapes it like it would a real pulse. A pi step on the
//! signal arm kills the zero-delay peak; the mirrored (antisymmetric) phase
//! on the idler arm restores it exactly.

use biphoton::crystal::DcSpectrum;
use biphoton::grid::make_grid;
use biphoton::signals::effective_pulse;
use biphoton::units::{bandwidth_to_angular, wavelength_to_angular};

fn main() -> biphoton::Result<()> {
    let center = wavelength_to_angular(1033e-9);
    let band = bandwidth_to_angular(80e-9, 1033e-9);
    let grid = make_grid(center, 3.0 * band, 4096)?;
    let zeros = vec![0.0; grid.count()];

    for (name, dc) in [
        ("flat band", DcSpectrum::flat_band(grid, 1.0, band)?),
        ("gaussian band", DcSpectrum::gaussian_band(grid, 1.0, band)?),
    ] {
        let pe = effective_pulse(&dc, &zeros, &zeros)?;
        println!(
            "{name:14} P_e(0) = {:.6}, FWHM = {:.2} fs",
            pe.value_at(0.0),
            pe.fwhm()? * 1e15
        );
    }

    // A pi phase step at the band center on one arm.
    let dc = DcSpectrum::gaussian_band(grid, 1.0, band)?;
    let step: Vec<f64> = (0..grid.count())
        .map(|k| {
            if grid.detuning(k) > 0.0 {
                std::f64::consts::PI
            } else {
                0.0
            }
        })
        .collect();
    let shaped = effective_pulse(&dc, &step, &zeros)?;
    // The same phase, mirrored in frequency, applied to the idler arm is
    // antisymmetric about the band center as a sum, so it cancels.
    let mirrored: Vec<f64> = (0..grid.count()).map(|k| -step[grid.mirror_index(k)]).collect();
    let restored = effective_pulse(&dc, &step, &mirrored)?;
    println!("pi step on signal   P_e(0) = {:.6}", shaped.value_at(0.0));
    println!("plus mirrored idler P_e(0) = {:.6}", restored.value_at(0.0));
    Ok(())
}

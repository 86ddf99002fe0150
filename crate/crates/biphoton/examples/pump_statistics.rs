//! Intensity statistics of a chaotic quasi-continuous pump: a 3 ns pulse
//! with a 0.01 nm line has a ~89 ps coherence time, bunches to g2 = 2 at
//! zero delay, and decorrelates to g2 = 1 beyond the coherence time.

use biphoton::grid::make_grid;
use biphoton::pump::{pump_g2, synthesize_pump, PumpModel};
use biphoton::units::{bandwidth_to_angular, wavelength_to_angular};

fn main() -> biphoton::Result<()> {
    let center = wavelength_to_angular(516.5e-9);
    let bandwidth = bandwidth_to_angular(0.01e-9, 516.5e-9);
    let model = PumpModel::StochasticQuasiCw {
        envelope_duration: 3e-9,
        bandwidth,
        mean_flux: 1e18,
        center,
        seed: 7,
    };
    println!(
        "pump coherence time 2 pi / delta_p = {:.1} ps",
        2.0 * std::f64::consts::PI / bandwidth * 1e12
    );

    let grid = make_grid(center, 8.0 * bandwidth, 2048)?;
    let real = synthesize_pump(&model, grid)?;
    println!("one realization: support-averaged flux {:.3e} 1/s", real.mean_flux);

    let delays = [0.0, 20e-12, 50e-12, 100e-12, 300e-12, 1e-9];
    let g2 = pump_g2(&model, grid, &delays, 400)?;
    for (tau, v) in delays.iter().zip(&g2) {
        println!("g2({:7.1} ps) = {v:.3}", tau * 1e12);
    }
    Ok(())
}

//! Coincidence counting as a two-photon process: within a gating time much
//! longer than the photons' coherence time, coincidence rates decompose
//! into the same coherent (paired) and incoherent (accidental) parts. The
//! paired-to-accidental ratio grows as (1 + 1/n) / (2 Tg Delta): pairs win
//! only below n ~ 1 / (2 Tg Delta), so a broadband beam under a long gate
//! is accidental-dominated even at small n.

use biphoton::crystal::DcSpectrum;
use biphoton::grid::make_grid;
use biphoton::signals::{coincidence_rates, effective_pulse, ClosedInputs};
use biphoton::units::{bandwidth_to_angular, wavelength_to_angular};

fn main() -> biphoton::Result<()> {
    let center = wavelength_to_angular(1033e-9);
    let band = bandwidth_to_angular(80e-9, 1033e-9);
    let grid = make_grid(center, 3.0 * band, 2048)?;
    let gate = 1e-9;

    println!("gate x band = {:.0} (needs >= 10)", gate * band);
    println!("{:>8}  {:>12}  {:>12}  {:>10}", "n", "paired", "accidental", "ratio");
    for n in [1e-3, 1e-2, 1e-1, 1.0, 10.0] {
        let dc = DcSpectrum::flat_band(grid, n, band)?;
        let zeros = vec![0.0; grid.count()];
        let pe = effective_pulse(&dc, &zeros, &zeros)?;
        let inputs = ClosedInputs {
            n,
            delta: band,
            f_avg_sq: 1.0,
            gamma: 2.0 * band,
            delta_p: 0.0,
            g_at_pump_sq: 1.0,
            g_sq_integral: 2.0 * band,
            pump_time_scale: gate,
            kappa_scale: 1.0,
            gate_time: gate,
            self_mixing: false,
        };
        let trace = coincidence_rates(&inputs, &pe, &[1.0], &[0.0])?;
        println!(
            "{n:8.0e}  {:12.4e}  {:12.4e}  {:10.3e}",
            trace.coherent[0],
            trace.incoherent[0],
            trace.coherent[0] / trace.incoherent[0]
        );
    }
    Ok(())
}

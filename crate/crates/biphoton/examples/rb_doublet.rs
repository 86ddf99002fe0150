//! Two-photon spectroscopy of the rubidium 4D hyperfine doublet with
//! down-converted light: scanning the pump wavelength scans the two-photon
//! resonance, and the 0.01 nm pump line nearly resolves the 13.4 GHz
//! splitting while the incoherent background stays flat.

use biphoton::config::RunConfig;
use biphoton::scans::{run_scan, scan_spec};

fn main() -> biphoton::Result<()> {
    let config = RunConfig::from_toml(include_str!("../presets/fig4.toml"))?;
    let spec = scan_spec(config.scan.as_ref().unwrap(), &config)?;
    let table = run_scan(&spec, &config)?;

    let coherent: Vec<f64> = table.rows.iter().map(|r| r.coherent).collect();
    let maxima: Vec<usize> = (1..coherent.len() - 1)
        .filter(|&i| coherent[i] > coherent[i - 1] && coherent[i] >= coherent[i + 1])
        .collect();
    println!("{} coherent maxima across the scan", maxima.len());
    for &i in &maxima {
        println!(
            "  pump at {:.6e} rad/s, coherent {:.3e}",
            table.rows[i].axis, table.rows[i].coherent
        );
    }
    if let [a, b] = maxima[..] {
        let sep = (table.rows[a].axis - table.rows[b].axis).abs();
        println!(
            "peak separation {:.2} GHz (physical splitting 13.40 GHz, pulled \
             together by the pump line)",
            sep / (2.0 * std::f64::consts::PI) / 1e9
        );
    }
    let inc: Vec<f64> = table.rows.iter().map(|r| r.incoherent).collect();
    let spread = inc.iter().cloned().fold(0.0f64, f64::max)
        / inc.iter().cloned().fold(f64::INFINITY, f64::min)
        - 1.0;
    println!("incoherent trace spread across the scan: {spread:.2e}");
    Ok(())
}

//! The power signature that separates pair effects from classical ones:
//! the coherent two-photon signal scales as n^2 + n with the mean photon
//! number of the band — linear when pairs are rare, quadratic when the
//! band is bright — while the incoherent signal is n^2 throughout.

use biphoton::config::RunConfig;
use biphoton::scans::{run_scan, scan_spec};

const CONFIG: &str = r#"
[grid]
center = "1033 nm"
span = "240 nm"
points = 2048

[pump]
model = "cw"
center = "516.5 nm"
mean_flux = "1e18 1/s"

[downconversion]
shape = "flat"
center = "1033 nm"
bandwidth = "80 nm"
mean_photon_number = 1.0

[kernel]
kind = "sfg"
center = "516.5 nm"
bandwidth = "0.3 nm"

[scan]
kind = "power-sweep"
start = "1e-3"
stop = "1e2"
points = 26
scale = "log"
"#;

fn main() -> biphoton::Result<()> {
    let config = RunConfig::from_toml(CONFIG)?;
    let spec = scan_spec(config.scan.as_ref().unwrap(), &config)?;
    let table = run_scan(&spec, &config)?;

    println!("{:>10}  {:>12}  {:>12}  {:>8}", "n", "coherent", "incoherent", "slope");
    for pair in table.rows.windows(2) {
        let [a, b] = pair else { unreachable!() };
        let slope = (b.coherent / a.coherent).ln() / (b.axis / a.axis).ln();
        println!(
            "{:10.3e}  {:12.4e}  {:12.4e}  {:8.3}",
            a.axis, a.coherent, a.incoherent, slope
        );
    }
    Ok(())
}

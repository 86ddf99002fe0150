//! Unit handling: wavelength <-> angular frequency conversions and parsing of
//! suffixed quantity strings ("0.01 nm", "3 ns", "2.1e12 rad/s", "5 MHz").
//!
//! All internal frequencies are angular (rad/s); all internal times are
//! seconds. User-facing values carry explicit unit suffixes and are converted
//! at parse time. A bare number where a unit is required is an error.

use crate::error::{Error, Result};

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Angular frequency (rad/s) of light with the given vacuum wavelength (m).
pub fn wavelength_to_angular(lambda_m: f64) -> f64 {
    2.0 * std::f64::consts::PI * SPEED_OF_LIGHT / lambda_m
}

/// Vacuum wavelength (m) of light with the given angular frequency (rad/s).
pub fn angular_to_wavelength(omega: f64) -> f64 {
    2.0 * std::f64::consts::PI * SPEED_OF_LIGHT / omega
}

/// Convert a wavelength bandwidth (m, FWHM) at center wavelength (m) into an
/// angular-frequency bandwidth (rad/s): dw = 2 pi c dl / l^2.
pub fn bandwidth_to_angular(dlambda_m: f64, lambda_m: f64) -> f64 {
    2.0 * std::f64::consts::PI * SPEED_OF_LIGHT * dlambda_m / (lambda_m * lambda_m)
}

/// A parsed physical quantity, dimension resolved by the unit suffix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Quantity {
    /// Length in meters (from nm, um, mm, m). For spectral fields this is a
    /// wavelength or a wavelength bandwidth; the caller supplies the center
    /// needed for conversion.
    Length(f64),
    /// Time in seconds (from fs, ps, ns, us, ms, s).
    Time(f64),
    /// Angular frequency in rad/s (from "rad/s" directly, or Hz/kHz/MHz/GHz/THz
    /// multiplied by 2 pi).
    AngularFrequency(f64),
    /// Dimensionless rate 1/s (from "1/s").
    Rate(f64),
    /// Bare dimensionless number (from "1" suffix or unitless contexts that
    /// explicitly allow it).
    Dimensionless(f64),
}

impl Quantity {
    /// Parse a string of the form "<number> <unit>". A missing unit is an error.
    pub fn parse(s: &str) -> Result<Quantity> {
        let s = s.trim();
        // Number first (digits, sign, dot, scientific e/E with signed
        // exponent), unit suffix after.
        let bytes = s.as_bytes();
        let mut end = 0;
        while end < bytes.len() {
            let c = bytes[end] as char;
            let numeric = c.is_ascii_digit()
                || c == '.'
                || ((c == '+' || c == '-') && (end == 0 || matches!(bytes[end - 1], b'e' | b'E')))
                || ((c == 'e' || c == 'E')
                    && end + 1 < bytes.len()
                    && (bytes[end + 1].is_ascii_digit() || matches!(bytes[end + 1], b'+' | b'-')));
            if !numeric {
                break;
            }
            end += 1;
        }
        let (num, unit) = s.split_at(end);
        if unit.trim().is_empty() {
            return Err(Error::Config(format!(
                "quantity '{s}' is missing a unit suffix"
            )));
        }
        let value: f64 = num
            .trim()
            .parse()
            .map_err(|_| Error::Config(format!("cannot parse number in quantity '{s}'")))?;
        let q = match unit.trim() {
            "nm" => Quantity::Length(value * 1e-9),
            "um" => Quantity::Length(value * 1e-6),
            "mm" => Quantity::Length(value * 1e-3),
            "m" => Quantity::Length(value),
            "fs" => Quantity::Time(value * 1e-15),
            "ps" => Quantity::Time(value * 1e-12),
            "ns" => Quantity::Time(value * 1e-9),
            "us" => Quantity::Time(value * 1e-6),
            "ms" => Quantity::Time(value * 1e-3),
            "s" => Quantity::Time(value),
            "rad/s" => Quantity::AngularFrequency(value),
            "Hz" => Quantity::AngularFrequency(value * 2.0 * std::f64::consts::PI),
            "kHz" => Quantity::AngularFrequency(value * 2.0 * std::f64::consts::PI * 1e3),
            "MHz" => Quantity::AngularFrequency(value * 2.0 * std::f64::consts::PI * 1e6),
            "GHz" => Quantity::AngularFrequency(value * 2.0 * std::f64::consts::PI * 1e9),
            "THz" => Quantity::AngularFrequency(value * 2.0 * std::f64::consts::PI * 1e12),
            "1/s" => Quantity::Rate(value),
            "1" => Quantity::Dimensionless(value),
            other => {
                return Err(Error::Config(format!(
                    "unknown unit '{other}' in quantity '{s}'"
                )))
            }
        };
        Ok(q)
    }

    /// Interpret as an absolute optical angular frequency (rad/s); lengths are
    /// treated as vacuum wavelengths.
    pub fn as_optical_frequency(&self) -> Result<f64> {
        match *self {
            Quantity::Length(l) if l > 0.0 => Ok(wavelength_to_angular(l)),
            Quantity::AngularFrequency(w) => Ok(w),
            _ => Err(Error::Config(format!(
                "expected a wavelength or angular frequency, got {self:?}"
            ))),
        }
    }

    /// Interpret as a spectral bandwidth (rad/s). Length bandwidths convert
    /// via the supplied center wavelength (m).
    pub fn as_bandwidth(&self, center_wavelength_m: f64) -> Result<f64> {
        match *self {
            Quantity::Length(l) if l > 0.0 => Ok(bandwidth_to_angular(l, center_wavelength_m)),
            Quantity::AngularFrequency(w) => Ok(w),
            _ => Err(Error::Config(format!(
                "expected a bandwidth (length or angular frequency), got {self:?}"
            ))),
        }
    }

    pub fn as_time(&self) -> Result<f64> {
        match *self {
            Quantity::Time(t) => Ok(t),
            _ => Err(Error::Config(format!("expected a time, got {self:?}"))),
        }
    }

    pub fn as_rate(&self) -> Result<f64> {
        match *self {
            Quantity::Rate(r) => Ok(r),
            Quantity::Dimensionless(r) => Ok(r),
            _ => Err(Error::Config(format!(
                "expected a rate (1/s), got {self:?}"
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn wavelength_roundtrip() {
        let w = wavelength_to_angular(516.5e-9);
        assert_relative_eq!(angular_to_wavelength(w), 516.5e-9, max_relative = 1e-12);
    }

    #[test]
    fn pump_bandwidth_conversion() {
        // 0.01 nm at 516.5 nm is about 7.06e10 rad/s, coherence time ~89 ps.
        let dw = bandwidth_to_angular(0.01e-9, 516.5e-9);
        assert_relative_eq!(dw, 7.0617e10, max_relative = 1e-3);
        let tc = 2.0 * std::f64::consts::PI / dw;
        assert_relative_eq!(tc, 88.98e-12, max_relative = 1e-3);
    }

    #[test]
    fn parse_suffixed() {
        match Quantity::parse("3 ns").unwrap() {
            Quantity::Time(t) => assert_relative_eq!(t, 3e-9, max_relative = 1e-12),
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(
            Quantity::parse("2.1e12 rad/s").unwrap(),
            Quantity::AngularFrequency(2.1e12)
        );
        match Quantity::parse("5 MHz").unwrap() {
            Quantity::AngularFrequency(w) => {
                assert_relative_eq!(w, 2.0 * std::f64::consts::PI * 5e6)
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(Quantity::parse("0.3").is_err());
        assert!(Quantity::parse("7 parsec").is_err());
    }
}

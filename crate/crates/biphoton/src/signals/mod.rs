//! Signal evaluation: the effective pulse, general transform-based coherent
//! and incoherent signals, regime closed forms, ratios, coincidence rates,
//! and inhomogeneous averaging.
//!
//! All traces are in relative units; named scale factors that would convert
//! them to absolute rates are carried in `prefactors`.

mod closed;
mod effective;
mod general;

pub use closed::{
    check_regime, coherent_closed, coincidence_rates, final_state_decay, incoherent_closed,
    inhomogeneous_average, signal_ratio, ClosedInputs,
};
pub use effective::{effective_pulse, EffectivePulse};
pub use general::{coherent_general, incoherent_general, pump_autoconvolution_energy, sfg_excitation_spectrum};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    General,
    NarrowPump,
    BroadPump,
    Coincidence,
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Regime::General => "general",
            Regime::NarrowPump => "narrow-pump",
            Regime::BroadPump => "broad-pump",
            Regime::Coincidence => "coincidence",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxisKind {
    /// Signal-idler delay (s).
    Delay,
    /// Laboratory time (s).
    Time,
    /// Angular frequency (rad/s).
    Frequency,
}

impl AxisKind {
    pub fn label(&self) -> &'static str {
        match self {
            AxisKind::Delay => "delay_s",
            AxisKind::Time => "time_s",
            AxisKind::Frequency => "frequency_rad_s",
        }
    }
}

/// Coherent / incoherent signal pair along one axis.
#[derive(Debug, Clone)]
pub struct SignalTrace {
    pub axis_kind: AxisKind,
    pub axis: Vec<f64>,
    pub coherent: Vec<f64>,
    pub incoherent: Vec<f64>,
    pub regime: Regime,
    pub prefactors: Vec<(String, f64)>,
    pub metadata: Vec<(String, String)>,
}

impl SignalTrace {
    pub fn new(
        axis_kind: AxisKind,
        axis: Vec<f64>,
        coherent: Vec<f64>,
        incoherent: Vec<f64>,
        regime: Regime,
    ) -> Result<SignalTrace> {
        if coherent.len() != axis.len() || incoherent.len() != axis.len() {
            return Err(Error::Numeric("trace component lengths differ".into()));
        }
        if coherent
            .iter()
            .chain(&incoherent)
            .any(|&v| !v.is_finite() || v < 0.0)
        {
            return Err(Error::Numeric(
                "signal components must be finite and non-negative".into(),
            ));
        }
        Ok(SignalTrace {
            axis_kind,
            axis,
            coherent,
            incoherent,
            regime,
            prefactors: Vec::new(),
            metadata: Vec::new(),
        })
    }

    /// Pointwise coherent / incoherent ratio.
    pub fn ratio(&self) -> Result<Vec<f64>> {
        if self.incoherent.iter().any(|&v| v == 0.0) {
            return Err(Error::Numeric(
                "incoherent component vanishes; ratio undefined".into(),
            ));
        }
        Ok(self
            .coherent
            .iter()
            .zip(&self.incoherent)
            .map(|(c, i)| c / i)
            .collect())
    }
}

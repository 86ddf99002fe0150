//! Closed-form signal expressions in the two analytic regimes, signal
//! ratios, coincidence rates, and inhomogeneous averaging.
//!
//! Narrow pump (pump much narrower than the final state):
//!   I^c  = |g(dw_p)|^2 |f_avg|^2 D^2 (n^2+n) P_e(tau)
//!   I^ic = [Int |g|^2 dxi] |f_avg|^2 D n^2 g2_p(tau)
//! Broad pump (pump much broader than the final state, e.g. TPA):
//!   I^c  = kappa (T/delta_p) D^2 (n^2+n) P_e(tau)
//!   I^ic = kappa T g2_p(tau) D n^2
//! with T the longest timescale (final-state lifetime for a continuous
//! pump, pulse duration for a quasi-continuous one), both carrying the
//! step-exponential u(t) e^{-2 gamma_f t} in laboratory time. Self-mixing
//! of a single beam doubles the incoherent term exactly.

use crate::error::{Error, Result};
use crate::signals::{AxisKind, Regime, SignalTrace};

use super::effective::EffectivePulse;

/// Margin factor for the regime bandwidth ordering checks.
const REGIME_MARGIN: f64 = 5.0;

/// Scalar inputs to the closed forms.
#[derive(Debug, Clone)]
pub struct ClosedInputs {
    /// Mean photon density over the band.
    pub n: f64,
    /// Overlap bandwidth of the kernel with the down-converted band (rad/s).
    pub delta: f64,
    /// |f_avg|^2 of the (possibly filtered) kernel.
    pub f_avg_sq: f64,
    /// Final-state bandwidth gamma (rad/s).
    pub gamma: f64,
    /// Pump bandwidth delta_p (rad/s); 0 means an ideal CW pump.
    pub delta_p: f64,
    /// |g(<w_p> - W0)|^2, the response sampled at the pump line.
    pub g_at_pump_sq: f64,
    /// Int |g(xi)|^2 dxi (rad/s).
    pub g_sq_integral: f64,
    /// Broad-pump timescale T: final-state lifetime 2 pi / gamma for a
    /// continuous pump, pulse duration for a quasi-continuous one (s).
    pub pump_time_scale: f64,
    /// Process scale (kappa for TPA); 1 in relative units.
    pub kappa_scale: f64,
    /// Detector gating time for coincidence rates (s).
    pub gate_time: f64,
    /// Both photons taken from one beam: doubles the incoherent term.
    pub self_mixing: bool,
}

impl ClosedInputs {
    fn incoherent_factor(&self) -> f64 {
        if self.self_mixing {
            2.0
        } else {
            1.0
        }
    }
}

/// Validate the bandwidth ordering a regime assumes, with a 5x margin.
/// Never falls back silently: a violated ordering is a hard error.
pub fn check_regime(regime: Regime, gamma: f64, delta_p: f64) -> Result<()> {
    match regime {
        Regime::NarrowPump => {
            if delta_p > 0.0 && gamma < REGIME_MARGIN * delta_p {
                return Err(Error::Regime(format!(
                    "narrow-pump forms need the final-state bandwidth {gamma:.3e} rad/s to \
                     exceed {REGIME_MARGIN}x the pump bandwidth {delta_p:.3e} rad/s"
                )));
            }
        }
        Regime::BroadPump => {
            if delta_p < REGIME_MARGIN * gamma {
                return Err(Error::Regime(format!(
                    "broad-pump forms need the pump bandwidth {delta_p:.3e} rad/s to \
                     exceed {REGIME_MARGIN}x the final-state bandwidth {gamma:.3e} rad/s"
                )));
            }
        }
        Regime::General | Regime::Coincidence => {}
    }
    Ok(())
}

/// Final-state temporal response factor u(t) e^{-2 gamma_f t}.
pub fn final_state_decay(gamma_f: f64, t: f64) -> f64 {
    if t < 0.0 {
        0.0
    } else {
        (-2.0 * gamma_f * t).exp()
    }
}

fn validated(inp: &ClosedInputs, regime: Regime) -> Result<()> {
    if !(inp.n >= 0.0 && inp.delta > 0.0) {
        return Err(Error::Parameter(
            "closed forms need n >= 0 and a positive overlap bandwidth".into(),
        ));
    }
    check_regime(regime, inp.gamma, inp.delta_p)
}

/// Coherent closed form over a signal-idler delay axis, at the moment the
/// pump envelope peaks.
pub fn coherent_closed(
    regime: Regime,
    inp: &ClosedInputs,
    pe: &EffectivePulse,
    delays: &[f64],
) -> Result<SignalTrace> {
    validated(inp, regime)?;
    let band = inp.delta * inp.delta * (inp.n * inp.n + inp.n);
    let scale = match regime {
        Regime::NarrowPump => inp.g_at_pump_sq * inp.f_avg_sq * band,
        Regime::BroadPump => {
            inp.kappa_scale * inp.pump_time_scale / inp.delta_p * inp.f_avg_sq * band
        }
        other => {
            return Err(Error::Parameter(format!(
                "no coherent closed form for the {other} regime"
            )))
        }
    };
    let coherent: Vec<f64> = delays.iter().map(|&tau| scale * pe.value_at(tau)).collect();
    let mut trace = SignalTrace::new(
        AxisKind::Delay,
        delays.to_vec(),
        coherent,
        vec![0.0; delays.len()],
        regime,
    )?;
    trace.prefactors.push(("kappa_scale".into(), inp.kappa_scale));
    Ok(trace)
}

/// Incoherent closed form over a delay axis. `pump_g2` carries the pump
/// intensity correlation g2_p at each delay (all ones for CW).
pub fn incoherent_closed(
    regime: Regime,
    inp: &ClosedInputs,
    pump_g2: &[f64],
    delays: &[f64],
) -> Result<SignalTrace> {
    validated(inp, regime)?;
    if pump_g2.len() != delays.len() {
        return Err(Error::Parameter(
            "pump correlation length does not match the delay axis".into(),
        ));
    }
    let band = inp.delta * inp.n * inp.n * inp.incoherent_factor();
    let scale = match regime {
        Regime::NarrowPump => inp.g_sq_integral * inp.f_avg_sq * band,
        Regime::BroadPump => inp.kappa_scale * inp.pump_time_scale * band,
        other => {
            return Err(Error::Parameter(format!(
                "no incoherent closed form for the {other} regime"
            )))
        }
    };
    let incoherent: Vec<f64> = pump_g2.iter().map(|&g2| scale * g2).collect();
    let mut trace = SignalTrace::new(
        AxisKind::Delay,
        delays.to_vec(),
        vec![0.0; delays.len()],
        incoherent,
        regime,
    )?;
    trace.prefactors.push(("kappa_scale".into(), inp.kappa_scale));
    Ok(trace)
}

/// Coherent-to-incoherent ratio per the regime formula:
/// narrow pump D/(gamma g2_p), broad pump D/(delta_p g2_p), coincidence
/// 1/(2 Tg D g2_p), each times (1 + 1/n) P_e(tau).
pub fn signal_ratio(
    regime: Regime,
    inp: &ClosedInputs,
    pe: &EffectivePulse,
    pump_g2: &[f64],
    delays: &[f64],
) -> Result<Vec<f64>> {
    if inp.n <= 0.0 {
        return Err(Error::Parameter(
            "the coherent/incoherent ratio needs n > 0".into(),
        ));
    }
    if pump_g2.len() != delays.len() {
        return Err(Error::Parameter(
            "pump correlation length does not match the delay axis".into(),
        ));
    }
    let bandwidth_factor = match regime {
        Regime::NarrowPump => {
            check_regime(regime, inp.gamma, inp.delta_p)?;
            inp.delta / inp.gamma
        }
        Regime::BroadPump => {
            check_regime(regime, inp.gamma, inp.delta_p)?;
            inp.delta / inp.delta_p
        }
        Regime::Coincidence => {
            if !(inp.gate_time > 0.0) {
                return Err(Error::Parameter("coincidence ratio needs a gate time".into()));
            }
            1.0 / (2.0 * inp.gate_time * inp.delta)
        }
        Regime::General => {
            return Err(Error::Parameter(
                "no ratio formula for the general regime; divide the traces".into(),
            ))
        }
    };
    let photon_factor = (1.0 + 1.0 / inp.n) / inp.incoherent_factor();
    Ok(delays
        .iter()
        .zip(pump_g2)
        .map(|(&tau, &g2)| bandwidth_factor * photon_factor * pe.value_at(tau) / g2)
        .collect())
}

/// Gated coincidence rates over a delay axis:
/// Rc^c = D (n^2+n) P_e(tau), Rc^ic = 2 Tg D^2 n^2 g2_p(tau).
/// Requires the gate time to dwarf the photon coherence time 1/D.
pub fn coincidence_rates(
    inp: &ClosedInputs,
    pe: &EffectivePulse,
    pump_g2: &[f64],
    delays: &[f64],
) -> Result<SignalTrace> {
    if !(inp.gate_time * inp.delta >= 10.0) {
        return Err(Error::Regime(format!(
            "gate time {:.3e} s must be at least 10x the photon coherence time {:.3e} s",
            inp.gate_time,
            1.0 / inp.delta
        )));
    }
    if pump_g2.len() != delays.len() {
        return Err(Error::Parameter(
            "pump correlation length does not match the delay axis".into(),
        ));
    }
    let c_scale = inp.f_avg_sq * inp.delta * (inp.n * inp.n + inp.n);
    let ic_scale = inp.f_avg_sq
        * 2.0
        * inp.gate_time
        * inp.delta
        * inp.delta
        * inp.n
        * inp.n
        * inp.incoherent_factor();
    let coherent: Vec<f64> = delays.iter().map(|&t| c_scale * pe.value_at(t)).collect();
    let incoherent: Vec<f64> = pump_g2.iter().map(|&g2| ic_scale * g2).collect();
    let mut trace = SignalTrace::new(
        AxisKind::Delay,
        delays.to_vec(),
        coherent,
        incoherent,
        Regime::Coincidence,
    )?;
    trace
        .prefactors
        .push(("gate_time_s".into(), inp.gate_time));
    Ok(trace)
}

/// Weighted average of traces generated per final-state center frequency,
/// for inhomogeneously broadened final states. `nodes` holds (Omega_0,
/// probability weight) pairs; weights must sum to 1.
pub fn inhomogeneous_average(
    mut generator: impl FnMut(f64) -> Result<SignalTrace>,
    nodes: &[(f64, f64)],
) -> Result<SignalTrace> {
    if nodes.is_empty() {
        return Err(Error::Parameter("no quadrature nodes".into()));
    }
    let total: f64 = nodes.iter().map(|&(_, w)| w).sum();
    if (total - 1.0).abs() > 1e-6 {
        return Err(Error::Parameter(format!(
            "final-state distribution weights sum to {total}, expected 1"
        )));
    }
    let mut out: Option<SignalTrace> = None;
    for &(omega0, weight) in nodes {
        let trace = generator(omega0)?;
        match &mut out {
            None => {
                let mut t = trace;
                for v in t.coherent.iter_mut().chain(t.incoherent.iter_mut()) {
                    *v *= weight;
                }
                out = Some(t);
            }
            Some(acc) => {
                if acc.axis.len() != trace.axis.len() {
                    return Err(Error::Numeric(
                        "per-frequency traces have mismatched axes".into(),
                    ));
                }
                for (a, v) in acc.coherent.iter_mut().zip(&trace.coherent) {
                    *a += weight * v;
                }
                for (a, v) in acc.incoherent.iter_mut().zip(&trace.incoherent) {
                    *a += weight * v;
                }
            }
        }
    }
    Ok(out.unwrap())
}

//! RF drive synthesis: static phase plus sinusoidal phase dither, periodic
//! gate envelopes for chopped operation, and the complementary
//! reference/payload timing used by the frequency-tuner mode.

use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

/// Periodic on/off envelope. `repetition_hz = 0` means always on.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GateEnvelope {
    pub repetition_hz: f64,
    /// On fraction of each period, in [0, 1].
    pub duty: f64,
    /// Time offset of the rising edge, seconds.
    pub phase_offset_s: f64,
}

impl GateEnvelope {
    pub const ALWAYS_ON: Self =
        Self { repetition_hz: 0.0, duty: 1.0, phase_offset_s: 0.0 };

    pub fn new(repetition_hz: f64, duty: f64, phase_offset_s: f64) -> Result<Self, DriveError> {
        let gate = Self { repetition_hz, duty, phase_offset_s };
        gate.validate()?;
        Ok(gate)
    }

    pub fn validate(&self) -> Result<(), DriveError> {
        if !(0.0..=1.0).contains(&self.duty) {
            return Err(DriveError::InvalidDuty(self.duty));
        }
        if self.repetition_hz < 0.0 || !self.repetition_hz.is_finite() {
            return Err(DriveError::InvalidRepetition(self.repetition_hz));
        }
        Ok(())
    }

    pub fn period_s(&self) -> Option<f64> {
        (self.repetition_hz > 0.0).then(|| 1.0 / self.repetition_hz)
    }

    /// Gate state at time `t`: on during the first `duty` fraction of each
    /// period, measured from the rising edge.
    pub fn is_on(&self, t: f64) -> bool {
        let Some(period) = self.period_s() else {
            return self.duty > 0.0;
        };
        if self.duty >= 1.0 {
            return true;
        }
        let phase = (t - self.phase_offset_s).rem_euclid(period);
        phase < self.duty * period
    }
}

/// One AOM's RF drive: carrier, static phase, and the phase-dither used by the
/// locking scheme.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct RfDrive {
    pub carrier_hz: f64,
    /// Static drive phase, rad.
    pub phase0: f64,
    pub dither_hz: f64,
    /// Phase modulation depth, rad.
    pub dither_depth: f64,
    pub gate: GateEnvelope,
}

impl RfDrive {
    pub fn new(carrier_hz: f64, phase0: f64) -> Result<Self, DriveError> {
        let drive = Self {
            carrier_hz,
            phase0,
            dither_hz: 0.0,
            dither_depth: 0.0,
            gate: GateEnvelope::ALWAYS_ON,
        };
        drive.validate()?;
        Ok(drive)
    }

    pub fn with_dither(mut self, dither_hz: f64, dither_depth: f64) -> Result<Self, DriveError> {
        self.dither_hz = dither_hz;
        self.dither_depth = dither_depth;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<(), DriveError> {
        if !(self.carrier_hz > 0.0) || !self.carrier_hz.is_finite() {
            return Err(DriveError::InvalidCarrier(self.carrier_hz));
        }
        if self.dither_hz < 0.0 || self.dither_depth < 0.0 {
            return Err(DriveError::InvalidDither {
                dither_hz: self.dither_hz,
                dither_depth: self.dither_depth,
            });
        }
        self.gate.validate()
    }

    /// Drive-induced splitter phase θ at time `t`:
    /// `phase0 + depth·sin(2π·f_dither·t)`.
    pub fn instantaneous_phase(&self, t: f64) -> f64 {
        if self.dither_depth == 0.0 {
            return self.phase0;
        }
        self.phase0 + self.dither_depth * (TAU * self.dither_hz * t).sin()
    }

    pub fn is_on(&self, t: f64) -> bool {
        self.gate.is_on(t)
    }
}

/// Signed rate at which the second drive's phase advances relative to the
/// first: Δω = 2π·(f₂ − f₁). This is the beat frequency of the interferometer
/// output.
pub fn beat_delta_omega(rf1: &RfDrive, rf2: &RfDrive) -> f64 {
    TAU * (rf2.carrier_hz - rf1.carrier_hz)
}

/// Gate set for time-multiplexed frequency-tuner operation: a bright locking
/// reference and the weak payload light alternate; the photon counter is
/// enabled only well inside the payload window.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct TimingSequence {
    /// Locking-reference light window.
    pub lr_gate: GateEnvelope,
    /// Weak coherent (payload) light window, complementary to `lr_gate`.
    pub coh_gate: GateEnvelope,
    /// Photon-counter enable, contained in the payload window.
    pub spde_gate: GateEnvelope,
    /// Feedback loop enable, aligned with the reference window.
    pub feedback_enable: GateEnvelope,
}

/// Build the tuner timing: reference on for `lr_duty` of each `1/lr_hz`
/// period, payload on for the remainder, counter enable of `spde_duty`
/// centered in the payload window. Rejects enables that would spill into the
/// reference window.
pub fn make_tuner_sequence(
    lr_duty: f64,
    lr_hz: f64,
    spde_duty: f64,
) -> Result<TimingSequence, DriveError> {
    if !(lr_duty > 0.0 && lr_duty < 1.0) {
        return Err(DriveError::InvalidDuty(lr_duty));
    }
    if !(lr_hz > 0.0) || !lr_hz.is_finite() {
        return Err(DriveError::InvalidRepetition(lr_hz));
    }
    if !(0.0..=1.0).contains(&spde_duty) {
        return Err(DriveError::InvalidDuty(spde_duty));
    }
    let coh_duty = 1.0 - lr_duty;
    if spde_duty > coh_duty {
        return Err(DriveError::SpdeOverlapsReference { spde_duty, coh_duty });
    }
    let period = 1.0 / lr_hz;
    let lr_gate = GateEnvelope::new(lr_hz, lr_duty, 0.0)?;
    let coh_gate = GateEnvelope::new(lr_hz, coh_duty, lr_duty * period)?;
    let spde_offset = lr_duty * period + 0.5 * (coh_duty - spde_duty) * period;
    let spde_gate = GateEnvelope::new(lr_hz, spde_duty, spde_offset)?;
    Ok(TimingSequence { lr_gate, coh_gate, spde_gate, feedback_enable: lr_gate })
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DriveError {
    #[error("duty cycle {0} outside its valid range")]
    InvalidDuty(f64),
    #[error("repetition rate {0} must be finite and non-negative")]
    InvalidRepetition(f64),
    #[error("carrier frequency {0} must be finite and positive")]
    InvalidCarrier(f64),
    #[error("invalid dither: {dither_hz} Hz, depth {dither_depth} rad")]
    InvalidDither { dither_hz: f64, dither_depth: f64 },
    #[error("counter enable duty {spde_duty} exceeds payload window {coh_duty}")]
    SpdeOverlapsReference { spde_duty: f64, coh_duty: f64 },
}

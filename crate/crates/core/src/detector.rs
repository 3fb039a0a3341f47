//! Detector models: an analog photodiode with additive Gaussian noise and a
//! clocked single-photon detector with per-trigger Bernoulli clicks, dark
//! counts and an enable gate.

use crate::drive::GateEnvelope;
use rand::Rng;
use rand_distr::{Binomial, Distribution, Normal};
use serde::{Deserialize, Serialize};

/// Analog photodiode.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct PdModel {
    /// Output volts per intensity unit.
    pub responsivity: f64,
    /// Additive Gaussian noise per sample, volts.
    pub noise_sigma: f64,
    /// Recorded-trace sampling rate, Hz.
    pub sample_hz: f64,
}

impl PdModel {
    pub fn sample(&self, intensity: f64, rng: &mut impl Rng) -> f64 {
        debug_assert!(intensity >= 0.0);
        let mean = self.responsivity * intensity;
        if self.noise_sigma == 0.0 {
            return mean;
        }
        let normal = Normal::new(mean, self.noise_sigma).expect("valid sigma");
        normal.sample(rng)
    }
}

/// Clocked single-photon detector. Each internal trigger yields at most one
/// click with probability `efficiency·rate/trigger_hz + dark_prob`; triggers
/// outside the enable gate never click. No dead time or afterpulsing.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SpdModel {
    /// Detection efficiency, fraction.
    pub efficiency: f64,
    /// Dark-count probability per trigger.
    pub dark_prob: f64,
    /// Internal trigger clock, Hz.
    pub trigger_hz: f64,
    /// Counting window length, seconds.
    pub window_s: f64,
    pub enable_gate: GateEnvelope,
}

impl SpdModel {
    pub fn validate(&self) -> Result<(), DetectorError> {
        if !(0.0..=1.0).contains(&self.efficiency) {
            return Err(DetectorError::InvalidEfficiency(self.efficiency));
        }
        if self.dark_prob < 0.0 {
            return Err(DetectorError::InvalidDarkProb(self.dark_prob));
        }
        if !(self.trigger_hz > 0.0) || !(self.window_s > 0.0) {
            return Err(DetectorError::InvalidClock {
                trigger_hz: self.trigger_hz,
                window_s: self.window_s,
            });
        }
        Ok(())
    }

    /// Click probability per trigger at a given mean photon rate, clipped to
    /// 1; the flag reports that clipping (saturation) occurred.
    pub fn click_probability(&self, mean_photon_rate: f64) -> (f64, bool) {
        let p = self.efficiency * mean_photon_rate / self.trigger_hz + self.dark_prob;
        (p.min(1.0), p > 1.0)
    }

    /// Nominal triggers per counting window.
    pub fn triggers_per_window(&self) -> u64 {
        (self.trigger_hz * self.window_s).round() as u64
    }

    /// Trigger indices k (trigger time k/trigger_hz) falling in
    /// `[window_start, window_start + window_s)`.
    fn trigger_index_range(&self, window_start: f64) -> (u64, u64) {
        let first = (window_start * self.trigger_hz).ceil().max(0.0) as u64;
        let end = ((window_start + self.window_s) * self.trigger_hz).ceil().max(0.0) as u64;
        (first, end.max(first))
    }

    /// Number of gate-enabled triggers in the window.
    pub fn enabled_triggers(&self, window_start: f64) -> u64 {
        let (first, end) = self.trigger_index_range(window_start);
        if self.enable_gate.period_s().is_none() {
            return if self.enable_gate.is_on(0.0) { end - first } else { 0 };
        }
        // The gate period (≥ ms scale) is far longer than the trigger spacing,
        // so walk gate edges rather than individual triggers.
        let mut enabled = 0;
        let mut k = first;
        while k < end {
            let t = k as f64 / self.trigger_hz;
            let edge = self.next_gate_edge(t);
            let span_end = ((edge * self.trigger_hz).ceil() as u64).clamp(k + 1, end);
            if self.enable_gate.is_on(t) {
                enabled += span_end - k;
            }
            k = span_end;
        }
        enabled
    }

    /// First gate edge strictly after `t`.
    fn next_gate_edge(&self, t: f64) -> f64 {
        let period = self.enable_gate.period_s().expect("periodic gate");
        let phase = (t - self.enable_gate.phase_offset_s).rem_euclid(period);
        let on_len = self.enable_gate.duty * period;
        let remaining = if phase < on_len { on_len - phase } else { period - phase };
        t + remaining.max(period * 1e-12)
    }

    /// Counts recorded over one window at a constant mean photon rate:
    /// a binomial draw over the enabled triggers.
    pub fn count_window(&self, mean_photon_rate: f64, window_start: f64, rng: &mut impl Rng) -> u64 {
        debug_assert!(mean_photon_rate >= 0.0);
        let (p, _saturated) = self.click_probability(mean_photon_rate);
        let n = self.enabled_triggers(window_start);
        sample_clicks(n, p, rng)
    }
}

/// Binomial click sampling shared by the window op and the streaming
/// scenario-engine path.
pub(crate) fn sample_clicks(triggers: u64, p: f64, rng: &mut impl Rng) -> u64 {
    if triggers == 0 || p <= 0.0 {
        return 0;
    }
    if p >= 1.0 {
        return triggers;
    }
    Binomial::new(triggers, p).expect("valid binomial").sample(rng)
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DetectorError {
    #[error("detection efficiency {0} outside [0, 1]")]
    InvalidEfficiency(f64),
    #[error("dark-count probability {0} negative")]
    InvalidDarkProb(f64),
    #[error("invalid clock: trigger {trigger_hz} Hz, window {window_s} s")]
    InvalidClock { trigger_hz: f64, window_s: f64 },
}

//! Stochastic phase drift of the free-running interferometer and the piezo
//! actuator model, including the walk-off visibility penalty of large piezo
//! excursions.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

/// Wiener-process phase drift: increments are independent Gaussians with
/// variance `diffusion · dt`. One instance owns one timeline; re-seeding
/// reproduces the trajectory bit-exactly.
#[derive(Debug, Clone)]
pub struct DriftModel {
    diffusion: f64,
    current_phase: f64,
    rng: ChaCha8Rng,
}

impl DriftModel {
    /// `diffusion` in rad²/s.
    pub fn new(diffusion: f64, seed: u64) -> Self {
        assert!(diffusion >= 0.0, "diffusion must be non-negative");
        Self { diffusion, current_phase: 0.0, rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn with_rng(diffusion: f64, rng: ChaCha8Rng) -> Self {
        assert!(diffusion >= 0.0, "diffusion must be non-negative");
        Self { diffusion, current_phase: 0.0, rng }
    }

    pub fn current_phase(&self) -> f64 {
        self.current_phase
    }

    /// Advance the drift by `dt` and return the new phase.
    pub fn step(&mut self, dt: f64) -> f64 {
        debug_assert!(dt > 0.0);
        if self.diffusion > 0.0 {
            let sigma = (self.diffusion * dt).sqrt();
            let normal = Normal::new(0.0, sigma).expect("valid sigma");
            self.current_phase += normal.sample(&mut self.rng);
        }
        self.current_phase
    }
}

/// Result of applying a voltage to the piezo actuator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PztResponse {
    /// Optical phase shift, rad.
    pub phase: f64,
    /// Multiplicative visibility factor in (0, 1] from beam walk-off.
    pub visibility_factor: f64,
    /// Commanded voltage exceeded the actuator range and was clamped.
    pub railed: bool,
    /// Voltage actually applied after clamping.
    pub applied_v: f64,
}

/// Piezo phase actuator. Displacement shifts the arm phase linearly and walks
/// the beam off the matched mode, degrading visibility with a Gaussian overlap
/// profile `exp(−(v/v_scale)²)`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct PztModel {
    /// Phase per volt, rad/V.
    pub gain: f64,
    /// Actuator voltage limits (low, high).
    pub range_v: (f64, f64),
    /// Voltage scale of the walk-off overlap roll-off.
    pub walkoff_scale_v: f64,
    /// Visibility at zero displacement.
    pub v0_visibility: f64,
}

impl PztModel {
    pub fn new(gain: f64, range_v: (f64, f64), walkoff_scale_v: f64, v0_visibility: f64) -> Self {
        assert!(gain != 0.0 && gain.is_finite(), "gain must be finite and nonzero");
        assert!(walkoff_scale_v > 0.0, "walk-off scale must be positive");
        assert!(range_v.0 < range_v.1, "voltage range must be ordered");
        Self { gain, range_v, walkoff_scale_v, v0_visibility }
    }

    /// Phase and walk-off factor for a commanded voltage. Out-of-range
    /// commands saturate at the rail rather than erroring.
    pub fn apply(&self, volts: f64) -> PztResponse {
        let applied_v = volts.clamp(self.range_v.0, self.range_v.1);
        let railed = applied_v != volts;
        let x = applied_v / self.walkoff_scale_v;
        PztResponse {
            phase: self.gain * applied_v,
            visibility_factor: (-x * x).exp(),
            railed,
            applied_v,
        }
    }

    /// Visibility including the walk-off penalty at the given voltage.
    pub fn effective_visibility(&self, volts: f64) -> f64 {
        self.v0_visibility * self.apply(volts).visibility_factor
    }

    /// Solve the walk-off scale so that the visibility degrades from
    /// `v0` to `v_target` at an RMS excursion of `v_rms` volts.
    pub fn walkoff_scale_for(v_rms: f64, v0: f64, v_target: f64) -> f64 {
        assert!(v_rms > 0.0 && v_target > 0.0 && v_target < v0);
        v_rms / (v0 / v_target).ln().sqrt()
    }
}

//! AOM four-port scattering and the bi-frequency interferometer built from two
//! of them.
//!
//! A single AOM driven at Ω couples input beams `a` (aligned to the −1st
//! diffraction order) and `b` (+1st order) into outputs
//!
//! ```text
//! c = t·b + e^{iθ}·r·a     (a down-shifted by Ω)
//! d = t·a − e^{−iθ}·r·b    (b up-shifted by Ω)
//! ```
//!
//! with real `t`, `r`, `t² + r² = 1`, and θ the drive-induced phase. With `a`
//! one RF quantum above `b`, each output port carries a single optical
//! frequency, so two AOMs in sequence form a Mach-Zehnder whose arms differ by
//! Ω and whose outputs are again single-frequency. The closed-form effective
//! splitting coefficients of that composition are provided by
//! [`effective_coeffs`]; [`abi_transfer`] propagates fields through both AOMs
//! and applies the non-ideal visibility/efficiency model.
//!
//! Non-ideal model: each arm's field is decomposed into a matched component of
//! amplitude weight √V that interferes and an orthogonal residual carrying the
//! remaining (1−V) of the power, routed incoherently to the same output port;
//! the aggregate optical transmission η scales both output powers. This is the
//! unique two-component decomposition that conserves energy for every V and
//! reproduces the observed-intensity law of [`observed_intensity`].

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

const UNITARITY_TOL: f64 = 1e-12;

/// Spatial ports of the splitter/interferometer network.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Port {
    A,
    B,
    C,
    D,
    E,
    F,
}

/// Discrete optical frequency: an exact integer offset in units of the RF
/// frequency Ω relative to the optical carrier. Integer bookkeeping keeps
/// "same frequency" comparisons exact; small RF detunings between the two
/// drives are folded into the time-dependent drive phase instead.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrequencyLabel {
    /// Signed multiple of Ω relative to the carrier.
    pub offset_index: i32,
    /// Ω in rad/s.
    pub rf_frequency: f64,
}

impl FrequencyLabel {
    pub fn new(offset_index: i32, rf_frequency: f64) -> Result<Self, OpticsError> {
        if !(rf_frequency > 0.0) || !rf_frequency.is_finite() {
            return Err(OpticsError::InvalidRfFrequency(rf_frequency));
        }
        Ok(Self { offset_index, rf_frequency })
    }

    fn shifted(self, delta: i32) -> Self {
        Self { offset_index: self.offset_index + delta, ..self }
    }
}

/// A complex field amplitude tagged with its spatial port and discrete
/// frequency. `|amplitude|²` is the intensity (photons/s, or normalized).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PortField {
    pub port: Port,
    pub frequency: FrequencyLabel,
    pub amplitude: Complex64,
}

impl PortField {
    pub fn new(port: Port, frequency: FrequencyLabel, amplitude: Complex64) -> Self {
        Self { port, frequency, amplitude }
    }

    /// Zero-amplitude field; its frequency label is a placeholder.
    pub fn vacuum(port: Port, frequency: FrequencyLabel) -> Self {
        Self::new(port, frequency, Complex64::ZERO)
    }

    pub fn intensity(&self) -> f64 {
        self.amplitude.norm_sqr()
    }

    pub fn is_vacuum(&self) -> bool {
        self.amplitude == Complex64::ZERO
    }

    /// Same field presented at a different spatial port (beam routing).
    pub fn at_port(self, port: Port) -> Self {
        Self { port, ..self }
    }
}

/// Splitting parameters of one AOM.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct AomConfig {
    /// Diffracted (frequency-shifting) amplitude, in [0, 1]. `r²` is the
    /// diffraction efficiency.
    pub r: f64,
    /// Drive-induced phase θ in rad.
    pub theta: f64,
    /// RF frequency Ω in rad/s.
    pub rf_frequency: f64,
    /// Whether the RF drive is applied.
    pub rf_on: bool,
    /// Residual diffracted power fraction when the drive is off.
    pub off_leakage_power: f64,
}

impl AomConfig {
    pub fn new(r: f64, theta: f64, rf_frequency: f64) -> Result<Self, OpticsError> {
        let cfg = Self { r, theta, rf_frequency, rf_on: true, off_leakage_power: 0.0 };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Build from the diffraction efficiency `r²`.
    pub fn from_diffraction_efficiency(
        efficiency: f64,
        theta: f64,
        rf_frequency: f64,
    ) -> Result<Self, OpticsError> {
        if !(0.0..=1.0).contains(&efficiency) {
            return Err(OpticsError::InvalidReflection(efficiency));
        }
        Self::new(efficiency.sqrt(), theta, rf_frequency)
    }

    pub fn with_off_leakage(mut self, off_leakage_power: f64) -> Result<Self, OpticsError> {
        self.off_leakage_power = off_leakage_power;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<(), OpticsError> {
        if !(0.0..=1.0).contains(&self.r) || !self.r.is_finite() {
            return Err(OpticsError::InvalidReflection(self.r));
        }
        if !(self.rf_frequency > 0.0) || !self.rf_frequency.is_finite() {
            return Err(OpticsError::InvalidRfFrequency(self.rf_frequency));
        }
        if !(0.0..=1.0).contains(&self.off_leakage_power) {
            return Err(OpticsError::InvalidLeakage(self.off_leakage_power));
        }
        Ok(())
    }

    /// Diffracted amplitude actually in effect: `r` when driven, √leakage when
    /// the drive is off.
    pub fn effective_r(&self) -> f64 {
        if self.rf_on {
            self.r
        } else {
            self.off_leakage_power.sqrt()
        }
    }

    /// Transmission amplitude paired with [`Self::effective_r`] so that
    /// t² + r² = 1 holds in either drive state.
    pub fn effective_t(&self) -> f64 {
        let r = self.effective_r();
        (1.0 - r * r).max(0.0).sqrt()
    }

    /// Transmission amplitude of the driven splitter.
    pub fn t(&self) -> f64 {
        (1.0 - self.r * self.r).max(0.0).sqrt()
    }
}

/// Full interferometer: two AOMs, the optical-path phase between them, and the
/// lumped non-idealities.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct AbiConfig {
    pub aom1: AomConfig,
    pub aom2: AomConfig,
    /// Extra optical phase picked up by the frequency-shifted arm relative to
    /// the non-shifted arm, in rad.
    pub path_phase: f64,
    /// Mode-overlap visibility V ∈ [0, 1].
    pub visibility: f64,
    /// Aggregate optical power transmission η ∈ [0, 1].
    pub efficiency: f64,
}

impl AbiConfig {
    pub fn new(aom1: AomConfig, aom2: AomConfig, path_phase: f64) -> Result<Self, OpticsError> {
        let cfg = Self { aom1, aom2, path_phase, visibility: 1.0, efficiency: 1.0 };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_imperfections(
        mut self,
        visibility: f64,
        efficiency: f64,
    ) -> Result<Self, OpticsError> {
        self.visibility = visibility;
        self.efficiency = efficiency;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<(), OpticsError> {
        self.aom1.validate()?;
        self.aom2.validate()?;
        if !(0.0..=1.0).contains(&self.visibility) {
            return Err(OpticsError::InvalidFraction("visibility", self.visibility));
        }
        if !(0.0..=1.0).contains(&self.efficiency) {
            return Err(OpticsError::InvalidFraction("efficiency", self.efficiency));
        }
        if self.aom1.rf_frequency != self.aom2.rf_frequency {
            return Err(OpticsError::RfMismatch {
                expected: self.aom1.rf_frequency,
                found: self.aom2.rf_frequency,
            });
        }
        Ok(())
    }

    /// Overall phase the output intensities depend on.
    pub fn overall_phase(&self) -> f64 {
        self.path_phase - self.aom1.theta + self.aom2.theta
    }
}

/// Effective splitting coefficients of the composed interferometer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectiveCoeffs {
    pub t1p: Complex64,
    pub r1p: Complex64,
    pub t2p: Complex64,
    pub r2p: Complex64,
}

impl EffectiveCoeffs {
    /// Deviation of |t'ₖ|² + |r'ₖ|² from 1 for k = 1, 2.
    pub fn unitarity_defect(&self) -> (f64, f64) {
        (
            (self.t1p.norm_sqr() + self.r1p.norm_sqr() - 1.0).abs(),
            (self.t2p.norm_sqr() + self.r2p.norm_sqr() - 1.0).abs(),
        )
    }

    pub fn is_unitary(&self) -> bool {
        let (d1, d2) = self.unitarity_defect();
        d1 <= UNITARITY_TOL && d2 <= UNITARITY_TOL
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum OpticsError {
    #[error("diffraction amplitude {0} outside [0, 1]")]
    InvalidReflection(f64),
    #[error("rf frequency {0} must be finite and positive")]
    InvalidRfFrequency(f64),
    #[error("off-state leakage power {0} outside [0, 1]")]
    InvalidLeakage(f64),
    #[error("{0} = {1} outside [0, 1]")]
    InvalidFraction(&'static str, f64),
    #[error("field at port {found:?} where {expected:?} was required")]
    PortMismatch { expected: Port, found: Port },
    #[error("field label rf frequency {found} does not match drive {expected}")]
    RfMismatch { expected: f64, found: f64 },
    #[error("input a must sit one RF quantum above input b (a at {a_offset}, b at {b_offset})")]
    LabelStep { a_offset: i32, b_offset: i32 },
    #[error("non-finite field amplitude")]
    NonFiniteAmplitude,
}

fn check_input(field: &PortField, expected: Port, cfg: &AomConfig) -> Result<(), OpticsError> {
    if field.port != expected {
        return Err(OpticsError::PortMismatch { expected, found: field.port });
    }
    if field.frequency.rf_frequency != cfg.rf_frequency {
        return Err(OpticsError::RfMismatch {
            expected: cfg.rf_frequency,
            found: field.frequency.rf_frequency,
        });
    }
    if !field.amplitude.re.is_finite() || !field.amplitude.im.is_finite() {
        return Err(OpticsError::NonFiniteAmplitude);
    }
    Ok(())
}

/// Output frequency labels for one scattering pass. A vacuum input may carry
/// an arbitrary label; the labels are then inferred from the occupied port.
fn output_labels(
    in_a: &PortField,
    in_b: &PortField,
) -> Result<(FrequencyLabel, FrequencyLabel), OpticsError> {
    match (in_a.is_vacuum(), in_b.is_vacuum()) {
        (false, false) => {
            if in_a.frequency.offset_index != in_b.frequency.offset_index + 1 {
                return Err(OpticsError::LabelStep {
                    a_offset: in_a.frequency.offset_index,
                    b_offset: in_b.frequency.offset_index,
                });
            }
            Ok((in_b.frequency, in_a.frequency))
        }
        // c inherits b's frequency (a is down-shifted onto it); d inherits a's.
        (true, false) => Ok((in_b.frequency, in_b.frequency.shifted(1))),
        (false, true) => Ok((in_a.frequency.shifted(-1), in_a.frequency)),
        (true, true) => Ok((in_a.frequency.shifted(-1), in_a.frequency)),
    }
}

/// Scatter two input fields off one AOM.
///
/// Input `a` must sit one RF quantum above input `b` (or be vacuum). Output
/// `c` carries `b`'s frequency, output `d` carries `a`'s; with the drive off
/// the diffracted amplitude drops to √(off-leakage power).
pub fn aom_scatter(
    in_a: &PortField,
    in_b: &PortField,
    cfg: &AomConfig,
) -> Result<(PortField, PortField), OpticsError> {
    cfg.validate()?;
    check_input(in_a, Port::A, cfg)?;
    check_input(in_b, Port::B, cfg)?;
    let (label_c, label_d) = output_labels(in_a, in_b)?;

    let r = cfg.effective_r();
    let t = cfg.effective_t();
    let phase = Complex64::from_polar(1.0, cfg.theta);

    let c = t * in_b.amplitude + phase * r * in_a.amplitude;
    let d = t * in_a.amplitude - phase.conj() * r * in_b.amplitude;

    Ok((
        PortField::new(Port::C, label_c, c),
        PortField::new(Port::D, label_d, d),
    ))
}

/// Closed-form effective splitting coefficients of the two-AOM composition.
pub fn effective_coeffs(cfg: &AbiConfig) -> Result<EffectiveCoeffs, OpticsError> {
    cfg.validate()?;
    let (t1, r1) = (cfg.aom1.effective_t(), cfg.aom1.effective_r());
    let (t2, r2) = (cfg.aom2.effective_t(), cfg.aom2.effective_r());
    let (th1, th2, phi) = (cfg.aom1.theta, cfg.aom2.theta, cfg.path_phase);
    let rot = |angle: f64| Complex64::from_polar(1.0, angle);

    Ok(EffectiveCoeffs {
        t1p: t1 * t2 * rot(phi) - r1 * r2 * rot(th1 - th2),
        r1p: r1 * t2 * rot(phi - th1) + t1 * r2 * rot(-th2),
        t2p: Complex64::from(t1 * t2) - r1 * r2 * rot(th2 - th1 + phi),
        r2p: r1 * t2 * rot(th1) + t1 * r2 * rot(th2 + phi),
    })
}

/// Intensity and representative amplitude of two partially coherent path
/// contributions: matched fractions (amplitude √V each) interfere, residuals
/// add in power.
fn combine_arms(u: Complex64, w: Complex64, visibility: f64, efficiency: f64) -> Complex64 {
    let cross = 2.0 * visibility * (u * w.conj()).re;
    let intensity = (u.norm_sqr() + w.norm_sqr() + cross).max(0.0) * efficiency;
    let coherent = u + w;
    if coherent == Complex64::ZERO {
        Complex64::new(intensity.sqrt(), 0.0)
    } else {
        Complex64::from_polar(intensity.sqrt(), coherent.arg())
    }
}

/// Propagate fields through the full interferometer.
///
/// Output `e` carries input `a`'s frequency, output `f` carries input `b`'s.
/// The returned amplitudes have exact magnitude (|amp|² is the output
/// intensity under the √V-matched / (1−V)-residual arm model with lumped η)
/// and the phase of the coherent part; at V = 1, η = 1 they equal the ideal
/// composition exactly.
pub fn abi_transfer(
    in_a: &PortField,
    in_b: &PortField,
    cfg: &AbiConfig,
) -> Result<(PortField, PortField), OpticsError> {
    cfg.validate()?;
    let (arm_n, arm_s) = aom_scatter(in_a, in_b, &cfg.aom1)?;
    let (label_e, label_f) = (arm_s.frequency, arm_n.frequency);

    // Shifted arm picks up the path phase, then both arms recombine on the
    // second AOM: e = t₂·s − e^{−iθ₂}·r₂·n, f = t₂·n + e^{iθ₂}·r₂·s.
    let s = arm_s.amplitude * Complex64::from_polar(1.0, cfg.path_phase);
    let n = arm_n.amplitude;
    let t2 = cfg.aom2.effective_t();
    let r2 = cfg.aom2.effective_r();
    let phase2 = Complex64::from_polar(1.0, cfg.aom2.theta);

    let e_from_s = t2 * s;
    let e_from_n = -phase2.conj() * r2 * n;
    let f_from_n = t2 * n;
    let f_from_s = phase2 * r2 * s;

    let e = combine_arms(e_from_s, e_from_n, cfg.visibility, cfg.efficiency);
    let f = combine_arms(f_from_s, f_from_n, cfg.visibility, cfg.efficiency);

    Ok((
        PortField::new(Port::E, label_e, e),
        PortField::new(Port::F, label_f, f),
    ))
}

/// Ideal balanced-interferometer output intensity: ½·(1 + cos φ)·I_in.
pub fn ideal_intensity(phi: f64, i_in: f64) -> f64 {
    0.5 * (1.0 + phi.cos()) * i_in
}

/// Non-ideal output intensity with efficiency η, visibility V and a beating
/// term at the RF difference frequency: (η/2)·[1 + V·cos(Δω·t + φ)]·I_in.
pub fn observed_intensity(eta: f64, v: f64, delta_omega: f64, t: f64, phi: f64, i_in: f64) -> f64 {
    0.5 * eta * (1.0 + v * (delta_omega * t + phi).cos()) * i_in
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::{PI, TAU};

    const OMEGA: f64 = TAU * 80e6;

    fn label(offset: i32) -> FrequencyLabel {
        FrequencyLabel::new(offset, OMEGA).unwrap()
    }

    fn field(port: Port, offset: i32, re: f64, im: f64) -> PortField {
        PortField::new(port, label(offset), Complex64::new(re, im))
    }

    fn balanced(theta: f64) -> AomConfig {
        AomConfig::from_diffraction_efficiency(0.5, theta, OMEGA).unwrap()
    }

    #[test]
    fn zero_reflection_passes_inputs_through() {
        let cfg = AomConfig::new(0.0, 0.3, OMEGA).unwrap();
        let a = field(Port::A, 1, 1.0, 0.0);
        let b = field(Port::B, 0, 0.5, 0.0);
        let (c, d) = aom_scatter(&a, &b, &cfg).unwrap();
        assert_eq!(c.amplitude, Complex64::new(0.5, 0.0));
        assert_eq!(c.frequency.offset_index, 0);
        assert_eq!(d.amplitude, Complex64::new(1.0, 0.0));
        assert_eq!(d.frequency.offset_index, 1);
    }

    #[test]
    fn balanced_split_of_single_input() {
        let cfg = balanced(0.0);
        let a = PortField::vacuum(Port::A, label(1));
        let b = field(Port::B, 0, 1.0, 0.0);
        let (c, d) = aom_scatter(&a, &b, &cfg).unwrap();
        assert!((c.intensity() - 0.5).abs() < 1e-12);
        assert!((d.intensity() - 0.5).abs() < 1e-12);
        let expected_d = -1.0 / 2.0_f64.sqrt();
        assert!((d.amplitude.re - expected_d).abs() < 1e-12);
        assert!(d.amplitude.im.abs() < 1e-12);
        assert_eq!(d.frequency.offset_index, 1);
    }

    #[test]
    fn rejects_bad_inputs() {
        let cfg = balanced(0.0);
        let a = field(Port::A, 1, 1.0, 0.0);
        let b = field(Port::B, 0, 1.0, 0.0);

        assert!(matches!(
            AomConfig::new(1.5, 0.0, OMEGA),
            Err(OpticsError::InvalidReflection(_))
        ));
        let wrong_port = field(Port::C, 1, 1.0, 0.0);
        assert!(matches!(
            aom_scatter(&wrong_port, &b, &cfg),
            Err(OpticsError::PortMismatch { .. })
        ));
        let wrong_step = field(Port::A, 2, 1.0, 0.0);
        assert!(matches!(
            aom_scatter(&wrong_step, &b, &cfg),
            Err(OpticsError::LabelStep { .. })
        ));
        let mut other = b;
        other.frequency.rf_frequency = TAU * 79e6;
        assert!(matches!(
            aom_scatter(&a, &other, &cfg),
            Err(OpticsError::RfMismatch { .. })
        ));
    }

    #[test]
    fn off_drive_uses_leakage() {
        let mut cfg = balanced(0.4).with_off_leakage(1e-4).unwrap();
        cfg.rf_on = false;
        assert!((cfg.effective_r() - 1e-2).abs() < 1e-15);
        let a = PortField::vacuum(Port::A, label(1));
        let b = field(Port::B, 0, 1.0, 0.0);
        let (c, d) = aom_scatter(&a, &b, &cfg).unwrap();
        assert!((d.intensity() - 1e-4).abs() < 1e-15);
        assert!((c.intensity() + d.intensity() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn effective_coeffs_balanced_extremes() {
        let abi = AbiConfig::new(balanced(0.0), balanced(0.0), 0.0).unwrap();
        let k = effective_coeffs(&abi).unwrap();
        assert!(k.t1p.norm() < 1e-12);
        assert!((k.r1p.norm() - 1.0).abs() < 1e-12);
        assert!(k.t2p.norm() < 1e-12);
        assert!((k.r2p.norm() - 1.0).abs() < 1e-12);

        let abi = AbiConfig::new(balanced(0.0), balanced(0.0), PI).unwrap();
        let k = effective_coeffs(&abi).unwrap();
        assert!((k.t1p.norm() - 1.0).abs() < 1e-12);
        assert!(k.r1p.norm() < 1e-12);
        assert!((k.t2p.norm() - 1.0).abs() < 1e-12);
        assert!(k.r2p.norm() < 1e-12);
    }

    #[test]
    fn ideal_transfer_routes_by_phase() {
        let abi = AbiConfig::new(balanced(0.0), balanced(0.0), 0.0).unwrap();
        let a = PortField::vacuum(Port::A, label(1));
        let b = field(Port::B, 0, 1.0, 0.0);
        let (e, f) = abi_transfer(&a, &b, &abi).unwrap();
        assert!((e.intensity() - 1.0).abs() < 1e-12);
        assert!(f.intensity() < 1e-12);
        assert_eq!(e.frequency.offset_index, 1);
        assert_eq!(f.frequency.offset_index, 0);
    }

    #[test]
    fn imperfect_transfer_matches_observed_intensity_law() {
        // η/2·(1+V) at the constructive port for V=0.995, η=0.95.
        let abi = AbiConfig::new(balanced(0.0), balanced(0.0), 0.0)
            .unwrap()
            .with_imperfections(0.995, 0.95)
            .unwrap();
        let a = PortField::vacuum(Port::A, label(1));
        let b = field(Port::B, 0, 1.0, 0.0);
        let (e, _f) = abi_transfer(&a, &b, &abi).unwrap();
        assert!((e.intensity() - 0.947625).abs() < 1e-12);
    }

    #[test]
    fn vacuum_in_vacuum_out() {
        let abi = AbiConfig::new(balanced(0.1), balanced(0.7), 1.3).unwrap();
        let a = PortField::vacuum(Port::A, label(1));
        let b = PortField::vacuum(Port::B, label(0));
        let (e, f) = abi_transfer(&a, &b, &abi).unwrap();
        assert_eq!(e.intensity(), 0.0);
        assert_eq!(f.intensity(), 0.0);
    }

    #[test]
    fn transfer_agrees_with_effective_coeffs_composition() {
        // e = t'₁·a − r'₁·b and f = r'₂·a + t'₂·b, for random ideal configs.
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        use rand::{Rng, SeedableRng};
        for _ in 0..2000 {
            let r1 = rng.random::<f64>();
            let r2 = rng.random::<f64>();
            let th1 = rng.random::<f64>() * TAU;
            let th2 = rng.random::<f64>() * TAU;
            let phi = rng.random::<f64>() * TAU;
            let aom1 = AomConfig::new(r1, th1, OMEGA).unwrap();
            let aom2 = AomConfig::new(r2, th2, OMEGA).unwrap();
            let abi = AbiConfig::new(aom1, aom2, phi).unwrap();

            let amp_a = Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5);
            let amp_b = Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5);
            let a = PortField::new(Port::A, label(1), amp_a);
            let b = PortField::new(Port::B, label(0), amp_b);

            let (e, f) = abi_transfer(&a, &b, &abi).unwrap();
            let k = effective_coeffs(&abi).unwrap();
            let e_ref = k.t1p * amp_a - k.r1p * amp_b;
            let f_ref = k.r2p * amp_a + k.t2p * amp_b;
            assert!((e.amplitude - e_ref).norm() < 1e-12);
            assert!((f.amplitude - f_ref).norm() < 1e-12);
        }
    }

    #[test]
    fn output_intensity_depends_only_on_overall_phase() {
        let b = field(Port::B, 0, 1.0, 0.0);
        let a = PortField::vacuum(Port::A, label(1));
        let overall = 0.77;
        let mut reference = None;
        for (th1, th2) in [(0.0, 0.0), (1.1, 0.4), (-2.0, 0.9), (5.5, -1.3)] {
            let phi_path = overall + th1 - th2;
            let abi = AbiConfig::new(balanced(th1), balanced(th2), phi_path)
                .unwrap()
                .with_imperfections(0.9, 0.8)
                .unwrap();
            assert!((abi.overall_phase() - overall).abs() < 1e-12);
            let (e, f) = abi_transfer(&a, &b, &abi).unwrap();
            let pair = (e.intensity(), f.intensity());
            match reference {
                None => reference = Some(pair),
                Some((ie, fi)) => {
                    assert!((pair.0 - ie).abs() < 1e-12);
                    assert!((pair.1 - fi).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn balanced_aoms_reach_any_splitting_ratio() {
        // |t'₁|² = ½(1 − cos φ) for balanced AOMs: solve φ for a target and
        // round-trip through the composition.
        for k in 0..=20 {
            let target = k as f64 / 20.0;
            let phi = (1.0 - 2.0 * target).clamp(-1.0, 1.0).acos();
            let abi = AbiConfig::new(balanced(0.0), balanced(0.0), phi).unwrap();
            let c = effective_coeffs(&abi).unwrap();
            assert!((c.t1p.norm_sqr() - target).abs() < 1e-12);
            assert!((c.r1p.norm_sqr() - (1.0 - target)).abs() < 1e-12);
        }
    }

    #[test]
    fn ideal_intensity_values() {
        assert!((ideal_intensity(0.0, 1.0) - 1.0).abs() < 1e-15);
        assert!(ideal_intensity(PI, 1.0).abs() < 1e-15);
        assert!((ideal_intensity(PI / 2.0, 2.0) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn observed_intensity_values() {
        // Locked-minimum level for V=0.937, η=0.95 and its dB equivalent.
        let min = observed_intensity(0.95, 0.937, 0.0, 0.0, PI, 1.0);
        assert!((min - 0.029925).abs() < 1e-15);
        assert!((10.0 * min.log10() + 15.24).abs() < 0.05);

        // Beating trace extremes and period for the calibration parameters.
        let eta = 0.95;
        let v = 0.995;
        let dw = TAU * 1e5;
        let max = observed_intensity(eta, v, dw, 0.0, 0.0, 1.0);
        let min = observed_intensity(eta, v, dw, PI / dw, 0.0, 1.0);
        assert!((max - 0.947625).abs() < 1e-12);
        assert!((min - 0.002375).abs() < 1e-12);
        let period = TAU / dw;
        assert!((period - 10e-6).abs() < 1e-18);
        let phased = observed_intensity(eta, v, dw, 0.3e-5, 1.08, 1.0);
        let again = observed_intensity(eta, v, dw, 0.3e-5 + period, 1.08, 1.0);
        assert!((phased - again).abs() < 1e-12);
    }

    #[test]
    fn degenerates_to_ideal_when_perfect() {
        for k in 0..64 {
            let phi = k as f64 * TAU / 64.0;
            for t in [0.0, 1.3e-5, 2.0] {
                let full = observed_intensity(1.0, 1.0, 0.0, t, phi, 0.7);
                let ideal = ideal_intensity(phi, 0.7);
                assert!((full - ideal).abs() < 1e-12);
            }
        }
    }

    proptest! {
        #[test]
        fn scatter_conserves_energy(
            re_a in -2.0..2.0f64, im_a in -2.0..2.0f64,
            re_b in -2.0..2.0f64, im_b in -2.0..2.0f64,
            r in 0.0..1.0f64, theta in 0.0..TAU,
        ) {
            let cfg = AomConfig::new(r, theta, OMEGA).unwrap();
            let a = PortField::new(Port::A, label(1), Complex64::new(re_a, im_a));
            let b = PortField::new(Port::B, label(0), Complex64::new(re_b, im_b));
            let (c, d) = aom_scatter(&a, &b, &cfg).unwrap();
            let input = a.intensity() + b.intensity();
            let output = c.intensity() + d.intensity();
            prop_assert!((input - output).abs() <= 1e-12 * input.max(1.0));
        }

        #[test]
        fn composition_is_unitary(
            r1 in 0.0..1.0f64, r2 in 0.0..1.0f64,
            th1 in 0.0..TAU, th2 in 0.0..TAU, phi in 0.0..TAU,
        ) {
            let abi = AbiConfig::new(
                AomConfig::new(r1, th1, OMEGA).unwrap(),
                AomConfig::new(r2, th2, OMEGA).unwrap(),
                phi,
            ).unwrap();
            let coeffs = effective_coeffs(&abi).unwrap();
            prop_assert!(coeffs.is_unitary());
        }

        #[test]
        fn transfer_conserves_energy_for_any_visibility(
            re_b in -2.0..2.0f64, im_b in -2.0..2.0f64,
            r1 in 0.0..1.0f64, r2 in 0.0..1.0f64,
            th1 in 0.0..TAU, th2 in 0.0..TAU, phi in 0.0..TAU,
            v in 0.0..1.0f64,
        ) {
            let abi = AbiConfig::new(
                AomConfig::new(r1, th1, OMEGA).unwrap(),
                AomConfig::new(r2, th2, OMEGA).unwrap(),
                phi,
            ).unwrap().with_imperfections(v, 1.0).unwrap();
            let a = PortField::vacuum(Port::A, label(1));
            let b = PortField::new(Port::B, label(0), Complex64::new(re_b, im_b));
            let (e, f) = abi_transfer(&a, &b, &abi).unwrap();
            let input = b.intensity();
            let output = e.intensity() + f.intensity();
            prop_assert!((input - output).abs() <= 1e-12 * input.max(1.0));
        }
    }
}

//! Simulator of an acousto-optic-modulator (AOM) based bi-frequency Mach-Zehnder
//! interferometer.
//!
//! The crate models the full measurement chain of such an instrument:
//!
//! * [`optics`] — the AOM as a frequency-shifting four-port splitter and the
//!   two-AOM interferometer built from it, including visibility and efficiency
//!   imperfections.
//! * [`drive`] — RF drive synthesis: static phase, sinusoidal phase dither,
//!   gate envelopes for chopped operation and the complementary
//!   reference/payload timing of the frequency-tuner mode.
//! * [`noise`] — free-running phase drift (Wiener process) and the piezo
//!   actuator with its walk-off-induced visibility penalty.
//! * [`detector`] — analog photodiode sampling and gated single-photon
//!   counting with dark counts.
//! * [`lock`] — digital dither lock-in: demodulator, PID with sample-and-hold,
//!   and the closed-loop controller that locks the interferometer phase.
//! * [`fit`] — nonlinear least-squares fringe fitting recovering visibility,
//!   efficiency and phase from traces or count records.
//! * [`scenario`] — composition of the above into runnable experiments with
//!   CSV/JSON artifacts, parameter sweeps and isolation bookkeeping.
//!
//! Every stochastic element draws from seeded ChaCha streams, so a re-run with
//! the same configuration produces bit-identical artifacts.

pub mod detector;
pub mod drive;
pub mod fit;
pub mod lock;
pub mod noise;
pub mod optics;
pub mod scenario;
pub mod series;

pub use detector::{PdModel, SpdModel};
pub use drive::{GateEnvelope, RfDrive, TimingSequence};
pub use fit::{FitMode, FitOptions, FitResult};
pub use lock::{DemodConfig, LockConfig, LockReport, PidConfig};
pub use noise::{DriftModel, PztModel};
pub use optics::{AbiConfig, AomConfig, EffectiveCoeffs, FrequencyLabel, Port, PortField};
pub use scenario::{IsolationResult, ScenarioConfig, ScenarioKind};
pub use series::{CountSeries, TimeSeries};

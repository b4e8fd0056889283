//! Linear-entropy dynamics of a qubit resonantly coupled to an oscillator that
//! is itself weakly coupled to a second qubit (the two-atom Tavis-Cummings
//! model under the rotating-wave approximation).
//!
//! * [`states`]: initial oscillator, environment and coupling parameters.
//! * [`jc_closed`]: single-qubit Jaynes-Cummings closed forms.
//! * [`tc_closed`]: two-qubit closed forms and the primary qubit's linear entropy.
//! * [`oracle`]: brute-force evolution on the truncated Hilbert space.
//! * [`analysis`]: revivals, time averages and spectral peaks of a trace.
//! * [`scenario`], [`presets`], [`output`]: file formats used by the CLI.

pub mod analysis;
pub mod error;
pub mod jc_closed;
pub mod oracle;
pub mod output;
pub mod presets;
pub mod scenario;
pub mod series;
pub mod states;
pub mod tc_closed;

pub use error::{Error, Result};
pub use series::{TimeGrid, TimeSeries};
pub use states::{
    binomial_state, fano_factor, number_state, Couplings, EnvironmentMixture, FockDistribution,
    SystemConfig,
};
pub use tc_closed::{FrequencyReading, TcModel};

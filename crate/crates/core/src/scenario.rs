//! Scenario files: a small TOML document describing one run.
//!
//! ```toml
//! [oscillator]
//! kind = "binomial"   # number | binomial | mixture01 | custom
//! M = 11
//! q = 0.95
//!
//! [environment]
//! p = 0.5
//!
//! [couplings]
//! lambda1 = 1.0
//! lambda2 = 0.1
//!
//! [grid]
//! t_start = 0.0
//! t_end = 30.0
//! points = 3001
//!
//! [oracle]
//! enabled = true
//! n_max = 13          # optional, defaults to the highest Fock index + 2
//! omega = 0.0
//! ```
//!
//! `number` takes `N`, `mixture01` takes `f` (weight of the vacuum) and
//! `custom` takes `amplitudes = [...]`. Unknown keys are rejected. The
//! `[environment]` and `[oracle]` sections are optional.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::Error;
use crate::jc_closed::jc_mixture_series;
use crate::oracle::{
    oracle_entropy_series, oracle_series, required_n_max, OracleConfig, OracleInitial,
};
use crate::series::{TimeGrid, TimeSeries};
use crate::states::{
    binomial_state, number_state, Couplings, EnvironmentMixture, FockDistribution, SystemConfig,
};
use crate::tc_closed::{FrequencyReading, TcModel};

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Invalid(#[from] Error),
}

impl ScenarioError {
    pub fn is_truncation(&self) -> bool {
        matches!(self, Self::Invalid(Error::TruncationTooSmall { .. }))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum OscillatorSpec {
    Number {
        #[serde(rename = "N")]
        n: usize,
    },
    Binomial {
        #[serde(rename = "M")]
        m: usize,
        q: f64,
    },
    Mixture01 {
        f: f64,
    },
    Custom {
        amplitudes: Vec<f64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnvironmentSpec {
    pub p: f64,
}

impl Default for EnvironmentSpec {
    fn default() -> Self {
        Self { p: 0.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CouplingSpec {
    pub lambda1: f64,
    pub lambda2: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub t_start: f64,
    pub t_end: f64,
    pub points: usize,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleSpec {
    #[serde(default)]
    pub enabled: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_max: Option<usize>,
    #[serde(default)]
    pub omega: f64,
}

/// Negative-control switch for the closed forms; see [`FrequencyReading`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClosedFormSpec {
    #[serde(default)]
    pub reading: FrequencyReading,
}

impl ClosedFormSpec {
    fn is_default(&self) -> bool {
        *self == Self::default()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub oscillator: OscillatorSpec,
    #[serde(default)]
    pub environment: EnvironmentSpec,
    pub couplings: CouplingSpec,
    pub grid: GridSpec,
    #[serde(default)]
    pub oracle: OracleSpec,
    #[serde(default, skip_serializing_if = "ClosedFormSpec::is_default")]
    pub closed_form: ClosedFormSpec,
}

/// A validated scenario, ready to evaluate.
#[derive(Debug, Clone, PartialEq)]
pub enum Model {
    /// Pure oscillator state, closed forms in [`crate::tc_closed`].
    TavisCummings {
        config: SystemConfig,
        reading: FrequencyReading,
    },
    /// Vacuum/one-photon mixture with qubit2 decoupled, closed form in
    /// [`crate::jc_closed`].
    Mixture01 {
        f: f64,
        env: EnvironmentMixture,
        couplings: Couplings,
        grid: TimeGrid,
    },
}

impl Model {
    pub fn grid(&self) -> &TimeGrid {
        match self {
            Self::TavisCummings { config, .. } => &config.grid,
            Self::Mixture01 { grid, .. } => grid,
        }
    }

    pub fn couplings(&self) -> &Couplings {
        match self {
            Self::TavisCummings { config, .. } => &config.couplings,
            Self::Mixture01 { couplings, .. } => couplings,
        }
    }

    pub fn oracle_initial(&self) -> OracleInitial {
        match self {
            Self::TavisCummings { config, .. } => OracleInitial::from(config),
            Self::Mixture01 { f, env, .. } => OracleInitial {
                oscillator: vec![(*f, number_state(0)), (1.0 - *f, number_state(1))],
                env: *env,
            },
        }
    }

    pub fn closed_series(&self) -> Result<TimeSeries, Error> {
        match self {
            Self::TavisCummings { config, reading } => {
                TcModel::with_reading(config, *reading)?.entropy_series()
            }
            Self::Mixture01 {
                f, couplings, grid, ..
            } => jc_mixture_series(*f, couplings.lambda1(), grid),
        }
    }

    pub fn oracle_series(&self, spec: &OracleSpec) -> Result<TimeSeries, Error> {
        let initial = self.oracle_initial();
        let n_max = spec.n_max.unwrap_or(required_n_max(initial.cutoff()));
        let cfg = OracleConfig::new(n_max, spec.omega, *self.couplings());
        match self {
            Self::TavisCummings { config, .. } => oracle_entropy_series(config, &cfg),
            Self::Mixture01 { grid, .. } => oracle_series(&initial, &cfg, grid),
        }
    }
}

/// Closed-form trace and, when requested, the oracle trace on the same grid.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    pub closed: TimeSeries,
    pub oracle: Option<TimeSeries>,
}

impl RunOutput {
    pub fn max_abs_err(&self) -> Option<f64> {
        self.oracle
            .as_ref()
            .and_then(|o| self.closed.max_abs_diff(o).ok())
    }
}

impl Scenario {
    pub fn parse(text: &str) -> Result<Self, ScenarioError> {
        toml::from_str(text).map_err(|e| ScenarioError::Parse(e.message().to_string()))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("scenario serializes to TOML")
    }

    pub fn resolve(&self) -> Result<Model, ScenarioError> {
        let env = EnvironmentMixture::new(self.environment.p)?;
        let couplings = Couplings::new(self.couplings.lambda1, self.couplings.lambda2)?;
        let grid = TimeGrid::new(self.grid.t_start, self.grid.t_end, self.grid.points)?;
        let oscillator = match &self.oscillator {
            OscillatorSpec::Number { n } => number_state(*n),
            OscillatorSpec::Binomial { m, q } => binomial_state(*m, *q)?,
            OscillatorSpec::Custom { amplitudes } => {
                FockDistribution::from_amplitudes(amplitudes.clone())?
            }
            OscillatorSpec::Mixture01 { f } => {
                if !(0.0..=1.0).contains(f) {
                    return Err(Error::InvalidProbability(*f).into());
                }
                if couplings.lambda1() <= 0.0 {
                    return Err(Error::InvalidCoupling {
                        name: "lambda1",
                        value: couplings.lambda1(),
                        reason: "must be positive",
                    }
                    .into());
                }
                if couplings.lambda2() != 0.0 {
                    return Err(Error::Unsupported(
                        "the mixture01 oscillator needs lambda2 = 0".into(),
                    )
                    .into());
                }
                return Ok(Model::Mixture01 {
                    f: *f,
                    env,
                    couplings,
                    grid,
                });
            }
        };
        let config = SystemConfig::new(oscillator, env, couplings, grid)?;
        Ok(Model::TavisCummings {
            config,
            reading: self.closed_form.reading,
        })
    }

    /// Evaluates the closed form, plus the oracle if enabled or `force_oracle`.
    pub fn run(&self, force_oracle: bool) -> Result<RunOutput, ScenarioError> {
        let model = self.resolve()?;
        let oracle = if self.oracle.enabled || force_oracle {
            Some(model.oracle_series(&self.oracle)?)
        } else {
            None
        };
        let closed = model.closed_series()?;
        Ok(RunOutput { closed, oracle })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIG6: &str = r#"
[oscillator]
kind = "binomial"
M = 11
q = 0.95

[environment]
p = 0.5

[couplings]
lambda1 = 1.0
lambda2 = 0.1

[grid]
t_start = 0.0
t_end = 30.0
points = 3001

[oracle]
enabled = true
omega = 0.0
"#;

    #[test]
    fn parses_documented_format() {
        let s = Scenario::parse(FIG6).unwrap();
        assert_eq!(s.oscillator, OscillatorSpec::Binomial { m: 11, q: 0.95 });
        assert_eq!(s.environment.p, 0.5);
        assert!(s.oracle.enabled);
        assert_eq!(s.oracle.n_max, None);
        assert_eq!(s.closed_form.reading, FrequencyReading::Resolved);
        assert!(matches!(s.resolve().unwrap(), Model::TavisCummings { .. }));
    }

    #[test]
    fn toml_round_trip() {
        let s = Scenario::parse(FIG6).unwrap();
        assert_eq!(Scenario::parse(&s.to_toml()).unwrap(), s);
    }

    #[test]
    fn unknown_keys_are_errors() {
        let typo = FIG6.replace("lambda2 = 0.1", "lamda2 = 0.1");
        assert!(matches!(
            Scenario::parse(&typo),
            Err(ScenarioError::Parse(_))
        ));
        let typo = FIG6.replace("q = 0.95", "q = 0.95\nN = 3");
        assert!(matches!(
            Scenario::parse(&typo),
            Err(ScenarioError::Parse(_))
        ));
        let typo = FIG6.replace("[oracle]", "[oracel]");
        assert!(matches!(
            Scenario::parse(&typo),
            Err(ScenarioError::Parse(_))
        ));
        let typo = FIG6.replace("\"binomial\"", "\"coherent\"");
        assert!(matches!(
            Scenario::parse(&typo),
            Err(ScenarioError::Parse(_))
        ));
    }

    #[test]
    fn other_oscillator_kinds() {
        let number = FIG6.replace(
            "kind = \"binomial\"\nM = 11\nq = 0.95",
            "kind = \"number\"\nN = 1",
        );
        assert_eq!(
            Scenario::parse(&number).unwrap().oscillator,
            OscillatorSpec::Number { n: 1 }
        );
        let custom = FIG6.replace(
            "kind = \"binomial\"\nM = 11\nq = 0.95",
            "kind = \"custom\"\namplitudes = [0.6, 0.8]",
        );
        assert!(Scenario::parse(&custom).unwrap().resolve().is_ok());
        let bad = custom.replace("0.8]", "0.6]");
        assert!(matches!(
            Scenario::parse(&bad).unwrap().resolve(),
            Err(ScenarioError::Invalid(Error::UnnormalizedDistribution(_)))
        ));
    }

    #[test]
    fn mixture_needs_decoupled_environment() {
        let mix = FIG6.replace(
            "kind = \"binomial\"\nM = 11\nq = 0.95",
            "kind = \"mixture01\"\nf = 0.5",
        );
        assert!(matches!(
            Scenario::parse(&mix).unwrap().resolve(),
            Err(ScenarioError::Invalid(Error::Unsupported(_)))
        ));
        let mix = mix.replace("lambda2 = 0.1", "lambda2 = 0.0");
        assert!(matches!(
            Scenario::parse(&mix).unwrap().resolve().unwrap(),
            Model::Mixture01 { .. }
        ));
    }

    #[test]
    fn validation_and_truncation_errors() {
        let bad_p = FIG6.replace("p = 0.5", "p = 1.2");
        assert!(matches!(
            Scenario::parse(&bad_p).unwrap().resolve(),
            Err(ScenarioError::Invalid(Error::InvalidProbability(_)))
        ));
        let small = FIG6.replace("enabled = true", "enabled = true\nn_max = 12");
        let err = Scenario::parse(&small).unwrap().run(false).unwrap_err();
        assert!(err.is_truncation(), "{err}");
        let ok = FIG6
            .replace("enabled = true", "enabled = true\nn_max = 13")
            .replace("3001", "31");
        assert!(Scenario::parse(&ok).unwrap().run(false).is_ok());
    }
}

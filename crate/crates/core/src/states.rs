//! Initial-state descriptions: the oscillator's Fock amplitudes, the mixedness
//! of the environment qubit, the couplings, and the full system configuration.
//!
//! Qubit1 always starts in its excited state and both qubits are resonant with
//! the oscillator, so neither appears as a parameter here.

use crate::error::{Error, Result};
use crate::series::TimeGrid;

/// Normalization drift at or below this is rounding, not a user error.
const RENORMALIZE_LIMIT: f64 = 1e-9;

/// Real, non-negative amplitudes `B_0..=B_cutoff` of the oscillator's initial
/// pure state, normalized so that the squares sum to one.
#[derive(Debug, Clone, PartialEq)]
pub struct FockDistribution {
    amplitudes: Vec<f64>,
}

impl FockDistribution {
    /// Accepts a custom amplitude list. Drift in the norm up to `1e-9` is
    /// repaired; anything larger is rejected.
    pub fn from_amplitudes(amplitudes: Vec<f64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::EmptyDistribution);
        }
        if let Some((index, &value)) = amplitudes
            .iter()
            .enumerate()
            .find(|(_, b)| !b.is_finite() || **b < 0.0)
        {
            return Err(Error::InvalidAmplitude { index, value });
        }
        let norm_sq: f64 = amplitudes.iter().map(|b| b * b).sum();
        if (norm_sq - 1.0).abs() > RENORMALIZE_LIMIT {
            return Err(Error::UnnormalizedDistribution(norm_sq));
        }
        let mut dist = Self { amplitudes };
        dist.renormalize();
        Ok(dist)
    }

    fn renormalize(&mut self) {
        let norm = self.amplitudes.iter().map(|b| b * b).sum::<f64>().sqrt();
        if norm != 1.0 {
            for b in &mut self.amplitudes {
                *b /= norm;
            }
        }
    }

    pub fn amplitudes(&self) -> &[f64] {
        &self.amplitudes
    }

    /// Highest Fock index carried by the distribution.
    pub fn cutoff(&self) -> usize {
        self.amplitudes.len() - 1
    }

    /// `B_n`, zero beyond the cutoff.
    pub fn amplitude(&self, n: usize) -> f64 {
        self.amplitudes.get(n).copied().unwrap_or(0.0)
    }

    pub fn probabilities(&self) -> impl Iterator<Item = f64> + '_ {
        self.amplitudes.iter().map(|b| b * b)
    }

    pub fn norm_sq(&self) -> f64 {
        self.probabilities().sum()
    }

    pub fn mean(&self) -> f64 {
        self.probabilities()
            .enumerate()
            .map(|(n, w)| n as f64 * w)
            .sum()
    }

    pub fn variance(&self) -> f64 {
        let mean = self.mean();
        self.probabilities()
            .enumerate()
            .map(|(n, w)| (n as f64 - mean).powi(2) * w)
            .sum()
    }

    /// True when exactly one amplitude is nonzero.
    pub fn is_number_state(&self) -> bool {
        self.amplitudes.iter().filter(|b| **b != 0.0).count() == 1
    }
}

/// The number state `|n>`.
pub fn number_state(n: usize) -> FockDistribution {
    let mut amplitudes = vec![0.0; n + 1];
    amplitudes[n] = 1.0;
    FockDistribution { amplitudes }
}

/// The binomial state with at most `m` excitations and single-excitation
/// probability `q`. Weights are built in log space so large `m` does not
/// overflow; trailing weights that underflow to zero are dropped.
pub fn binomial_state(m: usize, q: f64) -> Result<FockDistribution> {
    if m < 1 {
        return Err(Error::InvalidBinomialSize);
    }
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::InvalidProbability(q));
    }
    if q == 1.0 {
        return Ok(number_state(m));
    }
    let mf = m as f64;
    let ln_m_fact = libm::lgamma(mf + 1.0);
    let ln_q = q.ln();
    let ln_1mq = (-q).ln_1p();
    let mut amplitudes: Vec<f64> = (0..=m)
        .map(|n| {
            let nf = n as f64;
            let ln_choose = ln_m_fact - libm::lgamma(nf + 1.0) - libm::lgamma(mf - nf + 1.0);
            // 0 * ln(0) = 0 at the q = 0 endpoint
            let ln_qn = if n == 0 { 0.0 } else { nf * ln_q };
            (0.5 * (ln_choose + ln_qn + (mf - nf) * ln_1mq)).exp()
        })
        .collect();
    while amplitudes.len() > 1 && amplitudes.last() == Some(&0.0) {
        amplitudes.pop();
    }
    let mut dist = FockDistribution { amplitudes };
    dist.renormalize();
    Ok(dist)
}

/// Variance-to-mean ratio of the excitation number. `None` when the mean is
/// zero (vacuum), where the ratio is undefined.
pub fn fano_factor(dist: &FockDistribution) -> Option<f64> {
    let mean = dist.mean();
    if mean <= 0.0 {
        None
    } else {
        Some(dist.variance() / mean)
    }
}

/// Probability `p` that the environment qubit starts excited.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnvironmentMixture {
    p: f64,
}

impl EnvironmentMixture {
    pub fn new(p: f64) -> Result<Self> {
        if (0.0..=1.0).contains(&p) {
            Ok(Self { p })
        } else {
            Err(Error::InvalidProbability(p))
        }
    }

    pub fn p(&self) -> f64 {
        self.p
    }
}

/// Qubit-oscillator couplings in inverse-time units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Couplings {
    lambda1: f64,
    lambda2: f64,
}

impl Couplings {
    pub fn new(lambda1: f64, lambda2: f64) -> Result<Self> {
        for (name, value) in [("lambda1", lambda1), ("lambda2", lambda2)] {
            if !value.is_finite() || value < 0.0 {
                return Err(Error::InvalidCoupling {
                    name,
                    value,
                    reason: "must be finite and non-negative",
                });
            }
        }
        Ok(Self { lambda1, lambda2 })
    }

    pub fn lambda1(&self) -> f64 {
        self.lambda1
    }

    pub fn lambda2(&self) -> f64 {
        self.lambda2
    }
}

/// Everything needed to evaluate the primary qubit's linear entropy on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemConfig {
    pub oscillator: FockDistribution,
    pub env: EnvironmentMixture,
    pub couplings: Couplings,
    pub grid: TimeGrid,
}

impl SystemConfig {
    pub fn new(
        oscillator: FockDistribution,
        env: EnvironmentMixture,
        couplings: Couplings,
        grid: TimeGrid,
    ) -> Result<Self> {
        Self {
            oscillator,
            env,
            couplings,
            grid,
        }
        .validate()
    }

    /// Re-checks every invariant, repairing sub-`1e-9` normalization drift.
    pub fn validate(mut self) -> Result<Self> {
        self.oscillator = FockDistribution::from_amplitudes(self.oscillator.amplitudes)?;
        self.env = EnvironmentMixture::new(self.env.p)?;
        self.couplings = Couplings::new(self.couplings.lambda1, self.couplings.lambda2)?;
        if self.couplings.lambda1 <= 0.0 {
            return Err(Error::InvalidCoupling {
                name: "lambda1",
                value: self.couplings.lambda1,
                reason: "must be positive",
            });
        }
        self.grid.check()?;
        Ok(self)
    }
}

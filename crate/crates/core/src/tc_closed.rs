//! Exact resonant two-atom Tavis-Cummings dynamics with qubit1 excited,
//! qubit2 in a diagonal mixture and the oscillator in a real superposition of
//! Fock states.
//!
//! The initial density matrix splits into two pure branches. With qubit2
//! excited (weight `p`), the component `|e1,e2,n>` spreads over
//!
//! ```text
//! |e1,e2,n>  |e1,g2,n+1>  |g1,e2,n+1>  |g1,g2,n+2>     amplitudes C1..C4
//! ```
//!
//! With qubit2 in its ground state (weight `1 - p`), `|e1,g2,n>` spreads over
//!
//! ```text
//! |e1,e2,n-1>  |e1,g2,n>  |g1,e2,n>  |g1,g2,n+1>      amplitudes C'1..C'4
//! ```
//!
//! and the primed spectral quantities are those of excitation index `n - 1`.
//! Within one excitation block the coupling is bipartite, so the eigenvalues
//! come in pairs `±d_plus`, `±d_minus` with
//!
//! ```text
//! D   = sqrt((2n+3)² (λ1²+λ2²)² - 4(n+1)(n+2)(λ1²-λ2²)²)
//! d±  = sqrt(((2n+3)(λ1²+λ2²) ± D) / 2)
//! a±  = D ± (λ1²+λ2²)        b±  = D ± (λ1²-λ2²)
//! ```
//!
//! and every amplitude is `(1/2D)` times a combination of `cos(d± t)` or
//! `-i sin(d± t)` terms, listed in [`BranchPropagator`].
//!
//! Free-evolution phases are dropped (interaction picture); they rotate qubit1
//! locally and leave its purity unchanged.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::TimeSeries;
use crate::states::{Couplings, SystemConfig};

/// How the block frequencies are evaluated.
///
/// Only [`FrequencyReading::Resolved`] is physical. The other two exist as
/// negative controls for the test suite and the `oracle-check` command.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FrequencyReading {
    /// `d± = sqrt(((2n+3)(λ1²+λ2²) ± D) / 2)`.
    #[default]
    Resolved,
    /// `(λ1+λ2)²` in place of `λ1²+λ2²` inside `d±`.
    PrintedSum,
    /// `d_plus` and `d_minus` exchanged.
    SwappedFrequencies,
}

/// Spectral quantities of the excitation block labelled by `n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralParams {
    pub n: i64,
    pub d: f64,
    pub d_plus: f64,
    pub d_minus: f64,
    pub a_plus: f64,
    pub a_minus: f64,
    pub b_plus: f64,
    pub b_minus: f64,
}

/// Spectral parameters for index `n >= -1`. `n = -1` only arises for the
/// primed branch at oscillator index 0, where `d_minus` vanishes.
pub fn spectral_params(n: i64, couplings: &Couplings) -> Result<SpectralParams> {
    spectral_params_with(n, couplings, FrequencyReading::Resolved)
}

pub fn spectral_params_with(
    n: i64,
    couplings: &Couplings,
    reading: FrequencyReading,
) -> Result<SpectralParams> {
    if n < -1 {
        return Err(Error::InvalidExcitationIndex(n));
    }
    let (l1, l2) = (couplings.lambda1(), couplings.lambda2());
    if l1 <= 0.0 {
        return Err(Error::InvalidCoupling {
            name: "lambda1",
            value: l1,
            reason: "must be positive",
        });
    }
    let (l1s, l2s) = (l1 * l1, l2 * l2);
    let sum = l1s + l2s;
    let diff = l1s - l2s;
    let k = (2 * n + 3) as f64;
    let m = ((n + 1) * (n + 2)) as f64;

    let printed = k * k * sum * sum - 4.0 * m * diff * diff;
    if printed < -1e-12 * k * k * sum * sum {
        return Err(Error::NegativeDiscriminant(printed, n));
    }
    // Same quantity, written as a sum of non-negative terms:
    // D² = (2n+3)² · 4λ1²λ2² + (λ1²-λ2²)².
    let cross = 4.0 * l1s * l2s;
    let d = (k * k * cross + diff * diff).sqrt();

    let d_plus = ((k * sum + d) / 2.0).sqrt();
    // d+² d-² = (n+1)(n+2)(λ1²-λ2²)²
    let d_minus = m.sqrt() * diff.abs() / d_plus;

    // a+ a- = 4(n+1)(n+2) · 4λ1²λ2² and b+ b- = (2n+3)² · 4λ1²λ2²; the
    // smaller factor of each pair comes from the product.
    let a_plus = d + sum;
    let a_minus = 4.0 * m * cross / a_plus;
    let (b_plus, b_minus) = if diff >= 0.0 {
        let b_plus = d + diff;
        (b_plus, k * k * cross / b_plus)
    } else {
        let b_minus = d - diff;
        (k * k * cross / b_minus, b_minus)
    };

    let (d_plus, d_minus) = match reading {
        FrequencyReading::Resolved => (d_plus, d_minus),
        FrequencyReading::SwappedFrequencies => (d_minus, d_plus),
        FrequencyReading::PrintedSum => {
            let s = (l1 + l2) * (l1 + l2);
            (
                ((k * s + d) / 2.0).max(0.0).sqrt(),
                ((k * s - d) / 2.0).max(0.0).sqrt(),
            )
        }
    };

    Ok(SpectralParams {
        n,
        d,
        d_plus,
        d_minus,
        a_plus,
        a_minus,
        b_plus,
        b_minus,
    })
}

/// The four branch amplitudes at one time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoefficientQuad {
    pub c: [Complex64; 4],
    pub primed: bool,
}

impl CoefficientQuad {
    pub fn norm_sq(&self) -> f64 {
        self.c.iter().map(|c| c.norm_sqr()).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Shape {
    Cos,
    NegISin,
}

/// `shape(plus · f(d+ t) + minus · f(d- t))`.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Term {
    shape: Shape,
    plus: f64,
    minus: f64,
}

impl Term {
    fn cos(plus: f64, minus: f64) -> Self {
        Self {
            shape: Shape::Cos,
            plus,
            minus,
        }
    }

    fn sin(plus: f64, minus: f64) -> Self {
        Self {
            shape: Shape::NegISin,
            plus,
            minus,
        }
    }
}

/// Time-independent part of one branch at one oscillator index.
///
/// Unprimed branch, `|e1,e2,n>` at `t = 0`:
///
/// ```text
/// C1 = (1/2D) [a- cos d+t + a+ cos d-t]
/// C2 = -(i/2D) [√(a-b+) sin d+t - √(a+b-) sin d-t]
/// C3 = -(i/2D) [√(a-b-) sin d+t + √(a+b+) sin d-t]
/// C4 = (1/2D) √(a+a-) [cos d+t - cos d-t]
/// ```
///
/// Primed branch, `|e1,g2,n>` at `t = 0`, quantities at index `n - 1`:
///
/// ```text
/// C'1 = -(i/2D') [√(a'-b'+) sin d'+t - √(a'+b'-) sin d'-t]
/// C'2 = (1/2D') [b'+ cos d'+t + b'- cos d'-t]
/// C'3 = (1/2D') √(b'+b'-) [cos d'+t - cos d'-t]
/// C'4 = -(i/2D') [√(a'+b'+) sin d'+t + √(a'-b'-) sin d'-t]
/// ```
#[derive(Debug, Clone, PartialEq)]
pub struct BranchPropagator {
    params: SpectralParams,
    terms: [Term; 4],
    primed: bool,
}

impl BranchPropagator {
    pub fn unprimed(n: usize, couplings: &Couplings, reading: FrequencyReading) -> Result<Self> {
        let sp = spectral_params_with(n as i64, couplings, reading)?;
        let h = 0.5 / sp.d;
        let (ap, am, bp, bm) = (sp.a_plus, sp.a_minus, sp.b_plus, sp.b_minus);
        let c4 = (ap * am).sqrt() * h;
        Ok(Self {
            params: sp,
            terms: [
                Term::cos(am * h, ap * h),
                Term::sin((am * bp).sqrt() * h, -(ap * bm).sqrt() * h),
                Term::sin((am * bm).sqrt() * h, (ap * bp).sqrt() * h),
                Term::cos(c4, -c4),
            ],
            primed: false,
        })
    }

    pub fn primed(n: usize, couplings: &Couplings, reading: FrequencyReading) -> Result<Self> {
        let sp = spectral_params_with(n as i64 - 1, couplings, reading)?;
        let h = 0.5 / sp.d;
        let (ap, am, bp, bm) = (sp.a_plus, sp.a_minus, sp.b_plus, sp.b_minus);
        let c3 = (bp * bm).sqrt() * h;
        Ok(Self {
            params: sp,
            terms: [
                Term::sin((am * bp).sqrt() * h, -(ap * bm).sqrt() * h),
                Term::cos(bp * h, bm * h),
                Term::cos(c3, -c3),
                Term::sin((ap * bp).sqrt() * h, (am * bm).sqrt() * h),
            ],
            primed: true,
        })
    }

    pub fn params(&self) -> &SpectralParams {
        &self.params
    }

    pub fn at(&self, t: f64) -> CoefficientQuad {
        let (sp, cp) = (self.params.d_plus * t).sin_cos();
        let (sm, cm) = (self.params.d_minus * t).sin_cos();
        let c = self.terms.map(|term| match term.shape {
            Shape::Cos => Complex64::new(term.plus * cp + term.minus * cm, 0.0),
            Shape::NegISin => Complex64::new(0.0, -(term.plus * sp + term.minus * sm)),
        });
        CoefficientQuad {
            c,
            primed: self.primed,
        }
    }
}

/// Amplitudes of `|e1,e2,n>, |e1,g2,n+1>, |g1,e2,n+1>, |g1,g2,n+2>` starting
/// from `|e1,e2,n>`.
pub fn tc_coefficients(n: usize, couplings: &Couplings, t: f64) -> Result<CoefficientQuad> {
    Ok(BranchPropagator::unprimed(n, couplings, FrequencyReading::Resolved)?.at(t))
}

/// Amplitudes of `|e1,e2,n-1>, |e1,g2,n>, |g1,e2,n>, |g1,g2,n+1>` starting
/// from `|e1,g2,n>`. At `n = 0` the first amplitude is identically zero.
pub fn tc_coefficients_primed(n: usize, couplings: &Couplings, t: f64) -> Result<CoefficientQuad> {
    Ok(BranchPropagator::primed(n, couplings, FrequencyReading::Resolved)?.at(t))
}

/// Entries of qubit1's reduced density matrix: `alpha` is the ground
/// population, `beta` the excited population, `gamma = <g|ρ|e>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyTerms {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: Complex64,
}

impl EntropyTerms {
    /// `1 - (α² + β² + 2|γ|²)`, evaluated as `2(αβ - |γ|²)`. The two agree
    /// whenever `α + β = 1`; this form is exactly zero while `α` and `γ` are.
    /// Rounding just below zero at exact purity is clamped.
    pub fn linear_entropy(&self) -> f64 {
        (2.0 * (self.alpha * self.beta - self.gamma.norm_sqr())).max(0.0)
    }
}

/// Closed-form evaluator for one configuration. Construction does all
/// time-independent work; evaluation at a time is a pure function.
#[derive(Debug, Clone)]
pub struct TcModel {
    amplitudes: Vec<f64>,
    p: f64,
    unprimed: Vec<BranchPropagator>,
    primed: Vec<BranchPropagator>,
    config: SystemConfig,
}

impl TcModel {
    pub fn new(config: &SystemConfig) -> Result<Self> {
        Self::with_reading(config, FrequencyReading::Resolved)
    }

    pub fn with_reading(config: &SystemConfig, reading: FrequencyReading) -> Result<Self> {
        let config = config.clone().validate()?;
        let c = config.couplings;
        let cutoff = config.oscillator.cutoff();
        let unprimed = (0..=cutoff)
            .map(|n| BranchPropagator::unprimed(n, &c, reading))
            .collect::<Result<Vec<_>>>()?;
        let primed = (0..=cutoff)
            .map(|n| BranchPropagator::primed(n, &c, reading))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            amplitudes: config.oscillator.amplitudes().to_vec(),
            p: config.env.p(),
            unprimed,
            primed,
            config,
        })
    }

    pub fn config(&self) -> &SystemConfig {
        &self.config
    }

    pub fn unprimed_branches(&self) -> &[BranchPropagator] {
        &self.unprimed
    }

    pub fn primed_branches(&self) -> &[BranchPropagator] {
        &self.primed
    }

    pub fn entropy_terms(&self, t: f64) -> EntropyTerms {
        let p = self.p;
        let q = 1.0 - p;
        let un: Vec<CoefficientQuad> = self.unprimed.iter().map(|b| b.at(t)).collect();
        let pr: Vec<CoefficientQuad> = self.primed.iter().map(|b| b.at(t)).collect();

        let mut alpha = 0.0;
        let mut beta = 0.0;
        for (&b, (u, v)) in self.amplitudes.iter().zip(un.iter().zip(&pr)) {
            let w = b * b;
            let [u1, u2, u3, u4] = u.c.map(|c| c.norm_sqr());
            let [v1, v2, v3, v4] = v.c.map(|c| c.norm_sqr());
            alpha += w * (p * (u3 + u4) + q * (v3 + v4));
            beta += w * (p * (u1 + u2) + q * (v1 + v2));
        }

        let mut gamma = Complex64::new(0.0, 0.0);
        for n in 0..self.amplitudes.len().saturating_sub(1) {
            let w = self.amplitudes[n] * self.amplitudes[n + 1];
            if w == 0.0 {
                continue;
            }
            let (u, u_next) = (&un[n].c, &un[n + 1].c);
            let (v, v_next) = (&pr[n].c, &pr[n + 1].c);
            let from_excited = u[3] * u_next[1].conj() + u[2] * u_next[0].conj();
            let from_ground = v[3] * v_next[1].conj() + v[2] * v_next[0].conj();
            gamma += (from_excited * p + from_ground * q) * w;
        }

        EntropyTerms { alpha, beta, gamma }
    }

    pub fn linear_entropy(&self, t: f64) -> f64 {
        self.entropy_terms(t).linear_entropy()
    }

    /// Linear entropy on the configuration's grid.
    pub fn entropy_series(&self) -> Result<TimeSeries> {
        TimeSeries::sample(&self.config.grid, |t| self.linear_entropy(t))
    }

    /// Same as [`TcModel::entropy_series`], with the grid split across
    /// `workers` threads. The output does not depend on the split.
    pub fn entropy_series_parallel(&self, workers: usize) -> Result<TimeSeries> {
        let times = self.config.grid.times();
        let chunk = times.len().div_ceil(workers.max(1));
        let mut values = vec![0.0; times.len()];
        std::thread::scope(|scope| {
            for (ts, out) in times.chunks(chunk).zip(values.chunks_mut(chunk)) {
                scope.spawn(move || {
                    for (t, z) in ts.iter().zip(out.iter_mut()) {
                        *z = self.linear_entropy(*t);
                    }
                });
            }
        });
        TimeSeries::new(times, values)
    }
}

pub fn entropy_terms(config: &SystemConfig, t: f64) -> Result<EntropyTerms> {
    Ok(TcModel::new(config)?.entropy_terms(t))
}

pub fn linear_entropy(config: &SystemConfig, t: f64) -> Result<f64> {
    Ok(TcModel::new(config)?.linear_entropy(t))
}

pub fn entropy_series(config: &SystemConfig) -> Result<TimeSeries> {
    TcModel::new(config)?.entropy_series()
}

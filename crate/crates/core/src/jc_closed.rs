//! Closed-form resonant Jaynes-Cummings results for a single qubit that
//! starts excited.
//!
//! For the preparations handled here the reduced qubit state stays diagonal:
//! each Fock component `|e,n>` only ever mixes with `|g,n+1>`, so no two
//! branches share an oscillator state with opposite qubit states. The linear
//! entropy therefore depends on the two populations alone.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::series::{TimeGrid, TimeSeries};

/// Amplitudes on `|e,n>` and `|g,n+1>` after evolving `|e,n>` for time `t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JcAmplitudes {
    pub c_excited: Complex64,
    pub c_ground: Complex64,
    pub n: usize,
    pub t: f64,
}

impl JcAmplitudes {
    pub fn norm_sq(&self) -> f64 {
        self.c_excited.norm_sqr() + self.c_ground.norm_sqr()
    }
}

/// Rabi frequency `lambda * sqrt(n + 1)` of the `|e,n> <-> |g,n+1>` doublet.
pub fn rabi_frequency(n: usize, lambda: f64) -> f64 {
    lambda * ((n + 1) as f64).sqrt()
}

/// `cos(Ωt)` on `|e,n>` and `-i sin(Ωt)` on `|g,n+1>`, with `Ω = λ√(n+1)`.
pub fn jc_amplitudes(n: usize, lambda: f64, t: f64) -> JcAmplitudes {
    let (s, c) = (rabi_frequency(n, lambda) * t).sin_cos();
    JcAmplitudes {
        c_excited: Complex64::new(c, 0.0),
        c_ground: Complex64::new(0.0, -s),
        n,
        t,
    }
}

/// Linear entropy `½ sin²(2λ√(N+1) t)` of the qubit with the oscillator in `|N>`.
pub fn jc_number_entropy(n: usize, lambda: f64, t: f64) -> f64 {
    let s = (2.0 * rabi_frequency(n, lambda) * t).sin();
    0.5 * s * s
}

/// Linear entropy of the qubit when the oscillator starts in
/// `f |0><0| + (1 - f) |1><1|`.
pub fn jc_mixture_entropy(f: f64, lambda: f64, t: f64) -> f64 {
    let (s1, c1) = (lambda * t).sin_cos();
    let (s2, c2) = (std::f64::consts::SQRT_2 * lambda * t).sin_cos();
    let excited = f * c1 * c1 + (1.0 - f) * c2 * c2;
    let ground = f * s1 * s1 + (1.0 - f) * s2 * s2;
    1.0 - excited * excited - ground * ground
}

/// [`jc_mixture_entropy`] sampled on a grid.
pub fn jc_mixture_series(f: f64, lambda: f64, grid: &TimeGrid) -> Result<TimeSeries> {
    if !(0.0..=1.0).contains(&f) {
        return Err(Error::InvalidProbability(f));
    }
    TimeSeries::sample(grid, |t| jc_mixture_entropy(f, lambda, t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, SQRT_2};

    #[test]
    fn amplitudes_at_known_times() {
        let a = jc_amplitudes(0, 1.0, 0.0);
        assert_eq!(a.c_excited, Complex64::new(1.0, 0.0));
        assert_eq!(a.c_ground.norm(), 0.0);

        let a = jc_amplitudes(0, 1.0, FRAC_PI_2);
        assert!(a.c_excited.norm() < 1e-15);
        assert!((a.c_ground - Complex64::new(0.0, -1.0)).norm() < 1e-15);

        let a = jc_amplitudes(1, 1.0, PI / SQRT_2);
        assert!((a.c_excited - Complex64::new(-1.0, 0.0)).norm() < 1e-15);
        assert!(a.c_ground.norm() < 1e-15);
    }

    #[test]
    fn amplitudes_are_normalized() {
        for n in 0..10 {
            for k in 0..50 {
                let a = jc_amplitudes(n, 0.7, k as f64 * 0.37);
                assert!((a.norm_sq() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn number_entropy_values() {
        assert_eq!(jc_number_entropy(0, 1.0, 0.0), 0.0);
        assert!((jc_number_entropy(0, 1.0, FRAC_PI_4) - 0.5).abs() < 1e-15);
        assert!(jc_number_entropy(1, 1.0, PI / (2.0 * SQRT_2)) < 1e-30);
    }

    #[test]
    fn number_entropy_matches_populations() {
        // 1 - cos⁴ - sin⁴ of the Rabi angle
        for n in 0..4 {
            for k in 0..100 {
                let t = k as f64 * 0.113;
                let a = jc_amplitudes(n, 1.3, t);
                let (pe, pg) = (a.c_excited.norm_sqr(), a.c_ground.norm_sqr());
                let z = 1.0 - pe * pe - pg * pg;
                assert!((z - jc_number_entropy(n, 1.3, t)).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn mixture_entropy_values() {
        assert_eq!(jc_mixture_entropy(0.5, 1.0, 0.0), 0.0);
        // direct scalar evaluation: cos²(π/√2·…) etc. computed independently
        let z = jc_mixture_entropy(0.5, 1.0, FRAC_PI_2);
        assert!((z - 0.29957467609394706).abs() < 1e-14, "{z}");
    }

    #[test]
    fn pure_mixtures_collapse_to_number_states() {
        for k in 0..2000 {
            let t = k as f64 * 0.01;
            let z1 = jc_mixture_entropy(1.0, 1.0, t);
            let z0 = jc_mixture_entropy(0.0, 1.0, t);
            assert!((z1 - jc_number_entropy(0, 1.0, t)).abs() < 1e-12);
            assert!((z0 - jc_number_entropy(1, 1.0, t)).abs() < 1e-12);
        }
    }

    #[test]
    fn mixture_entropy_is_bounded() {
        for f in [0.0, 0.3, 0.5, 0.8, 1.0] {
            for k in 0..4000 {
                let z = jc_mixture_entropy(f, 1.0, k as f64 * 0.01);
                assert!((-1e-15..=0.5 + 1e-15).contains(&z), "f={f} z={z}");
            }
        }
    }

    #[test]
    fn mixture_series_rejects_bad_weight() {
        let g = TimeGrid::new(0.0, 1.0, 11).unwrap();
        assert!(jc_mixture_series(1.5, 1.0, &g).is_err());
        assert_eq!(jc_mixture_series(0.5, 1.0, &g).unwrap().len(), 11);
    }
}

//! Time grids and sampled series.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A uniform grid of `points` samples on `[t_start, t_end]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TimeGrid {
    pub t_start: f64,
    pub t_end: f64,
    pub points: usize,
}

impl TimeGrid {
    pub fn new(t_start: f64, t_end: f64, points: usize) -> Result<Self> {
        let grid = Self {
            t_start,
            t_end,
            points,
        };
        grid.check()?;
        Ok(grid)
    }

    pub fn check(&self) -> Result<()> {
        let ok = self.t_start.is_finite()
            && self.t_end.is_finite()
            && self.t_start >= 0.0
            && self.t_end > self.t_start
            && self.points >= 2;
        if ok {
            Ok(())
        } else {
            Err(Error::EmptyTimeGrid {
                t_start: self.t_start,
                t_end: self.t_end,
                points: self.points,
            })
        }
    }

    pub fn step(&self) -> f64 {
        (self.t_end - self.t_start) / (self.points - 1) as f64
    }

    /// Sample times. The last one is exactly `t_end`.
    pub fn times(&self) -> Vec<f64> {
        let last = self.points - 1;
        let span = self.t_end - self.t_start;
        (0..self.points)
            .map(|i| {
                if i == last {
                    self.t_end
                } else {
                    self.t_start + span * (i as f64 / last as f64)
                }
            })
            .collect()
    }
}

/// Ordered `(t, value)` samples with strictly increasing `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    times: Vec<f64>,
    values: Vec<f64>,
}

impl TimeSeries {
    pub fn new(times: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if times.len() != values.len() {
            return Err(Error::LengthMismatch {
                times: times.len(),
                values: values.len(),
            });
        }
        if times
            .windows(2)
            .any(|w| w[1].partial_cmp(&w[0]) != Some(std::cmp::Ordering::Greater))
        {
            return Err(Error::NonIncreasingTime);
        }
        Ok(Self { times, values })
    }

    /// Samples `f` on every point of `grid`.
    pub fn sample(grid: &TimeGrid, f: impl FnMut(f64) -> f64) -> Result<Self> {
        grid.check()?;
        let times = grid.times();
        let values = times.iter().copied().map(f).collect();
        Self::new(times, values)
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.times.iter().copied().zip(self.values.iter().copied())
    }

    /// Largest pointwise absolute difference against a series on the same grid.
    pub fn max_abs_diff(&self, other: &TimeSeries) -> Result<f64> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                times: self.len(),
                values: other.len(),
            });
        }
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_endpoints_are_exact() {
        let g = TimeGrid::new(0.0, 30.0, 3001).unwrap();
        let t = g.times();
        assert_eq!(t.len(), 3001);
        assert_eq!(t[0], 0.0);
        assert_eq!(t[3000], 30.0);
        assert!((t[1500] - 15.0).abs() < 1e-12);
    }

    #[test]
    fn degenerate_grids_are_rejected() {
        assert!(TimeGrid::new(0.0, 0.0, 2).is_err());
        assert!(TimeGrid::new(0.0, 1.0, 1).is_err());
        assert!(TimeGrid::new(-1.0, 1.0, 10).is_err());
        assert!(TimeGrid::new(0.0, f64::NAN, 10).is_err());
    }

    #[test]
    fn series_rejects_repeated_times() {
        assert_eq!(
            TimeSeries::new(vec![0.0, 0.0], vec![1.0, 2.0]),
            Err(Error::NonIncreasingTime)
        );
        assert!(TimeSeries::new(vec![0.0], vec![1.0, 2.0]).is_err());
    }
}

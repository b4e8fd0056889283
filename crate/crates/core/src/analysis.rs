//! Quantitative summaries of a sampled linear-entropy trace: near-returns to
//! purity, long-time averages, and discrete frequency content.
//!
//! Minima are taken on the sampled grid without interpolation, so reports are
//! reproducible from the CSV alone. Resolve the shortest oscillation period
//! with at least 40 samples for the minima to be meaningful.

use std::f64::consts::PI;

use rustfft::{num_complex::Complex, FftPlanner};

use crate::error::{Error, Result};
use crate::series::TimeSeries;
use crate::tc_closed::TcModel;

/// Relative jitter in the sample spacing tolerated by [`dominant_frequencies`].
const UNIFORM_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct RevivalReport {
    /// Strict local minima `(t, ζ)` with `t > after`.
    pub minima: Vec<(f64, f64)>,
    pub after: f64,
    /// Lowest of `minima`, if there are any.
    pub global_min: Option<(f64, f64)>,
    /// Trapezoidal mean over `[after, end]`.
    pub time_average: f64,
}

/// Local minima after `after`, their lowest value, and the mean over the tail.
pub fn find_revivals(series: &TimeSeries, after: f64) -> Result<RevivalReport> {
    let t = series.times();
    let z = series.values();
    if t.len() < 3 {
        return Err(Error::WindowEmpty);
    }
    let end = t[t.len() - 1];
    if after >= end {
        return Err(Error::WindowEmpty);
    }
    let minima: Vec<(f64, f64)> = (1..t.len() - 1)
        .filter(|&i| t[i] > after && z[i] < z[i - 1] && z[i] < z[i + 1])
        .map(|i| (t[i], z[i]))
        .collect();
    let global_min = minima.iter().copied().min_by(|a, b| a.1.total_cmp(&b.1));
    let time_average = time_average(series, (after, end))?;
    Ok(RevivalReport {
        minima,
        after,
        global_min,
        time_average,
    })
}

/// Trapezoidal mean of the samples with `t0 <= t <= t1`.
pub fn time_average(series: &TimeSeries, window: (f64, f64)) -> Result<f64> {
    let (t0, t1) = window;
    let pts: Vec<(f64, f64)> = series
        .iter()
        .filter(|(t, _)| *t >= t0 && *t <= t1)
        .collect();
    if pts.len() < 2 {
        return Err(Error::WindowEmpty);
    }
    let area: f64 = pts
        .windows(2)
        .map(|w| 0.5 * (w[1].0 - w[0].0) * (w[0].1 + w[1].1))
        .sum();
    Ok(area / (pts[pts.len() - 1].0 - pts[0].0))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralPeak {
    /// Angular frequency (radians per unit time).
    pub frequency: f64,
    pub amplitude: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumReport {
    /// Strongest first.
    pub peaks: Vec<SpectralPeak>,
    /// Angular spacing of the DFT bins.
    pub resolution: f64,
    pub nyquist: f64,
}

fn uniform_step(times: &[f64]) -> Result<f64> {
    let n = times.len();
    let step = (times[n - 1] - times[0]) / (n - 1) as f64;
    let uniform = times
        .windows(2)
        .all(|w| ((w[1] - w[0]) - step).abs() <= UNIFORM_TOL * step);
    if uniform {
        Ok(step)
    } else {
        Err(Error::NonuniformGrid)
    }
}

/// The `count` strongest peaks of the mean-subtracted, Hann-windowed series.
/// Each peak is refined by a parabola through its bin and the two neighbours.
pub fn dominant_frequencies(series: &TimeSeries, count: usize) -> Result<SpectrumReport> {
    let n = series.len();
    if n < 4 {
        return Err(Error::WindowEmpty);
    }
    let dt = uniform_step(series.times())?;
    let mean = series.values().iter().sum::<f64>() / n as f64;
    let window: Vec<f64> = (0..n)
        .map(|k| 0.5 * (1.0 - (2.0 * PI * k as f64 / (n - 1) as f64).cos()))
        .collect();
    let window_sum: f64 = window.iter().sum();
    let mut buf: Vec<Complex<f64>> = series
        .values()
        .iter()
        .zip(&window)
        .map(|(z, w)| Complex::new((z - mean) * w, 0.0))
        .collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let mag: Vec<f64> = buf[..n / 2 + 1].iter().map(|c| c.norm()).collect();

    let resolution = 2.0 * PI / (n as f64 * dt);
    let mut maxima: Vec<usize> = (1..mag.len() - 1)
        .filter(|&k| mag[k] > mag[k - 1] && mag[k] >= mag[k + 1])
        .collect();
    maxima.sort_by(|a, b| mag[*b].total_cmp(&mag[*a]));
    maxima.truncate(count);

    let peaks = maxima
        .into_iter()
        .map(|k| {
            let (l, c, r) = (mag[k - 1], mag[k], mag[k + 1]);
            let denom = l - 2.0 * c + r;
            let delta = if denom == 0.0 {
                0.0
            } else {
                (0.5 * (l - r) / denom).clamp(-0.5, 0.5)
            };
            SpectralPeak {
                frequency: (k as f64 + delta) * resolution,
                amplitude: 2.0 * (c - 0.25 * (l - r) * delta) / window_sum,
            }
        })
        .collect();

    Ok(SpectrumReport {
        peaks,
        resolution,
        nyquist: PI / dt,
    })
}

/// Angular frequencies that can appear in the linear entropy of `model`.
///
/// Each branch population oscillates at `2d±`, `d+ + d-` and `|d+ - d-|`,
/// and the coherence between neighbouring Fock indices at `d(n) ± d(n+1)`.
/// The entropy is quadratic in those, so the returned set is every sum and
/// difference of two first-order frequencies (zero included). Branches with
/// zero weight contribute nothing.
pub fn predicted_frequencies(model: &TcModel) -> Vec<f64> {
    let amps = model.config().oscillator.amplitudes();
    let p = model.config().env.p();
    let mut first = vec![0.0];
    for (weight, branches) in [
        (p, model.unprimed_branches()),
        (1.0 - p, model.primed_branches()),
    ] {
        if weight == 0.0 {
            continue;
        }
        for (n, b) in branches.iter().enumerate() {
            if amps[n] == 0.0 {
                continue;
            }
            let sp = b.params();
            let (dp, dm) = (sp.d_plus, sp.d_minus);
            first.extend([2.0 * dp, 2.0 * dm, dp + dm, (dp - dm).abs()]);
            if n + 1 < amps.len() && amps[n + 1] != 0.0 {
                let next = branches[n + 1].params();
                for x in [dp, dm] {
                    for y in [next.d_plus, next.d_minus] {
                        first.extend([x + y, (x - y).abs()]);
                    }
                }
            }
        }
    }
    dedup(&mut first);
    let mut second: Vec<f64> = first
        .iter()
        .flat_map(|f| first.iter().flat_map(move |g| [f + g, (f - g).abs()]))
        .collect();
    dedup(&mut second);
    second
}

fn dedup(v: &mut Vec<f64>) {
    v.sort_by(|a, b| a.total_cmp(b));
    v.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
}

/// Distance from `f` to the nearest element of a sorted set.
pub fn distance_to_set(f: f64, sorted: &[f64]) -> f64 {
    let i = sorted.partition_point(|x| *x < f);
    [i.checked_sub(1), Some(i)]
        .into_iter()
        .flatten()
        .filter_map(|j| sorted.get(j))
        .map(|x| (x - f).abs())
        .fold(f64::INFINITY, f64::min)
}

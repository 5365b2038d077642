//! Small statistics used by sweep summaries.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Sample mean and standard error of the mean (0 for fewer than two values).
pub fn mean_stderr(values: &[f64]) -> Option<(f64, f64)> {
    let k = values.len();
    if k == 0 {
        return None;
    }
    let mean = values.iter().sum::<f64>() / k as f64;
    if k == 1 {
        return Some((mean, 0.0));
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (k - 1) as f64;
    Some((mean, (var / k as f64).sqrt()))
}

/// Success fraction with its normal-approximation stderr and 95% Wilson interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Proportion {
    pub successes: usize,
    pub trials: usize,
    pub fraction: f64,
    pub stderr: f64,
    pub wilson_low: f64,
    pub wilson_high: f64,
}

impl Proportion {
    pub fn new(successes: usize, trials: usize) -> Self {
        assert!(successes <= trials && trials > 0);
        let k = trials as f64;
        let f = successes as f64 / k;
        let (lo, hi) = wilson(successes, trials, 1.959_963_984_540_054);
        Proportion {
            successes,
            trials,
            fraction: f,
            stderr: (f * (1.0 - f) / k).sqrt(),
            wilson_low: lo,
            wilson_high: hi,
        }
    }
}

pub fn wilson(successes: usize, trials: usize, z: f64) -> (f64, f64) {
    let k = trials as f64;
    let f = successes as f64 / k;
    let z2 = z * z;
    let centre = (f + z2 / (2.0 * k)) / (1.0 + z2 / k);
    let half = z * (f * (1.0 - f) / k + z2 / (4.0 * k * k)).sqrt() / (1.0 + z2 / k);
    // exact at the ends, where rounding can leave the bound a hair off
    ((centre - half).min(f).max(0.0), (centre + half).max(f).min(1.0))
}

/// Weighted pool-adjacent-violators fit: the closest non-decreasing sequence.
pub fn isotonic(ys: &[f64], weights: &[f64]) -> Vec<f64> {
    assert_eq!(ys.len(), weights.len());
    // (value, weight, length) blocks
    let mut blocks: Vec<(f64, f64, usize)> = Vec::with_capacity(ys.len());
    for (&y, &w) in ys.iter().zip(weights) {
        blocks.push((y, w, 1));
        while blocks.len() >= 2 && blocks[blocks.len() - 2].0 > blocks[blocks.len() - 1].0 {
            let (y2, w2, l2) = blocks.pop().unwrap();
            let (y1, w1, l1) = blocks.pop().unwrap();
            let w = w1 + w2;
            blocks.push(((y1 * w1 + y2 * w2) / w, w, l1 + l2));
        }
    }
    blocks
        .into_iter()
        .flat_map(|(y, _, l)| std::iter::repeat_n(y, l))
        .collect()
}

/// The `x` at which the isotonic fit of `ys` first reaches `target`, by
/// linear interpolation between the bracketing grid points.
pub fn crossing(xs: &[f64], ys: &[f64], weights: &[f64], target: f64) -> Result<f64> {
    if !(target > 0.0 && target < 1.0) {
        return Err(Error::InvalidParameter(format!("target {target} must lie in (0,1)")));
    }
    if xs.len() != ys.len() || xs.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParameter("grid must be strictly increasing".into()));
    }
    let fit = isotonic(ys, weights);
    let Some(&first) = fit.first() else {
        return Err(Error::NoCrossing("empty grid".into()));
    };
    if first >= target {
        return if first == target {
            Ok(xs[0])
        } else {
            Err(Error::NoCrossing(format!(
                "fraction already {first} at the first grid point"
            )))
        };
    }
    for i in 1..fit.len() {
        if fit[i] >= target {
            let t = (target - fit[i - 1]) / (fit[i] - fit[i - 1]);
            return Ok(xs[i - 1] + t * (xs[i] - xs[i - 1]));
        }
    }
    Err(Error::NoCrossing(format!("fraction never reaches {target}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interpolation_examples() {
        assert_eq!(crossing(&[0.5, 1.5], &[0.0, 1.0], &[1.0, 1.0], 0.5).unwrap(), 1.0);
        assert!(matches!(
            crossing(&[0.5, 1.5], &[1.0, 1.0], &[1.0, 1.0], 0.5),
            Err(Error::NoCrossing(_))
        ));
        assert!(matches!(
            crossing(&[0.5, 1.5], &[0.0, 0.2], &[1.0, 1.0], 0.5),
            Err(Error::NoCrossing(_))
        ));
    }

    #[test]
    fn isotonic_pools_violators() {
        assert_eq!(isotonic(&[0.0, 0.6, 0.4, 1.0], &[1.0; 4]), vec![0.0, 0.5, 0.5, 1.0]);
        let fit = isotonic(&[0.3, 0.1, 0.2], &[1.0, 1.0, 2.0]);
        assert!(fit.iter().all(|&v| (v - 0.2).abs() < 1e-12));
        // smoothing only moves the crossing within the violating block
        let x = crossing(&[0.6, 0.8, 1.0, 1.2], &[0.1, 0.6, 0.4, 0.9], &[1.0; 4], 0.5).unwrap();
        assert!((x - 0.8).abs() < 1e-12);
    }

    #[test]
    fn wilson_interval_contains_fraction() {
        for (s, t) in [(0, 10), (3, 10), (10, 10), (15, 30)] {
            let p = Proportion::new(s, t);
            assert!(p.wilson_low <= p.fraction && p.fraction <= p.wilson_high);
            assert!(p.wilson_low >= 0.0 && p.wilson_high <= 1.0);
        }
        let (m, se) = mean_stderr(&[1.0, 2.0, 3.0]).unwrap();
        assert_eq!(m, 2.0);
        assert!((se - (1.0f64 / 3.0).sqrt()).abs() < 1e-12);
    }
}

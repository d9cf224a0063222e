use serde::Serialize;

use super::distance::{euclid_over, CoefficientSet};
use crate::error::{Error, Result};
use crate::tiv::Tiv;

/// How the peak threshold on the change curve is chosen.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ThresholdPolicy {
    /// mean + `std_multiplier` * population standard deviation of the curve.
    Adaptive {
        std_multiplier: f64,
    },
    Fixed(f64),
}

impl Default for ThresholdPolicy {
    fn default() -> Self {
        ThresholdPolicy::Adaptive {
            std_multiplier: 1.0,
        }
    }
}

impl ThresholdPolicy {
    pub fn resolve(&self, values: &[f64]) -> f64 {
        match *self {
            ThresholdPolicy::Fixed(theta) => theta,
            ThresholdPolicy::Adaptive { std_multiplier } => {
                if values.is_empty() {
                    return 0.0;
                }
                let n = values.len() as f64;
                let mean = values.iter().sum::<f64>() / n;
                let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
                mean + std_multiplier * var.sqrt()
            }
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ChangeOptions {
    pub coefficients: CoefficientSet,
    pub threshold: ThresholdPolicy,
}

/// Framewise harmonic change curve and its peaks.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HarmonicChangeSeries {
    #[serde(rename = "lambda")]
    pub values: Vec<f64>,
    pub peaks: Vec<usize>,
    #[serde(skip)]
    pub threshold: f64,
}

/// lambda_m = |T_{m-1} - T_{m+1}| for interior frames; the two boundary
/// frames are 0. Peaks are strict rises into a local maximum that also clear
/// the threshold.
pub fn harmonic_change(frames: &[Tiv], options: &ChangeOptions) -> Result<HarmonicChangeSeries> {
    if frames.len() < 3 {
        return Err(Error::InsufficientInput {
            needed: 3,
            got: frames.len(),
        });
    }
    let mut values = vec![0.0; frames.len()];
    for m in 1..frames.len() - 1 {
        values[m] = euclid_over(&frames[m - 1], &frames[m + 1], options.coefficients)?;
    }
    let threshold = options.threshold.resolve(&values);
    let peaks = pick_peaks(&values, threshold);
    Ok(HarmonicChangeSeries {
        values,
        peaks,
        threshold,
    })
}

pub fn pick_peaks(values: &[f64], threshold: f64) -> Vec<usize> {
    if values.len() < 3 {
        return Vec::new();
    }
    (1..values.len() - 1)
        .filter(|&p| {
            values[p - 1] < values[p] && values[p] >= values[p + 1] && values[p] >= threshold
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chroma::ChromaVector;
    use crate::descriptors::distance::euclid;
    use crate::tiv::WeightVector;

    fn tiv(pcs: &[usize]) -> Tiv {
        Tiv::from_chroma(
            &ChromaVector::from_pitch_classes(pcs),
            &WeightVector::default(),
        )
    }

    #[test]
    fn constant_sequence_is_flat() {
        let frames = vec![tiv(&[0, 4, 7]); 7];
        let s = harmonic_change(&frames, &ChangeOptions::default()).unwrap();
        assert!(s.values.iter().all(|&v| v == 0.0));
        assert!(s.peaks.is_empty());
    }

    #[test]
    fn two_blocks_peak_at_the_boundary() {
        let a = tiv(&[0, 4, 7]);
        let b = tiv(&[2, 5, 9]);
        let frames = [a, a, a, b, b, b];
        let s = harmonic_change(&frames, &ChangeOptions::default()).unwrap();
        let d = euclid(&a, &b).unwrap();
        assert_eq!(s.values, vec![0.0, 0.0, d, d, 0.0, 0.0]);
        assert_eq!(s.peaks, vec![2]);
    }

    #[test]
    fn too_few_frames() {
        let frames = [tiv(&[0]), tiv(&[1])];
        assert!(matches!(
            harmonic_change(&frames, &ChangeOptions::default()),
            Err(Error::InsufficientInput { needed: 3, got: 2 })
        ));
    }

    #[test]
    fn fixed_threshold_suppresses_small_peaks() {
        let values = [0.0, 1.0, 0.0, 3.0, 0.0];
        assert_eq!(pick_peaks(&values, 0.5), vec![1, 3]);
        assert_eq!(pick_peaks(&values, 2.0), vec![3]);
    }

    #[test]
    fn adaptive_threshold_uses_population_std() {
        let t = ThresholdPolicy::default().resolve(&[0.0, 2.0]);
        assert_eq!(t, 2.0);
    }
}

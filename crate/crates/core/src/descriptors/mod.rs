//! Harmonic qualities, inter-TIV distances and the harmonic change curve.

mod change;
mod distance;
mod quality;

pub use change::{
    harmonic_change, pick_peaks, ChangeOptions, HarmonicChangeSeries, ThresholdPolicy,
};
pub use distance::{cosine_distance, cosine_similarity, euclid, euclid_over, CoefficientSet};
pub use quality::{
    chromaticity, diatonicity, dissonance, normalized_magnitude, wholetoneness, QualityKind,
    QualityScore,
};

//! Tonal Interval Vectors (TIVs) from chroma features.
//!
//! A chroma vector is L1-normalized and mapped through a weighted DFT to six
//! complex coefficients. From those the crate derives transposition-invariant
//! harmonic qualities, distances between TIVs, a harmonic change curve and a
//! 24-key estimate.
//!
//! ```
//! use tonalspace::{ChromaVector, Tiv, WeightVector, descriptors};
//!
//! let triad = ChromaVector::from_pitch_classes(&[0, 4, 7]);
//! let tiv = Tiv::from_chroma(&triad, &WeightVector::default());
//! assert!(descriptors::diatonicity(&tiv).value > 0.6);
//! ```

pub mod analysis;
pub mod chroma;
pub mod descriptors;
mod error;
pub mod ingest;
pub mod key;
pub mod tiv;

pub use chroma::{ChromaVector, PITCH_CLASSES};
pub use error::{Error, Result};
pub use ingest::ChromaSequence;
pub use key::{build_profile_set, estimate_key, KeyProfileSet, KeyResult, Mode, ProfileName};
pub use tiv::{combine, PhaseVector, Tiv, WeightVector, COEFFICIENTS, DEFAULT_WEIGHTS};

/// Shorthand for [`Tiv::from_chroma`].
pub fn tiv_from_chroma(chroma: &ChromaVector, weights: &WeightVector) -> Tiv {
    Tiv::from_chroma(chroma, weights)
}

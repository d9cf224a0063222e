use std::ops::Add;

use crate::error::{Error, Result};

/// Number of pitch classes in a chroma vector.
pub const PITCH_CLASSES: usize = 12;

/// Twelve nonnegative energies, one per pitch class (index 0 is C).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChromaVector([f64; PITCH_CLASSES]);

impl ChromaVector {
    pub fn new(bins: [f64; PITCH_CLASSES]) -> Result<Self> {
        for (n, &b) in bins.iter().enumerate() {
            if !b.is_finite() {
                return Err(Error::InvalidChroma(format!("bin {n} is not finite ({b})")));
            }
            if b < 0.0 {
                return Err(Error::InvalidChroma(format!("bin {n} is negative ({b})")));
            }
        }
        Ok(Self(bins))
    }

    pub fn from_slice(bins: &[f64]) -> Result<Self> {
        let arr: [f64; PITCH_CLASSES] = bins.try_into().map_err(|_| {
            Error::InvalidChroma(format!("expected {PITCH_CLASSES} bins, got {}", bins.len()))
        })?;
        Self::new(arr)
    }

    pub fn zeros() -> Self {
        Self([0.0; PITCH_CLASSES])
    }

    /// Unit energy at a single pitch class.
    pub fn one_hot(pitch_class: usize) -> Self {
        let mut bins = [0.0; PITCH_CLASSES];
        bins[pitch_class % PITCH_CLASSES] = 1.0;
        Self(bins)
    }

    /// Binary chroma with unit energy on every listed pitch class.
    pub fn from_pitch_classes(pcs: &[usize]) -> Self {
        let mut bins = [0.0; PITCH_CLASSES];
        for &pc in pcs {
            bins[pc % PITCH_CLASSES] = 1.0;
        }
        Self(bins)
    }

    pub fn bins(&self) -> &[f64; PITCH_CLASSES] {
        &self.0
    }

    pub fn energy(&self) -> f64 {
        self.0.iter().sum()
    }

    pub fn is_silent(&self) -> bool {
        self.0.iter().all(|&b| b == 0.0)
    }

    /// Circular rotation by `semitones`: energy at pitch class `n` moves to `n + semitones`.
    pub fn rotate(&self, semitones: i64) -> Self {
        let shift = semitones.rem_euclid(PITCH_CLASSES as i64) as usize;
        let mut bins = [0.0; PITCH_CLASSES];
        for (n, &b) in self.0.iter().enumerate() {
            bins[(n + shift) % PITCH_CLASSES] = b;
        }
        Self(bins)
    }

    /// Multiplies every bin by `factor`, which must be nonnegative and finite.
    pub fn scale(&self, factor: f64) -> Result<Self> {
        Self::new(self.0.map(|b| b * factor))
    }
}

impl Add for ChromaVector {
    type Output = ChromaVector;

    fn add(self, rhs: ChromaVector) -> ChromaVector {
        let mut bins = self.0;
        for (b, r) in bins.iter_mut().zip(rhs.0) {
            *b += r;
        }
        ChromaVector(bins)
    }
}

impl TryFrom<&[f64]> for ChromaVector {
    type Error = Error;

    fn try_from(bins: &[f64]) -> Result<Self> {
        Self::from_slice(bins)
    }
}

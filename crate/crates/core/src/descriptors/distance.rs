use crate::error::{Error, Result};
use crate::tiv::Tiv;

/// Which TIV coefficients a distance is measured over.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CoefficientSet {
    /// k = 1..=6.
    #[default]
    All,
    /// k = 3, 4, 5: the minor-thirds, major-thirds and fifths circles, which
    /// matches the coefficient subset of the Harte tonal centroid.
    Harte,
}

impl CoefficientSet {
    pub fn indices(&self) -> &'static [usize] {
        match self {
            CoefficientSet::All => &[1, 2, 3, 4, 5, 6],
            CoefficientSet::Harte => &[3, 4, 5],
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            CoefficientSet::All => "all",
            CoefficientSet::Harte => "harte",
        }
    }
}

/// Euclidean distance over all six coefficients.
pub fn euclid(a: &Tiv, b: &Tiv) -> Result<f64> {
    euclid_over(a, b, CoefficientSet::All)
}

pub fn euclid_over(a: &Tiv, b: &Tiv, set: CoefficientSet) -> Result<f64> {
    a.check_compatible(b)?;
    Ok(set
        .indices()
        .iter()
        .map(|&k| (a.coeff(k) - b.coeff(k)).norm_sqr())
        .sum::<f64>()
        .sqrt())
}

/// Real part of the Hermitian inner product over the product of norms,
/// i.e. the cosine between the two 12-dimensional real embeddings.
pub fn cosine_similarity(a: &Tiv, b: &Tiv) -> Result<f64> {
    a.check_compatible(b)?;
    let (na, nb) = (a.norm(), b.norm());
    if na == 0.0 || nb == 0.0 {
        return Err(Error::Degenerate("cosine of a zero-norm TIV is undefined"));
    }
    let dot: f64 = a
        .coeffs()
        .iter()
        .zip(b.coeffs())
        .map(|(x, y)| (x * y.conj()).re)
        .sum();
    Ok((dot / (na * nb)).clamp(-1.0, 1.0))
}

pub fn cosine_distance(a: &Tiv, b: &Tiv) -> Result<f64> {
    Ok(1.0 - cosine_similarity(a, b)?)
}

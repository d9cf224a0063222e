use serde::Serialize;

use crate::tiv::Tiv;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum QualityKind {
    Chromaticity,
    Diatonicity,
    Wholetoneness,
    Dissonance,
}

/// A harmonic quality in [0, 1].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QualityScore {
    pub value: f64,
    pub kind: QualityKind,
}

/// |T(k)| / w(k): how concentrated the source is on the k-th interval cycle.
pub fn normalized_magnitude(tiv: &Tiv, k: usize) -> f64 {
    tiv.coeff(k).norm() / tiv.weights().get(k)
}

pub fn chromaticity(tiv: &Tiv) -> QualityScore {
    QualityScore {
        value: normalized_magnitude(tiv, 1),
        kind: QualityKind::Chromaticity,
    }
}

pub fn diatonicity(tiv: &Tiv) -> QualityScore {
    QualityScore {
        value: normalized_magnitude(tiv, 5),
        kind: QualityKind::Diatonicity,
    }
}

pub fn wholetoneness(tiv: &Tiv) -> QualityScore {
    QualityScore {
        value: normalized_magnitude(tiv, 6),
        kind: QualityKind::Wholetoneness,
    }
}

/// 1 - ||T|| / ||w|| with both norms taken over all six coefficients.
pub fn dissonance(tiv: &Tiv) -> QualityScore {
    let value = (1.0 - tiv.norm() / tiv.weights().norm()).max(0.0);
    QualityScore {
        value,
        kind: QualityKind::Dissonance,
    }
}

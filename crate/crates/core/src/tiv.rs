//! Tonal Interval Vectors.
//!
//! A TIV holds the six non-redundant coefficients of the weighted DFT of an
//! L1-normalized chroma vector. The chroma sum is kept alongside as `energy`
//! so that TIVs of different signals can be mixed.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::chroma::{ChromaVector, PITCH_CLASSES};
use crate::error::{Error, Result};

/// Number of stored coefficients, k = 1..=6.
pub const COEFFICIENTS: usize = 6;

/// Perceptual weights derived from empirical dyad consonance ratings.
pub const DEFAULT_WEIGHTS: [f64; COEFFICIENTS] = [3.0, 8.0, 11.5, 15.0, 14.5, 7.5];

/// Magnitude below which a coefficient's phase is reported as invalid.
pub const PHASE_EPSILON: f64 = 1e-10;

const HALF_SQRT3: f64 = 0.866_025_403_784_438_6;

// cos and sin of 2*pi*m/12, tabulated so that the twelve roots of unity are exact
// wherever the values are representable.
const ROOT_COS: [f64; PITCH_CLASSES] = [
    1.0,
    HALF_SQRT3,
    0.5,
    0.0,
    -0.5,
    -HALF_SQRT3,
    -1.0,
    -HALF_SQRT3,
    -0.5,
    0.0,
    0.5,
    HALF_SQRT3,
];
const ROOT_SIN: [f64; PITCH_CLASSES] = [
    0.0,
    0.5,
    HALF_SQRT3,
    1.0,
    HALF_SQRT3,
    0.5,
    0.0,
    -0.5,
    -HALF_SQRT3,
    -1.0,
    -HALF_SQRT3,
    -0.5,
];

/// e^{-j 2 pi m / 12}
fn unit_root(m: i64) -> Complex64 {
    let m = m.rem_euclid(PITCH_CLASSES as i64) as usize;
    Complex64::new(ROOT_COS[m], -ROOT_SIN[m])
}

/// Per-coefficient weights w(1)..w(6).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct WeightVector([f64; COEFFICIENTS]);

impl WeightVector {
    pub fn new(weights: [f64; COEFFICIENTS]) -> Result<Self> {
        for (i, &w) in weights.iter().enumerate() {
            if !(w.is_finite() && w > 0.0) {
                return Err(Error::InvalidWeights(format!(
                    "w({}) must be positive and finite, got {w}",
                    i + 1
                )));
            }
        }
        Ok(Self(weights))
    }

    pub fn as_array(&self) -> &[f64; COEFFICIENTS] {
        &self.0
    }

    /// Weight for coefficient `k` in 1..=6.
    pub fn get(&self, k: usize) -> f64 {
        self.0[k - 1]
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|w| w * w).sum::<f64>().sqrt()
    }
}

impl Default for WeightVector {
    fn default() -> Self {
        Self(DEFAULT_WEIGHTS)
    }
}

impl TryFrom<Vec<f64>> for WeightVector {
    type Error = Error;

    fn try_from(v: Vec<f64>) -> Result<Self> {
        let arr: [f64; COEFFICIENTS] = v.as_slice().try_into().map_err(|_| {
            Error::InvalidWeights(format!("expected {COEFFICIENTS} weights, got {}", v.len()))
        })?;
        Self::new(arr)
    }
}

impl From<WeightVector> for Vec<f64> {
    fn from(w: WeightVector) -> Self {
        w.0.to_vec()
    }
}

/// Parses a comma-separated list of six weights, e.g. `3,8,11.5,15,14.5,7.5`.
impl FromStr for WeightVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let values = s
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<f64>()
                    .map_err(|e| Error::InvalidWeights(format!("`{}`: {e}", part.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::try_from(values)
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, w) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{w}")?;
        }
        Ok(())
    }
}

/// Phase angles of the six coefficients, in (-pi, pi].
///
/// Entries whose coefficient magnitude is below [`PHASE_EPSILON`] carry no
/// direction; they are flagged invalid and stored as 0.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhaseVector {
    angles: [f64; COEFFICIENTS],
    valid: [bool; COEFFICIENTS],
}

impl PhaseVector {
    pub fn angles(&self) -> &[f64; COEFFICIENTS] {
        &self.angles
    }

    pub fn valid(&self) -> &[bool; COEFFICIENTS] {
        &self.valid
    }

    /// Phase of coefficient `k` in 1..=6, if meaningful.
    pub fn get(&self, k: usize) -> Option<f64> {
        self.valid[k - 1].then_some(self.angles[k - 1])
    }
}

/// Tonal Interval Vector: coefficients T(1)..T(6) plus the source energy.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tiv {
    coeffs: [Complex64; COEFFICIENTS],
    energy: f64,
    weights: WeightVector,
}

impl Tiv {
    /// Builds the TIV of a chroma vector.
    ///
    /// An all-zero chroma has no defined normalization; it maps to the zero
    /// TIV with energy 0, which downstream descriptors treat as silence.
    pub fn from_chroma(chroma: &ChromaVector, weights: &WeightVector) -> Self {
        let energy = chroma.energy();
        if energy == 0.0 {
            return Self::silent(weights);
        }
        let normalized = chroma.bins().map(|b| b / energy);
        let mut coeffs = [Complex64::new(0.0, 0.0); COEFFICIENTS];
        for (i, coeff) in coeffs.iter_mut().enumerate() {
            let k = (i + 1) as i64;
            let sum: Complex64 = normalized
                .iter()
                .enumerate()
                .map(|(n, &c)| unit_root(k * n as i64) * c)
                .sum();
            *coeff = sum * weights.0[i];
        }
        Self {
            coeffs,
            energy,
            weights: *weights,
        }
    }

    /// The zero TIV with energy 0.
    pub fn silent(weights: &WeightVector) -> Self {
        Self {
            coeffs: [Complex64::new(0.0, 0.0); COEFFICIENTS],
            energy: 0.0,
            weights: *weights,
        }
    }

    /// Reassembles a TIV from stored coefficients, e.g. after deserialization.
    pub fn from_parts(
        coeffs: [Complex64; COEFFICIENTS],
        energy: f64,
        weights: WeightVector,
    ) -> Result<Self> {
        if !(energy.is_finite() && energy >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "TIV energy must be nonnegative and finite, got {energy}"
            )));
        }
        if coeffs
            .iter()
            .any(|c| !(c.re.is_finite() && c.im.is_finite()))
        {
            return Err(Error::InvalidParameter(
                "TIV coefficients must be finite".into(),
            ));
        }
        Ok(Self {
            coeffs,
            energy,
            weights,
        })
    }

    pub fn coeffs(&self) -> &[Complex64; COEFFICIENTS] {
        &self.coeffs
    }

    /// Coefficient T(k) for `k` in 1..=6.
    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs[k - 1]
    }

    pub fn energy(&self) -> f64 {
        self.energy
    }

    pub fn weights(&self) -> &WeightVector {
        &self.weights
    }

    pub fn is_silent(&self) -> bool {
        self.energy == 0.0
    }

    /// |T(k)| for k = 1..=6.
    pub fn mag(&self) -> [f64; COEFFICIENTS] {
        self.coeffs.map(|c| c.norm())
    }

    pub fn phases(&self) -> PhaseVector {
        let mut angles = [0.0; COEFFICIENTS];
        let mut valid = [false; COEFFICIENTS];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.norm() >= PHASE_EPSILON {
                angles[i] = wrap_phase(c.im.atan2(c.re));
                valid[i] = true;
            }
        }
        PhaseVector { angles, valid }
    }

    /// Euclidean norm over the 12 real components of the coefficients.
    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Transposes the source by `semitones`: T(k) is rotated by -2 pi k p / 12.
    pub fn transpose(&self, semitones: i64) -> Self {
        let mut out = *self;
        for (i, c) in out.coeffs.iter_mut().enumerate() {
            *c *= unit_root((i as i64 + 1) * semitones);
        }
        out
    }

    /// Multiplies every coefficient by `factor`; energy is left untouched.
    pub fn scale_coeffs(&self, factor: f64) -> Self {
        let mut out = *self;
        for c in out.coeffs.iter_mut() {
            *c *= factor;
        }
        out
    }

    pub(crate) fn check_compatible(&self, other: &Tiv) -> Result<()> {
        if self.weights != other.weights {
            return Err(Error::IncompatibleWeights);
        }
        Ok(())
    }

    pub fn to_record(&self) -> TivRecord {
        TivRecord {
            coeffs: self.coeffs.map(|c| [c.re, c.im]),
            energy: self.energy,
        }
    }

    pub fn from_record(record: &TivRecord, weights: WeightVector) -> Result<Self> {
        Self::from_parts(
            record.coeffs.map(|[re, im]| Complex64::new(re, im)),
            record.energy,
            weights,
        )
    }
}

/// Wraps an angle into (-pi, pi].
pub fn wrap_phase(angle: f64) -> f64 {
    let mut a = angle.rem_euclid(2.0 * PI);
    if a > PI {
        a -= 2.0 * PI;
    }
    a
}

/// Serialized form: `{"coeffs": [[re, im] x 6], "energy": number}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TivRecord {
    pub coeffs: [[f64; 2]; COEFFICIENTS],
    pub energy: f64,
}

impl Serialize for Tiv {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        self.to_record().serialize(serializer)
    }
}

/// Energy-weighted mix of two or more TIVs.
///
/// Each operand contributes in proportion to its energy; the result carries
/// the summed energy. Silent operands contribute nothing.
pub fn combine(tivs: &[Tiv]) -> Result<Tiv> {
    if tivs.len() < 2 {
        return Err(Error::InsufficientInput {
            needed: 2,
            got: tivs.len(),
        });
    }
    let first = &tivs[0];
    for t in &tivs[1..] {
        first.check_compatible(t)?;
    }
    let total: f64 = tivs.iter().map(|t| t.energy).sum();
    if total <= 0.0 {
        return Err(Error::Degenerate("all operands of combine are silent"));
    }
    let mut coeffs = [Complex64::new(0.0, 0.0); COEFFICIENTS];
    for t in tivs {
        let share = t.energy / total;
        for (acc, c) in coeffs.iter_mut().zip(t.coeffs) {
            *acc += c * share;
        }
    }
    Ok(Tiv {
        coeffs,
        energy: total,
        weights: first.weights,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Straight summation with libm trigonometry, kept apart from the table-driven path.
    fn naive_dft(c: &[f64; 12], w: &[f64; 6]) -> [Complex64; 6] {
        let total: f64 = c.iter().sum();
        let mut out = [Complex64::new(0.0, 0.0); 6];
        for k in 1..=6 {
            let mut re = 0.0;
            let mut im = 0.0;
            for (n, &v) in c.iter().enumerate() {
                let theta = -2.0 * PI * (k * n) as f64 / 12.0;
                re += v / total * theta.cos();
                im += v / total * theta.sin();
            }
            out[k - 1] = Complex64::new(w[k - 1] * re, w[k - 1] * im);
        }
        out
    }

    fn tiv(pcs: &[usize]) -> Tiv {
        Tiv::from_chroma(
            &ChromaVector::from_pitch_classes(pcs),
            &WeightVector::default(),
        )
    }

    fn assert_coeffs_close(a: &Tiv, b: &Tiv, tol: f64) {
        for k in 1..=6 {
            let d = (a.coeff(k) - b.coeff(k)).norm();
            assert!(
                d <= tol,
                "k={k}: {} vs {} (diff {d})",
                a.coeff(k),
                b.coeff(k)
            );
        }
    }

    #[test]
    fn uniform_chroma_has_no_harmonics() {
        let t = Tiv::from_chroma(
            &ChromaVector::new([1.0; 12]).unwrap(),
            &WeightVector::default(),
        );
        assert_eq!(t.energy(), 12.0);
        for m in t.mag() {
            assert!(m < 1e-15);
        }
    }

    #[test]
    fn impulse_at_c_reproduces_weights() {
        let t = tiv(&[0]);
        assert_eq!(t.energy(), 1.0);
        for k in 1..=6 {
            assert_eq!(t.coeff(k), Complex64::new(DEFAULT_WEIGHTS[k - 1], 0.0));
        }
        assert_eq!(t.mag(), DEFAULT_WEIGHTS);
        let ph = t.phases();
        assert!(ph.valid().iter().all(|&v| v));
        assert!(ph.angles().iter().all(|&a| a == 0.0));
    }

    #[test]
    fn major_triad_matches_naive_dft() {
        let c = ChromaVector::from_pitch_classes(&[0, 4, 7]);
        let t = Tiv::from_chroma(&c, &WeightVector::default());
        let oracle = naive_dft(c.bins(), &DEFAULT_WEIGHTS);
        for k in 1..=6 {
            assert!((t.coeff(k) - oracle[k - 1]).norm() < 1e-12);
        }
    }

    #[test]
    fn silent_chroma_gives_zero_tiv() {
        let t = Tiv::from_chroma(&ChromaVector::zeros(), &WeightVector::default());
        assert!(t.is_silent());
        assert_eq!(t.norm(), 0.0);
        assert!(t.phases().valid().iter().all(|&v| !v));
    }

    #[test]
    fn whole_tone_phases() {
        let ph = tiv(&[0, 2, 4, 6, 8, 10]).phases();
        assert_eq!(ph.valid(), &[false, false, false, false, false, true]);
        assert_eq!(ph.get(6), Some(0.0));
    }

    #[test]
    fn magnitude_invariant_under_transposition_and_inversion() {
        let a = tiv(&[0, 4, 7]).mag();
        let b = tiv(&[1, 5, 8]).mag();
        // inversion of the major triad is the minor triad
        let c = tiv(&[0, 3, 7]).mag();
        for k in 0..6 {
            assert!((a[k] - b[k]).abs() < 1e-12);
            assert!((a[k] - c[k]).abs() < 1e-12);
        }
    }

    #[test]
    fn transpose_identity_and_rotation() {
        let t = tiv(&[0, 4, 7]);
        assert_eq!(t.transpose(0), t);
        assert_coeffs_close(&t.transpose(12), &t, 1e-15);
        assert_coeffs_close(&t.transpose(2), &tiv(&[2, 6, 9]), 1e-12);
        assert_coeffs_close(&t.transpose(-5), &tiv(&[7, 11, 2]), 1e-12);
        assert_eq!(t.transpose(3).energy(), t.energy());
    }

    #[test]
    fn combine_idempotent_and_linear() {
        let t = tiv(&[0, 4, 7]);
        let twice = combine(&[t, t]).unwrap();
        assert_coeffs_close(&twice, &t, 1e-15);
        assert_eq!(twice.energy(), 2.0 * t.energy());

        let mixed = combine(&[tiv(&[0]), tiv(&[4]), tiv(&[7])]).unwrap();
        assert_coeffs_close(&mixed, &t, 1e-12);
        assert_eq!(mixed.energy(), 3.0);
    }

    #[test]
    fn combine_ignores_silent_operand() {
        let t = tiv(&[0, 3, 7]);
        let z = Tiv::silent(&WeightVector::default());
        let out = combine(&[t, z]).unwrap();
        assert_eq!(out.coeffs(), t.coeffs());
        assert_eq!(out.energy(), t.energy());
    }

    #[test]
    fn combine_errors() {
        let w = WeightVector::default();
        let z = Tiv::silent(&w);
        assert!(matches!(
            combine(&[z]),
            Err(Error::InsufficientInput { .. })
        ));
        assert!(matches!(combine(&[z, z]), Err(Error::Degenerate(_))));
        let other = WeightVector::new([1.0; 6]).unwrap();
        let a = Tiv::from_chroma(&ChromaVector::one_hot(0), &w);
        let b = Tiv::from_chroma(&ChromaVector::one_hot(0), &other);
        assert!(matches!(combine(&[a, b]), Err(Error::IncompatibleWeights)));
    }

    #[test]
    fn weight_parsing() {
        let w: WeightVector = "3, 8, 11.5, 15, 14.5, 7.5".parse().unwrap();
        assert_eq!(w, WeightVector::default());
        assert_eq!(w.to_string(), "3,8,11.5,15,14.5,7.5");
        assert!("1,2,3".parse::<WeightVector>().is_err());
        assert!("1,2,3,4,5,0".parse::<WeightVector>().is_err());
        assert!("1,2,3,4,5,x".parse::<WeightVector>().is_err());
    }

    #[test]
    fn wrap_phase_range() {
        assert_eq!(wrap_phase(-PI), PI);
        assert_eq!(wrap_phase(PI), PI);
        assert!((wrap_phase(3.0 * PI / 2.0) + PI / 2.0).abs() < 1e-15);
    }

    #[test]
    fn record_round_trip() {
        let t = tiv(&[0, 4, 7]);
        let json = serde_json::to_string(&t).unwrap();
        let rec: TivRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(Tiv::from_record(&rec, WeightVector::default()).unwrap(), t);
    }
}

//! Key estimation by nearest key-profile TIV.
//!
//! The 24 candidates are the 12 rotations of a major profile (indices 0..=11)
//! followed by the 12 rotations of a minor profile (12..=23). The input TIV
//! is scaled by `alpha` only when compared against minor candidates, which is
//! what lets `alpha` trade major against minor decisions.

use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::chroma::{ChromaVector, PITCH_CLASSES};
use crate::descriptors::euclid;
use crate::error::{Error, Result};
use crate::tiv::{Tiv, WeightVector};

pub const KEY_COUNT: usize = 24;

pub const PITCH_NAMES: [&str; PITCH_CLASSES] = [
    "C", "C#", "D", "D#", "E", "F", "F#", "G", "G#", "A", "A#", "B",
];

const TEMPERLEY_JSON: &str = include_str!("../data/profiles/temperley.json");
const SHAATH_JSON: &str = include_str!("../data/profiles/shaath.json");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ProfileName {
    Temperley,
    Shaath,
    Custom,
}

impl ProfileName {
    pub fn as_str(&self) -> &'static str {
        match self {
            ProfileName::Temperley => "temperley",
            ProfileName::Shaath => "shaath",
            ProfileName::Custom => "custom",
        }
    }

    pub fn default_alpha(&self) -> Option<f64> {
        match self {
            ProfileName::Temperley => Some(0.2),
            ProfileName::Shaath => Some(0.55),
            ProfileName::Custom => None,
        }
    }
}

impl FromStr for ProfileName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "temperley" => Ok(ProfileName::Temperley),
            "shaath" | "sha'ath" => Ok(ProfileName::Shaath),
            "custom" => Ok(ProfileName::Custom),
            _ => Err(Error::UnknownProfile(s.to_string())),
        }
    }
}

impl fmt::Display for ProfileName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// On-disk profile description: `{"name", "major": [12], "minor": [12], "alpha"}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProfileData {
    pub name: String,
    pub major: Vec<f64>,
    pub minor: Vec<f64>,
    pub alpha: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
}

impl ProfileData {
    /// Profile tables shipped with the crate.
    pub fn builtin(name: ProfileName) -> Result<Self> {
        let text = match name {
            ProfileName::Temperley => TEMPERLEY_JSON,
            ProfileName::Shaath => SHAATH_JSON,
            ProfileName::Custom => {
                return Err(Error::MalformedProfile(
                    "a custom profile needs explicit major/minor data".into(),
                ))
            }
        };
        Ok(serde_json::from_str(text)?)
    }

    /// Reads `<dir>/<name>.json`.
    pub fn from_dir(dir: &Path, name: ProfileName) -> Result<Self> {
        Self::from_file(&dir.join(format!("{}.json", name.as_str())))
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        serde_json::from_str(&text)
            .map_err(|e| Error::MalformedProfile(format!("{}: {e}", path.display())))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Major,
    Minor,
}

/// 24 precomputed key TIVs with the major/minor bias.
#[derive(Clone, Debug)]
pub struct KeyProfileSet {
    name: ProfileName,
    major: ChromaVector,
    minor: ChromaVector,
    alpha: f64,
    profile_tivs: Vec<Tiv>,
}

impl KeyProfileSet {
    pub fn from_data(
        name: ProfileName,
        data: &ProfileData,
        alpha_override: Option<f64>,
        weights: &WeightVector,
    ) -> Result<Self> {
        let major = profile_vector("major", &data.major)?;
        let minor = profile_vector("minor", &data.minor)?;
        let alpha = alpha_override
            .or(data.alpha)
            .or(name.default_alpha())
            .ok_or_else(|| Error::MalformedProfile("alpha is required".into()))?;
        if !(alpha.is_finite() && alpha > 0.0) {
            return Err(Error::MalformedProfile(format!(
                "alpha must be positive, got {alpha}"
            )));
        }
        let profile_tivs = (0..PITCH_CLASSES as i64)
            .map(|r| Tiv::from_chroma(&major.rotate(r), weights))
            .chain((0..PITCH_CLASSES as i64).map(|r| Tiv::from_chroma(&minor.rotate(r), weights)))
            .collect();
        Ok(Self {
            name,
            major,
            minor,
            alpha,
            profile_tivs,
        })
    }

    pub fn name(&self) -> ProfileName {
        self.name
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn major_profile(&self) -> &ChromaVector {
        &self.major
    }

    pub fn minor_profile(&self) -> &ChromaVector {
        &self.minor
    }

    pub fn profile_tivs(&self) -> &[Tiv] {
        &self.profile_tivs
    }

    pub fn weights(&self) -> &WeightVector {
        self.profile_tivs[0].weights()
    }
}

/// Builds one of the shipped profile sets with the default weights.
pub fn build_profile_set(name: ProfileName, alpha_override: Option<f64>) -> Result<KeyProfileSet> {
    let data = ProfileData::builtin(name)?;
    KeyProfileSet::from_data(name, &data, alpha_override, &WeightVector::default())
}

fn profile_vector(which: &str, values: &[f64]) -> Result<ChromaVector> {
    let c = ChromaVector::from_slice(values)
        .map_err(|e| Error::MalformedProfile(format!("{which} profile: {e}")))?;
    if c.is_silent() {
        return Err(Error::MalformedProfile(format!(
            "{which} profile is all zero"
        )));
    }
    Ok(c)
}

/// Scale applied to the input TIV when it is compared against candidate `index`.
pub fn candidate_scale(index: usize, alpha: f64) -> f64 {
    if index >= PITCH_CLASSES {
        alpha
    } else {
        1.0
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct KeyResult {
    pub index: usize,
    pub tonic: usize,
    pub mode: Mode,
    pub distances: [f64; KEY_COUNT],
}

impl KeyResult {
    fn from_distances(distances: [f64; KEY_COUNT]) -> Self {
        let mut index = 0;
        for (r, &d) in distances.iter().enumerate() {
            if d < distances[index] {
                index = r;
            }
        }
        Self {
            index,
            tonic: index % PITCH_CLASSES,
            mode: if index < PITCH_CLASSES {
                Mode::Major
            } else {
                Mode::Minor
            },
            distances,
        }
    }

    pub fn label(&self) -> String {
        key_label(self.index)
    }

    pub fn to_record(&self) -> KeyRecord {
        KeyRecord {
            index: self.index,
            tonic: self.tonic,
            mode: self.mode,
            label: self.label(),
        }
    }
}

/// `"C major"` for 0 through `"B minor"` for 23.
pub fn key_label(index: usize) -> String {
    let mode = if index < PITCH_CLASSES {
        "major"
    } else {
        "minor"
    };
    format!("{} {mode}", PITCH_NAMES[index % PITCH_CLASSES])
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KeyRecord {
    pub index: usize,
    pub tonic: usize,
    pub mode: Mode,
    pub label: String,
}

pub fn estimate_key(tiv: &Tiv, profiles: &KeyProfileSet) -> Result<KeyResult> {
    if tiv.is_silent() {
        return Err(Error::Degenerate("cannot estimate the key of silence"));
    }
    let mut distances = [0.0; KEY_COUNT];
    for (r, (d, candidate)) in distances.iter_mut().zip(&profiles.profile_tivs).enumerate() {
        let scaled = tiv.scale_coeffs(candidate_scale(r, profiles.alpha));
        *d = euclid(&scaled, candidate)?;
    }
    Ok(KeyResult::from_distances(distances))
}

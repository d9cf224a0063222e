//! Chroma input: file loaders, temporal aggregation and a basic WAV extractor.

mod csv_io;
mod json_io;
mod wav;

use std::ops::Range;
use std::path::Path;

use crate::chroma::{ChromaVector, PITCH_CLASSES};
use crate::error::{Error, Result};

pub use csv_io::{load_chroma_csv, parse_chroma_csv, write_chroma_csv};
pub use json_io::{load_chroma_json, parse_chroma_json, write_chroma_json, ChromaFile};
pub use wav::{extract_chroma_samples, extract_chroma_wav, read_wav_mono, ExtractorConfig};

/// Ordered chroma frames with optional timing.
#[derive(Clone, Debug, PartialEq)]
pub struct ChromaSequence {
    pub frames: Vec<ChromaVector>,
    /// Frames per second, when known.
    pub frame_rate: Option<f64>,
    pub source: String,
}

impl ChromaSequence {
    pub fn new(
        frames: Vec<ChromaVector>,
        frame_rate: Option<f64>,
        source: impl Into<String>,
    ) -> Self {
        Self {
            frames,
            frame_rate,
            source: source.into(),
        }
    }

    pub fn len(&self) -> usize {
        self.frames.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frames.is_empty()
    }
}

/// Element-wise mean of the frames in `range` (all frames when `None`).
pub fn global_chroma(seq: &ChromaSequence, range: Option<Range<usize>>) -> Result<ChromaVector> {
    let range = range.unwrap_or(0..seq.frames.len());
    if range.start >= range.end || range.end > seq.frames.len() {
        return Err(Error::InvalidParameter(format!(
            "frame range {}..{} is empty or outside 0..{}",
            range.start,
            range.end,
            seq.frames.len()
        )));
    }
    Ok(mean_of(&seq.frames[range]))
}

fn mean_of(frames: &[ChromaVector]) -> ChromaVector {
    let count = frames.len() as f64;
    let mut sum = [0.0; PITCH_CLASSES];
    for f in frames {
        for (s, b) in sum.iter_mut().zip(f.bins()) {
            *s += b;
        }
    }
    // means of valid bins stay finite and nonnegative
    ChromaVector::new(sum.map(|s| s / count)).expect("mean of valid chroma")
}

/// Centered moving average over `width` frames, truncated at the edges.
///
/// Keeps the frame count, so frame `m` of the output averages frames
/// `m - (width - 1) / 2 ..= m + width / 2` of the input.
pub fn moving_average(seq: &ChromaSequence, width: usize) -> Result<ChromaSequence> {
    if width == 0 {
        return Err(Error::InvalidParameter(
            "averaging width must be at least 1".into(),
        ));
    }
    if width == 1 {
        return Ok(seq.clone());
    }
    let n = seq.frames.len();
    let back = (width - 1) / 2;
    let ahead = width / 2;
    let frames = (0..n)
        .map(|m| mean_of(&seq.frames[m.saturating_sub(back)..(m + ahead + 1).min(n)]))
        .collect();
    Ok(ChromaSequence {
        frames,
        frame_rate: seq.frame_rate,
        source: seq.source.clone(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InputFormat {
    Csv,
    Json,
    Wav,
}

impl InputFormat {
    pub fn from_extension(path: &Path) -> Option<Self> {
        let ext = path.extension()?.to_str()?.to_ascii_lowercase();
        match ext.as_str() {
            "csv" => Some(InputFormat::Csv),
            "json" => Some(InputFormat::Json),
            "wav" | "wave" => Some(InputFormat::Wav),
            _ => None,
        }
    }
}

/// Loads chroma from any supported input; `format` defaults to the file extension.
pub fn load_sequence(
    path: &Path,
    format: Option<InputFormat>,
    extractor: &ExtractorConfig,
) -> Result<ChromaSequence> {
    let format = format
        .or_else(|| InputFormat::from_extension(path))
        .ok_or_else(|| Error::Format {
            source_name: path.display().to_string(),
            message: "cannot infer input format from extension; pass it explicitly".into(),
        })?;
    match format {
        InputFormat::Csv => load_chroma_csv(path),
        InputFormat::Json => load_chroma_json(path),
        InputFormat::Wav => extract_chroma_wav(path, extractor),
    }
}

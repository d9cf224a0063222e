//! Minimal STFT chroma extractor.
//!
//! Each Hann-windowed frame's power spectrum is folded onto the nearest
//! equal-tempered pitch class. No harmonic weighting or tuning estimation;
//! dedicated chroma tools (HPCP, NNLS) will give better features.

use std::path::Path;

use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;

use super::ChromaSequence;
use crate::chroma::{ChromaVector, PITCH_CLASSES};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExtractorConfig {
    /// FFT length in samples; must be a power of two.
    pub window_size: usize,
    pub hop_size: usize,
    pub min_freq: f64,
    pub max_freq: f64,
    /// Frequency of A4.
    pub reference_hz: f64,
}

impl Default for ExtractorConfig {
    fn default() -> Self {
        Self {
            window_size: 4096,
            hop_size: 2048,
            min_freq: 55.0,
            max_freq: 5000.0,
            reference_hz: 440.0,
        }
    }
}

impl ExtractorConfig {
    fn validate(&self) -> Result<()> {
        if self.window_size < 2 || !self.window_size.is_power_of_two() {
            return Err(Error::InvalidParameter(format!(
                "window size must be a power of two >= 2, got {}",
                self.window_size
            )));
        }
        if self.hop_size == 0 {
            return Err(Error::InvalidParameter("hop size must be positive".into()));
        }
        if !(self.min_freq > 0.0 && self.max_freq > self.min_freq && self.max_freq.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "frequency range {}..{} Hz is invalid",
                self.min_freq, self.max_freq
            )));
        }
        if !(self.reference_hz.is_finite() && self.reference_hz > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "reference frequency must be positive, got {}",
                self.reference_hz
            )));
        }
        Ok(())
    }

    /// Pitch class of each FFT bin up to Nyquist, `None` outside the analysis band.
    fn bin_map(&self, sample_rate: u32) -> Vec<Option<usize>> {
        let bin_hz = sample_rate as f64 / self.window_size as f64;
        (0..=self.window_size / 2)
            .map(|i| {
                let f = i as f64 * bin_hz;
                if f < self.min_freq || f > self.max_freq {
                    return None;
                }
                let midi = (12.0 * (f / self.reference_hz).log2()).round() as i64 + 69;
                Some(midi.rem_euclid(PITCH_CLASSES as i64) as usize)
            })
            .collect()
    }
}

/// Reads a PCM or float WAV file and averages its channels.
pub fn read_wav_mono(path: &Path) -> Result<(Vec<f64>, u32)> {
    let mut reader = hound::WavReader::open(path)?;
    let spec = reader.spec();
    let channels = spec.channels.max(1) as usize;
    let interleaved: Vec<f64> = match spec.sample_format {
        hound::SampleFormat::Float => reader
            .samples::<f32>()
            .map(|s| s.map(f64::from))
            .collect::<std::result::Result<_, _>>()?,
        hound::SampleFormat::Int => {
            let full_scale = (1i64 << (spec.bits_per_sample - 1)) as f64;
            reader
                .samples::<i32>()
                .map(|s| s.map(|v| v as f64 / full_scale))
                .collect::<std::result::Result<_, _>>()?
        }
    };
    let mono = interleaved
        .chunks(channels)
        .map(|frame| frame.iter().sum::<f64>() / channels as f64)
        .collect();
    Ok((mono, spec.sample_rate))
}

pub fn extract_chroma_wav(path: &Path, config: &ExtractorConfig) -> Result<ChromaSequence> {
    config.validate()?;
    let (samples, sample_rate) = read_wav_mono(path)?;
    let mut seq = extract_chroma_samples(&samples, sample_rate, config)?;
    seq.source = path.display().to_string();
    Ok(seq)
}

/// Chroma frames from mono samples; frame `i` starts at sample `i * hop_size`.
/// A signal shorter than one window yields a single zero-padded frame.
pub fn extract_chroma_samples(
    samples: &[f64],
    sample_rate: u32,
    config: &ExtractorConfig,
) -> Result<ChromaSequence> {
    config.validate()?;
    if sample_rate == 0 {
        return Err(Error::InvalidParameter(
            "sample rate must be positive".into(),
        ));
    }
    let n = config.window_size;
    let frame_count = if samples.is_empty() {
        0
    } else if samples.len() <= n {
        1
    } else {
        1 + (samples.len() - n) / config.hop_size
    };

    let window: Vec<f64> = (0..n)
        .map(|i| 0.5 - 0.5 * (2.0 * std::f64::consts::PI * i as f64 / n as f64).cos())
        .collect();
    let bins = config.bin_map(sample_rate);
    let fft = FftPlanner::<f64>::new().plan_fft_forward(n);
    let mut buffer = vec![Complex64::new(0.0, 0.0); n];

    let mut frames = Vec::with_capacity(frame_count);
    for f in 0..frame_count {
        let start = f * config.hop_size;
        for (i, slot) in buffer.iter_mut().enumerate() {
            let s = samples.get(start + i).copied().unwrap_or(0.0);
            *slot = Complex64::new(s * window[i], 0.0);
        }
        fft.process(&mut buffer);
        let mut chroma = [0.0; PITCH_CLASSES];
        for (x, pc) in buffer.iter().zip(&bins) {
            if let Some(pc) = pc {
                chroma[*pc] += x.norm_sqr();
            }
        }
        frames.push(ChromaVector::new(chroma)?);
    }
    Ok(ChromaSequence::new(
        frames,
        Some(sample_rate as f64 / config.hop_size as f64),
        "samples",
    ))
}

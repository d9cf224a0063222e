//! Framewise and global analysis of a chroma sequence, and its CSV/JSON output.

use std::io::Write;

use serde::Serialize;

use crate::descriptors::{
    chromaticity, diatonicity, dissonance, harmonic_change, wholetoneness, ChangeOptions,
    ThresholdPolicy,
};
use crate::error::Result;
use crate::ingest::{global_chroma, moving_average, ChromaSequence};
use crate::key::{estimate_key, KeyProfileSet, KeyRecord};
use crate::tiv::{Tiv, TivRecord, WeightVector};

/// Column order of the per-frame CSV table.
pub const CSV_COLUMNS: [&str; 8] = [
    "frame",
    "time",
    "chromaticity",
    "diatonicity",
    "wholetoneness",
    "dissonance",
    "lambda",
    "peak",
];

#[derive(Clone, Debug)]
pub struct AnalysisOptions {
    pub weights: WeightVector,
    /// Width of the centered chroma moving average; 1 keeps instantaneous frames.
    pub window_avg: usize,
    pub change: ChangeOptions,
    pub profiles: KeyProfileSet,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FrameRow {
    pub frame: usize,
    pub time: Option<f64>,
    pub chromaticity: f64,
    pub diatonicity: f64,
    pub wholetoneness: f64,
    pub dissonance: f64,
    pub lambda: f64,
    pub peak: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Qualities {
    pub chromaticity: f64,
    pub diatonicity: f64,
    pub wholetoneness: f64,
    pub dissonance: f64,
}

impl Qualities {
    pub fn of(tiv: &Tiv) -> Self {
        Self {
            chromaticity: chromaticity(tiv).value,
            diatonicity: diatonicity(tiv).value,
            wholetoneness: wholetoneness(tiv).value,
            dissonance: dissonance(tiv).value,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GlobalBlock {
    pub tiv: TivRecord,
    pub silent: bool,
    #[serde(flatten)]
    pub qualities: Qualities,
    /// Absent when the global chroma is silent.
    pub key: Option<KeyRecord>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Metadata {
    pub source: String,
    pub frame_count: usize,
    pub frame_rate: Option<f64>,
    pub weights: Vec<f64>,
    pub window_avg: usize,
    pub profile: String,
    pub alpha: f64,
    pub hchange_coefficients: String,
    pub threshold_policy: String,
    pub threshold: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub metadata: Metadata,
    pub frames: Vec<FrameRow>,
    pub peaks: Vec<usize>,
    pub global: GlobalBlock,
}

pub fn analyze(seq: &ChromaSequence, options: &AnalysisOptions) -> Result<AnalysisReport> {
    let global = global_chroma(seq, None)?;
    let smoothed = moving_average(seq, options.window_avg)?;
    let tivs: Vec<Tiv> = smoothed
        .frames
        .iter()
        .map(|c| Tiv::from_chroma(c, &options.weights))
        .collect();

    // the change curve needs a frame on each side; shorter inputs have no change
    let (lambda, peaks, threshold) = if tivs.len() >= 3 {
        let s = harmonic_change(&tivs, &options.change)?;
        (s.values, s.peaks, s.threshold)
    } else {
        let zeros = vec![0.0; tivs.len()];
        let threshold = options.change.threshold.resolve(&zeros);
        (zeros, Vec::new(), threshold)
    };

    let frames = tivs
        .iter()
        .enumerate()
        .map(|(m, t)| {
            let q = Qualities::of(t);
            FrameRow {
                frame: m,
                time: seq.frame_rate.map(|r| m as f64 / r),
                chromaticity: q.chromaticity,
                diatonicity: q.diatonicity,
                wholetoneness: q.wholetoneness,
                dissonance: q.dissonance,
                lambda: lambda[m],
                peak: peaks.binary_search(&m).is_ok(),
            }
        })
        .collect();

    let global_tiv = Tiv::from_chroma(&global, &options.weights);
    let key = if global_tiv.is_silent() {
        None
    } else {
        Some(estimate_key(&global_tiv, &options.profiles)?.to_record())
    };

    let threshold_policy = match options.change.threshold {
        ThresholdPolicy::Adaptive { std_multiplier } => format!("adaptive({std_multiplier})"),
        ThresholdPolicy::Fixed(theta) => format!("fixed({theta})"),
    };

    Ok(AnalysisReport {
        metadata: Metadata {
            source: seq.source.clone(),
            frame_count: seq.len(),
            frame_rate: seq.frame_rate,
            weights: options.weights.as_array().to_vec(),
            window_avg: options.window_avg,
            profile: options.profiles.name().to_string(),
            alpha: options.profiles.alpha(),
            hchange_coefficients: options.change.coefficients.name().to_string(),
            threshold_policy,
            threshold,
        },
        frames,
        peaks,
        global: GlobalBlock {
            tiv: global_tiv.to_record(),
            silent: global_tiv.is_silent(),
            qualities: Qualities::of(&global_tiv),
            key,
        },
    })
}

impl AnalysisReport {
    pub fn write_json<W: Write>(&self, mut writer: W) -> Result<()> {
        serde_json::to_writer_pretty(&mut writer, self)?;
        writer.write_all(b"\n")?;
        writer.flush()?;
        Ok(())
    }

    /// Metadata and global values as `# key: value` lines, then the frame table.
    pub fn write_csv<W: Write>(&self, mut writer: W) -> Result<()> {
        let m = &self.metadata;
        let g = &self.global;
        writeln!(writer, "# source: {}", m.source)?;
        writeln!(writer, "# frame_count: {}", m.frame_count)?;
        match m.frame_rate {
            Some(r) => writeln!(writer, "# frame_rate: {r}")?,
            None => writeln!(writer, "# frame_rate:")?,
        }
        let weights: Vec<String> = m.weights.iter().map(|w| w.to_string()).collect();
        writeln!(writer, "# weights: {}", weights.join(","))?;
        writeln!(writer, "# window_avg: {}", m.window_avg)?;
        writeln!(writer, "# profile: {}", m.profile)?;
        writeln!(writer, "# alpha: {}", m.alpha)?;
        writeln!(writer, "# hchange_coefficients: {}", m.hchange_coefficients)?;
        writeln!(writer, "# threshold_policy: {}", m.threshold_policy)?;
        writeln!(writer, "# threshold: {}", m.threshold)?;
        writeln!(
            writer,
            "# global_chromaticity: {}",
            g.qualities.chromaticity
        )?;
        writeln!(writer, "# global_diatonicity: {}", g.qualities.diatonicity)?;
        writeln!(
            writer,
            "# global_wholetoneness: {}",
            g.qualities.wholetoneness
        )?;
        writeln!(writer, "# global_dissonance: {}", g.qualities.dissonance)?;
        match &g.key {
            Some(k) => writeln!(writer, "# global_key: {} {}", k.index, k.label)?,
            None => writeln!(writer, "# global_key:")?,
        }

        let mut wtr = ::csv::Writer::from_writer(writer);
        wtr.write_record(CSV_COLUMNS)?;
        for row in &self.frames {
            wtr.write_record([
                row.frame.to_string(),
                row.time.map(|t| t.to_string()).unwrap_or_default(),
                row.chromaticity.to_string(),
                row.diatonicity.to_string(),
                row.wholetoneness.to_string(),
                row.dissonance.to_string(),
                row.lambda.to_string(),
                u8::from(row.peak).to_string(),
            ])?;
        }
        wtr.flush()?;
        Ok(())
    }
}

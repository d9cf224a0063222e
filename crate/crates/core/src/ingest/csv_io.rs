use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use super::ChromaSequence;
use crate::chroma::{ChromaVector, PITCH_CLASSES};
use crate::error::{Error, Result};

pub fn load_chroma_csv(path: &Path) -> Result<ChromaSequence> {
    let file = File::open(path)?;
    parse_chroma_csv(file, &path.display().to_string())
}

/// Parses 12-column chroma rows. A first row whose first cell is not numeric
/// is taken as a header. Rows are numbered from 1 in diagnostics.
pub fn parse_chroma_csv<R: Read>(reader: R, source_name: &str) -> Result<ChromaSequence> {
    let mut rdr = ::csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(::csv::Trim::All)
        .from_reader(reader);

    let mut frames = Vec::new();
    let mut last_row = 0;
    for (i, record) in rdr.records().enumerate() {
        let record = record?;
        let row = record.position().map_or(i + 1, |p| p.line() as usize);
        last_row = row;
        if i == 0
            && record
                .get(0)
                .is_some_and(|cell| cell.parse::<f64>().is_err())
        {
            continue;
        }
        let parse_err = |message: String| Error::Parse {
            source_name: source_name.to_string(),
            row,
            message,
        };
        if record.len() != PITCH_CLASSES {
            return Err(parse_err(format!(
                "expected {PITCH_CLASSES} columns, found {}",
                record.len()
            )));
        }
        let mut bins = [0.0; PITCH_CLASSES];
        for (col, (cell, bin)) in record.iter().zip(bins.iter_mut()).enumerate() {
            *bin = cell
                .parse::<f64>()
                .map_err(|_| parse_err(format!("column {}: `{cell}` is not a number", col + 1)))?;
        }
        let chroma = ChromaVector::new(bins).map_err(|e| parse_err(e.to_string()))?;
        frames.push(chroma);
    }
    if frames.is_empty() {
        return Err(Error::Parse {
            source_name: source_name.to_string(),
            row: last_row + 1,
            message: "no chroma rows".into(),
        });
    }
    Ok(ChromaSequence::new(frames, None, source_name))
}

/// Writes one row per frame without a header, using shortest round-trip formatting.
pub fn write_chroma_csv<W: Write>(seq: &ChromaSequence, writer: W) -> Result<()> {
    let mut wtr = ::csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(writer);
    for frame in &seq.frames {
        wtr.write_record(frame.bins().iter().map(|b| b.to_string()))?;
    }
    wtr.flush()?;
    Ok(())
}

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::ChromaSequence;
use crate::chroma::ChromaVector;
use crate::error::{Error, Result};

/// `{"frame_rate"?: number, "frames": [[12 numbers], ...]}`
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChromaFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub frame_rate: Option<f64>,
    pub frames: Vec<Vec<f64>>,
}

pub fn load_chroma_json(path: &Path) -> Result<ChromaSequence> {
    let text = fs::read_to_string(path)?;
    parse_chroma_json(&text, &path.display().to_string())
}

pub fn parse_chroma_json(text: &str, source_name: &str) -> Result<ChromaSequence> {
    let file: ChromaFile = serde_json::from_str(text).map_err(|e| Error::Format {
        source_name: source_name.to_string(),
        message: e.to_string(),
    })?;
    if let Some(rate) = file.frame_rate {
        if !(rate.is_finite() && rate > 0.0) {
            return Err(Error::Format {
                source_name: source_name.to_string(),
                message: format!("frame_rate must be positive, got {rate}"),
            });
        }
    }
    if file.frames.is_empty() {
        return Err(Error::Parse {
            source_name: source_name.to_string(),
            row: 1,
            message: "no chroma frames".into(),
        });
    }
    let frames = file
        .frames
        .iter()
        .enumerate()
        .map(|(i, f)| {
            ChromaVector::from_slice(f).map_err(|e| Error::Parse {
                source_name: source_name.to_string(),
                row: i + 1,
                message: e.to_string(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ChromaSequence::new(frames, file.frame_rate, source_name))
}

pub fn write_chroma_json<W: Write>(seq: &ChromaSequence, mut writer: W) -> Result<()> {
    let file = ChromaFile {
        frame_rate: seq.frame_rate,
        frames: seq.frames.iter().map(|f| f.bins().to_vec()).collect(),
    };
    serde_json::to_writer(&mut writer, &file)?;
    writer.write_all(b"\n")?;
    writer.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_frames_and_rate() {
        let text = r#"{"frame_rate": 10.0, "frames": [[1,1,1,1,1,1,1,1,1,1,1,1],[1,1,1,1,1,1,1,1,1,1,1,1],[1,1,1,1,1,1,1,1,1,1,1,1]]}"#;
        let seq = parse_chroma_json(text, "mem").unwrap();
        assert_eq!(seq.len(), 3);
        assert_eq!(seq.frame_rate, Some(10.0));
    }

    #[test]
    fn short_frame_names_the_row() {
        let text = r#"{"frames": [[1,1,1,1,1,1,1,1,1,1,1,1],[1,1,1,1,1,1,1,1,1,1,1]]}"#;
        let err = parse_chroma_json(text, "mem").unwrap_err().to_string();
        assert!(err.contains("row 2"), "{err}");
    }

    #[test]
    fn rejects_bad_documents() {
        assert!(parse_chroma_json(r#"{"frames": []}"#, "mem").is_err());
        assert!(parse_chroma_json(r#"{"frames": [[0,0,0,0,0,0,0,0,0,0,0,-1]]}"#, "mem").is_err());
        assert!(parse_chroma_json(
            r#"{"frame_rate": 0, "frames": [[0,0,0,0,0,0,0,0,0,0,0,1]]}"#,
            "mem"
        )
        .is_err());
        assert!(parse_chroma_json("not json", "mem").is_err());
    }
}

//! Run manifests and the three output encodings.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub subcommand: String,
    pub input: String,
    pub input_sha256: String,
    pub config: serde_json::Value,
    pub seed: u64,
    pub version: String,
}

impl RunManifest {
    pub fn new(subcommand: &str, input: &str, text: &str, config: serde_json::Value, seed: u64) -> Self {
        RunManifest {
            subcommand: subcommand.to_string(),
            input: input.to_string(),
            input_sha256: hex::encode(Sha256::digest(text.as_bytes())),
            config,
            seed,
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }
}

pub enum Payload {
    Json(serde_json::Value),
    Csv {
        header: Vec<String>,
        rows: Vec<Vec<String>>,
    },
    Svg(String),
}

impl Payload {
    fn extension(&self) -> &'static str {
        match self {
            Payload::Json(_) => "json",
            Payload::Csv { .. } => "csv",
            Payload::Svg(_) => "svg",
        }
    }

    /// The encoded payload with the manifest embedded.
    pub fn render(&self, manifest: &RunManifest) -> Result<String> {
        let compact = serde_json::to_string(manifest)?;
        Ok(match self {
            Payload::Json(report) => {
                let doc = serde_json::json!({ "manifest": manifest, "report": report });
                let mut s = serde_json::to_string_pretty(&doc)?;
                s.push('\n');
                s
            }
            Payload::Csv { header, rows } => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(header)?;
                for row in rows {
                    w.write_record(row)?;
                }
                let body = String::from_utf8(w.into_inner()?)?;
                format!("# manifest: {compact}\n{body}")
            }
            Payload::Svg(svg) => {
                // "--" may not appear inside an XML comment
                let note = format!("<!-- manifest: {} -->\n", compact.replace("--", "- -"));
                match svg.find('\n') {
                    Some(k) => format!("{}{note}{}", &svg[..=k], &svg[k + 1..]),
                    None => format!("{svg}{note}"),
                }
            }
        })
    }
}

/// Prints to stdout, or writes `<stem>.<ext>` plus `<stem>.manifest.json` into `out_dir`.
pub fn emit(manifest: &RunManifest, payload: &Payload, out_dir: Option<&Path>, stem: &str) -> Result<()> {
    let text = payload.render(manifest)?;
    match out_dir {
        None => {
            let mut out = io::stdout().lock();
            match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
                // a closed pipe (`| head`) is not an error
                Err(e) if e.kind() == io::ErrorKind::BrokenPipe => {}
                r => r.context("writing to stdout")?,
            }
        }
        Some(dir) => {
            fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            let main = dir.join(format!("{stem}.{}", payload.extension()));
            fs::write(&main, text).with_context(|| format!("writing {}", main.display()))?;
            let side = dir.join(format!("{stem}.manifest.json"));
            fs::write(&side, serde_json::to_string_pretty(manifest)? + "\n")
                .with_context(|| format!("writing {}", side.display()))?;
            eprintln!("wrote {}", main.display());
        }
    }
    Ok(())
}

/// Fixed-width scientific formatting so CSV output is stable and lossless.
pub fn num(v: f64) -> String {
    format!("{v:.17e}")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn manifest() -> RunManifest {
        RunManifest::new("analyze", "x.crn", "A -> B", serde_json::json!({ "eta": 0.5 }), 3)
    }

    #[test]
    fn hashes_input() {
        let m = manifest();
        assert_eq!(m.input_sha256.len(), 64);
        assert_ne!(
            m.input_sha256,
            RunManifest::new("analyze", "x.crn", "A -> C", serde_json::json!({}), 3).input_sha256
        );
    }

    #[test]
    fn embeds_manifest_everywhere() {
        let m = manifest();
        let json = Payload::Json(serde_json::json!({ "a": 1 })).render(&m).unwrap();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["manifest"]["subcommand"], "analyze");
        let csv = Payload::Csv {
            header: vec!["t".into()],
            rows: vec![vec!["1".into()]],
        }
        .render(&m)
        .unwrap();
        assert!(csv.starts_with("# manifest: {") && csv.ends_with("t\n1\n"));
        let svg = Payload::Svg("<svg>\n</svg>\n".into()).render(&m).unwrap();
        assert!(svg.starts_with("<svg>\n<!-- manifest:"));
    }
}

//! Run reports: every command emits either a human-readable table or a
//! machine-readable JSON record that round-trips losslessly. Each
//! report carries a hash of the fully-resolved configuration so runs
//! are diffable and reproducible.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Table,
    Records,
}

/// One result row: named quantities plus an optional pass flag.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct RowRecord {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<f64>,
    pub value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub margin: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub satisfied: Option<bool>,
}

impl RowRecord {
    pub fn plain(name: impl Into<String>, value: f64) -> Self {
        RowRecord {
            name: name.into(),
            lhs: None,
            value,
            margin: None,
            satisfied: None,
        }
    }

    pub fn bound(
        name: impl Into<String>,
        lhs: f64,
        rhs: f64,
        margin: f64,
        satisfied: bool,
    ) -> Self {
        RowRecord {
            name: name.into(),
            lhs: Some(lhs),
            value: rhs,
            margin: Some(margin),
            satisfied: Some(satisfied),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct RunReport {
    pub command: String,
    pub config_hash: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub verdict: String,
    pub rows: Vec<RowRecord>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
    pub wall_ms: f64,
}

impl RunReport {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Records => serde_json::to_string(self).expect("report serializes"),
            Format::Table => {
                let mut out = String::new();
                out.push_str(&format!(
                    "# {}  [config {}]\n",
                    self.command, self.config_hash
                ));
                if let Some(seed) = self.seed {
                    out.push_str(&format!("# seed {seed}\n"));
                }
                for row in &self.rows {
                    let mut line = format!("{:<24}", row.name);
                    if let Some(lhs) = row.lhs {
                        line.push_str(&format!(" lhs {lhs:>14.9}"));
                    }
                    line.push_str(&format!(" {:>14.9}", row.value));
                    if let Some(m) = row.margin {
                        line.push_str(&format!("  margin {m:>13.9}"));
                    }
                    if let Some(s) = row.satisfied {
                        line.push_str(if s { "  ok" } else { "  VIOLATED" });
                    }
                    out.push_str(&line);
                    out.push('\n');
                }
                for note in &self.notes {
                    out.push_str(&format!("# {note}\n"));
                }
                out.push_str(&format!(
                    "verdict: {}  ({:.1} ms)\n",
                    self.verdict, self.wall_ms
                ));
                out
            }
        }
    }
}

/// Hash of everything that determines the run: the resolved command
/// line echo and the raw bytes of any input files.
pub fn config_hash(parts: &[&str]) -> String {
    let mut h = Sha256::new();
    for p in parts {
        h.update((p.len() as u64).to_le_bytes());
        h.update(p.as_bytes());
    }
    let digest = h.finalize();
    digest[..8].iter().map(|b| format!("{b:02x}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn records_round_trip() {
        let report = RunReport {
            command: "region thm2".into(),
            config_hash: config_hash(&["a", "b"]),
            seed: Some(7),
            verdict: "satisfied".into(),
            rows: vec![
                RowRecord::plain("H(S1)", 0.7219280948873623),
                RowRecord::bound("single1", 0.5, 1.0, 0.5, true),
            ],
            notes: vec!["n = 4".into()],
            wall_ms: 1.25,
        };
        let json = report.render(Format::Records);
        let back: RunReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report);
    }

    #[test]
    fn hash_is_length_prefixed() {
        // ("ab", "c") and ("a", "bc") must differ.
        assert_ne!(config_hash(&["ab", "c"]), config_hash(&["a", "bc"]));
        assert_eq!(config_hash(&["x"]), config_hash(&["x"]));
    }
}

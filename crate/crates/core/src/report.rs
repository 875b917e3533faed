//! Certificate reports: named residuals, counts and verdicts.
//!
//! A report renders as a human-readable section followed by a JSON block
//! whose field names are fixed: `command`, `config`, `entries`, `notes`,
//! `verdict`, `witnesses`. Each entry carries `name`, `kind`, `value`,
//! `relation`, `threshold`, `verdict` and an optional `note`.

use std::collections::BTreeMap;
use std::fmt::{Display, Write as _};

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
    Unknown,
    /// A result established by an argument outside the computational scope;
    /// carries a citation instead of a residual.
    Documented,
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Unknown => "UNKNOWN",
            Verdict::Documented => "DOCUMENTED",
        }
    }
}

impl Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EntryKind {
    Residual,
    Dimension,
    Rank,
    Flag,
    Documented,
    Open,
}

#[derive(Clone, Debug, Serialize)]
pub struct Entry {
    pub name: String,
    pub kind: EntryKind,
    pub value: Option<f64>,
    pub relation: Option<&'static str>,
    pub threshold: Option<f64>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub entry: String,
    pub description: String,
    pub data: Vec<f64>,
}

#[derive(Clone, Debug, Default)]
pub struct CertificateReport {
    pub command: String,
    pub config: BTreeMap<String, String>,
    pub entries: Vec<Entry>,
    pub notes: Vec<String>,
    pub witnesses: Vec<Witness>,
}

#[derive(Serialize)]
struct Document<'a> {
    command: &'a str,
    config: &'a BTreeMap<String, String>,
    entries: &'a [Entry],
    notes: &'a [String],
    verdict: Verdict,
    witnesses: &'a [Witness],
}

impl CertificateReport {
    pub fn new(command: impl Into<String>) -> Self {
        CertificateReport {
            command: command.into(),
            ..Default::default()
        }
    }

    pub fn set_config(&mut self, key: &str, value: impl Display) {
        self.config.insert(key.to_string(), value.to_string());
    }

    fn push(&mut self, entry: Entry) -> Verdict {
        let v = entry.verdict;
        if v == Verdict::Fail {
            let data = entry.value.into_iter().chain(entry.threshold).collect();
            self.witnesses.push(Witness {
                entry: entry.name.clone(),
                description: match (entry.value, entry.relation, entry.threshold) {
                    (Some(val), Some(rel), Some(thr)) => {
                        format!("value {val:.6e} does not satisfy {rel} {thr:.3e}")
                    }
                    _ => "check failed".to_string(),
                },
                data,
            });
        }
        self.entries.push(entry);
        v
    }

    /// Passes when `value <= threshold`; NaN fails.
    pub fn residual(&mut self, name: impl Into<String>, value: f64, threshold: f64) -> Verdict {
        let verdict = if value <= threshold {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        self.push(Entry {
            name: name.into(),
            kind: EntryKind::Residual,
            value: Some(value),
            relation: Some("<="),
            threshold: Some(threshold),
            verdict,
            note: None,
        })
    }

    /// Passes when `value > threshold`; used for negative controls that must
    /// be detected.
    pub fn exceeds(&mut self, name: impl Into<String>, value: f64, threshold: f64) -> Verdict {
        let verdict = if value > threshold {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        self.push(Entry {
            name: name.into(),
            kind: EntryKind::Residual,
            value: Some(value),
            relation: Some(">"),
            threshold: Some(threshold),
            verdict,
            note: None,
        })
    }

    pub fn dimension(&mut self, name: impl Into<String>, value: usize, expected: usize) -> Verdict {
        self.count(name, EntryKind::Dimension, value, expected)
    }

    pub fn rank(&mut self, name: impl Into<String>, value: usize, expected: usize) -> Verdict {
        self.count(name, EntryKind::Rank, value, expected)
    }

    /// Passes when `value <= bound`, for rank upper bounds.
    pub fn rank_at_most(&mut self, name: impl Into<String>, value: usize, bound: usize) -> Verdict {
        let verdict = if value <= bound {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        self.push(Entry {
            name: name.into(),
            kind: EntryKind::Rank,
            value: Some(value as f64),
            relation: Some("<="),
            threshold: Some(bound as f64),
            verdict,
            note: None,
        })
    }

    fn count(
        &mut self,
        name: impl Into<String>,
        kind: EntryKind,
        value: usize,
        expected: usize,
    ) -> Verdict {
        let verdict = if value == expected {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        self.push(Entry {
            name: name.into(),
            kind,
            value: Some(value as f64),
            relation: Some("=="),
            threshold: Some(expected as f64),
            verdict,
            note: None,
        })
    }

    pub fn flag(&mut self, name: impl Into<String>, value: bool, expected: bool) -> Verdict {
        let verdict = if value == expected {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        self.push(Entry {
            name: name.into(),
            kind: EntryKind::Flag,
            value: Some(if value { 1.0 } else { 0.0 }),
            relation: Some("=="),
            threshold: Some(if expected { 1.0 } else { 0.0 }),
            verdict,
            note: None,
        })
    }

    /// A result taken from a cited theorem, not computed.
    pub fn documented(&mut self, name: impl Into<String>, citation: impl Into<String>) -> Verdict {
        self.push(Entry {
            name: name.into(),
            kind: EntryKind::Documented,
            value: None,
            relation: None,
            threshold: None,
            verdict: Verdict::Documented,
            note: Some(citation.into()),
        })
    }

    /// A question the underlying theory leaves open.
    pub fn open(&mut self, name: impl Into<String>, note: impl Into<String>) -> Verdict {
        self.push(Entry {
            name: name.into(),
            kind: EntryKind::Open,
            value: None,
            relation: None,
            threshold: None,
            verdict: Verdict::Unknown,
            note: Some(note.into()),
        })
    }

    /// A failure that carries no residual, such as an error raised mid-check.
    pub fn failure(&mut self, name: impl Into<String>, reason: impl Into<String>) -> Verdict {
        let name = name.into();
        let reason = reason.into();
        self.witnesses.push(Witness {
            entry: name.clone(),
            description: reason.clone(),
            data: Vec::new(),
        });
        self.entries.push(Entry {
            name,
            kind: EntryKind::Flag,
            value: None,
            relation: None,
            threshold: None,
            verdict: Verdict::Fail,
            note: Some(reason),
        });
        Verdict::Fail
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn witness(
        &mut self,
        entry: impl Into<String>,
        description: impl Into<String>,
        data: Vec<f64>,
    ) {
        self.witnesses.push(Witness {
            entry: entry.into(),
            description: description.into(),
            data,
        });
    }

    /// Append another report's entries under a name prefix.
    pub fn absorb(&mut self, prefix: &str, other: CertificateReport) {
        let pre = |s: String| {
            if prefix.is_empty() {
                s
            } else {
                format!("{prefix}.{s}")
            }
        };
        for mut e in other.entries {
            e.name = pre(e.name);
            self.entries.push(e);
        }
        for mut w in other.witnesses {
            w.entry = pre(w.entry);
            self.witnesses.push(w);
        }
        for n in other.notes {
            self.notes.push(if prefix.is_empty() {
                n
            } else {
                format!("{prefix}: {n}")
            });
        }
    }

    pub fn entry(&self, name: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.name == name)
    }

    /// FAIL if any entry fails; otherwise UNKNOWN if any entry is open (or
    /// the report is empty), DOCUMENTED if any entry is documented, else PASS.
    pub fn overall(&self) -> Verdict {
        let any = |v: Verdict| self.entries.iter().any(|e| e.verdict == v);
        if any(Verdict::Fail) {
            Verdict::Fail
        } else if self.entries.is_empty() || any(Verdict::Unknown) {
            Verdict::Unknown
        } else if any(Verdict::Documented) {
            Verdict::Documented
        } else {
            Verdict::Pass
        }
    }

    pub fn to_json(&self) -> String {
        let doc = Document {
            command: &self.command,
            config: &self.config,
            entries: &self.entries,
            notes: &self.notes,
            verdict: self.overall(),
            witnesses: &self.witnesses,
        };
        serde_json::to_string_pretty(&doc).expect("report serializes")
    }

    pub fn render_human(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "== {} ==", self.command);
        if !self.config.is_empty() {
            let cfg: Vec<String> = self
                .config
                .iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect();
            let _ = writeln!(out, "config: {}", cfg.join(" "));
        }
        let width = self.entries.iter().map(|e| e.name.len()).max().unwrap_or(0);
        for e in &self.entries {
            let detail = match (e.value, e.relation, e.threshold) {
                (Some(v), Some(r), Some(t)) => match e.kind {
                    EntryKind::Residual => format!("{v:.3e} {r} {t:.1e}"),
                    _ => format!("{v} {r} {t}"),
                },
                _ => String::new(),
            };
            let note = e
                .note
                .as_deref()
                .map(|n| format!("  ({n})"))
                .unwrap_or_default();
            let _ = writeln!(
                out,
                "  [{:<10}] {:<width$}  {}{}",
                e.verdict.label(),
                e.name,
                detail,
                note
            );
        }
        for n in &self.notes {
            let _ = writeln!(out, "  note: {n}");
        }
        for w in &self.witnesses {
            let _ = writeln!(out, "  witness {}: {} {:?}", w.entry, w.description, w.data);
        }
        let _ = writeln!(out, "overall: {}", self.overall());
        out
    }

    /// Human section, a separator line, then the JSON block.
    pub fn render(&self) -> String {
        format!(
            "{}--- machine-readable ---\n{}\n",
            self.render_human(),
            self.to_json()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overall_rules() {
        let mut r = CertificateReport::new("t");
        assert_eq!(r.overall(), Verdict::Unknown);
        r.residual("a", 1e-12, 1e-9);
        assert_eq!(r.overall(), Verdict::Pass);
        r.documented("b", "cited");
        assert_eq!(r.overall(), Verdict::Documented);
        r.open("o", "no classification");
        assert_eq!(r.overall(), Verdict::Unknown);
        r.dimension("c", 3, 4);
        assert_eq!(r.overall(), Verdict::Fail);
        assert!(!r.witnesses.is_empty());
    }

    #[test]
    fn nan_fails() {
        let mut r = CertificateReport::new("t");
        assert_eq!(r.residual("a", f64::NAN, 1.0), Verdict::Fail);
    }

    #[test]
    fn json_has_fixed_fields() {
        let mut r = CertificateReport::new("t");
        r.set_config("n", 2);
        r.residual("a", 0.0, 1.0);
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        for key in [
            "command",
            "config",
            "entries",
            "notes",
            "verdict",
            "witnesses",
        ] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        assert_eq!(v["verdict"], "PASS");
    }
}

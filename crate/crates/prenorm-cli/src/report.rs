//! Serializable demo reports: expected-versus-observed checks plus notes.

use prenorm::engine::LawReport;
use serde::Serialize;

/// Version stamp written into every demo report.
pub const SCHEMA_VERSION: u32 = 1;

/// One expected-versus-observed comparison inside a demo.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub label: String,
    pub expected: String,
    pub observed: String,
    pub ok: bool,
}

impl Check {
    pub fn new(
        label: impl Into<String>,
        expected: impl ToString,
        observed: impl ToString,
    ) -> Check {
        let expected = expected.to_string();
        let observed = observed.to_string();
        let ok = expected == observed;
        Check {
            label: label.into(),
            expected,
            observed,
            ok,
        }
    }
}

/// Outcome of one named demo run.
#[derive(Clone, Debug, Serialize)]
pub struct DemoReport {
    pub schema_version: u32,
    pub demo: String,
    pub headline: String,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
    /// Attached when the demo wraps an engine-style law run (counts and
    /// witnesses ride along in the serialized output).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub law_report: Option<LawReport>,
    pub ok: bool,
}

impl DemoReport {
    pub fn new(demo: &str, headline: &str) -> DemoReport {
        DemoReport {
            schema_version: SCHEMA_VERSION,
            demo: demo.to_string(),
            headline: headline.to_string(),
            checks: Vec::new(),
            notes: Vec::new(),
            law_report: None,
            ok: true,
        }
    }

    pub fn push(&mut self, check: Check) {
        self.ok &= check.ok;
        self.checks.push(check);
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// Human-readable rendering; one status line per check.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("demo {} — {}\n", self.demo, self.headline));
        for c in &self.checks {
            let mark = if c.ok { "ok  " } else { "FAIL" };
            if c.expected == c.observed {
                out.push_str(&format!("  [{mark}] {}: {}\n", c.label, c.observed));
            } else {
                out.push_str(&format!(
                    "  [{mark}] {}: expected {}, observed {}\n",
                    c.label, c.expected, c.observed
                ));
            }
        }
        if let Some(rep) = &self.law_report {
            out.push_str(&format!(
                "  law {}: {:?} ({} cases",
                rep.law, rep.verdict, rep.cases
            ));
            if rep.gated > 0 {
                out.push_str(&format!(", {} gated", rep.gated));
            }
            if rep.capped > 0 {
                out.push_str(&format!(", {} capped", rep.capped));
            }
            out.push_str(")\n");
            for w in &rep.witnesses {
                out.push_str(&format!("    witness {}: {}\n", w.context, w.detail));
            }
        }
        for n in &self.notes {
            out.push_str(&format!("  note: {n}\n"));
        }
        out.push_str(&format!(
            "result: {}\n",
            if self.ok { "expectations met" } else { "MISMATCH" }
        ));
        out
    }
}

//! Law-suite scenarios: a versioned config (from flags or a JSON file), the
//! runner that executes it over a backend catalog, and text rendering.

use std::collections::BTreeSet;
use std::str::FromStr;

use prenorm::backends::workspace_for;
use prenorm::core::{Catalog, Workspace};
use prenorm::engine::{run_suite, Law, RunMode, SuiteReport, Verdict};
use prenorm::BackendTag;
use serde::{Deserialize, Serialize};

/// Version stamp required in scenario files.
pub const SCHEMA_VERSION: u32 = 1;

/// Ground backend names, for error listings.
pub const KNOWN_BACKENDS: &[&str] = &[
    "fin-cmon",
    "fin-preord-cmon",
    "fin-pocmon",
    "fin-mon",
    "fin-pset",
    "fin-rel-refl",
    "fin-rel-preord",
    "fin-rel-equiv",
    "fin-grpd",
    "fin-ordgrp",
];

/// A complete suite scenario. Loadable from a JSON file; unknown fields are
/// rejected so golden files stay honest.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteConfig {
    pub schema_version: u32,
    /// Backend catalog name, e.g. `fin-cmon` or `slice(fin-cmon)`.
    pub backend: String,
    /// Law ids to run; empty means every law.
    #[serde(default)]
    pub laws: Vec<String>,
    pub mode: RunMode,
    /// Drop catalog objects with more elements than this before running.
    #[serde(default)]
    pub max_order: Option<usize>,
    /// Law ids expected to fail. When non-empty, the run counts as meeting
    /// expectations iff at least one declared law fails and nothing else
    /// does.
    #[serde(default)]
    pub expect_fail: Vec<String>,
}

/// Result of executing a scenario: the serializable report plus the process
/// exit code its verdicts map to.
pub struct SuiteOutcome {
    pub report: SuiteReport,
    pub exit: u8,
}

/// Validate and execute a scenario. Every `Err` is a config-level problem
/// (exit code 2); law failures are reported through the exit code in the
/// outcome instead.
pub fn execute(cfg: &SuiteConfig) -> Result<SuiteOutcome, String> {
    if cfg.schema_version != SCHEMA_VERSION {
        return Err(format!(
            "unsupported schema_version {} (expected {SCHEMA_VERSION})",
            cfg.schema_version
        ));
    }
    let tag = BackendTag::from_str(&cfg.backend).map_err(|e| {
        format!(
            "unknown backend {:?} ({e}); known backends: {}, plus slice(<base>) and diagram(<base>)",
            cfg.backend,
            KNOWN_BACKENDS.join(", ")
        )
    })?;
    let laws: Vec<Law> = if cfg.laws.is_empty() {
        Law::all().to_vec()
    } else {
        cfg.laws
            .iter()
            .map(|id| {
                Law::from_id(id).ok_or_else(|| format!("unknown law id {id:?}; known: {}", law_ids()))
            })
            .collect::<Result<_, _>>()?
    };
    let expected: BTreeSet<&str> = cfg
        .expect_fail
        .iter()
        .map(|id| {
            Law::from_id(id)
                .map(Law::id)
                .ok_or_else(|| format!("unknown law id {id:?} in expect_fail; known: {}", law_ids()))
        })
        .collect::<Result<_, _>>()?;
    if cfg.max_order == Some(0) {
        return Err("max order must be positive".into());
    }

    let ws = workspace_for(&tag).map_err(|e| e.to_string())?;
    let report = match cfg.max_order {
        None => run_suite(&ws, &laws, cfg.mode).map_err(|e| e.to_string())?,
        Some(cap) => {
            let objects: Vec<_> = ws
                .catalog
                .objects
                .iter()
                .filter(|o| o.size <= cap)
                .cloned()
                .collect();
            if objects.is_empty() {
                return Err(format!("no catalog object has at most {cap} elements"));
            }
            let morphisms: Vec<_> = ws
                .catalog
                .morphisms
                .iter()
                .filter(|f| f.dom.size <= cap && f.cod.size <= cap)
                .cloned()
                .collect();
            let mut notes = ws.catalog.notes.clone();
            notes.push(format!("catalog restricted to objects of order <= {cap}"));
            let catalog =
                Catalog::from_parts(objects, morphisms, notes).map_err(|e| e.to_string())?;
            let capped = Workspace::with_catalog(ws.backend.clone(), catalog);
            run_suite(&capped, &laws, cfg.mode).map_err(|e| e.to_string())?
        }
    };

    let failures: BTreeSet<&str> = report
        .laws
        .iter()
        .filter(|l| l.verdict == Verdict::Fail)
        .map(|l| l.law.as_str())
        .collect();
    let met = if expected.is_empty() {
        failures.is_empty()
    } else {
        !failures.is_empty() && failures.is_subset(&expected)
    };
    Ok(SuiteOutcome {
        report,
        exit: if met { 0 } else { 1 },
    })
}

fn law_ids() -> String {
    Law::all()
        .iter()
        .map(|l| l.id())
        .collect::<Vec<_>>()
        .join(", ")
}

/// Human-readable rendering of a suite report.
pub fn suite_text(r: &SuiteReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "suite over {} ({} objects, {} morphisms), mode {}\n",
        r.backend, r.catalog_objects, r.catalog_morphisms, r.mode
    ));
    for law in &r.laws {
        out.push_str(&format!(
            "  {:<20} {:<11} cases={} gated={} capped={}\n",
            law.law,
            format!("{:?}", law.verdict).to_lowercase(),
            law.cases,
            law.gated,
            law.capped
        ));
        for w in &law.witnesses {
            out.push_str(&format!("      witness {}: {}\n", w.context, w.detail));
        }
        if law.witnesses_dropped > 0 {
            out.push_str(&format!(
                "      ... and {} more witnesses\n",
                law.witnesses_dropped
            ));
        }
        for n in &law.notes {
            out.push_str(&format!("      note: {n}\n"));
        }
    }
    for n in &r.notes {
        out.push_str(&format!("  note: {n}\n"));
    }
    let failures = r.failures();
    if failures.is_empty() {
        out.push_str("result: all laws passed\n");
    } else {
        out.push_str(&format!("result: failures in {}\n", failures.join(", ")));
    }
    out
}

/// One-line summary for when the full report goes to a file.
pub fn suite_summary(r: &SuiteReport) -> String {
    let failures = r.failures();
    if failures.is_empty() {
        format!("{}: {} laws passed", r.backend, r.laws.len())
    } else {
        format!("{}: failures in {}", r.backend, failures.join(", "))
    }
}

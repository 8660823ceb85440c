//! Serializable verdicts and reports produced by the law suites.

use serde::{Deserialize, Serialize};

use crate::core::BackendTag;

/// Version stamp written into every suite report.
pub const SCHEMA_VERSION: u32 = 1;

/// At most this many witnesses are kept per law report; the rest are counted.
pub const MAX_WITNESSES: usize = 8;

/// Outcome of running one law over a catalog.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// Every examined case satisfied the law.
    Pass,
    /// At least one case violated the law; see the witnesses.
    Fail,
    /// The backend cannot express the check (e.g. no characterisation
    /// predicate to compare against); nothing was asserted.
    Unsupported,
}

/// The laws the engine knows how to run over a workspace catalog.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Law {
    /// Trivial-class structure: counits are monos with trivial domain,
    /// coreflections of trivial objects are isos, trivial objects are closed
    /// under retracts, trivial maps cancel past maps with trivial kernel,
    /// maps out of trivial objects factor through counits, and reflections
    /// into the trivial class exist for every catalog object.
    TrivialClass,
    /// Factorisation-system axioms: every map factors as a normal epi
    /// followed by a map with trivial kernel, both classes contain the isos
    /// and are closed under composition, a map in both classes is an iso,
    /// the two cancellation properties hold, and normal epis are orthogonal
    /// to maps with trivial kernel (unique diagonal fill-ins).
    FsAxioms,
    /// Pullbacks of normal epis along arbitrary catalog maps are normal epis.
    Stability,
    /// Pullbacks of normal epis along normal monos are normal epis.
    StabilityMono,
    /// Pulling a kernel back yields the kernel of the composite.
    KernelStability,
    /// A map has a trivial kernel iff trivial composites cancel past it.
    TkerChar,
    /// The generic normal-epi decision and the generic kernel agree with the
    /// backend's own characterisation predicate and kernel formula.
    CrossValidation,
    /// A pullback square whose base is a certified regular epi and whose
    /// pulled-back side is a normal epi is also a pushout.
    PbPushout,
    /// Pullback cancellation: when the outer rectangle and the left square
    /// are pullbacks and the bottom-left map is a normal and regular epi,
    /// the right square is a pullback.
    Cancellation,
    /// Descent-style square comparison: when the kernel-pair square of a
    /// normal, regular epi is a pullback, the underlying square is one too.
    BarrKock,
    /// Exact sequences: the trivial factorisation square of the composite is
    /// a pullback and a pushout exactly when its corner is a coreflection,
    /// equivalently a reflection.
    ExactSeq,
    /// Binary products of normal epis are normal epis, and binary products
    /// of exact sequences are exact.
    ProductExactness,
    /// The pullback of an exact sequence along `c` is exact iff `c` has a
    /// trivial kernel.
    PullbackExactness,
    /// Third isomorphism theorem: for nested normal subobjects N ⊆ M ⊆ A the
    /// induced map M/N → A/N is a normal mono with cokernel iso to A/M.
    Noether,
}

impl Law {
    /// Every law, in the order suites report them.
    pub fn all() -> &'static [Law] {
        use Law::*;
        &[
            TrivialClass,
            FsAxioms,
            Stability,
            StabilityMono,
            KernelStability,
            TkerChar,
            CrossValidation,
            PbPushout,
            Cancellation,
            BarrKock,
            ExactSeq,
            ProductExactness,
            PullbackExactness,
            Noether,
        ]
    }

    /// Stable identifier used in reports and on the command line.
    pub fn id(self) -> &'static str {
        match self {
            Law::TrivialClass => "trivial-class",
            Law::FsAxioms => "fs-axioms",
            Law::Stability => "stability",
            Law::StabilityMono => "stability-mono",
            Law::KernelStability => "kernel-stability",
            Law::TkerChar => "tker-char",
            Law::CrossValidation => "cross-validation",
            Law::PbPushout => "pb-pushout",
            Law::Cancellation => "cancellation",
            Law::BarrKock => "barr-kock",
            Law::ExactSeq => "exact-seq",
            Law::ProductExactness => "product-exactness",
            Law::PullbackExactness => "pullback-exactness",
            Law::Noether => "noether",
        }
    }

    /// Inverse of [`Law::id`].
    pub fn from_id(s: &str) -> Option<Law> {
        Law::all().iter().copied().find(|l| l.id() == s)
    }
}

impl std::fmt::Display for Law {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.id())
    }
}

/// How a law run walks its case space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum RunMode {
    /// Visit cases in deterministic order until the per-law cap.
    Exhaustive,
    /// Visit a deterministic pseudo-random subset of the case space,
    /// still bounded by the per-law cap.
    Sampled { seed: u64 },
}

impl RunMode {
    pub fn seed(self) -> Option<u64> {
        match self {
            RunMode::Exhaustive => None,
            RunMode::Sampled { seed } => Some(seed),
        }
    }
}

impl std::fmt::Display for RunMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RunMode::Exhaustive => f.write_str("exhaustive"),
            RunMode::Sampled { seed } => write!(f, "sampled(seed={seed})"),
        }
    }
}

/// A concrete violating (or otherwise notable) case.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    /// Where in the case space the witness lives (morphisms, objects).
    pub context: String,
    /// What went wrong, in terms of the law's statement.
    pub detail: String,
}

/// Result of running one law over one catalog.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LawReport {
    pub law: String,
    pub verdict: Verdict,
    /// Number of assertions actually checked.
    pub cases: u64,
    /// Cases skipped because a hypothesis gate was not met.
    pub gated: u64,
    /// Cases dropped by the per-law cap (0 when the space was exhausted).
    pub capped: u64,
    pub mode: RunMode,
    pub witnesses: Vec<Witness>,
    /// Witnesses beyond [`MAX_WITNESSES`] are only counted.
    pub witnesses_dropped: u64,
    pub notes: Vec<String>,
}

/// Aggregate of several law runs over one backend's catalog.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuiteReport {
    pub schema_version: u32,
    pub backend: String,
    pub mode: RunMode,
    pub catalog_objects: usize,
    pub catalog_morphisms: usize,
    pub laws: Vec<LawReport>,
    pub notes: Vec<String>,
}

impl SuiteReport {
    pub fn new(tag: BackendTag, mode: RunMode) -> Self {
        SuiteReport {
            schema_version: SCHEMA_VERSION,
            backend: tag.to_string(),
            mode,
            catalog_objects: 0,
            catalog_morphisms: 0,
            laws: Vec::new(),
            notes: Vec::new(),
        }
    }

    /// Ids of the laws that failed.
    pub fn failures(&self) -> Vec<&str> {
        self.laws
            .iter()
            .filter(|l| l.verdict == Verdict::Fail)
            .map(|l| l.law.as_str())
            .collect()
    }

    /// True when no law failed (unsupported laws do not count as failures).
    pub fn all_passed(&self) -> bool {
        self.failures().is_empty()
    }

    pub fn law(&self, law: Law) -> Option<&LawReport> {
        self.laws.iter().find(|l| l.law == law.id())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn law_ids_round_trip() {
        for &law in Law::all() {
            assert_eq!(Law::from_id(law.id()), Some(law));
        }
        assert_eq!(Law::from_id("no-such-law"), None);
    }

    #[test]
    fn verdict_serializes_kebab() {
        assert_eq!(serde_json::to_string(&Verdict::Pass).unwrap(), "\"pass\"");
        assert_eq!(
            serde_json::to_string(&Verdict::Unsupported).unwrap(),
            "\"unsupported\""
        );
    }

    #[test]
    fn run_mode_serializes_with_seed() {
        let m = RunMode::Sampled { seed: 7 };
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, "{\"kind\":\"sampled\",\"seed\":7}");
        let back: RunMode = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
    }
}

//! Derived backends — slices over an anchor and diagram categories — must
//! satisfy the same law suite as the base category they are built from, on
//! catalogs derived from the base catalog.

use std::str::FromStr;
use std::sync::Arc;

use prenorm::backends::workspace_for;
use prenorm::combinators::{evaluation_preservation_report, under_obj, SliceBackend};
use prenorm::core::{identity, Backend, Workspace};
use prenorm::engine::{run_suite, Law, RunMode, Verdict};
use prenorm::{BackendTag, Error};

fn assert_all_pass(tag: BackendTag) {
    let ws = workspace_for(&tag).unwrap();
    let report = run_suite(&ws, Law::all(), RunMode::Exhaustive).unwrap();
    assert_eq!(report.laws.len(), Law::all().len());
    for lr in &report.laws {
        assert_eq!(
            lr.verdict,
            Verdict::Pass,
            "law {} must pass on {}: {:?}",
            lr.law,
            report.backend,
            lr.witnesses
        );
    }
}

#[test]
fn slice_backend_satisfies_the_full_law_suite() {
    assert_all_pass(BackendTag::Slice(Box::new(BackendTag::CMon)));
}

#[test]
fn diagram_backend_satisfies_the_full_law_suite() {
    assert_all_pass(BackendTag::Diagram(Box::new(BackendTag::CMon)));
}

#[test]
fn diagram_evaluation_is_componentwise_on_the_derived_catalog() {
    let ws = workspace_for(&BackendTag::Diagram(Box::new(BackendTag::CMon))).unwrap();
    let rep = evaluation_preservation_report(&ws).unwrap();
    assert!(rep.objects > 0 && rep.morphisms > 0 && rep.kernels > 0 && rep.exact_pairs > 0);
    assert!(rep.failures.is_empty(), "{:?}", rep.failures);
}

#[test]
fn derived_tags_round_trip_through_their_names() {
    for name in ["slice(fin-cmon)", "diagram(fin-cmon)"] {
        let tag = BackendTag::from_str(name).unwrap();
        assert_eq!(tag.to_string(), name);
        let ws = workspace_for(&tag).unwrap();
        assert_eq!(ws.backend.tag(), tag);
        assert!(!ws.catalog.objects.is_empty());
    }
}

#[test]
fn anchored_identities_lose_their_cokernels_but_kernels_survive() {
    // Over a non-trivial anchor, the identity of the anchor itself has no
    // cokernel: no anchor map can collapse the carrier and still commute.
    let s = SliceBackend::canonical(&BackendTag::CMon).unwrap();
    let anchor = s.anchor_object().clone();
    let x = s.obj(&anchor, (0..anchor.size).collect());
    let err = s.cokernel(&identity(&x)).unwrap_err();
    assert!(matches!(err, Error::Unsupported(_)));
    // The law suite survives that gap because kernels are still computed in
    // the base; the derived catalog keeps the underlying base objects.
    let ws = Workspace::new(Arc::new(SliceBackend::canonical(&BackendTag::CMon).unwrap()));
    for o in ws.catalog.objects.iter().take(8) {
        let under = under_obj(o).unwrap();
        assert_eq!(o.size, under.size);
    }
}

//! Concrete category backends: pointed monoid-like categories, pointed
//! sets, set-level relational categories, groupoids, and ordered groups.
//!
//! Each backend implements the [`Backend`](crate::core::Backend) contract and
//! ships a finite catalog the law suites quantify over. Slice and diagram
//! backends are parameterised and live in [`crate::combinators`].

pub mod groupoid;
pub mod monoid;
pub mod ordgrp;
pub mod pointed;
pub mod relations;

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::core::{Backend, BackendTag, Obj, Result, Workspace};

/// Candidate budget for hom-set enumeration during catalog assembly.
pub(crate) const HOM_BUDGET: usize = 1_000_000;

/// Construct the backend for a tag.
///
/// Slice and diagram tags build on their canonical parameters: the slice is
/// anchored over the first non-trivial object of the base catalog, and the
/// diagram shape is the arrow category. Other anchors and shapes are
/// available through the constructors in [`crate::combinators`].
pub fn backend_for(tag: &BackendTag) -> Result<Arc<dyn Backend>> {
    match tag {
        BackendTag::PSet => Ok(Arc::new(pointed::PSetBackend)),
        BackendTag::CMon | BackendTag::Mon | BackendTag::PreordCMon | BackendTag::POCMon => {
            Ok(Arc::new(pointed::MonoidBackend::for_tag(tag.clone())?))
        }
        BackendTag::Rel(kind) => Ok(Arc::new(relations::RelBackend::new(*kind))),
        BackendTag::Grpd => Ok(Arc::new(groupoid::GrpdBackend)),
        BackendTag::OrdGrp => Ok(Arc::new(ordgrp::OrdGrpBackend)),
        BackendTag::Slice(base) => Ok(Arc::new(crate::combinators::SliceBackend::canonical(
            base,
        )?)),
        BackendTag::Diagram(base) => Ok(Arc::new(crate::combinators::DiagramBackend::canonical(
            base,
        )?)),
    }
}

/// Memoized workspace (backend + catalog + classification cache) per ground
/// tag. Catalog assembly is deterministic, so sharing is safe and saves the
/// law suites from rebuilding hom sets.
pub fn workspace_for(tag: &BackendTag) -> Result<Arc<Workspace>> {
    static CACHE: OnceLock<Mutex<BTreeMap<String, Arc<Workspace>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(BTreeMap::new()));
    let key = tag.to_string();
    if let Some(ws) = cache.lock().expect("workspace cache poisoned").get(&key) {
        return Ok(ws.clone());
    }
    let backend = backend_for(tag)?;
    let ws = Arc::new(Workspace::new(backend));
    cache
        .lock()
        .expect("workspace cache poisoned")
        .insert(key, ws.clone());
    Ok(ws)
}

/// One closure pass under binary product: every unordered pair of seeds whose
/// product stays within `size_cap` elements and passes `include` contributes
/// its product object. Seeds are returned first; duplicates are dropped.
pub(crate) fn product_closure_once(
    backend: &dyn Backend,
    seeds: &[Arc<Obj>],
    size_cap: usize,
    include: impl Fn(&Obj, &Obj) -> bool,
) -> Vec<Arc<Obj>> {
    let mut out: Vec<Arc<Obj>> = seeds.to_vec();
    for (i, a) in seeds.iter().enumerate() {
        for b in &seeds[i..] {
            if a.size * b.size > size_cap || !include(a, b) {
                continue;
            }
            let prod = backend
                .product(a, b)
                .expect("seed products are well-formed");
            out.push(prod.obj);
        }
    }
    out.sort();
    out.dedup();
    out
}

//! Shared vocabulary: finite objects and morphisms as explicit tables, the
//! backend contract every concrete category implements, and the bounded
//! catalogs law suites quantify over.

mod backend;
mod catalog;
mod error;
mod obj;
mod props;

pub use backend::{
    compose, identity, Backend, CokernelData, Coreflection, ProductData, PullbackData,
    QuotientData,
};
pub use catalog::{Catalog, MorTraits, Workspace};
pub use error::{Error, Result};
pub use obj::{BackendTag, Mor, Obj, RelKind, Square, Structure};
pub use props::{
    factor_through_epi, factor_through_mono, is_epi, is_iso, is_mono, is_mono_bounded,
    is_trivial_map, reflection, subreflectivity_report, ReflectionReport, SubreflectivityReport,
};

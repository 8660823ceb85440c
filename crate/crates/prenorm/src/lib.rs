//! Finite-instance workbench for categories with a distinguished class of
//! trivial objects: kernels, cokernels, the (normal epi, trivial kernel)
//! factorisation, stability laws, exact sequences, and the third isomorphism
//! theorem, all checked on concrete finite structures.
//!
//! Everything here is bounded verification: universal properties are checked
//! against a finite catalog of objects and morphisms, and reports say so.
//! Positive verdicts are evidence on the catalog, never proofs; negative
//! verdicts ship a concrete witness diagram that can be re-checked directly.

pub mod backends;
pub mod casestudies;
pub mod closure;
pub mod combinators;
pub mod core;
pub mod engine;

pub use crate::core::{
    BackendTag, Error, Mor, Obj, RelKind, Result, Structure,
};

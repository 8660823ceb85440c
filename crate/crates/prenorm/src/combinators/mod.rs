//! Backends built from other backends: slice categories over a fixed anchor
//! object, and diagram categories over a finite index shape. Both delegate
//! their structure to the base backend — slices by anchoring every object and
//! checking anchor compatibility, diagrams by working pointwise and inducing
//! the connecting maps.

pub mod functor;
pub mod slice;

pub use functor::{
    component_mor, component_obj, connecting_mor, evaluation_preservation_report, DiagramBackend,
    EvaluationReport, Shape,
};
pub use slice::{anchor_mor, under_mor, under_obj, SliceBackend};

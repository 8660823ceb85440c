//! Self-contained studies of two structures that sit just outside the
//! reach of the finite backends.
//!
//! * [`words`] — bounded evidence that monoids do not admit the
//!   normal-epi/trivial-kernel calculus: a restricted quotient map
//!   identifies two words that the smallest candidate congruence keeps
//!   apart, checked exactly on all words up to a configurable length.
//! * [`ideal`] — a one-object category of positive integers under
//!   multiplication whose trivial arrows form an ideal (the multiples of
//!   10) rather than the trivial class of an object class; kernels and
//!   cokernels coincide, normal epis are the divisors of 10, and the arrow
//!   25 admits no normal-epi/trivial-kernel factorisation.
//!
//! Both studies are exhaustive within explicit bounds and report those
//! bounds; neither relies on confluent rewriting or closed forms, so the
//! closed forms frozen in the tests are genuinely independent checks.

pub mod ideal;
pub mod words;

pub use ideal::{
    ideal_cokernel, ideal_factorise, ideal_kernel, ideal_normal_epis, IdealCategory,
    IdealFactorisation, DEFAULT_ARROW_BOUND, IDEAL_BASE,
};
pub use words::{
    mon_counterexample_check, orbit_maxima, BoundedFPMonoid, BoundedWordStudy, WordClassStats,
    DEFAULT_WORD_BOUND, MIN_WORD_BOUND,
};

//! Backend-generic operations and the law suites that quantify them over
//! bounded catalogs.

pub mod laws;
pub mod ops;
pub mod report;

pub use laws::{run_law, run_suite};
pub use ops::{
    catalog_exact_sequences, check_exact_sequence, classify, cokernel_of_kernel,
    compare_to_pullback, factorise, has_trivial_kernel, is_normal_epi, is_normal_mono,
    is_regular_epi, kernel, lift_diagonal, noether_third, product_mor, same_subobject,
    ExactSequence, Factorisation, NoetherReport,
};
pub use report::{Law, LawReport, RunMode, SuiteReport, Verdict, Witness};

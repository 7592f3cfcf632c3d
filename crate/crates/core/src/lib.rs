//! Combinatorics, Borel–Weil–Bott and exact linear algebra for checking
//! semiorthogonality on the space `X₁` of degenerate 2-forms with a kernel line.

pub mod bwb;
pub mod linalg;
pub mod partition;
pub mod phi;
pub mod schur;
pub mod suite;
pub mod x1;
pub mod x2;

pub use bwb::{BundleExpr, EquivariantSummand, GradedRep};
pub use partition::{Partition, Profile};
pub use phi::{PhiAnalysis, PhiSpec};
pub use schur::{SchurMultiset, Weight};
pub use suite::{emit, run_suite, OutputFormat, Report, SuiteConfig, SuiteName};
pub use x1::{LObject, ShiftConvention, Status, VerificationRecord, X1Bundle, X1Model};

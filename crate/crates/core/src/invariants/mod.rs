//! Exact integer invariants.

pub mod chain;
pub mod homology;
pub mod pi1;
pub mod probe;
pub mod snf;

pub use chain::{chain_complex, ChainComplex};
pub use homology::{homology, homology_of, AbelianGroup, HomologyReport};
pub use pi1::{pi1_presentation, GroupPresentation, DEFAULT_TIETZE_BUDGET};
pub use probe::{contractibility_probe, ContractibilityReport, Obstruction, Verdict};
pub use snf::{smith_normal_form, IntMatrix, SmithForm, SparseMatrix};

//! Hilbert data, Betti tables, regularity and local cohomology of `A/I`.

mod betti;
mod hilbert;
mod regularity;
mod resolution;

pub use betti::{betti_table, ceiling, module_betti_table, quotient_betti_table, BettiTable, Ceiling};
pub use hilbert::{evaluate, hilbert_data, HilbertData};
pub use regularity::{
    check_truncation_linear, kernel_split, koszul_cohomology_tops, module_regularity,
    quotient_regularity, regularity, regularity_report, regularity_via_koszul,
    regularity_via_truncation, KernelSplit, Regularity,
};
pub use resolution::{
    a_invariant_top, ext_dual_oracle, minimal_resolution, reg_via_def1, ExtDuals, ExtOracle,
    FiniteLengthModule, FreeModule, PolyMatrix, Resolution,
};

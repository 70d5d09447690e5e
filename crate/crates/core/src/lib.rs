//! Exact bookkeeping for Brieskorn manifolds and their quotients: Reeb period
//! lattices, Conley–Zehnder index formulas, the Morse–Bott E¹ page for the
//! contractible sector of symplectic homology, and idempotent groups of finite
//! ℤ₂-algebras.
//!
//! Nothing here uses floating point. Periods are exact rationals in units of
//! π/2 and indices are exact half-integers.

pub mod homcat;
pub mod idempotents;
pub mod indexcalc;
pub mod lattice;
pub mod ssheet;

pub use homcat::{kunneth_with_circle, Catalog, CatalogKey, GradedDims, HomcatError};
pub use idempotents::{
    idempotent_group, positive_idempotent_index, product_ring, AlgebraError, BasisLabel,
    GradedAlgebraF2, IdempotentGroup, DEFAULT_DIM_CAP,
};
pub use indexcalc::{
    adc_bound, adc_certificate, cz_brieskorn, cz_cross_circle, cz_from_morse, hamiltonian_shift,
    lsft_family, min_index, reduced_index, rs_index_hyperbolic, rs_index_rotation, AdcReport,
    AdcVerdict, IndexError, IndexValue, MinIndex, PiecewiseProfile, Sign,
};
pub use lattice::{
    minimal_feasible_k, morse_bott_families, participating_set, search_exponent_tuples,
    ExponentTuple, MorseBottFamily, TupleError,
};
pub use ssheet::{
    build_e1, contributing_families, delta_shift, persistence_lower_bound, sh_bounds,
    ContributingFamily, E1Page, FamilyScan, PageEntry, PageError, Provenance, ShBounds, Window,
    ZeroColumnSpec,
};

//! Max-plus (tropical) matrix analysis.
//!
//! The crate works over the semiring (R ∪ {-inf}, ⊕ = max, ⊗ = +) and
//! covers, for an irreducible matrix:
//!
//! - the maximum cycle mean, Kleene star, critical graph, eigencone and
//!   subeigencone bases, spectral projector and visualization scalings;
//! - cyclic classes of the critical graph with their access relations;
//! - periodic matrix powers by repeated squaring: A^r for r past the
//!   transient is reconstructed from a single cached power without any
//!   transient search, along with ultimate orbit periods, the core matrix,
//!   the CSR decomposition and reduced powers;
//! - the equation systems of attraction cones, chain cancellation, the
//!   coefficients algorithm for strongly connected critical graphs, and
//!   extremal solutions via nearly minimal coverings.
//!
//! The max-times realization exists only at the I/O boundary, through the
//! exp/ln isomorphism in [`io`].

// index loops over parallel arrays read better than zips in this code
#![allow(clippy::needless_range_loop)]

pub mod attraction;
pub mod cyclic;
pub mod error;
mod graph;
pub mod io;
pub mod matrix;
pub mod periodic;
pub mod scalar;
pub mod spectral;

pub use attraction::{
    attraction_system, attraction_system_bordering, chain_cancel, extremals,
    nearly_minimal_coverings, raw_attraction_system, AttractionSystem, BorderingTrace, Chain,
    CoveringProblem, KTerm, MTerm, RawChain, RawCriticalSystem, RawSide, Side,
};
pub use cyclic::{
    access, class_shift, condensation_classes, condensation_cyclicity, cyclic_classes,
    partitions_agree, CyclicClasses,
};
pub use error::{MpError, Result};
pub use io::{read_matrix, read_vector, to_maxplus, to_maxtimes, write_matrix, write_vector, Semiring};
pub use matrix::{mp_power_residues, MpMatrix, MpRect, MpVector, PowerTable};
pub use periodic::{
    csr_reconstruct, transient_oracle, CoreMatrix, CsrDecomposition, PeriodicPowerEngine,
    ReducedPower,
};
pub use scalar::{MpScalar, DEFAULT_EPS};
pub use spectral::{
    critical_graph, definite_form, eigencone_basis, is_irreducible, is_visualized, kleene_star,
    max_cycle_mean, spectral_projector, subeigencone_basis, visualize, KleeneStar, SpectralData,
    VisualizedMatrix,
};

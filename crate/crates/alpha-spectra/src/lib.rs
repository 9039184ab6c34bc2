//! Alpha matrices of simple digraphs: construction, singular values, trace
//! norm, the trace-norm bounds with equality classification, closed-form
//! spectra for the special families, and exhaustive verification of all of
//! it over small digraph spaces.
//!
//! For a digraph D with adjacency matrix A and diagonal outdegree matrix
//! Dplus, the alpha matrix is
//!
//! ```text
//! A_alpha = alpha * Dplus + (1 - alpha) * A,    0 <= alpha < 1
//! ```
//!
//! Its singular values are the square roots of the eigenvalues of the Gram
//! matrix A_alpha A_alphaᵀ; their sum is the trace norm. The [`bounds`]
//! module evaluates the lower and upper trace-norm bounds in terms of the
//! order, arc count, and outdegrees, and classifies which digraphs attain
//! them. The [`verify`] module re-derives every classification
//! exhaustively over all labeled digraphs of small order.

pub mod alpha;
pub mod alphamat;
pub mod bounds;
pub mod closedform;
pub mod digraph;
pub mod edgelist;
pub mod enumerate;
pub mod exact;
pub mod family;
pub mod linalg;
pub mod verify;

pub use alpha::{AlphaError, AlphaParam};
pub use alphamat::{
    abs_determinant, alpha_spectrum, build_alpha_matrix, frobenius_target, numerical_rank,
    singular_values, RankMode, SingularSpectrum,
};
pub use bounds::{
    bound_report, classify_equality, fmt_sig12, is_symmetric_bibd, spectral_floor_check, BoundId,
    BoundReport, EqualityCase, EQUALITY_TOL,
};
pub use closedform::{closed_form_spectrum, ClosedFormSpectrum};
pub use digraph::{Digraph, DigraphError, StructureFlags};
pub use edgelist::{emit_digraph, parse_digraph, ParseError};
pub use enumerate::{all_digraphs, all_oriented_trees, digraph_count, oriented_tree_count};
pub use family::{make_family, FamilyError, FamilySpec};
pub use linalg::DenseMatrix;
pub use verify::{
    arbitrate_cycle_coefficient, decimal_grid, dyadic_grid, find_km_equality_candidates,
    run_exhaustive, run_exhaustive_with_progress, verify_tree_minimum, FailureRecord,
    KmCandidate, VerificationSummary, VerifyError,
};

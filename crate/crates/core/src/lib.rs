//! Entanglement of two rebits: real-vector-space two-level systems whose
//! states are 4x4 real symmetric density matrices.
//!
//! The real concurrence `C = |tr(ρ σy⊗σy)|` determines the real entanglement
//! of formation `ℰ(C) = H((1 + √(1 - C²)) / 2)`. Alongside it the crate
//! computes the complex-field quantities (Wootters concurrence, partial
//! transpose spectrum), builds optimal decompositions explicitly, and offers a
//! numerical ensemble search that bounds the entanglement of formation
//! independently of the closed form.

pub mod ensembles;
pub mod error;
pub mod matrix;
pub mod measures;
pub mod state;

pub use ensembles::{
    apply_mixer, average_concurrence, average_eof, average_preconcurrence, brute_force_min_eof,
    eigen_ensemble, flatten, flatten_ensemble, neumark_extension, FlattenResult, NeumarkExtension,
    OracleResult, OrthogonalMixer, SubnormalizedEnsemble,
};
pub use error::{Error, Result};
pub use matrix::{
    givens_mix, psd_sqrt, sym_eig, tensor_product, RealMatrix, SpectralDecomposition,
    SymmetricMatrix,
};
pub use measures::{
    binary_entropy, concurrence_pure, concurrence_real, eof_curve, eof_real, measure_report,
    partial_transpose, peres_min_eig, preconcurrence, tau, tau_spectrum, wootters_concurrence,
    Classification, MeasureReport, CONCURRENCE_TOLERANCE,
};
pub use state::{
    alpha_state, from_pauli, marginal, pauli_expand, random_product_state, random_pure_state,
    random_state, schmidt, DensityOperator, Pauli, PauliCoordinates, PureState, SchmidtForm,
    Subsystem,
};

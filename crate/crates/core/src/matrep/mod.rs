//! Dense matrices over small prime fields, group words and the
//! fingerprint machinery for conjugation actions on involutions.

pub mod fingerprint;
pub mod matrix;
pub mod word;

pub use fingerprint::{
    centralizer_generators, collapsed_adjacency_matrep, collapsed_row, fingerprint, orbit_closure,
    orbit_closure_capped, verify_standard_generators, CentralizerGenerators, Fingerprint,
    FingerprintContext, FingerprintTable, MatrepError, MatrixSet, OrderCheck, StandardGeneratorReport,
    WordEnvironment, CENTRALIZER_WORDS, STANDARD_ORDERS,
};
pub use matrix::{BitMatrix, MatrixError, MAX_DIM};
pub use word::{GroupWord, WordError, WordTarget};

//! Algorithmic core for complete mappings, synchronization witnesses,
//! diagonal-group colourings and collapsed adjacency computations.
//!
//! The crate is `no_std` and only needs `alloc`. Everything that touches the
//! filesystem, parses file formats or drives a command line lives in the
//! companion `synchro` crate.
//!
//! Module map:
//!
//! * [`perm`], [`group`], [`classes`], [`catalog`]: permutations, explicit
//!   multiplication tables, conjugacy classes and fixture groups.
//! * [`complete_mapping`]: complete mapping search and the Hall–Paige
//!   predicate.
//! * [`graph`], [`diagonal`]: implicit graphs, colouring certificates, the
//!   diagonal graph and Hamming/Latin-square comparators.
//! * [`witness`]: synchronization and separation witnesses, exact
//!   factorisations.
//! * [`orbitals`]: suborbits, collapsed adjacency matrices and the
//!   intersection algebra.
//! * [`matrep`]: prime-field matrices, group words, subspace fingerprints and
//!   conjugation-orbit closure.
//! * [`chartab`]: character tables and class structure constants.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod bitset;
pub mod catalog;
pub mod chartab;
pub mod classes;
pub mod complete_mapping;
pub mod diagonal;
pub mod graph;
pub mod group;
pub mod matrep;
pub mod orbitals;
pub mod perm;
pub mod witness;

pub use catalog::{catalog_groups, make_group, CatalogError};
pub use classes::{conjugacy_classes, ConjugacyClassing};
pub use complete_mapping::{
    find_complete_mapping, hall_paige_predicate, verify_complete_mapping, CompleteMapping,
    SearchOptions, SearchOutcome,
};
pub use group::{FiniteGroup, GroupError};
pub use perm::{PermGroup, Permutation};

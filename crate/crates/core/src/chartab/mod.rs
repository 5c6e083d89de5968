//! Character tables given as cyclotomic expressions, class structure
//! constants by the character formula, and an exhaustive oracle.

pub mod constants;
pub mod expr;
pub mod numeric;
pub mod table;

pub use constants::{
    brute_force_structure_constants, class_correspondences, compare_with_brute_force, structure_constant_hat,
    structure_constant_xi, BruteForceConstants, OracleReport, StructureConstant, StructureConstants,
    BRUTE_FORCE_LIMIT, INTEGRALITY_TOLERANCE,
};
pub use expr::{Arith, ExprError, ValueExpr};
pub use table::{CharacterTable, ClassInfo, TableError, ORTHOGONALITY_TOLERANCE};

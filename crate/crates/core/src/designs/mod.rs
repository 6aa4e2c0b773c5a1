//! Classical and quantum combinatorial designs on `d × d` squares.
//!
//! Symbols are integers in `0..d`. A card `(v, s)` (rank, suit) sitting in
//! cell `(r, c)` is encoded in a permutation matrix of order `d²` as a 1 at row
//! `v·d + s`, column `r·d + c`.

mod array;
mod json;
mod latin;
mod ols;
mod quantum;

pub use array::{
    oa_verify, qoa_verify, ArrayReport, ArrayViolation, OrthogonalArray, QuantumOrthogonalArray,
};
pub use json::{Design, DesignFile};
pub use latin::{cyclic_latin, latin_violations, verify_latin, LatinSquare, Line};
pub use ols::{
    check_conditions, mols_construct, mols_pair, ols_function_tables, ols_to_permutation,
    permutation_to_ols, verify_orthogonal_pair, Condition, FunctionTables, OlsReport,
    OrthogonalLatinPair, Violation,
};
pub use quantum::{
    classical_embed, qls_verify, qols_verify, QlsReport, QolsFamily, QolsReport, QuantumSquare,
    QuantumViolation, NORMALIZATION_TOL,
};

pub(crate) use ols::cards_to_permutation;

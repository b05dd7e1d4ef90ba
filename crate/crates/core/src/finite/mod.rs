//! Finite gyrogroups given by Cayley tables.

mod gyrogroup;
mod subgroup;
pub mod table;

pub use gyrogroup::{
    cycle_decomposition, Check, Diagnostic, FiniteGyrogroup, ValidationFailure, MAX_WITNESSES,
};
pub use subgroup::{
    closure, enumerate_subgyrogroups, gyration_invariance_witness, is_l_subgyrogroup,
    is_subgyrogroup, left_cosets, CosetPartition, Subgyrogroup, DEFAULT_ENUMERATION_CAP,
};
pub use table::{CayleyTable, ParseError, ParseErrorKind};

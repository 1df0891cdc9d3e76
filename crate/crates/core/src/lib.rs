//! Generalized Coxeter racks over (Z/n)^m and the rack counting invariants
//! of oriented links they define.
//!
//! * [`modring`]: residues, vectors, symmetric forms and spans over Z/n.
//! * [`rack`]: finite racks as operation tables, axiom checks, rank, rack
//!   polynomial, subrack closure and isomorphism search.
//! * [`coxeter`]: construction of `CR((Z/n)^m, α, A)`.
//! * [`diagram`]: signed crossing codes for oriented link diagrams.
//! * [`invariants`]: colourings, the polynomial rack counting invariant and
//!   its Coxeter enhancement.
//! * [`poly`]: the sparse polynomial type both invariants return.

pub mod coxeter;
pub mod diagram;
pub mod error;
pub mod invariants;
pub mod modring;
pub mod poly;
pub mod rack;

pub use coxeter::{build_coxeter_rack, carrier, CoxeterSpec};
pub use diagram::{framing_deltas, Component, Crossing, LinkDiagram};
pub use error::{Error, Result};
pub use invariants::{
    count_colorings, cp_invariant, enumerate_colorings, for_each_coloring, pr_invariant,
    verify_coloring, Coloring, Framing,
};
pub use modring::{bilinear_eval, inv_mod, is_unit, span_enumerate, ModVector, Modulus, SymForm};
pub use poly::MultiPoly;
pub use rack::{
    find_isomorphism, is_isomorphism, parse_matrix_file, verify_rack, FiniteRack, MatrixFile,
    ValidationReport, Violation,
};

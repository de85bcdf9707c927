//! Integer matrix normal forms and finitely generated abelian groups.

mod matrix;
mod quotient;
mod snf;
mod sparse;

pub use matrix::{Int, IntMatrix, SparseMatrix, SparseRow};
pub use quotient::{quotient_structure, quotient_structure_sparse, AbelianStructure, QuotientHandle};
pub use snf::{determinant, smith_normal_form, smith_normal_form_right, Snf};
pub use sparse::{eliminate, Echelon, Reducer};

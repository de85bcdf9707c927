//! Finitely presented groups: the text format and coset enumeration.

mod coset;
mod parse;

pub use coset::{certify_nu_order, todd_coxeter, CosetTable, Enumeration, NuCertificate, Verdict, DEFAULT_MAX_COSETS};
pub use parse::parse_presentation;

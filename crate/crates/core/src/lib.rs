//! Knot Floer complexes over F2[U] and the concordance and surgery
//! invariants computed from them.

pub mod complex;
pub mod error;
pub mod expr;
pub mod fixtures;
pub mod format;
pub mod gf2;
pub mod invariants;
pub mod laurent;
pub mod oracle;
pub mod surgery;

pub use complex::{staircase, BifilteredComplex, DiffTerm, Generator, Violation};
pub use error::Error;
pub use expr::{build_complex, parse, KnotExpr};
pub use laurent::LaurentPoly;

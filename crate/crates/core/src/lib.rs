//! Finite involutive semirings, residuated join-semilattices and semimodules
//! over them, presented as explicit operation tables.

pub mod axioms;
pub mod canon;
pub mod checks;
pub mod cli;
pub mod corpus;
pub mod decide;
pub mod enumerate;
pub mod error;
pub mod format;
pub mod homs;
pub mod ideals;
pub mod report;
pub mod semimodule;
pub mod table;
pub mod termeq;
pub mod theorems;

pub use canon::{canonical_key, CanonicalKey};
pub use error::{Error, Result};
pub use homs::{HomKind, HomMap};
pub use ideals::IdealSet;
pub use report::{Report, Verdict};
pub use semimodule::SemimoduleTable;
pub use table::{AlgebraTable, Poset, Semilattice, Table};

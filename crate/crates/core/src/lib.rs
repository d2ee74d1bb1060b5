//! Finite lex categories with certified universal properties: sums
//! completions, equivalence 2-groupoids and their homotopy categories,
//! pretopos axiom audits, and brute-force presheaf comparison.

pub mod bundle;
pub mod cat;
pub mod classify;
pub mod error;
pub mod functor;
pub mod groupoids;
pub mod key;
pub mod limits;
pub mod presheaves;
pub mod pretopos;
pub mod report;
pub mod sums;

pub use cat::{check_category_axioms, AxiomReport, CatKind, Category, Mor, Obj};
pub use error::{Error, Result};
pub use key::Key;
pub use report::{AuditReport, ClauseRecord, Verdict};

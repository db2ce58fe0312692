//! Reduction structures and marked polynomial reduction over the rationals.

pub mod builders;
pub mod coeff;
pub mod error;
pub mod io;
pub mod linalg;
pub mod marked;
pub mod monomial;
pub mod ordering;
pub mod poly;
pub mod structure;
pub mod verdict;
pub mod weights;

pub use coeff::Rational;
pub use error::{Error, Result};
pub use monomial::{Term, VariableSet, Vars};
pub use marked::{MarkedPolynomial, MarkedSet};
pub use ordering::{OrderingFunction, TermOrder};
pub use poly::Polynomial;
pub use structure::{CertificateKind, Entry, MultiplierSet, ReductionStructure};
pub use verdict::{Mode, Status, Verdict, Witness};

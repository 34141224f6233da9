//! Exact symbolic computation of invariants of homology cylinders given by
//! admissible group presentations, and of 2-connected endomorphisms of free
//! groups: the Magnus representation, the H-torsion, and their reductions to
//! abelian quotients of the unit group of the Laurent fraction field.
//!
//! The crate is `no_std` (with `alloc`); IO, file formats and the CLI live in
//! the companion `magnus-cli` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod autfree;
pub mod cylinder;
pub mod foxcalc;
pub mod laurent;
pub mod matrixkh;
pub mod quotients;
pub mod words;

pub use autfree::{r_tilde, EndoError, FreeEndomorphism};
pub use cylinder::{AdmissiblePresentation, CylinderError, MagnusMatrix, ValidationReport};
pub use laurent::{Budget, FactorError, LaurentPoly, RationalFunction, UnitClassForm};
pub use matrixkh::{IntMatrix, Mat, PolyMatrix, RatMatrix};
pub use quotients::{
    assert_distinct, independence_rank, r_hat, reduce, tau_tilde, witness_family_cfk,
    Distinctness, Level, OrbitCertificate, QuotientClass, QuotientError,
};
pub use words::{parse_word, GenTable, Generator, Word};

//! Exact computations in abelian crossed product algebras.
//!
//! Everything here works over the rationals with arbitrary precision. A
//! Galois extension `K/F` is presented by structure constants together with
//! commuting automorphism matrices; on top of that sit the crossed product
//! `(K/F, z, u, b)`, its degeneracy witnesses, the twisted polynomial ring
//! `K[s; sigma; u]`, the graded skeleton of the power series crossed product
//! and prime-to-p composite extensions.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, reports and
//! the command line live in the companion `crossprod` crate.
#![no_std]

extern crate alloc;

pub mod build;
pub mod crossed_product;
pub mod error;
pub mod extension;
pub mod field;
pub mod graded;
pub mod group;
pub mod matrix;
pub mod report;
pub mod scalar;
pub mod twisted;

#[cfg(test)]
pub(crate) mod testing;

pub use crate::crossed_product::{
    power_cocycle, validate_relations, AlgebraElement, CocycleData, CrossedProduct,
    DegeneracyPairWitness, SearchOutcome, StrongDegeneracyWitness,
};
pub use crate::error::{Error, Result};
pub use crate::extension::{bezout_certificate, det_over, power_witness, CompositeExtension};
pub use crate::field::{FieldElement, FieldPresentation, GaloisExtension, Hilbert90};
pub use crate::graded::{GradedContext, HomogeneousElement, ValueVector};
pub use crate::group::{AbelianGroup, GroupExponent};
pub use crate::matrix::Matrix;
pub use crate::report::{Check, Severity, ValidationReport};
pub use crate::scalar::Scalar;
pub use crate::twisted::{GenericCrossedProduct, ReducedElement, TwistedPolynomial};


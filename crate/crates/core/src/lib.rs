//! Exact permutative representations of the Cuntz algebras O₂ and O_∞,
//! the recursive boson and fermion systems built from their generators, and
//! the particle-number preserving unitary between the Bose-Fock and
//! Fermi-Fock spaces that arises when both live on `P₂(1)`.

pub mod correspondence;
pub mod error;
pub mod expr;
pub mod quant;
pub mod rep;
pub mod scalar;
pub mod verification;
pub mod word;

pub use correspondence::{
    block_decompose, enumerate_grade, forward, forward_operational, inverse, particle_number,
    Block, CorrespondencePair,
};
pub use error::{Error, Result};
pub use expr::OperatorExpr;
pub use quant::{BosonMonomial, FermionSubset, Limits};
pub use rep::{gp_vector, RepSpace, State};
pub use scalar::RadicalScalar;
pub use word::{BasisIndex, FiniteWord, Letter, TailWord};

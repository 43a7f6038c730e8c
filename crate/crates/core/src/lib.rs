//! A finite universal-algebra toolkit built around one construction: gluing
//! an inductive system of algebras over a sup-semilattice into a single
//! algebra carrying a Płonka operator, and splitting such an algebra back
//! into its system. Everything is exhaustively checkable — carriers are
//! index sets `0..n`, operations are tables, and every law (band axioms
//! D1-D3, operator axioms D4-D5, functor laws, naturality, the universal
//! property of the sum) is validated rather than assumed.
//!
//! Module map:
//!
//! - [`algebra`]: signatures, finite algebras, homomorphisms, congruences,
//!   quotients, powers
//! - [`term`]: depth-bounded terms and the evaluation fold
//! - [`semilattice`]: join tables, residuation, the free semilattice, the
//!   reflection of an algebra into semilattices
//! - [`band`]: left normal bands, iterates, the induced relation, the
//!   semilattice reflection
//! - [`plonka`]: Płonka operators, derived laws, tensor objects, operator
//!   enumeration
//! - [`system`]: inductive systems, their morphisms, reindexing, constant
//!   systems, the residuated transpose
//! - [`adjunction`]: the sum, the decomposition, unit/counit, universal
//!   extensions and the full adjunction check
//! - [`mod@format`]: the JSON document format with canonical
//!   serialization
//! - [`cli`]: the command-line dispatcher

pub mod enumerate;
pub mod partition;
pub mod algebra;
pub mod term;
pub mod semilattice;
pub mod band;
pub mod plonka;
pub mod system;
pub mod adjunction;
pub mod format;
pub mod cli;

pub use adjunction::{decompose, plonka_sum, Decomposition};
pub use algebra::{FiniteAlgebra, Homomorphism, Signature};
pub use band::{BandMorphism, LeftNormalBand};
pub use partition::Partition;
pub use plonka::{PlonkaAlgebra, PlonkaMorphism};
pub use semilattice::{SslMorphism, SupSemilattice};
pub use system::{InductiveSystem, SystemMorphism};
pub use term::Term;

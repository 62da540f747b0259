//! Exact classification of connected reductive algebraic groups.
//!
//! A connected reductive group is presented as `(Z × S)/F`: a torus `Z` of
//! rank `n`, a simply connected semisimple group `S` given by its Dynkin
//! types, and a finite central subgroup `F` meeting `Z` trivially. On top of
//! that presentation the crate decides isomorphism, enumerates all groups of
//! a fixed rank, evaluates the numerical invariants of the underlying variety
//! (`dim`, `units`, `mh`, `π₁`) and searches for pairs of non-isomorphic
//! semisimple groups whose underlying varieties are isomorphic.
//!
//! All arithmetic is exact.

pub mod affine;
pub mod error;
pub mod finab;
pub mod intlinalg;
pub mod reductive;
pub mod roots;
pub mod semisimple;
pub mod varieties;

pub use affine::{AffineDatum, Classification, InvariantReport};
pub use error::{Error, Result};
pub use finab::{FinAb, FinAbElem, FinAbHom, FinAbSubgroup, DEFAULT_ENUMERATION_BOUND};
pub use intlinalg::{CokernelInvariants, IntMatrix, Lattice, Smith};
pub use reductive::{EnumerationConfig, GluingDatum};
pub use roots::{Family, RootSystem, SimpleType};
pub use semisimple::{CentralSubgroup, SCSemisimple};
pub use varieties::{PowerQuotient, TwinCertificate};

//! Combinatorics of the orbit, Bruhat-cell and stable-piece stratifications of
//! the wonderful compactification of an adjoint semisimple group.
//!
//! Everything here is expressed through the Weyl group: strata are indexed by
//! subsets of simple roots and Weyl group elements, closures and
//! non-emptiness become Bruhat-order inequalities involving the Demazure
//! product and its two minimal companions.

pub mod cartan;
pub mod coxeter;
pub mod error;
pub mod hasse;
pub mod monoid;
pub mod oracle;
pub mod partitions;
pub mod strata;
pub mod subset;
pub mod wire;

pub use cartan::CartanDatum;
pub use coxeter::{BuildOptions, CoxeterSystem, DiagramAutomorphism, WElem};
pub use error::{Error, Result};
pub use monoid::{CosetDecomposition, Side};
pub use strata::{QuadrupleShadow, StratumKind, StratumRef, WonderfulContext};
pub use subset::SimpleSubset;

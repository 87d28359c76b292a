//! Exact Kostant–Kumar polynomials and related Weyl group machinery for
//! simply-laced root systems, with the E6, E7 and E8 tables as the main use.

pub mod analysis;
pub mod error;
pub mod nilhecke;
pub mod polyring;
pub mod rat;
pub mod rootsys;
pub mod weyl;

pub use error::{Error, Result};
pub use nilhecke::{KKResult, NHElt, NilHecke};
pub use polyring::{FactoredPoly, MPoly, Mono, RatFn, RootRing};
pub use rat::Rat;
pub use rootsys::{Root, RootCode, RootSystem, SimpleOrder, TypeTag};
pub use weyl::{SupportSet, WeylElt, Word};

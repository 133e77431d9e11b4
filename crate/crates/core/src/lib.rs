//! Cyclic and negacyclic BCH code families over small finite fields.
//!
//! The crate builds codes from cyclotomic-coset defining sets, certifies
//! their parameters (BCH and Boston lower bounds, exact weight distributions
//! and minimum distances at desk scale, sphere-packing optimality), and
//! derives shortened, punctured, dual and Y1 codes from them.

pub mod analysis;
pub mod bounds;
pub mod cli;
pub mod codes;
pub mod cosets;
pub mod error;
pub mod families;
pub mod gf;
pub mod poly;
pub mod reference;
pub mod report;
pub mod tables;

pub use codes::{LinearCode, WeightDistribution};
pub use cosets::{Coset, DefiningSet, Kind};
pub use error::{Error, Result};
pub use gf::{make_field, Elem, FieldDesc, FieldElem};
pub use poly::{Poly, Splitting};

//! Exact computations with monomial ideals in power series rings and their
//! monomial quotients: colengths, multiplicities, integral closures and
//! rational powers, plus searches and checks for Lech-type inequalities.

pub mod asymptotic;
pub mod error;
pub mod inequalities;
pub mod lp;
pub mod monomial;
pub mod multiplicity;
pub mod newton;
pub mod parse;
mod qser;
pub mod ratpow;
pub mod rings;
pub mod rng;
pub mod search;

pub use error::{LechError, Result};
pub use monomial::{canonicalize, Exponent, MonomialIdeal};
pub use newton::{Facet, ReesData};
pub use rings::{ring_colength, ring_integral_closure, ring_multiplicity, RingSpec};

//! Exact computations for finite-dimensional positively graded
//! quasi-hereditary algebras given by quivers with relations.

pub mod algebra;
pub mod cli;
pub mod corpus;
pub mod error;
pub mod exactla;
pub mod homalg;
pub mod lincat;
pub mod modules;
pub mod pairings;
pub mod qh;
pub mod random;
pub mod tilting;

pub use error::{Error, Result};

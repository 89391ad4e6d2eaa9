//! Exact algebra for depth-4 arithmetic circuits whose product gates take
//! inputs of low algebraic rank.
//!
//! The crate is organized bottom-up:
//!
//! - [`field`] and [`poly`]: exact coefficient domains and sparse multivariate polynomials.
//! - [`circuit`]: sum-of-gates circuits with product or general outer functions.
//! - [`algdep`]: Jacobian rank certificates, annihilators, functional dependence
//!   and the circuit rewrite onto homogeneous components of a transcendence basis.
//! - [`measure`]: the projected shifted partial derivatives dimension and its upper bounds.
//! - [`nw`]: Nisan-Wigderson design polynomials and random restrictions.
//! - [`pit`]: support bounds, low-support hitting sets and identity tests.
//! - [`cli`]: the `rankpit` command dispatcher.

pub mod algdep;
pub mod circuit;
pub mod cli;
pub mod corpus;
pub mod error;
pub mod field;
pub mod interval;
pub mod linalg;
pub mod measure;
pub mod nw;
pub mod pit;
pub mod poly;

pub use error::{Error, Result};
pub use field::{Coeff, Domain};
pub use poly::{Monomial, MonomialOrder, Polynomial};

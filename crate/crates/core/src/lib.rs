//! Exact symbolic algebra for commutative cocommutative Hopf algebras
//! equipped with bicharacters.
//!
//! The crate provides:
//!
//! * exact coefficient arithmetic over `Q`, Laurent polynomials in `z`
//!   and truncated bivariate power series ([`coeff`]),
//! * the Hopf algebra `Q[e^{±a1},…,e^{±aL}, x1, x2, …]` with its
//!   coproducts, counit and antipode ([`hopf`]),
//! * bicharacters as generator tables together with their convolution
//!   group ([`bichar`]),
//! * twisted and bullet products and the `EQ` map ([`twist`]),
//! * quadratic differential operators and their exponentials ([`quadop`]),
//! * the lattice generating-series setup ([`lattice`]),
//! * the rank-1 Heisenberg Fock space with normal ordered products
//!   ([`heisenberg`]),
//! * an expression parser for the CLI grammar ([`parse`]),
//! * seeded randomized verification suites ([`verify`]).

pub mod bichar;
pub mod coeff;
pub mod error;
pub mod heisenberg;
pub mod hopf;
pub mod lattice;
pub mod parse;
pub mod quadop;
pub mod twist;
pub mod verify;

pub use bichar::{BicharSpec, SymmetricBicharSpec};
pub use coeff::{BivariateSeries, LaurentPoly, Rational};
pub use error::Error;
pub use hopf::{AlgebraSignature, HopfElement, Monomial, SigRef, Tensor2, Tensor3};
pub use quadop::QuadraticOperator;

pub type Result<T> = std::result::Result<T, Error>;

//! Exact Whitney forms on the standard n-simplex.
//!
//! The crate builds the Whitney map `W` from simplicial cochains to
//! affine-coefficient differential forms, the de Rham map `R` integrating such
//! forms over oriented faces, and an exact linear-algebra check that `W c` is
//! the only affine-coefficient k-form whose pullback to every k-face is
//! constant and whose face integrals are `⟨c, τ⟩`. All arithmetic is over the
//! rationals; there are no tolerances anywhere.

pub mod characterize;
pub mod derham;
pub mod error;
pub mod forms;
pub mod io;
pub mod linalg;
pub mod rational;
pub mod render;
pub mod simplicial;
pub mod verify;
pub mod whitney;

pub use error::{Error, Result};
pub use forms::{AffineForm, ConstantForm, MultiIndex};
pub use rational::Rational;
pub use simplicial::{AffineFunction, Cochain, Face, Sign};

//! Exact isomorphisms between degree-2 Siegel, Hermitian and Hurwitz-quaternionic
//! modular groups and discriminant kernels of `SO₀(2,n)`, `n = 3, 4, 6`.

pub mod congruence;
pub mod element;
pub mod error;
pub mod forms;
pub mod isogeny;
pub mod matrices;
pub mod rings;
pub mod symplectic;

pub use error::{Error, Result};

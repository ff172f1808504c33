//! Norms, multiplier algebras, idempotents and non-representability
//! certificates for finite-dimensional `L^p`-operator algebras built from
//! finite groups.
//!
//! The modules build on each other:
//!
//! * [`group`]: finite groups as Cayley tables.
//! * [`element`] and [`witness`]: the group algebra, convolution, ℓ^p norms and
//!   the left regular representation.
//! * [`pnorm`]: certified brackets for `‖M‖_{p→p}`.
//! * [`multiplier`]: double centralizers and multiplier norms on the
//!   augmentation ideal and on triangular algebras.
//! * [`gelfand`]: characters, the Gelfand transform and idempotents.
//! * [`certify`]: the bicontractive-idempotent certificate for `Z/3Z`.

pub mod error;
pub mod group;
pub mod element;
pub mod witness;
pub mod pnorm;
pub mod multiplier;
pub mod gelfand;
pub mod certify;
pub mod literal;
pub mod cli;
pub mod serial;
mod optim;
mod linalg;

pub use error::{Error, Result};
pub use group::{parse_group, FiniteGroup};
pub use element::{AlgebraElement, ConvMatrix};
pub use pnorm::{NormBound, NormMethod};

pub use num_complex::Complex64;

pub type CMatrix = nalgebra::DMatrix<Complex64>;
pub type CVector = nalgebra::DVector<Complex64>;

/// Largest entry modulus of a complex matrix or vector.
pub(crate) fn max_modulus<'a>(entries: impl IntoIterator<Item = &'a Complex64>) -> f64 {
    entries.into_iter().map(|z| z.norm()).fold(0.0, f64::max)
}

//! Exact linear algebra, polynomial rings and Gröbner bases for studying
//! linear monads on projective space.
//!
//! Everything is generic over [`Scalar`]; [`Rational`] and the prime fields
//! [`Fp`] are the provided implementations.

pub mod cohomology;
pub mod error;
pub mod exactalg;
pub mod groebner;
pub mod io;
pub mod monad;
pub mod polyring;
pub mod scalar;

pub use cohomology::{cohomology_table, h_p, instanton_check, serre_duality_check, stability_probe, CohomologyTable};
pub use error::{Error, Result};
pub use exactalg::Matrix;
pub use groebner::{GroebnerBasis, Ideal, MonomialOrder};
pub use monad::{floystad_exists, gallery, nullcorrelation, random_monad, LinearMonad, SheafClass, GALLERY};
pub use polyring::{LinearForm, LinearFormMatrix, Monomial, Polynomial};
pub use scalar::{FieldTag, Fp, Rational, Scalar, UnsupportedField, F101};

pub type QMonad = LinearMonad<Rational>;
pub type F101Monad = LinearMonad<F101>;
pub type QMatrix = Matrix<Rational>;

//! Holomorphic-involution pentagons in PU(2,1) and their disc-orbibundle invariants.
//!
//! The crate builds relations `R^{p5} R^{p4} R^{p3} R^{p2} R^{p1} = δ·Id` in SU(2,1)
//! with sign list (+,−,−,−,−), checks the tessellation conditions Q1–Q4 on the
//! associated quadrangle of bisectors, deforms relations by bendings, and computes
//! the Toledo invariant and the Euler number of the induced disc orbibundle over
//! the sphere with five cone points of angle π.
//!
//! Everything is plain `f64`/`Complex64` linear algebra on C³ against an explicit
//! signature-(−,+,+) Hermitian Gram matrix; invariants that are exact rationals
//! (τ, χ, e) are carried as `Rational64`.

pub mod bending;
pub mod hermitian;
pub mod invariants;
pub mod io;
pub mod isometry;
pub mod linalg;
pub mod pentagon;
pub mod quadrangle;
pub mod triple;

mod error;

#[doc(hidden)]
pub mod testutil;

pub use error::Error;
pub type Result<T> = std::result::Result<T, Error>;

pub use hermitian::{HermitianSpace, LineRelation, PointSign, ProjPoint};
pub use isometry::{Isometry, IsometryClass, IsometryTag};
pub use linalg::{Mat3, Vec3, C64};
pub use num_rational::Rational64;
pub use pentagon::{CubeRoot, Pentagon};
pub use quadrangle::{QuadrangleData, QuadrangleReport};
pub use triple::{RegularTriple, SignTriple, SurfaceCoords};

/// Numerical tolerances, threaded explicitly through every operation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance {
    /// Equality / zero tests on scalars and matrix entries.
    pub eq_tol: f64,
    /// Relation residuals (products of reflections against δ·Id).
    pub residual_tol: f64,
    /// Isotropy classification of points (after unit scaling).
    pub iso_tol: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            eq_tol: 1e-9,
            residual_tol: 1e-10,
            iso_tol: 1e-8,
        }
    }
}

impl Tolerance {
    pub fn new(eq_tol: f64, residual_tol: f64, iso_tol: f64) -> Result<Self> {
        if eq_tol <= 0.0 || residual_tol <= 0.0 || iso_tol <= 0.0 {
            return Err(Error::InvalidTolerance);
        }
        Ok(Tolerance {
            eq_tol,
            residual_tol,
            iso_tol,
        })
    }
}

//! Deterministic helpers shared by unit, integration and acceptance tests.
//! Not part of the public API.

use crate::hermitian::{HermitianSpace, PointSign, ProjPoint};
use crate::io::{pentagon_from_json, verification_from_json, VerificationData};
use crate::isometry::{reflection, su_normalize, Isometry};
use crate::linalg::{C64, Mat3, Vec3, ONE};
use crate::pentagon::Pentagon;
use crate::triple::{SignTriple, SurfaceCoords};
use crate::Tolerance;

/// The example pentagon shipped with the repository, verbatim.
pub const FIXTURE_JSON: &str = include_str!("../../../fixtures/paper_example.json");
/// Reference vectors for the example's verification pipeline.
pub const VERIFICATION_JSON: &str = include_str!("../../../fixtures/paper_verification.json");

/// Trace of the example's triple product as printed (rounded display).
pub const FIXTURE_TAU: C64 = C64::new(-2.22, -3.845152793);

/// The exact trace the example was built from: ω²·(4·1.36 − 1).
pub fn fixture_tau_exact() -> C64 {
    crate::pentagon::CubeRoot::Omega2.value() * C64::new(4.0 * 1.36 - 1.0, 0.0)
}

pub fn fixture_pentagon() -> Pentagon {
    pentagon_from_json(FIXTURE_JSON, &Tolerance::default()).expect("fixture pentagon")
}

pub fn fixture_verification() -> VerificationData {
    verification_from_json(VERIFICATION_JSON).expect("verification fixture")
}

/// The example's surface coordinates, with s taken as the exact upper root of
/// the surface quadratic (the printed value rounds it to nine decimals).
pub fn fixture_coords() -> SurfaceCoords {
    let tol = Tolerance::default();
    let sigma = SignTriple::new(1, -1, -1).unwrap();
    let tau = fixture_tau_exact();
    let roots = crate::triple::solve_s(-0.615, 1.36, crate::triple::kappa(tau), &tol);
    SurfaceCoords::new(-0.615, 1.36, roots[1], sigma, tau, &tol)
        .expect("fixture surface coordinates")
}

/// Small xorshift generator so test data does not depend on dev-dependencies.
pub struct Lcg(u64);

impl Lcg {
    pub fn new(seed: u64) -> Self {
        Lcg(seed.wrapping_mul(0x9E3779B97F4A7C15).wrapping_add(1))
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }

    /// Uniform in [-1, 1).
    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 12) as f64 / (1u64 << 52) as f64 * 2.0 - 1.0
    }

    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (self.unit() + 1.0) / 2.0 * (hi - lo)
    }

    pub fn c64(&mut self) -> C64 {
        C64::new(self.unit(), self.unit())
    }

    pub fn vec3(&mut self) -> Vec3 {
        Vec3([self.c64(), self.c64(), self.c64()])
    }
}

pub fn canonical_space(tol: &Tolerance) -> HermitianSpace {
    let mut g = Mat3::identity();
    g.0[0][0] = -ONE;
    HermitianSpace::new(g, tol).unwrap()
}

pub fn lcg_nonisotropic(rng: &mut Lcg, space: &HermitianSpace, tol: &Tolerance) -> ProjPoint {
    loop {
        let v = rng.vec3();
        if v.norm() < 1e-3 {
            continue;
        }
        let p = ProjPoint::new(v).unwrap();
        // stay well away from the null cone so reflections are well conditioned
        if space.sign(&p, tol) != PointSign::Isotropic
            && space.quad(&v).abs() > 0.3 * v.norm() * v.norm()
        {
            return p;
        }
    }
}

pub fn lcg_negative(rng: &mut Lcg, space: &HermitianSpace, tol: &Tolerance) -> ProjPoint {
    loop {
        let p = lcg_nonisotropic(rng, space, tol);
        if space.sign(&p, tol) == PointSign::Negative {
            return p;
        }
    }
}

/// A haphazard element of SU(2,1): product of three reflections, renormalized
/// and re-drawn until it passes validation at the working tolerance.
pub fn lcg_isometry(rng: &mut Lcg, space: &HermitianSpace, tol: &Tolerance) -> Isometry {
    loop {
        let a = lcg_nonisotropic(rng, space, tol);
        let b = lcg_nonisotropic(rng, space, tol);
        let c = lcg_nonisotropic(rng, space, tol);
        let m = *reflection(space, &a, tol).unwrap().mat()
            * *reflection(space, &b, tol).unwrap().mat()
            * *reflection(space, &c, tol).unwrap().mat();
        if m.norm_inf() > 15.0 {
            continue;
        }
        if let Ok(iso) = Isometry::new(su_normalize(m), space, tol) {
            return iso;
        }
    }
}

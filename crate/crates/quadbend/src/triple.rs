//! The relative character variety of strongly regular triples: the surface
//! equation in coordinates (s1, s2, s), its inequalities, and the Gram-matrix
//! realization of triples with prescribed signs and trace.

use crate::hermitian::{HermitianSpace, PointSign, ProjPoint};
use crate::isometry::{classify, reflection_unchecked, IsometryTag};
use crate::linalg::{C64, Mat3, Vec3};
use crate::{Error, Result, Tolerance};

/// Signs (σ1, σ2, σ3) with at most one +1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SignTriple {
    signs: [i8; 3],
}

impl SignTriple {
    pub fn new(s1: i8, s2: i8, s3: i8) -> Result<Self> {
        let signs = [s1, s2, s3];
        if signs.iter().any(|s| *s != 1 && *s != -1) {
            return Err(Error::BadSignTriple);
        }
        if signs.iter().filter(|s| **s == 1).count() > 1 {
            return Err(Error::BadSignTriple);
        }
        Ok(SignTriple { signs })
    }

    pub fn get(&self, i: usize) -> f64 {
        self.signs[i] as f64
    }

    pub fn as_array(&self) -> [i8; 3] {
        self.signs
    }

    pub fn product(&self) -> f64 {
        (self.signs[0] * self.signs[1] * self.signs[2]) as f64
    }
}

/// A point of the surface S_{σ,τ}.
#[derive(Clone, Copy, Debug)]
pub struct SurfaceCoords {
    pub s1: f64,
    pub s2: f64,
    pub s: f64,
    pub sigma: SignTriple,
    pub tau: C64,
}

/// Per-inequality slack report for the surface inequalities. Slacks are
/// left-hand sides oriented so that positive means satisfied (strictly).
#[derive(Clone, Copy, Debug)]
pub struct InequalityReport {
    /// σ1σ2 s1 > 0
    pub s1_positive: f64,
    /// σ1σ2 s1 > σ1σ2
    pub s1_above_sign: f64,
    /// σ2σ3 s2 > 0
    pub s2_positive: f64,
    /// σ2σ3 s2 > σ2σ3
    pub s2_above_sign: f64,
    /// σ1σ2σ3 (2 Re κ + 1) < 0 stored as the negated value
    pub det_negative: f64,
    pub all_strict: bool,
}

/// Three nonisotropic points with their shared Hermitian space; pairwise
/// nonorthogonal and not on a single complex line.
#[derive(Clone, Debug)]
pub struct RegularTriple {
    pub space: HermitianSpace,
    pub points: [ProjPoint; 3],
}

/// κ := (τ − 3)/8.
pub fn kappa(tau: C64) -> C64 {
    (tau - C64::new(3.0, 0.0)) / 8.0
}

/// Residual of the surface equation
/// s1²s2 + s1s2² − 2 s1 s2 s + s² + (2 Re κ) s1 s2 + (Im κ)².
pub fn surface_residual(s1: f64, s2: f64, s: f64, kap: C64) -> f64 {
    s1 * s1 * s2 + s1 * s2 * s2 - 2.0 * s1 * s2 * s + s * s + 2.0 * kap.re * s1 * s2
        + kap.im * kap.im
}

impl SurfaceCoords {
    /// Validates τ outside the deltoid, the surface equation at eq_tol, and
    /// the strict inequalities.
    pub fn new(s1: f64, s2: f64, s: f64, sigma: SignTriple, tau: C64, tol: &Tolerance) -> Result<Self> {
        if crate::isometry::deltoid_value(tau) <= 0.0 {
            return Err(Error::InvalidCoords("tau lies inside Goldman's deltoid"));
        }
        let coords = SurfaceCoords { s1, s2, s, sigma, tau };
        if surface_residual(s1, s2, s, kappa(tau)).abs() >= tol.eq_tol {
            return Err(Error::InvalidCoords("surface equation violated"));
        }
        if !coords.inequality_check().all_strict {
            return Err(Error::InvalidCoords("surface inequalities violated"));
        }
        Ok(coords)
    }

    pub fn residual(&self) -> f64 {
        surface_residual(self.s1, self.s2, self.s, kappa(self.tau))
    }

    pub fn inequality_check(&self) -> InequalityReport {
        let sg = &self.sigma;
        let kap = kappa(self.tau);
        let s1_positive = sg.get(0) * sg.get(1) * self.s1;
        let s1_above_sign = s1_positive - sg.get(0) * sg.get(1);
        let s2_positive = sg.get(1) * sg.get(2) * self.s2;
        let s2_above_sign = s2_positive - sg.get(1) * sg.get(2);
        let det_negative = -(sg.product() * (2.0 * kap.re + 1.0));
        let all_strict = s1_positive > 0.0
            && s1_above_sign > 0.0
            && s2_positive > 0.0
            && s2_above_sign > 0.0
            && det_negative > 0.0;
        InequalityReport {
            s1_positive,
            s1_above_sign,
            s2_positive,
            s2_above_sign,
            det_negative,
            all_strict,
        }
    }
}

/// Real roots (ascending) of the surface equation viewed as a quadratic in s.
/// Nearly equal roots collapse to one; complex pairs give an empty list.
pub fn solve_s(s1: f64, s2: f64, kap: C64, tol: &Tolerance) -> Vec<f64> {
    // s² − 2 s1 s2 s + (s1²s2 + s1s2² + 2Reκ s1 s2 + Imκ²) = 0
    let b = -2.0 * s1 * s2;
    let c = s1 * s1 * s2 + s1 * s2 * s2 + 2.0 * kap.re * s1 * s2 + kap.im * kap.im;
    let disc = b * b - 4.0 * c;
    if disc < 0.0 {
        return Vec::new();
    }
    let sq = disc.sqrt();
    // standard stable form: avoid cancellation in the smaller root
    let q = -0.5 * (b + b.signum() * sq);
    let (mut r0, mut r1) = if b == 0.0 {
        (-sq / 2.0, sq / 2.0)
    } else {
        (q, c / q)
    };
    if r0 > r1 {
        std::mem::swap(&mut r0, &mut r1);
    }
    if (r1 - r0).abs() < tol.eq_tol {
        vec![0.5 * (r0 + r1)]
    } else {
        vec![r0, r1]
    }
}

/// Gram matrix of the triple realized from surface coordinates:
/// diagonal σ, g12 = √(σ1σ2 s1), g23 = √(σ2σ3 s2),
/// g13 = σ1σ2σ3 (s − i Im κ)/(g12 g23).
pub fn gram_from_coords(coords: &SurfaceCoords, tol: &Tolerance) -> Result<Mat3> {
    let rep = coords.inequality_check();
    if !rep.all_strict || coords.residual().abs() >= tol.eq_tol {
        return Err(Error::InvalidCoords("coords violate surface invariants"));
    }
    let sg = &coords.sigma;
    let kap = kappa(coords.tau);
    let g12 = (sg.get(0) * sg.get(1) * coords.s1).sqrt();
    let g23 = (sg.get(1) * sg.get(2) * coords.s2).sqrt();
    let g13 = C64::new(coords.s, -kap.im).scale(sg.product() / (g12 * g23));
    let mut g = Mat3::zero();
    g.0[0][0] = C64::new(sg.get(0), 0.0);
    g.0[1][1] = C64::new(sg.get(1), 0.0);
    g.0[2][2] = C64::new(sg.get(2), 0.0);
    g.0[0][1] = C64::new(g12, 0.0);
    g.0[1][0] = C64::new(g12, 0.0);
    g.0[1][2] = C64::new(g23, 0.0);
    g.0[2][1] = C64::new(g23, 0.0);
    g.0[0][2] = g13;
    g.0[2][0] = g13.conj();
    Ok(g)
}

/// Realizes the triple as the standard basis vectors of the space with the
/// Gram matrix of `gram_from_coords`. tr R³R²R¹ = τ by construction.
pub fn realize_triple(coords: &SurfaceCoords, tol: &Tolerance) -> Result<RegularTriple> {
    let g = gram_from_coords(coords, tol)?;
    let space = HermitianSpace::new(g, tol)?;
    let points = [
        ProjPoint::new(Vec3::basis(0))?,
        ProjPoint::new(Vec3::basis(1))?,
        ProjPoint::new(Vec3::basis(2))?,
    ];
    Ok(RegularTriple { space, points })
}

impl RegularTriple {
    pub fn new(space: HermitianSpace, points: [ProjPoint; 3], tol: &Tolerance) -> Result<Self> {
        let t = RegularTriple { space, points };
        t.validate(tol)?;
        Ok(t)
    }

    pub fn validate(&self, tol: &Tolerance) -> Result<()> {
        for i in 0..3 {
            if self.space.sign(&self.points[i], tol) == PointSign::Isotropic {
                return Err(Error::IsotropicArgument);
            }
            for j in (i + 1)..3 {
                let ip = self
                    .space
                    .inner(&self.points[i].rep(), &self.points[j].rep());
                let scale = self.space.norm2(&self.points[i].rep()).sqrt()
                    * self.space.norm2(&self.points[j].rep()).sqrt();
                if ip.norm() <= tol.eq_tol * scale {
                    return Err(Error::DegenerateTriple);
                }
            }
        }
        Ok(())
    }

    /// Product R^{p3} R^{p2} R^{p1} of the three reflections.
    pub fn triple_product(&self) -> Mat3 {
        let r1 = reflection_unchecked(&self.space, &self.points[0].rep());
        let r2 = reflection_unchecked(&self.space, &self.points[1].rep());
        let r3 = reflection_unchecked(&self.space, &self.points[2].rep());
        *r3.mat() * *r2.mat() * *r1.mat()
    }
}

/// Surface coordinates of a regular triple: tances, the real part of the
/// normalized Gram triple product, and τ = tr R³R²R¹.
pub fn coords_from_triple(triple: &RegularTriple, tol: &Tolerance) -> Result<SurfaceCoords> {
    triple.validate(tol)?;
    let sp = &triple.space;
    let [p1, p2, p3] = &triple.points;
    let sign_of = |p: &ProjPoint| -> Result<i8> {
        match sp.sign(p, tol) {
            PointSign::Negative => Ok(-1),
            PointSign::Positive => Ok(1),
            PointSign::Isotropic => Err(Error::IsotropicArgument),
        }
    };
    let sigma = SignTriple::new(sign_of(p1)?, sign_of(p2)?, sign_of(p3)?)?;
    let s1 = sp.inner(&p1.rep(), &p2.rep()).norm_sqr() / (sp.quad(&p1.rep()) * sp.quad(&p2.rep()));
    let s2 = sp.inner(&p2.rep(), &p3.rep()).norm_sqr() / (sp.quad(&p2.rep()) * sp.quad(&p3.rep()));
    // s = Re(g12 g23 g31 / (g11 g22 g33)), invariant under rescaling
    let g12 = sp.inner(&p1.rep(), &p2.rep());
    let g23 = sp.inner(&p2.rep(), &p3.rep());
    let g31 = sp.inner(&p3.rep(), &p1.rep());
    let den = sp.quad(&p1.rep()) * sp.quad(&p2.rep()) * sp.quad(&p3.rep());
    let s = (g12 * g23 * g31 / den).re;
    let prod = triple.triple_product();
    let tau = prod.trace();
    if classify(&crate::isometry::Isometry::from_raw(prod), tol).tag != IsometryTag::Loxodromic {
        return Err(Error::DegenerateTriple);
    }
    SurfaceCoords::new(s1, s2, s, sigma, tau, &Tolerance {
        // the surface residual of a numerically-realized triple accumulates
        // rounding; accept it at a looser gate than pointwise equality
        eq_tol: (tol.eq_tol * 10.0).max(1e-7),
        ..*tol
    })
}

/// Signed tances of the triple only, without the full validation path.
/// Used by bending scans where τ may drift outside loxodromic range.
pub fn raw_coords(space: &HermitianSpace, points: &[ProjPoint; 3]) -> (f64, f64, f64) {
    let g12 = space.inner(&points[0].rep(), &points[1].rep());
    let g23 = space.inner(&points[1].rep(), &points[2].rep());
    let g31 = space.inner(&points[2].rep(), &points[0].rep());
    let q1 = space.quad(&points[0].rep());
    let q2 = space.quad(&points[1].rep());
    let q3 = space.quad(&points[2].rep());
    let s1 = g12.norm_sqr() / (q1 * q2);
    let s2 = g23.norm_sqr() / (q2 * q3);
    let s = (g12 * g23 * g31 / (q1 * q2 * q3)).re;
    (s1, s2, s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{fixture_coords, lcg_isometry, Lcg, FIXTURE_TAU};
    use approx::assert_abs_diff_eq;

    #[test]
    fn surface_residual_fixture_point() {
        let kap = kappa(FIXTURE_TAU);
        let r = surface_residual(-0.615, 1.36, -0.823663831, kap);
        assert!(r.abs() < 1e-6, "residual {r}");
    }

    #[test]
    fn surface_residual_trivial_points() {
        assert_eq!(surface_residual(0.0, 0.0, 0.0, C64::new(0.5, 0.0)), 0.0);
        assert_eq!(surface_residual(1.0, 1.0, 1.0, C64::new(0.0, 0.0)), 1.0);
    }

    #[test]
    fn inequalities_fixture_pass() {
        let coords = fixture_coords();
        assert!(coords.inequality_check().all_strict);
    }

    #[test]
    fn inequalities_fail_on_wrong_halfplane() {
        // σ = (−,−,−) requires τ to the right of Re τ = −1
        let sigma = SignTriple::new(-1, -1, -1).unwrap();
        let tau = C64::new(-2.22, -3.845152793); // Re τ < −1
        let kap = kappa(tau);
        // pick any s-root so only the sign inequality is at stake
        let coords = SurfaceCoords {
            s1: 0.5,
            s2: 0.5,
            s: 0.0,
            sigma,
            tau,
        };
        let rep = coords.inequality_check();
        let _ = kap;
        assert!(rep.det_negative < 0.0);
        assert!(!rep.all_strict);
    }

    #[test]
    fn inequalities_strict_at_zero() {
        let coords = SurfaceCoords {
            s1: 0.0,
            s2: 1.36,
            s: 0.0,
            sigma: SignTriple::new(1, -1, -1).unwrap(),
            tau: FIXTURE_TAU,
        };
        let rep = coords.inequality_check();
        assert!(rep.s1_positive <= 0.0);
        assert!(!rep.all_strict);
    }

    #[test]
    fn sign_triple_rejects_two_plus() {
        assert_eq!(SignTriple::new(1, 1, -1).unwrap_err(), Error::BadSignTriple);
        assert_eq!(SignTriple::new(0, 1, -1).unwrap_err(), Error::BadSignTriple);
    }

    #[test]
    fn solve_s_recovers_fixture_root() {
        let tol = Tolerance::default();
        let roots = solve_s(-0.615, 1.36, kappa(FIXTURE_TAU), &tol);
        assert_eq!(roots.len(), 2);
        assert!(roots[0] < roots[1]);
        assert!((roots[1] - (-0.823663831)).abs() < 1e-6, "{roots:?}");
        for r in &roots {
            assert!(surface_residual(-0.615, 1.36, *r, kappa(FIXTURE_TAU)).abs() < 1e-9);
        }
    }

    #[test]
    fn solve_s_empty_and_double() {
        let tol = Tolerance::default();
        // large Imκ forces a negative discriminant
        assert!(solve_s(0.1, 0.1, C64::new(0.0, 100.0), &tol).is_empty());
        let roots = solve_s(0.0, 1.0, C64::new(0.0, 0.0), &tol);
        assert_eq!(roots, vec![0.0]);
    }

    #[test]
    fn gram_from_coords_matches_fixture_matrix() {
        let tol = Tolerance::default();
        let g = gram_from_coords(&fixture_coords(), &tol).unwrap();
        assert_abs_diff_eq!(g.0[0][1].re, 0.7842193570679061, epsilon = 1e-12);
        assert_abs_diff_eq!(g.0[1][2].re, 1.1661903789690602, epsilon = 1e-12);
        assert_abs_diff_eq!(g.0[0][2].re, -0.9006228957613458, epsilon = 1e-12);
        assert_abs_diff_eq!(g.0[0][2].im, 0.5255531007357581, epsilon = 1e-12);
        // g12² = σ1σ2 s1 by construction
        assert_abs_diff_eq!(g.0[0][1].re * g.0[0][1].re, 0.615, epsilon = 1e-14);
    }

    #[test]
    fn realized_triple_trace_is_tau() {
        let tol = Tolerance::default();
        let triple = realize_triple(&fixture_coords(), &tol).unwrap();
        let tr = triple.triple_product().trace();
        assert!((tr - FIXTURE_TAU).norm() < 1e-9, "trace {tr}");
        // signs on the diagonal
        assert_eq!(triple.space.sign(&triple.points[0], &tol), PointSign::Positive);
        assert_eq!(triple.space.sign(&triple.points[1], &tol), PointSign::Negative);
        assert_eq!(triple.space.sign(&triple.points[2], &tol), PointSign::Negative);
        // ta(p1,p2) = s1 on the Gram basis
        let ta12 = triple
            .space
            .tance(&triple.points[0], &triple.points[1], &tol)
            .unwrap();
        assert_abs_diff_eq!(ta12, -0.615, epsilon = 1e-12);
    }

    #[test]
    fn det_identity_on_surface() {
        // det(gram) = σ1σ2σ3 (2 Re κ + 1)
        let tol = Tolerance::default();
        let coords = fixture_coords();
        let g = gram_from_coords(&coords, &tol).unwrap();
        let expect = coords.sigma.product() * (2.0 * kappa(coords.tau).re + 1.0);
        assert_abs_diff_eq!(g.det().re, expect, epsilon = 1e-9);
        assert!(g.det().im.abs() < 1e-12);
    }

    #[test]
    fn coords_round_trip_and_conjugation_invariance() {
        let tol = Tolerance::default();
        let coords = fixture_coords();
        let triple = realize_triple(&coords, &tol).unwrap();
        let back = coords_from_triple(&triple, &tol).unwrap();
        assert_abs_diff_eq!(back.s1, coords.s1, epsilon = 1e-9);
        assert_abs_diff_eq!(back.s2, coords.s2, epsilon = 1e-9);
        assert_abs_diff_eq!(back.s, coords.s, epsilon = 1e-9);
        assert!((back.tau - coords.tau).norm() < 1e-9);

        let mut rng = Lcg::new(31);
        for _ in 0..20 {
            let iso = lcg_isometry(&mut rng, &triple.space, &tol);
            let moved = RegularTriple {
                space: triple.space.clone(),
                points: [
                    iso.apply(&triple.points[0]),
                    iso.apply(&triple.points[1]),
                    iso.apply(&triple.points[2]),
                ],
            };
            let c2 = coords_from_triple(&moved, &tol).unwrap();
            assert_abs_diff_eq!(c2.s1, coords.s1, epsilon = 1e-9);
            assert_abs_diff_eq!(c2.s2, coords.s2, epsilon = 1e-9);
            assert_abs_diff_eq!(c2.s, coords.s, epsilon = 1e-9);
        }
    }
}

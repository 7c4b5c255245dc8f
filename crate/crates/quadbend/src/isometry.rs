//! SU(2,1) elements: reflections R^p, Goldman-deltoid conjugacy classification,
//! eigen-structure of loxodromics, and the derivative check for reflections.

use crate::hermitian::{HermitianSpace, PointSign, ProjPoint};
use crate::linalg::{eigen3, C64, Mat3, Vec3, ONE};
use crate::{Error, Result, Tolerance};

/// A holomorphic isometry as a matrix in SU(2,1) for the ambient form.
#[derive(Clone, Copy, Debug)]
pub struct Isometry {
    mat: Mat3,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IsometryTag {
    RegularElliptic,
    Loxodromic,
    /// Identity, special elliptic and parabolic traces on the deltoid.
    Boundary,
}

#[derive(Clone, Copy, Debug)]
pub struct IsometryClass {
    pub tag: IsometryTag,
    pub trace: C64,
    pub deltoid_value: f64,
}

/// Eigen-frame of a loxodromic isometry. `v1` carries the eigenvalue of
/// largest modulus, `v2` the smallest; both are isotropic and the fixed
/// positive point `c` completes the frame. Normalized so that ⟨c,c⟩ = 1 and
/// ⟨v1,v2⟩ = 1, with v1 at unit Euclidean norm.
#[derive(Clone, Copy, Debug)]
pub struct LoxodromicFrame {
    pub v1: ProjPoint,
    pub v2: ProjPoint,
    pub c: ProjPoint,
    pub eigenvalues: [C64; 3],
}

impl LoxodromicFrame {
    /// The map acting as μ_c on c, μ1 on v1 and μ2 on v2, assembled from the
    /// spectral projections P_c = c⟨·,c⟩, P_1 = v1⟨·,v2⟩, P_2 = v2⟨·,v1⟩
    /// (valid for the frame normalization ⟨c,c⟩ = ⟨v1,v2⟩ = 1).
    pub fn functional_calculus(
        &self,
        space: &HermitianSpace,
        mu_c: C64,
        mu1: C64,
        mu2: C64,
    ) -> Mat3 {
        let g = space.gram();
        let pc = Mat3::outer(&self.c.rep(), &(*g * self.c.rep().conj()));
        let p1 = Mat3::outer(&self.v1.rep(), &(*g * self.v2.rep().conj()));
        let p2 = Mat3::outer(&self.v2.rep(), &(*g * self.v1.rep().conj()));
        pc.scale(mu_c) + p1.scale(mu1) + p2.scale(mu2)
    }

    /// Max-norm defect of the resolution of identity P_c + P_1 + P_2 = Id.
    pub fn resolution_defect(&self, space: &HermitianSpace) -> f64 {
        (self.functional_calculus(space, ONE, ONE, ONE) - Mat3::identity()).norm_inf()
    }
}

impl Isometry {
    /// Validates `|det - 1| < eq_tol` and form preservation in the max norm.
    pub fn new(mat: Mat3, space: &HermitianSpace, tol: &Tolerance) -> Result<Self> {
        if (mat.det() - ONE).norm() >= tol.eq_tol {
            return Err(Error::NotIsometry("determinant is not 1"));
        }
        // for the pairing ⟨x,y⟩ = xᵀ G ȳ, preservation reads Aᵀ G conj(A) = G
        let g = *space.gram();
        if (mat.transpose() * g * mat.conj() - g).norm_inf() >= tol.eq_tol {
            return Err(Error::NotIsometry("form not preserved"));
        }
        Ok(Isometry { mat })
    }

    pub(crate) fn from_raw(mat: Mat3) -> Self {
        Isometry { mat }
    }

    pub fn mat(&self) -> &Mat3 {
        &self.mat
    }

    pub fn trace(&self) -> C64 {
        self.mat.trace()
    }

    pub fn apply(&self, p: &ProjPoint) -> ProjPoint {
        ProjPoint::from_raw(self.mat * p.rep())
    }

    pub fn apply_vec(&self, v: &Vec3) -> Vec3 {
        self.mat * *v
    }

    /// self ∘ other.
    pub fn compose(&self, other: &Isometry) -> Isometry {
        Isometry {
            mat: self.mat * other.mat,
        }
    }

    /// Inverse via the adjugate; exact up to rounding since det = 1.
    pub fn inverse(&self) -> Isometry {
        let adj = self.mat.adjugate();
        Isometry {
            mat: adj.scale(ONE / self.mat.det()),
        }
    }
}

/// Rescale into SU(2,1) by the cube root of the determinant nearest to 1.
pub fn su_normalize(mat: Mat3) -> Mat3 {
    let d = mat.det();
    let r = d.norm().powf(1.0 / 3.0);
    let th = d.arg() / 3.0;
    let candidates = [
        th,
        th + 2.0 * std::f64::consts::PI / 3.0,
        th - 2.0 * std::f64::consts::PI / 3.0,
    ];
    let best = candidates
        .iter()
        .copied()
        .min_by(|a, b| a.abs().partial_cmp(&b.abs()).unwrap())
        .unwrap();
    mat.scale(ONE / C64::from_polar(r, best))
}

/// The reflection R^p: x ↦ 2 ⟨x,p⟩/⟨p,p⟩ p − x. An involution fixing p,
/// in SU(2,1) with trace −1.
pub fn reflection(space: &HermitianSpace, p: &ProjPoint, tol: &Tolerance) -> Result<Isometry> {
    if space.sign(p, tol) == PointSign::Isotropic {
        return Err(Error::IsotropicArgument);
    }
    Ok(reflection_unchecked(space, &p.rep()))
}

pub(crate) fn reflection_unchecked(space: &HermitianSpace, p: &Vec3) -> Isometry {
    let gp = *space.gram() * p.conj();
    let quad = space.inner(p, p);
    let m = Mat3::outer(p, &gp).scale(C64::new(2.0, 0.0) / quad) - Mat3::identity();
    Isometry { mat: m }
}

/// Goldman's deltoid function f(z) = |z|⁴ − 8 Re(z³) + 18 |z|² − 27.
/// Negative inside (regular elliptic), positive outside (loxodromic).
pub fn deltoid_value(z: C64) -> f64 {
    let n2 = z.norm_sqr();
    n2 * n2 - 8.0 * (z * z * z).re + 18.0 * n2 - 27.0
}

pub fn classify(iso: &Isometry, tol: &Tolerance) -> IsometryClass {
    let trace = iso.trace();
    let f = deltoid_value(trace);
    let tag = if f < -tol.eq_tol {
        IsometryTag::RegularElliptic
    } else if f > tol.eq_tol {
        IsometryTag::Loxodromic
    } else {
        IsometryTag::Boundary
    };
    IsometryClass {
        tag,
        trace,
        deltoid_value: f,
    }
}

/// Fixed points of a loxodromic: two isotropic eigenvectors spanning the axis
/// and the positive eigenvector polar to its complex line.
pub fn loxodromic_frame(
    space: &HermitianSpace,
    iso: &Isometry,
    tol: &Tolerance,
) -> Result<LoxodromicFrame> {
    if classify(iso, tol).tag != IsometryTag::Loxodromic {
        return Err(Error::NotLoxodromic);
    }
    let mut pairs = eigen3(iso.mat());
    // sort by modulus descending: v1, c, v2
    pairs.sort_by(|a, b| b.0.norm().partial_cmp(&a.0.norm()).unwrap());
    for i in 0..3 {
        for j in (i + 1)..3 {
            if (pairs[i].0 - pairs[j].0).norm() < tol.eq_tol {
                return Err(Error::EigenFailure);
            }
        }
    }
    let (l1, w1) = pairs[0];
    let (lc, wc) = pairs[1];
    let (l2, w2) = pairs[2];
    // residual and structural checks
    for (lam, w) in [(l1, w1), (lc, wc), (l2, w2)] {
        if (iso.apply_vec(&w) - w.scale(lam)).norm_inf() > 1e-8 * w.norm() {
            return Err(Error::EigenFailure);
        }
    }
    if space.quad(&wc) <= 0.0 {
        return Err(Error::EigenFailure);
    }
    let v1 = w1.scale(C64::new(1.0 / w1.norm(), 0.0));
    let c = wc.scale(C64::new(1.0 / space.quad(&wc).sqrt(), 0.0));
    let pairing = space.inner(&v1, &w2);
    if pairing.norm() < tol.eq_tol {
        return Err(Error::EigenFailure);
    }
    // ⟨v1, v2⟩ = 1: v2 = w2 / conj(⟨v1,w2⟩) would change ⟨v1,·⟩ by 1/⟨v1,w2⟩
    let v2 = w2.scale(ONE / pairing.conj());
    let v1p = ProjPoint::from_raw(v1);
    let v2p = ProjPoint::from_raw(v2);
    if space.sign(&v1p, tol) != PointSign::Isotropic || space.sign(&v2p, tol) != PointSign::Isotropic
    {
        return Err(Error::EigenFailure);
    }
    Ok(LoxodromicFrame {
        v1: v1p,
        v2: v2p,
        c: ProjPoint::from_raw(c),
        eigenvalues: [l1, lc, l2],
    })
}

/// Central finite difference of ε ↦ R^{p+ε t(p)} at 0 against the closed form
/// 2(t + t*), in the max norm. O(h²) for tangent directions t(p) ⊥ p.
pub fn reflection_derivative_residual(
    space: &HermitianSpace,
    p: &ProjPoint,
    t_dir: &Vec3,
    h: f64,
    tol: &Tolerance,
) -> Result<f64> {
    if space.sign(p, tol) == PointSign::Isotropic {
        return Err(Error::IsotropicArgument);
    }
    let pv = p.rep();
    let quad = space.inner(&pv, &pv);
    // project the direction into p-perp
    let coef = space.inner(t_dir, &pv) / quad;
    let tp = *t_dir - pv.scale(coef);
    let rp = |v: Vec3| reflection_unchecked(space, &v).mat().to_owned();
    let plus = rp(pv + tp.scale(C64::new(h, 0.0)));
    let minus = rp(pv - tp.scale(C64::new(h, 0.0)));
    let fd = (plus - minus).scale(C64::new(1.0 / (2.0 * h), 0.0));
    let t_map = Mat3::outer(&tp, &(*space.gram() * pv.conj())).scale(ONE / quad);
    let t_adj = Mat3::outer(&pv, &(*space.gram() * tp.conj())).scale(ONE / quad);
    let closed = (t_map + t_adj).scale(C64::new(2.0, 0.0));
    Ok((fd - closed).norm_inf())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{canonical_space, lcg_isometry, lcg_nonisotropic, Lcg};
    use approx::assert_abs_diff_eq;

    #[test]
    fn reflection_fixes_center_and_squares_to_identity() {
        let tol = Tolerance::default();
        let space = canonical_space(&tol);
        let mut rng = Lcg::new(21);
        for _ in 0..1000 {
            let p = lcg_nonisotropic(&mut rng, &space, &tol);
            let r = reflection(&space, &p, &tol).unwrap();
            let fixed = r.apply(&p);
            assert!(space.proj_eq(&fixed, &p, &tol));
            let sq = r.compose(&r);
            assert!((*sq.mat() - Mat3::identity()).norm_inf() < 1e-11);
            assert!((r.trace() - C64::new(-1.0, 0.0)).norm() < 1e-12);
            // a valid element of SU(2,1)
            Isometry::new(*r.mat(), &space, &tol).unwrap();
        }
    }

    #[test]
    fn reflection_rejects_isotropic_center() {
        let tol = Tolerance::default();
        let space = canonical_space(&tol);
        let p = ProjPoint::new(Vec3::from_reals([1.0, 1.0, 0.0])).unwrap();
        assert_eq!(
            reflection(&space, &p, &tol).unwrap_err(),
            Error::IsotropicArgument
        );
    }

    #[test]
    fn deltoid_identity_trace_is_zero() {
        assert_abs_diff_eq!(deltoid_value(C64::new(3.0, 0.0)), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn deltoid_positive_for_hyperbolic_traces() {
        assert!(deltoid_value(C64::new(4.44, 0.0)) > 0.0);
        assert!(deltoid_value(C64::new(-2.22, -3.845152793)) > 0.0);
    }

    #[test]
    fn classify_identity_is_boundary() {
        let tol = Tolerance::default();
        let id = Isometry::from_raw(Mat3::identity());
        assert_eq!(classify(&id, &tol).tag, IsometryTag::Boundary);
    }

    #[test]
    fn classify_conjugation_invariant() {
        let tol = Tolerance::default();
        let space = canonical_space(&tol);
        let mut rng = Lcg::new(22);
        for _ in 0..50 {
            let j = lcg_isometry(&mut rng, &space, &tol);
            let i = lcg_isometry(&mut rng, &space, &tol);
            let conj = i.compose(&j).compose(&i.inverse());
            assert_eq!(classify(&conj, &tol).tag, classify(&j, &tol).tag);
        }
    }

    #[test]
    fn conjugation_covariance_of_reflections() {
        let tol = Tolerance::default();
        let space = canonical_space(&tol);
        let mut rng = Lcg::new(23);
        for _ in 0..100 {
            let p = lcg_nonisotropic(&mut rng, &space, &tol);
            let i = lcg_isometry(&mut rng, &space, &tol);
            let lhs = reflection(&space, &i.apply(&p), &tol).unwrap();
            let rhs = i
                .compose(&reflection(&space, &p, &tol).unwrap())
                .compose(&i.inverse());
            assert!((*lhs.mat() - *rhs.mat()).norm_inf() < 1e-9);
        }
    }

    #[test]
    fn anticommutation_of_tangent_difference() {
        // (t - t*) R^p + R^p (t - t*) = 0
        let tol = Tolerance::default();
        let space = canonical_space(&tol);
        let mut rng = Lcg::new(24);
        for _ in 0..100 {
            let p = lcg_nonisotropic(&mut rng, &space, &tol);
            let dir = lcg_nonisotropic(&mut rng, &space, &tol).rep();
            let pv = p.rep();
            let quad = space.inner(&pv, &pv);
            let coef = space.inner(&dir, &pv) / quad;
            let tp = dir - pv.scale(coef);
            let t_map = Mat3::outer(&tp, &(*space.gram() * pv.conj())).scale(ONE / quad);
            let t_adj = Mat3::outer(&pv, &(*space.gram() * tp.conj())).scale(ONE / quad);
            let diff = t_map - t_adj;
            let r = reflection(&space, &p, &tol).unwrap();
            let anti = diff * *r.mat() + *r.mat() * diff;
            assert!(anti.norm_inf() < 1e-10, "{}", anti.norm_inf());
        }
    }

    #[test]
    fn derivative_residual_small_and_second_order() {
        let tol = Tolerance::default();
        let space = canonical_space(&tol);
        let mut rng = Lcg::new(25);
        for _ in 0..100 {
            let p0 = lcg_nonisotropic(&mut rng, &space, &tol);
            let p = p0.scale(C64::new(1.0 / p0.rep().norm(), 0.0));
            let d0 = lcg_nonisotropic(&mut rng, &space, &tol).rep();
            let dir = d0.scale(C64::new(1.0 / d0.norm(), 0.0));
            let r4 = reflection_derivative_residual(&space, &p, &dir, 1e-4, &tol).unwrap();
            assert!(r4 < 1e-6, "residual {r4}");
            let r3 = reflection_derivative_residual(&space, &p, &dir, 1e-3, &tol).unwrap();
            let r35 = reflection_derivative_residual(&space, &p, &dir, 5e-4, &tol).unwrap();
            let ratio = r3 / r35;
            assert!((3.0..5.0).contains(&ratio), "order-2 ratio {ratio}");
        }
    }

    #[test]
    fn derivative_residual_zero_direction() {
        let tol = Tolerance::default();
        let space = canonical_space(&tol);
        let p = ProjPoint::new(Vec3::basis(0)).unwrap();
        let r = reflection_derivative_residual(&space, &p, &Vec3::zero(), 1e-4, &tol).unwrap();
        assert_abs_diff_eq!(r, 0.0, epsilon = 1e-14);
    }

    #[test]
    fn su_normalize_pins_determinant() {
        let mut rng = Lcg::new(26);
        let tol = Tolerance::default();
        let space = canonical_space(&tol);
        let i = lcg_isometry(&mut rng, &space, &tol);
        let scaled = i.mat().scale(C64::new(1.0 + 3e-13, -2e-13));
        let fixed = su_normalize(scaled);
        assert!((fixed.det() - ONE).norm() < 1e-12);
    }
}

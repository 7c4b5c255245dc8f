//! Length-5 relations R^{p5} R^{p4} R^{p3} R^{p2} R^{p1} = δ·Id with sign list
//! (+,−,−,−,−): decomposition of hyperbolic isometries into two point
//! reflections, relation construction from surface coordinates, and the
//! (P1–P3) report.

use crate::hermitian::{HermitianSpace, ProjPoint};
use crate::isometry::{
    classify, loxodromic_frame, reflection_unchecked, Isometry, IsometryTag,
};
use crate::linalg::{C64, Mat3, Vec3};
use crate::triple::{realize_triple, SurfaceCoords};
use crate::{Error, Result, Tolerance};

/// Cube roots of unity, kept symbolic so δ·Id comparisons carry no
/// trigonometric drift. ω = e^{2πi/3} materializes as (−1/2, √3/2).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CubeRoot {
    One,
    Omega,
    Omega2,
}

impl CubeRoot {
    pub fn value(self) -> C64 {
        let h = 0.75f64.sqrt();
        match self {
            CubeRoot::One => C64::new(1.0, 0.0),
            CubeRoot::Omega => C64::new(-0.5, h),
            CubeRoot::Omega2 => C64::new(-0.5, -h),
        }
    }

    pub fn conj(self) -> CubeRoot {
        match self {
            CubeRoot::One => CubeRoot::One,
            CubeRoot::Omega => CubeRoot::Omega2,
            CubeRoot::Omega2 => CubeRoot::Omega,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            CubeRoot::One => "1",
            CubeRoot::Omega => "omega",
            CubeRoot::Omega2 => "omega2",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "1" | "one" => Ok(CubeRoot::One),
            "omega" | "w" => Ok(CubeRoot::Omega),
            "omega2" | "w2" => Ok(CubeRoot::Omega2),
            other => Err(Error::Input(format!("unknown cube root '{other}'"))),
        }
    }
}

/// A pentagon of involutions: five centers with signs (+,−,−,−,−) whose
/// reflections satisfy R5 R4 R3 R2 R1 = δ·Id.
#[derive(Clone, Debug)]
pub struct Pentagon {
    space: HermitianSpace,
    points: [ProjPoint; 5],
    delta: CubeRoot,
}

/// (P1–P3) report: every pairwise tance with its nondegeneracy verdict, the
/// sign list, and the relation residual.
#[derive(Clone, Debug)]
pub struct PConditions {
    /// Tances ta(p_i, p_j) for 0 <= i < j < 5, keyed by (i, j).
    pub pair_tances: Vec<((usize, usize), f64)>,
    /// (P1) per pair: tance not within eq_tol of 0 or 1.
    pub p1_pairs_ok: Vec<((usize, usize), bool)>,
    pub p1_ok: bool,
    /// (P2): the sign list, expected (+1, -1, -1, -1, -1).
    pub signs: [i8; 5],
    pub p2_ok: bool,
    /// (P3): max-norm residual of R5 R4 R3 R2 R1 - δ·Id.
    pub relation_residual: f64,
    pub p3_ok: bool,
}

impl Pentagon {
    pub fn new(
        space: HermitianSpace,
        points: [ProjPoint; 5],
        delta: CubeRoot,
        tol: &Tolerance,
    ) -> Result<Self> {
        let pent = Pentagon {
            space,
            points,
            delta,
        };
        let signs = pent.signs(tol);
        if signs != [1, -1, -1, -1, -1] {
            return Err(Error::PentagonInvariant("sign list is not (+,-,-,-,-)"));
        }
        if pent.relation_residual() >= tol.residual_tol {
            return Err(Error::PentagonInvariant("relation residual too large"));
        }
        for i in 0..5 {
            for j in (i + 1)..5 {
                let ta = pent
                    .space
                    .tance_unchecked(&pent.points[i].rep(), &pent.points[j].rep());
                if ta.abs() < tol.eq_tol || (ta - 1.0).abs() < tol.eq_tol {
                    return Err(Error::PentagonInvariant("(P1) violated"));
                }
            }
        }
        Ok(pent)
    }

    pub fn space(&self) -> &HermitianSpace {
        &self.space
    }

    pub fn points(&self) -> &[ProjPoint; 5] {
        &self.points
    }

    pub fn delta(&self) -> CubeRoot {
        self.delta
    }

    /// Reflection in the k-th center (0-based).
    pub fn reflection(&self, k: usize) -> Isometry {
        reflection_unchecked(&self.space, &self.points[k].rep())
    }

    pub fn signs(&self, tol: &Tolerance) -> [i8; 5] {
        let mut out = [0i8; 5];
        for (k, p) in self.points.iter().enumerate() {
            out[k] = self.space.sign(p, tol).as_i8();
        }
        out
    }

    /// Max-norm residual of R5 R4 R3 R2 R1 − δ·Id, every reflection rebuilt
    /// from its point.
    pub fn relation_residual(&self) -> f64 {
        let mut m = Mat3::identity();
        for p in &self.points {
            m = *reflection_unchecked(&self.space, &p.rep()).mat() * m;
        }
        (m - Mat3::identity().scale(self.delta.value())).norm_inf()
    }

    /// Replace points (used by bendings); re-validates everything.
    pub(crate) fn with_points(&self, points: [ProjPoint; 5], tol: &Tolerance) -> Result<Pentagon> {
        Pentagon::new(self.space.clone(), points, self.delta, tol)
    }

    /// The PU(2,1)-conjugated pentagon: every center moved by the isometry.
    /// Conjugation preserves the defining invariants, so no re-validation.
    pub fn conjugated(&self, iso: &Isometry) -> Pentagon {
        Pentagon {
            space: self.space.clone(),
            points: self.points.map(|p| iso.apply(&p)),
            delta: self.delta,
        }
    }
}

/// (P1–P3) evaluation; failures are report data.
pub fn p_conditions(pent: &Pentagon, tol: &Tolerance) -> PConditions {
    let mut pair_tances = Vec::new();
    let mut p1_pairs_ok = Vec::new();
    let mut p1_ok = true;
    for i in 0..5 {
        for j in (i + 1)..5 {
            let ta = pent
                .space
                .tance_unchecked(&pent.points[i].rep(), &pent.points[j].rep());
            let ok = ta.abs() >= tol.eq_tol && (ta - 1.0).abs() >= tol.eq_tol;
            p1_ok &= ok;
            pair_tances.push(((i, j), ta));
            p1_pairs_ok.push(((i, j), ok));
        }
    }
    let signs = pent.signs(tol);
    let p2_ok = signs == [1, -1, -1, -1, -1];
    let relation_residual = pent.relation_residual();
    let p3_ok = relation_residual < tol.residual_tol;
    PConditions {
        pair_tances,
        p1_pairs_ok,
        p1_ok,
        signs,
        p2_ok,
        relation_residual,
        p3_ok,
    }
}

/// Decomposition frame of a hyperbolic isometry: the normalized eigenbasis
/// with its spectral projections.
struct AxisFrame<'a> {
    space: &'a HermitianSpace,
    frame: crate::isometry::LoxodromicFrame,
}

fn axis_frame<'a>(
    space: &'a HermitianSpace,
    f: &Isometry,
    tol: &Tolerance,
) -> Result<AxisFrame<'a>> {
    let tr = f.trace();
    if tr.im.abs() >= tol.eq_tol || tr.re <= 3.0 + tol.eq_tol {
        return Err(Error::NotHyperbolic);
    }
    if classify(f, tol).tag != IsometryTag::Loxodromic {
        return Err(Error::NotHyperbolic);
    }
    let frame = loxodromic_frame(space, f, tol).map_err(|_| Error::AxisFailure)?;
    // hyperbolic elements have spectrum (e^l, 1, e^-l) up to rounding
    for lam in frame.eigenvalues {
        if lam.im.abs() > 1e-6 * lam.norm() || lam.re <= 0.0 {
            return Err(Error::NotHyperbolic);
        }
    }
    if frame.resolution_defect(space) > 1e-8 {
        return Err(Error::AxisFailure);
    }
    Ok(AxisFrame { space, frame })
}

impl AxisFrame<'_> {
    /// Negative point of the real axis at parameter θ.
    fn axis_point(&self, theta: f64) -> Vec3 {
        self.frame.v1.rep().scale(C64::new(theta.exp(), 0.0))
            - self.frame.v2.rep().scale(C64::new((-theta).exp(), 0.0))
    }

    /// Axis translation by length t: diag(1, e^t, e^{-t}) in the frame basis.
    fn translation(&self, t: f64) -> Mat3 {
        self.frame.functional_calculus(
            self.space,
            C64::new(1.0, 0.0),
            C64::new(t.exp(), 0.0),
            C64::new((-t).exp(), 0.0),
        )
    }
}

/// Splits a hyperbolic isometry F (real trace > 3) into two point reflections,
/// R^{p4} R^{p5} = F, with the pair on the real axis at tance t45 and at axis
/// offset θ0 from the canonical base point.
pub fn decompose_loxodromic_at(
    space: &HermitianSpace,
    f: &Isometry,
    t45: f64,
    theta0: f64,
    tol: &Tolerance,
) -> Result<(ProjPoint, ProjPoint)> {
    if t45 <= 1.0 {
        return Err(Error::NotHyperbolic);
    }
    let frame = axis_frame(space, f, tol)?;
    if (f.trace().re - (4.0 * t45 - 1.0)).abs() >= tol.eq_tol {
        return Err(Error::Input(format!(
            "t45 = {t45} is inconsistent with tr F = {}",
            f.trace().re
        )));
    }
    let d = t45.sqrt().acosh();
    let p5 = frame.axis_point(theta0);
    // the half-translation square root of F, in either direction
    for sign in [1.0, -1.0] {
        let p4 = frame.translation(sign * d) * p5;
        let prod = *reflection_unchecked(space, &p4).mat()
            * *reflection_unchecked(space, &p5).mat();
        if (prod - *f.mat()).norm_inf() < 1e-8 {
            return Ok((ProjPoint::new(p4)?, ProjPoint::new(p5)?));
        }
    }
    Err(Error::AxisFailure)
}

/// As `decompose_loxodromic_at` with the midpoint-canonical offset θ0 = 0.
pub fn decompose_loxodromic(
    space: &HermitianSpace,
    f: &Isometry,
    t45: f64,
    tol: &Tolerance,
) -> Result<(ProjPoint, ProjPoint)> {
    decompose_loxodromic_at(space, f, t45, 0.0, tol)
}

/// Builds a pentagon from surface coordinates with σ = (+,−,−) and δ ∈ {ω, ω²}.
///
/// The triple realizes (p1,p2,p3) on the standard basis; F := conj(δ)·R³R²R¹
/// is hyperbolic with tr F = conj(δ)·τ real > 3 and splits as R^{p4} R^{p5}.
/// The pair's position on the axis is a free parameter of the family:
/// `axis_offset` pins it explicitly, otherwise the builder picks the offset
/// minimizing ta(q4, q1) (the tightest closing vertex), which lands inside the
/// Q1–Q4 region for the reference example.
pub fn build_pentagon(
    coords: &SurfaceCoords,
    delta: CubeRoot,
    axis_offset: Option<f64>,
    tol: &Tolerance,
) -> Result<Pentagon> {
    if delta == CubeRoot::One {
        return Err(Error::DeltaOne);
    }
    if coords.sigma.as_array() != [1, -1, -1] {
        return Err(Error::InvalidCoords("builder requires sigma = (+,-,-)"));
    }
    let dtau = delta.conj().value() * coords.tau;
    if dtau.im.abs() >= tol.eq_tol || dtau.re <= 3.0 + tol.eq_tol {
        return Err(Error::TraceMismatch);
    }
    let t45 = (dtau.re + 1.0) / 4.0;
    let triple = realize_triple(coords, tol)?;
    let space = triple.space.clone();
    let w = triple.triple_product();
    let f = Isometry::from_raw(w.scale(delta.conj().value()));
    let frame = axis_frame(&space, &f, tol)?;
    let d = t45.sqrt().acosh();

    // which square-root direction matches F is fixed across offsets
    let mut dir = None;
    let p5_probe = frame.axis_point(0.0);
    for sign in [1.0, -1.0] {
        let p4 = frame.translation(sign * d) * p5_probe;
        let prod =
            *reflection_unchecked(&space, &p4).mat() * *reflection_unchecked(&space, &p5_probe).mat();
        if (prod - *f.mat()).norm_inf() < 1e-8 {
            dir = Some(sign);
            break;
        }
    }
    let dir = dir.ok_or(Error::AxisFailure)?;

    let q3 = {
        let r2 = reflection_unchecked(&space, &triple.points[1].rep());
        let r3 = reflection_unchecked(&space, &triple.points[2].rep());
        r3.apply_vec(&r2.apply_vec(&triple.points[0].rep()))
    };
    let q1 = triple.points[0].rep();
    let closing_tance = |theta: f64| -> f64 {
        let p5 = frame.axis_point(theta);
        let p4 = frame.translation(dir * d) * p5;
        let q4 = reflection_unchecked(&space, &p4).apply_vec(&q3);
        space.tance_unchecked(&q4, &q1)
    };

    let theta0 = match axis_offset {
        Some(t) => t,
        None => {
            // coarse grid then golden-section refinement
            let mut best = (closing_tance(-6.0), -6.0);
            let mut t = -6.0;
            while t <= 6.0 {
                let v = closing_tance(t);
                if v < best.0 {
                    best = (v, t);
                }
                t += 0.05;
            }
            golden_min(&closing_tance, best.1 - 0.1, best.1 + 0.1)
        }
    };

    let p5 = frame.axis_point(theta0);
    let p4 = frame.translation(dir * d) * p5;
    Pentagon::new(
        space,
        [
            triple.points[0],
            triple.points[1],
            triple.points[2],
            ProjPoint::new(p4)?,
            ProjPoint::new(p5)?,
        ],
        delta,
        tol,
    )
}

fn golden_min(f: &dyn Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - phi * (b - a);
    let mut d = a + phi * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..200 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + phi * (b - a);
            fd = f(d);
        }
        if (b - a).abs() < 1e-12 {
            break;
        }
    }
    0.5 * (a + b)
}

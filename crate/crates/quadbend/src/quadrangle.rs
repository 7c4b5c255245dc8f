//! The tessellation conditions Q1–Q4 on a pentagon's quadrangle of bisectors,
//! with every scalar slack exposed: ultraparallel vertices (Q1), transversal
//! counterclockwise triangles (Q2), transversal adjacency (Q3), and the
//! interior-angle sum π (Q4).

use crate::hermitian::{PointSign, ProjPoint};
use crate::linalg::{C64, Vec3};
use crate::pentagon::Pentagon;
use crate::{Error, Result, Tolerance};
use std::collections::BTreeMap;

/// Vertex data of the quadrangle: polar points q1..q4 of the complex
/// geodesics C1..C4, a witness point on C1, the six vertex tances, and the
/// orientation numbers ε (triangle C1C2C3) and χ (triangle C1C3C4).
#[derive(Clone, Debug)]
pub struct QuadrangleData {
    pub qs: [ProjPoint; 4],
    pub witness: ProjPoint,
    /// ta(q_i, q_j) for the pairs (1,2), (2,3), (3,4), (4,1), (1,3), (4,2).
    pub tances: [f64; 6],
    pub eps: C64,
    pub chi: C64,
}

pub const TANCE_PAIRS: [(usize, usize); 6] = [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (3, 1)];

#[derive(Clone, Debug)]
pub struct Q1Report {
    /// √ta − 1 per pair, ordered as `TANCE_PAIRS`.
    pub root_slacks: [f64; 6],
    pub ok: bool,
}

#[derive(Clone, Debug)]
pub struct Q2Report {
    pub eps_im: f64,
    pub chi_im: f64,
    /// RHS − LHS of the three transversality inequalities for C1C2C3.
    pub tri123: [f64; 3],
    /// Likewise for C1C3C4.
    pub tri134: [f64; 3],
    pub ok: bool,
}

#[derive(Clone, Debug)]
pub struct Q3Report {
    /// LHS − RHS of the cotranchal-transversality inequalities (negative when
    /// satisfied), at the shared slices C3 and C1.
    pub transv_diff_c3: f64,
    pub transv_diff_c1: f64,
    /// The two sector-membership values at R5·witness (positive when inside).
    pub sector: [f64; 2],
    pub ok: bool,
}

#[derive(Clone, Debug)]
pub struct Q4Report {
    /// Im⟨x1,q2⟩⟨q3,x4⟩ with x4 = R4R3R2·x1 — the gating form.
    pub bracket: f64,
    /// Im⟨x1,q2⟩⟨q3,R5·x1⟩ — the same test in the R5-convention, reported
    /// alongside (the two differ by a unit phase on the bracket).
    pub bracket_r5x: f64,
    pub ok: bool,
}

/// Full Q1–Q4 verdict. Later checks whose preconditions fail are `None`
/// (not evaluated); `all_ok` requires four explicit passes.
#[derive(Clone, Debug)]
pub struct QuadrangleReport {
    pub q1: Option<bool>,
    pub q2: Option<bool>,
    pub q3: Option<bool>,
    pub q4: Option<bool>,
    pub all_ok: bool,
    pub tances: Option<[f64; 6]>,
    pub angles: Option<[f64; 4]>,
    pub angle_sum: Option<f64>,
    pub slacks: BTreeMap<String, f64>,
    /// Set when the quadrangle data itself could not be built.
    pub degenerate: Option<String>,
}

impl QuadrangleReport {
    /// Names the first failing check together with its first offending slack.
    pub fn first_failure(&self) -> Option<String> {
        if let Some(d) = &self.degenerate {
            return Some(format!("degenerate: {d}"));
        }
        let offender = |keys: &[&str], bad: fn(f64) -> bool| -> String {
            keys.iter()
                .find(|k| self.slacks.get(**k).map(|v| bad(*v)).unwrap_or(false))
                .map(|k| k.to_string())
                .unwrap_or_default()
        };
        if self.q1 == Some(false) {
            let k = offender(
                &[
                    "q1_root_slack_12",
                    "q1_root_slack_23",
                    "q1_root_slack_34",
                    "q1_root_slack_41",
                    "q1_root_slack_13",
                    "q1_root_slack_42",
                ],
                |v| v <= 0.0,
            );
            return Some(format!("q1: {k}"));
        }
        if self.q2 == Some(false) {
            let orient = offender(&["q2_eps_im", "q2_chi_im"], |v| v >= 0.0);
            if !orient.is_empty() {
                return Some(format!("q2: {orient}"));
            }
            let k = offender(
                &[
                    "q2_tri123_0",
                    "q2_tri123_1",
                    "q2_tri123_2",
                    "q2_tri134_0",
                    "q2_tri134_1",
                    "q2_tri134_2",
                ],
                |v| v <= 0.0,
            );
            return Some(format!("q2: {k}"));
        }
        if self.q3 == Some(false) {
            let transv = offender(&["q3_transv_diff_c3", "q3_transv_diff_c1"], |v| v >= 0.0);
            if !transv.is_empty() {
                return Some(format!("q3: {transv}"));
            }
            let k = offender(&["q3_sector_a", "q3_sector_b"], |v| v <= 0.0);
            return Some(format!("q3: {k}"));
        }
        if self.q4 == Some(false) {
            return Some("q4: q4_bracket".into());
        }
        None
    }
}

/// q1 := p1 and q_{i} := R_i q_{i-1}; all four must be positive points.
pub fn polar_sequence(pent: &Pentagon, tol: &Tolerance) -> Result<QuadrangleData> {
    polar_sequence_with(pent, None, tol)
}

pub fn polar_sequence_with(
    pent: &Pentagon,
    witness: Option<ProjPoint>,
    tol: &Tolerance,
) -> Result<QuadrangleData> {
    let space = pent.space();
    let q1 = pent.points()[0];
    let q2 = pent.reflection(1).apply(&q1);
    let q3 = pent.reflection(2).apply(&q2);
    let q4 = pent.reflection(3).apply(&q3);
    let qs = [q1, q2, q3, q4];
    for q in &qs {
        if space.sign(q, tol) != PointSign::Positive {
            return Err(Error::NotPolarPoints);
        }
    }
    let mut tances = [0.0; 6];
    for (k, (i, j)) in TANCE_PAIRS.iter().enumerate() {
        tances[k] = space.tance_unchecked(&qs[*i].rep(), &qs[*j].rep());
    }
    let eta = |a: &ProjPoint, b: &ProjPoint, c: &ProjPoint| -> Result<C64> {
        let num = space.inner(&a.rep(), &b.rep())
            * space.inner(&b.rep(), &c.rep())
            * space.inner(&c.rep(), &a.rep());
        if num.norm() == 0.0 {
            return Err(Error::DegenerateTriple);
        }
        Ok(num / num.norm())
    };
    let eps = eta(&q1, &q2, &q3)?;
    let chi = eta(&q1, &q3, &q4)?;
    let witness = match witness {
        Some(w) => {
            let ip = space.inner(&w.rep(), &q1.rep());
            if ip.norm() > tol.eq_tol * space.norm2(&w.rep()).sqrt() * space.norm2(&q1.rep()).sqrt()
            {
                return Err(Error::Input("witness is not on C1".into()));
            }
            w
        }
        None => default_witness(pent, &qs, tol)?,
    };
    Ok(QuadrangleData {
        qs,
        witness,
        tances,
        eps,
        chi,
    })
}

/// Default witness on C1: the intersection of C1 with the complex spine of
/// the bisector B⟨C4,C1⟩, normalized to ⟨x,x⟩ = −1.
fn default_witness(pent: &Pentagon, qs: &[ProjPoint; 4], tol: &Tolerance) -> Result<ProjPoint> {
    let space = pent.space();
    let f41 = space.orthogonal_complement_point(&qs[3], &qs[0], tol)?;
    let x = space.orthogonal_complement_point(&qs[0], &f41, tol)?;
    let q = space.quad(&x.rep());
    if q >= 0.0 {
        return Err(Error::DegenerateSpine);
    }
    Ok(x.scale(C64::new(1.0 / (-q).sqrt(), 0.0)))
}

/// Q1: the six vertex tances exceed 1 (ultraparallel complex geodesics).
pub fn check_q1(data: &QuadrangleData) -> Q1Report {
    let mut root_slacks = [0.0; 6];
    let mut ok = true;
    for (k, ta) in data.tances.iter().enumerate() {
        let root = ta.max(0.0).sqrt();
        root_slacks[k] = root - 1.0;
        ok &= *ta > 1.0;
    }
    Q1Report { root_slacks, ok }
}

fn triangle_slacks(t_a: f64, t_b: f64, t_c: f64, re: f64) -> [f64; 3] {
    // t's are the tance square roots of the triangle's three vertex pairs
    let rhs = 1.0 + 2.0 * t_a * t_b * t_c * re;
    [
        rhs - (t_a * t_a * re * re + t_b * t_b + t_c * t_c),
        rhs - (t_a * t_a + t_b * t_b * re * re + t_c * t_c),
        rhs - (t_a * t_a + t_b * t_b + t_c * t_c * re * re),
    ]
}

/// Q2: both triangles of bisectors are transversal (three strict inequalities
/// each) and counterclockwise oriented (ε1 < 0, χ1 < 0).
pub fn check_q2(data: &QuadrangleData) -> Result<Q2Report> {
    if !check_q1(data).ok {
        return Err(Error::PreconditionQ1);
    }
    let [ta12, ta23, ta34, ta41, ta13, _ta42] = data.tances;
    let (t12, t23, t31) = (ta12.sqrt(), ta23.sqrt(), ta13.sqrt());
    let tri123 = triangle_slacks(t12, t23, t31, data.eps.re);
    let (t13, t34, t41) = (ta13.sqrt(), ta34.sqrt(), ta41.sqrt());
    let tri134 = triangle_slacks(t13, t34, t41, data.chi.re);
    let ok = data.eps.im < 0.0
        && data.chi.im < 0.0
        && tri123.iter().all(|s| *s > 0.0)
        && tri134.iter().all(|s| *s > 0.0);
    Ok(Q2Report {
        eps_im: data.eps.im,
        chi_im: data.chi.im,
        tri123,
        tri134,
        ok,
    })
}

/// Q3: the two triangles are transversally adjacent — cotranchal
/// transversality at C3 and C1, plus C4 inside the sector at C2, probed at
/// R5·witness.
pub fn check_q3(pent: &Pentagon, data: &QuadrangleData, tol: &Tolerance) -> Result<Q3Report> {
    if !check_q1(data).ok {
        return Err(Error::PreconditionQ1);
    }
    let space = pent.space();
    let [q1, q2, q3, q4] = &data.qs;
    let ip = |a: &ProjPoint, b: &ProjPoint| space.inner(&a.rep(), &b.rep());
    let [ta12, ta23, ta34, ta41, _, _] = data.tances;

    let lhs_c3 = ((ip(q4, q2) * ip(q3, q3) / (ip(q4, q3) * ip(q3, q2))).re - 1.0).abs();
    let rhs_c3 = (1.0 - 1.0 / ta34).sqrt() * (1.0 - 1.0 / ta23).sqrt();
    let lhs_c1 = ((ip(q4, q2) * ip(q1, q1) / (ip(q4, q1) * ip(q1, q2))).re - 1.0).abs();
    let rhs_c1 = (1.0 - 1.0 / ta41).sqrt() * (1.0 - 1.0 / ta12).sqrt();

    let r5x = pent.reflection(4).apply(&data.witness);
    let sector = [
        (ip(q2, &r5x) * ip(&r5x, q3) / ip(q2, q3)).im,
        (ip(q1, &r5x) * ip(&r5x, q2) / ip(q1, q2)).im,
    ];
    let ok = lhs_c3 < rhs_c3 && lhs_c1 < rhs_c1 && sector[0] > 0.0 && sector[1] > 0.0;
    let _ = tol;
    Ok(Q3Report {
        transv_diff_c3: lhs_c3 - rhs_c3,
        transv_diff_c1: lhs_c1 - rhs_c1,
        sector,
        ok,
    })
}

/// Q4: the interior angles at the witness sum to π, decided by the sign of
/// Im⟨x1,q2⟩⟨q3,x4⟩ with x4 = R4R3R2·x1.
pub fn check_q4(pent: &Pentagon, data: &QuadrangleData, tol: &Tolerance) -> Result<Q4Report> {
    if !check_q1(data).ok {
        return Err(Error::PreconditionQ1);
    }
    if !check_q2(data)?.ok || !check_q3(pent, data, tol)?.ok {
        return Err(Error::PreconditionQ123);
    }
    Ok(q4_brackets(pent, data))
}

fn q4_brackets(pent: &Pentagon, data: &QuadrangleData) -> Q4Report {
    let space = pent.space();
    let x1 = &data.witness;
    let x4 = pent
        .reflection(3)
        .apply(&pent.reflection(2).apply(&pent.reflection(1).apply(x1)));
    let r5x = pent.reflection(4).apply(x1);
    let ip = |a: &Vec3, b: &Vec3| space.inner(a, b);
    let bracket = (ip(&x1.rep(), &data.qs[1].rep()) * ip(&data.qs[2].rep(), &x4.rep())).im;
    let bracket_r5x = (ip(&x1.rep(), &data.qs[1].rep()) * ip(&data.qs[2].rep(), &r5x.rep())).im;
    Q4Report {
        bracket,
        bracket_r5x,
        ok: bracket > 0.0,
    }
}

/// Principal-branch argument with an explicit branch-cut guard.
fn arg_checked(z: C64, tol: &Tolerance) -> Result<f64> {
    if z.re < 0.0 && z.im.abs() < tol.eq_tol * z.norm() {
        return Err(Error::ArgBranch);
    }
    Ok(z.arg())
}

/// The four interior angles of the quadrangle at the orbit of x1 ∈ C1
/// (x2 = R2 x1, x3 = R3 x2, x4 = R4 x3).
pub fn interior_angles(
    pent: &Pentagon,
    data: &QuadrangleData,
    x1: &ProjPoint,
    tol: &Tolerance,
) -> Result<[f64; 4]> {
    let space = pent.space();
    let [q1, q2, q3, q4] = &data.qs;
    let x2 = pent.reflection(1).apply(x1);
    let x3 = pent.reflection(2).apply(&x2);
    let x4 = pent.reflection(3).apply(&x3);
    let ip = |a: &ProjPoint, b: &ProjPoint| space.inner(&a.rep(), &b.rep());
    let th1 = arg_checked(ip(q2, x1) * ip(x1, q4) / (ip(q2, q1) * ip(q1, q4)), tol)?;
    let th2 = arg_checked(ip(q3, &x2) * ip(&x2, q1) / (ip(q3, q2) * ip(q2, q1)), tol)?;
    let th3 = arg_checked(ip(q4, &x3) * ip(&x3, q2) / (ip(q4, q3) * ip(q3, q2)), tol)?;
    let th4 = arg_checked(ip(q1, &x4) * ip(&x4, q3) / (ip(q1, q4) * ip(q4, q3)), tol)?;
    Ok([th1, th2, th3, th4])
}

/// The bisector equation b(x, a, b) = Im(⟨a,x⟩⟨x,b⟩/⟨a,b⟩): zero on the
/// bisector of the points a, b; the normal field points into the side where
/// the value is negative.
pub fn bisector_side(
    space: &crate::hermitian::HermitianSpace,
    x: &ProjPoint,
    a: &ProjPoint,
    b: &ProjPoint,
    tol: &Tolerance,
) -> Result<f64> {
    if space.sign(a, tol) == PointSign::Isotropic || space.sign(b, tol) == PointSign::Isotropic {
        return Err(Error::IsotropicArgument);
    }
    let ab = space.inner(&a.rep(), &b.rep());
    let scale = space.norm2(&a.rep()).sqrt() * space.norm2(&b.rep()).sqrt();
    if ab.norm() <= tol.eq_tol * scale {
        return Err(Error::DegenerateSpine);
    }
    // the complex line through a, b must be hyperbolic
    let det2 = space.quad(&a.rep()) * space.quad(&b.rep()) - ab.norm_sqr();
    if det2 >= 0.0 {
        return Err(Error::DegenerateSpine);
    }
    Ok((space.inner(&a.rep(), &x.rep()) * space.inner(&x.rep(), &b.rep()) / ab).im)
}

/// Runs all four checks in order, short-circuiting the verdicts of checks
/// whose preconditions fail while keeping every computable slack.
pub fn quadrangle_report(
    pent: &Pentagon,
    witness: Option<ProjPoint>,
    tol: &Tolerance,
) -> QuadrangleReport {
    let mut slacks = BTreeMap::new();
    let data = match polar_sequence_with(pent, witness, tol) {
        Ok(d) => d,
        Err(e) => {
            return QuadrangleReport {
                q1: Some(false),
                q2: None,
                q3: None,
                q4: None,
                all_ok: false,
                tances: None,
                angles: None,
                angle_sum: None,
                slacks,
                degenerate: Some(e.to_string()),
            }
        }
    };
    let q1 = check_q1(&data);
    let labels = ["12", "23", "34", "41", "13", "42"];
    for (k, l) in labels.iter().enumerate() {
        slacks.insert(format!("ta_{l}"), data.tances[k]);
        slacks.insert(format!("q1_root_slack_{l}"), q1.root_slacks[k]);
    }
    let mut report = QuadrangleReport {
        q1: Some(q1.ok),
        q2: None,
        q3: None,
        q4: None,
        all_ok: false,
        tances: Some(data.tances),
        angles: None,
        angle_sum: None,
        slacks,
        degenerate: None,
    };
    if !q1.ok {
        return report;
    }
    let q2 = check_q2(&data).expect("q1 verified");
    report.slacks.insert("q2_eps_im".into(), q2.eps_im);
    report.slacks.insert("q2_chi_im".into(), q2.chi_im);
    for (k, v) in q2.tri123.iter().enumerate() {
        report.slacks.insert(format!("q2_tri123_{k}"), *v);
    }
    for (k, v) in q2.tri134.iter().enumerate() {
        report.slacks.insert(format!("q2_tri134_{k}"), *v);
    }
    report.q2 = Some(q2.ok);
    if !q2.ok {
        return report;
    }
    let q3 = match check_q3(pent, &data, tol) {
        Ok(r) => r,
        Err(e) => {
            report.degenerate = Some(e.to_string());
            return report;
        }
    };
    report
        .slacks
        .insert("q3_transv_diff_c3".into(), q3.transv_diff_c3);
    report
        .slacks
        .insert("q3_transv_diff_c1".into(), q3.transv_diff_c1);
    report.slacks.insert("q3_sector_a".into(), q3.sector[0]);
    report.slacks.insert("q3_sector_b".into(), q3.sector[1]);
    report.q3 = Some(q3.ok);
    if !q3.ok {
        return report;
    }
    let q4 = q4_brackets(pent, &data);
    report.slacks.insert("q4_bracket".into(), q4.bracket);
    report
        .slacks
        .insert("q4_bracket_r5x".into(), q4.bracket_r5x);
    report.q4 = Some(q4.ok);
    if let Ok(angles) = interior_angles(pent, &data, &data.witness, tol) {
        report.angle_sum = Some(angles.iter().sum());
        report.angles = Some(angles);
    }
    report.all_ok = report.q1 == Some(true)
        && report.q2 == Some(true)
        && report.q3 == Some(true)
        && report.q4 == Some(true);
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{fixture_pentagon, fixture_verification, lcg_isometry, Lcg};
    use approx::assert_abs_diff_eq;

    #[test]
    fn polar_points_positive_and_tances_match() {
        let tol = Tolerance::default();
        let pent = fixture_pentagon();
        let data = polar_sequence(&pent, &tol).unwrap();
        assert_abs_diff_eq!(data.tances[1], 10.74, epsilon = 0.01); // ta(q2,q3)
        assert_abs_diff_eq!(data.tances[5], 48.21, epsilon = 0.01); // ta(q4,q2)
    }

    #[test]
    fn eps_invariant_under_conjugation() {
        let tol = Tolerance::default();
        let pent = fixture_pentagon();
        let data = polar_sequence(&pent, &tol).unwrap();
        let mut rng = Lcg::new(51);
        let iso = lcg_isometry(&mut rng, pent.space(), &tol);
        let moved = pent.conjugated(&iso);
        let data2 = polar_sequence(&moved, &tol).unwrap();
        assert!((data.eps - data2.eps).norm() < 1e-9);
        assert!((data.chi - data2.chi).norm() < 1e-9);
    }

    #[test]
    fn q1_strict_at_boundary() {
        let tol = Tolerance::default();
        let pent = fixture_pentagon();
        let mut data = polar_sequence(&pent, &tol).unwrap();
        data.tances[2] = 1.0;
        assert!(!check_q1(&data).ok);
    }

    #[test]
    fn q2_fixture_values() {
        let tol = Tolerance::default();
        let pent = fixture_pentagon();
        let data = polar_sequence(&pent, &tol).unwrap();
        let q2 = check_q2(&data).unwrap();
        assert!(q2.ok);
        assert_abs_diff_eq!(q2.eps_im, -0.87, epsilon = 0.01);
        assert_abs_diff_eq!(q2.chi_im, -0.87, epsilon = 0.01);
        assert_abs_diff_eq!(q2.tri123[0], 0.31, epsilon = 0.01);
        assert_abs_diff_eq!(q2.tri123[1], 4.64, epsilon = 0.01);
        assert_abs_diff_eq!(q2.tri123[2], 0.28, epsilon = 0.01);
        assert_abs_diff_eq!(q2.tri134[0], 0.32, epsilon = 0.01);
        assert_abs_diff_eq!(q2.tri134[1], 4.55, epsilon = 0.01);
        assert_abs_diff_eq!(q2.tri134[2], 0.35, epsilon = 0.01);
    }

    #[test]
    fn q2_clockwise_triangle_over_complex_geodesic_fails() {
        // a clockwise geodesic triangle in the disc orthogonal to e2 gives
        // polar points with ε1 > 0
        let tol = Tolerance::default();
        let space = crate::testutil::canonical_space(&tol);
        // complex geodesic: the line orthogonal to f = e2; its points have
        // coordinates (x0, 0, x2); vertices of a clockwise triangle:
        let disc = |z: C64| {
            // Poincaré-like chart: point (1, 0, z) with |z| < 1
            Vec3([C64::new(1.0, 0.0), C64::new(0.0, 0.0), z])
        };
        let f = ProjPoint::new(Vec3::basis(1)).unwrap();
        // clockwise cycle: negative orientation in the holomorphic chart
        let verts = [
            disc(C64::new(0.4, 0.0)),
            disc(C64::new(-0.1, -0.45)),
            disc(C64::new(-0.1, 0.45)),
        ];
        let mut qs = Vec::new();
        for v in verts {
            let c = ProjPoint::new(v).unwrap();
            // polar of the complex geodesic through c orthogonal to the disc
            let q = space
                .orthogonal_complement_point(&c, &f, &tol)
                .unwrap();
            qs.push(q);
        }
        let num = space.inner(&qs[0].rep(), &qs[1].rep())
            * space.inner(&qs[1].rep(), &qs[2].rep())
            * space.inner(&qs[2].rep(), &qs[0].rep());
        let eps = num / num.norm();
        assert!(eps.im > 0.0, "clockwise triangle must have ε1 > 0, got {eps}");
    }

    #[test]
    fn q3_q4_fixture_values_with_paper_witness() {
        let tol = Tolerance::default();
        let pent = fixture_pentagon();
        let ver = fixture_verification();
        let data = polar_sequence_with(&pent, Some(ver.witness_x), &tol).unwrap();
        let q3 = check_q3(&pent, &data, &tol).unwrap();
        assert!(q3.ok);
        assert_abs_diff_eq!(q3.transv_diff_c3, -0.05, epsilon = 0.01);
        assert_abs_diff_eq!(q3.transv_diff_c1, -0.78, epsilon = 0.01);
        assert_abs_diff_eq!(q3.sector[0], 11.69, epsilon = 0.01);
        assert_abs_diff_eq!(q3.sector[1], 8.01, epsilon = 0.01);
        let q4 = check_q4(&pent, &data, &tol).unwrap();
        assert!(q4.ok);
        assert_abs_diff_eq!(q4.bracket_r5x, 6.36, epsilon = 0.01);
        assert!(q4.bracket > 0.0);
    }

    #[test]
    fn angle_sum_is_pi_at_paper_witness() {
        let tol = Tolerance::default();
        let pent = fixture_pentagon();
        let ver = fixture_verification();
        let data = polar_sequence_with(&pent, Some(ver.witness_x), &tol).unwrap();
        let angles = interior_angles(&pent, &data, &ver.witness_x, &tol).unwrap();
        let sum: f64 = angles.iter().sum();
        assert_abs_diff_eq!(sum, std::f64::consts::PI, epsilon = 1e-9);
        for a in angles {
            assert!(a > 0.0 && a < std::f64::consts::PI);
        }
    }

    #[test]
    fn bisector_side_zero_on_spine_and_antisymmetric() {
        let tol = Tolerance::default();
        let pent = fixture_pentagon();
        let space = pent.space();
        let a = pent.points()[3];
        let b = pent.points()[4];
        // a real-combination of spine representatives chosen with a real
        // bracket lies on the bisector
        let ab = space.inner(&a.rep(), &b.rep());
        let b_aligned = b.scale(ab / ab.norm());
        let x = ProjPoint::new(a.rep() + b_aligned.rep().scale(C64::new(0.3, 0.0))).unwrap();
        let v = bisector_side(space, &x, &a, &b, &tol).unwrap();
        assert!(v.abs() < 1e-10, "spine point not on bisector: {v}");
        let y = ProjPoint::new(a.rep() + b.rep().scale(C64::new(0.1, 0.4))).unwrap();
        let s1 = bisector_side(space, &y, &a, &b, &tol).unwrap();
        let s2 = bisector_side(space, &y, &b, &a, &tol).unwrap();
        assert_abs_diff_eq!(s1, -s2, epsilon = 1e-12);
    }

    #[test]
    fn report_all_ok_on_fixture_and_conjugates() {
        let tol = Tolerance::default();
        let pent = fixture_pentagon();
        let report = quadrangle_report(&pent, None, &tol);
        assert!(report.all_ok, "{:?}", report.first_failure());
        let mut rng = Lcg::new(52);
        for _ in 0..20 {
            let iso = lcg_isometry(&mut rng, pent.space(), &tol);
            let moved = pent.conjugated(&iso);
            let r2 = quadrangle_report(&moved, None, &tol);
            assert!(r2.all_ok);
            for (k, v) in &report.slacks {
                let w = r2.slacks[k];
                assert!((v - w).abs() < 1e-8 * (1.0 + v.abs()), "slack {k}: {v} vs {w}");
            }
        }
    }
}

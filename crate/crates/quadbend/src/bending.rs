//! One-parameter bending subgroups B(θ) of products R^{p_{i+1}} R^{p_i},
//! pentagon deformation, and θ-scans with full quadrangle reports per row.

use crate::hermitian::ProjPoint;
use crate::isometry::{loxodromic_frame, su_normalize, Isometry};
use crate::linalg::{C64, Mat3};
use crate::pentagon::Pentagon;
use crate::quadrangle::{quadrangle_report, QuadrangleReport};
use crate::triple::raw_coords;
use crate::{Error, Result, Tolerance};

/// The frame of the loxodromic product R^{p_{i+1}} R^{p_i} for the pair
/// (p_i, p_{i+1}) (1-based index i, mod 5), holding the spectral projections
/// in which bendings are diagonal.
#[derive(Clone, Debug)]
pub struct BendingPair {
    pub index: usize,
    proj_c: Mat3,
    proj_v1: Mat3,
    proj_v2: Mat3,
}

impl BendingPair {
    /// `index` is the 1-based pair index: pair i couples p_i with p_{i+1},
    /// indices mod 5 (pair 5 couples p5 with p1).
    pub fn new(pent: &Pentagon, index: usize, tol: &Tolerance) -> Result<Self> {
        if !(1..=5).contains(&index) {
            return Err(Error::Input(format!("pair index {index} not in 1..=5")));
        }
        let i0 = index - 1;
        let i1 = index % 5;
        let prod = pent.reflection(i1).compose(&pent.reflection(i0));
        let space = pent.space();
        let frame = loxodromic_frame(space, &prod, tol).map_err(|_| Error::FrameFailure)?;
        if frame.resolution_defect(space) > 1e-8 {
            return Err(Error::FrameFailure);
        }
        let one = C64::new(1.0, 0.0);
        let zero = C64::new(0.0, 0.0);
        Ok(BendingPair {
            index,
            proj_c: frame.functional_calculus(space, one, zero, zero),
            proj_v1: frame.functional_calculus(space, zero, one, zero),
            proj_v2: frame.functional_calculus(space, zero, zero, one),
        })
    }

    /// B(θ) = diag(1, e^θ, e^{−θ}) in the frame basis, renormalized into
    /// SU(2,1). B(0) = Id and B(a)B(b) = B(a+b).
    pub fn bending(&self, theta: f64) -> Isometry {
        let m = self.proj_c
            + self.proj_v1.scale(C64::new(theta.exp(), 0.0))
            + self.proj_v2.scale(C64::new((-theta).exp(), 0.0));
        Isometry::from_raw(su_normalize(m))
    }
}

/// The five centers after bending pair `index` by θ, without re-validating
/// the pentagon invariants (the relation is preserved analytically; P1 can
/// degenerate transiently along large deformations).
pub fn bent_points(
    pent: &Pentagon,
    index: usize,
    theta: f64,
    tol: &Tolerance,
) -> Result<[ProjPoint; 5]> {
    let pair = BendingPair::new(pent, index, tol)?;
    let b = pair.bending(theta);
    let i0 = index - 1;
    let i1 = index % 5;
    let mut pts = *pent.points();
    pts[i0] = b.apply(&pts[i0]);
    pts[i1] = b.apply(&pts[i1]);
    Ok(pts)
}

/// Moves the pair (p_i, p_{i+1}) by B(θ); the other three points are fixed
/// and the defining relation is preserved.
pub fn bend_pentagon(pent: &Pentagon, index: usize, theta: f64, tol: &Tolerance) -> Result<Pentagon> {
    let pts = bent_points(pent, index, theta, tol)?;
    let loose = Tolerance {
        residual_tol: 10.0 * tol.residual_tol,
        ..*tol
    };
    pent.with_points(pts, &loose).map_err(|e| match e {
        Error::PentagonInvariant("relation residual too large") => Error::ResidualBlowup,
        other => other,
    })
}

/// One row of a bending scan: the bent pentagon's surface coordinates of
/// (p1, p2, p3) and its full quadrangle report, or the error that stopped it.
#[derive(Clone, Debug)]
pub struct BendScanRow {
    pub theta: f64,
    pub coords: Option<(f64, f64, f64)>,
    pub report: Option<QuadrangleReport>,
    pub error: Option<String>,
}

impl BendScanRow {
    pub fn all_ok(&self) -> bool {
        self.report.as_ref().map(|r| r.all_ok).unwrap_or(false)
    }
}

/// Scan rows at θ = k·dθ for k = −n_neg ..= n_pos, each bent from the base
/// pentagon (never cumulatively), ordered by θ. Row errors are data.
pub fn bend_scan(
    pent: &Pentagon,
    index: usize,
    dtheta: f64,
    n_pos: u32,
    n_neg: u32,
    tol: &Tolerance,
) -> Result<Vec<BendScanRow>> {
    if dtheta == 0.0 {
        return Err(Error::Input("dtheta must be nonzero".into()));
    }
    BendingPair::new(pent, index, tol)?;
    let mut rows = Vec::with_capacity((n_pos + n_neg + 1) as usize);
    for k in -(n_neg as i64)..=(n_pos as i64) {
        let theta = k as f64 * dtheta;
        rows.push(scan_row(pent, index, theta, tol));
    }
    rows.sort_by(|a, b| a.theta.partial_cmp(&b.theta).unwrap());
    Ok(rows)
}

fn scan_row(pent: &Pentagon, index: usize, theta: f64, tol: &Tolerance) -> BendScanRow {
    match bend_pentagon(pent, index, theta, tol) {
        Ok(bent) => {
            let pts = bent.points();
            let coords = raw_coords(bent.space(), &[pts[0], pts[1], pts[2]]);
            let report = quadrangle_report(&bent, None, tol);
            BendScanRow {
                theta,
                coords: Some(coords),
                report: Some(report),
                error: None,
            }
        }
        Err(e) => BendScanRow {
            theta,
            coords: None,
            report: None,
            error: Some(e.to_string()),
        },
    }
}

/// Applies bendings sequentially (the cumulative walk API).
pub fn composed_walk(pent: &Pentagon, steps: &[(usize, f64)], tol: &Tolerance) -> Result<Pentagon> {
    let mut current = pent.clone();
    for (index, theta) in steps {
        current = bend_pentagon(&current, *index, *theta, tol)?;
    }
    Ok(current)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{fixture_pentagon, Lcg};
    use approx::assert_abs_diff_eq;

    #[test]
    fn bending_at_zero_is_identity() {
        let tol = Tolerance::default();
        let pent = fixture_pentagon();
        let pair = BendingPair::new(&pent, 1, &tol).unwrap();
        let b = pair.bending(0.0);
        assert!((*b.mat() - Mat3::identity()).norm_inf() < 1e-11);
    }

    #[test]
    fn centralizer_and_product_invariance() {
        let tol = Tolerance::default();
        let pent = fixture_pentagon();
        for index in 1..=5usize {
            let pair = BendingPair::new(&pent, index, &tol).unwrap();
            let i0 = index - 1;
            let i1 = index % 5;
            let prod = pent.reflection(i1).compose(&pent.reflection(i0));
            for theta in [-1.0, -0.02, 0.02, 1.0] {
                let b = pair.bending(theta);
                let conj = b.compose(&prod).compose(&b.inverse());
                assert!((*conj.mat() - *prod.mat()).norm_inf() < 1e-9);
                let moved = crate::isometry::reflection_unchecked(
                    pent.space(),
                    &b.apply(&pent.points()[i1]).rep(),
                )
                .compose(&crate::isometry::reflection_unchecked(
                    pent.space(),
                    &b.apply(&pent.points()[i0]).rep(),
                ));
                assert!((*moved.mat() - *prod.mat()).norm_inf() < 1e-9);
            }
        }
    }

    #[test]
    fn one_parameter_group_law() {
        let tol = Tolerance::default();
        let pent = fixture_pentagon();
        let mut rng = Lcg::new(61);
        for index in 1..=5usize {
            let pair = BendingPair::new(&pent, index, &tol).unwrap();
            for _ in 0..20 {
                let a = rng.range(-1.5, 1.5);
                let b = rng.range(-1.5, 1.5);
                let lhs = pair.bending(a).compose(&pair.bending(b));
                let rhs = pair.bending(a + b);
                assert!((*lhs.mat() - *rhs.mat()).norm_inf() < 1e-9);
            }
        }
    }

    #[test]
    fn bend_preserves_relation_and_signs() {
        let tol = Tolerance::default();
        let pent = fixture_pentagon();
        let bent = bend_pentagon(&pent, 1, 0.02, &tol).unwrap();
        assert!(bent.relation_residual() < 1e-10);
        assert_eq!(bent.signs(&tol), [1, -1, -1, -1, -1]);
        let same = bend_pentagon(&pent, 1, 0.0, &tol).unwrap();
        for (a, b) in same.points().iter().zip(pent.points().iter()) {
            assert!((a.rep() - b.rep()).norm_inf() < 1e-11);
        }
    }

    #[test]
    fn slice_laws_hold() {
        let tol = Tolerance::default();
        let pent = fixture_pentagon();
        let pts = pent.points();
        let (s1_0, s2_0, _) = raw_coords(pent.space(), &[pts[0], pts[1], pts[2]]);
        for theta in [-0.3, -0.02, 0.02, 0.3] {
            let bent1 = bend_pentagon(&pent, 1, theta, &tol).unwrap();
            let b1 = bent1.points();
            let (s1, _, _) = raw_coords(bent1.space(), &[b1[0], b1[1], b1[2]]);
            assert_abs_diff_eq!(s1, s1_0, epsilon = 1e-9);
            let bent2 = bend_pentagon(&pent, 2, theta, &tol).unwrap();
            let b2 = bent2.points();
            let (_, s2, _) = raw_coords(bent2.space(), &[b2[0], b2[1], b2[2]]);
            assert_abs_diff_eq!(s2, s2_0, epsilon = 1e-9);
        }
    }

    #[test]
    fn scan_zero_row_ok_and_bounded_intervals() {
        let tol = Tolerance::default();
        let pent = fixture_pentagon();
        for index in [1usize, 2] {
            let rows = bend_scan(&pent, index, 0.02, 60, 60, &tol).unwrap();
            let zero = rows.iter().find(|r| r.theta == 0.0).unwrap();
            assert!(zero.all_ok());
            let first_fail_pos = rows.iter().find(|r| r.theta > 0.0 && !r.all_ok());
            let first_fail_neg = rows.iter().rev().find(|r| r.theta < 0.0 && !r.all_ok());
            assert!(first_fail_pos.is_some(), "pair {index} never fails upward");
            assert!(first_fail_neg.is_some(), "pair {index} never fails downward");
            // small-bending stability: one step either way stays verified
            assert!(rows.iter().find(|r| (r.theta - 0.02).abs() < 1e-12).unwrap().all_ok());
            assert!(rows.iter().find(|r| (r.theta + 0.02).abs() < 1e-12).unwrap().all_ok());
        }
    }

    #[test]
    fn scan_rejects_zero_step() {
        let tol = Tolerance::default();
        let pent = fixture_pentagon();
        assert!(matches!(
            bend_scan(&pent, 1, 0.0, 1, 1, &tol).unwrap_err(),
            Error::Input(_)
        ));
    }

    #[test]
    fn walk_then_inverse_restores_invariants() {
        let tol = Tolerance::default();
        let pent = fixture_pentagon();
        let steps = [(1usize, 0.08), (2usize, -0.05), (1usize, 0.03)];
        let fwd = composed_walk(&pent, &steps, &tol).unwrap();
        let inv: Vec<(usize, f64)> = steps.iter().rev().map(|(i, t)| (*i, -t)).collect();
        let back = composed_walk(&fwd, &inv, &tol).unwrap();
        // all pairwise tances and the η-type products must match the start
        for i in 0..5 {
            for j in (i + 1)..5 {
                let a = pent
                    .space()
                    .tance_unchecked(&pent.points()[i].rep(), &pent.points()[j].rep());
                let b = back
                    .space()
                    .tance_unchecked(&back.points()[i].rep(), &back.points()[j].rep());
                assert_abs_diff_eq!(a, b, epsilon = 1e-8);
            }
        }
        let empty = composed_walk(&pent, &[], &tol).unwrap();
        for (a, b) in empty.points().iter().zip(pent.points().iter()) {
            assert_eq!(a.rep(), b.rep());
        }
    }

    #[test]
    fn surface_confinement_along_scans() {
        let tol = Tolerance::default();
        let pent = fixture_pentagon();
        let kap = crate::triple::kappa(crate::testutil::FIXTURE_TAU);
        for index in [1usize, 2] {
            let rows = bend_scan(&pent, index, 0.05, 30, 30, &tol).unwrap();
            for row in rows {
                if let Some((s1, s2, s)) = row.coords {
                    let r = crate::triple::surface_residual(s1, s2, s, kap);
                    assert!(r.abs() < 1e-7, "row {} residual {}", row.theta, r);
                }
            }
        }
    }
}

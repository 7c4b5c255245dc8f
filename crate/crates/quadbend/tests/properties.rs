//! Structural invariants checked over randomized inputs: Hermitian-form
//! algebra, projective invariance, and the quadrangle's orientation numbers.

use proptest::prelude::*;
use quadbend::quadrangle::{check_q1, check_q2, polar_sequence_with};
use quadbend::testutil::{canonical_space, fixture_pentagon, lcg_isometry, lcg_nonisotropic, Lcg};
use quadbend::{PointSign, ProjPoint, Tolerance, Vec3, C64};

fn vec3(re: [f64; 3], im: [f64; 3]) -> Vec3 {
    Vec3([
        C64::new(re[0], im[0]),
        C64::new(re[1], im[1]),
        C64::new(re[2], im[2]),
    ])
}

proptest! {
    #[test]
    fn inner_product_conjugate_symmetry(
        xre in prop::array::uniform3(-2.0f64..2.0),
        xim in prop::array::uniform3(-2.0f64..2.0),
        yre in prop::array::uniform3(-2.0f64..2.0),
        yim in prop::array::uniform3(-2.0f64..2.0),
    ) {
        let pent = fixture_pentagon();
        let space = pent.space();
        let x = vec3(xre, xim);
        let y = vec3(yre, yim);
        let lhs = space.inner(&x, &y);
        let rhs = space.inner(&y, &x).conj();
        prop_assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn tance_scale_invariance(
        pre in prop::array::uniform3(-2.0f64..2.0),
        pim in prop::array::uniform3(-2.0f64..2.0),
        qre in prop::array::uniform3(-2.0f64..2.0),
        qim in prop::array::uniform3(-2.0f64..2.0),
        lam in (-3.0f64..3.0, -3.0f64..3.0),
        mu in (-3.0f64..3.0, -3.0f64..3.0),
    ) {
        let tol = Tolerance::default();
        let space = canonical_space(&tol);
        let p = vec3(pre, pim);
        let q = vec3(qre, qim);
        let lam = C64::new(lam.0, lam.1);
        let mu = C64::new(mu.0, mu.1);
        prop_assume!(p.norm() > 0.1 && q.norm() > 0.1);
        prop_assume!(lam.norm() > 0.05 && mu.norm() > 0.05);
        let (p, q) = (ProjPoint::new(p).unwrap(), ProjPoint::new(q).unwrap());
        prop_assume!(space.sign(&p, &tol) != PointSign::Isotropic);
        prop_assume!(space.sign(&q, &tol) != PointSign::Isotropic);
        let base = space.tance(&p, &q, &tol).unwrap();
        let scaled = space
            .tance(&p.scale(lam), &q.scale(mu), &tol)
            .unwrap();
        prop_assert!((base - scaled).abs() < 1e-10 * (1.0 + base.abs()));
    }

    #[test]
    fn solve_s_roots_satisfy_surface_equation(
        s1 in -3.0f64..3.0,
        s2 in -3.0f64..3.0,
        kre in -2.0f64..2.0,
        kim in -2.0f64..2.0,
    ) {
        let tol = Tolerance::default();
        let kap = C64::new(kre, kim);
        for root in quadbend::triple::solve_s(s1, s2, kap, &tol) {
            let r = quadbend::triple::surface_residual(s1, s2, root, kap);
            prop_assert!(r.abs() < 1e-9 * (1.0 + s1.abs() + s2.abs()).powi(3));
        }
    }
}

#[test]
fn tance_isometry_invariance() {
    let tol = Tolerance::default();
    let pent = fixture_pentagon();
    let space = pent.space();
    let mut rng = Lcg::new(91);
    for _ in 0..200 {
        let p = lcg_nonisotropic(&mut rng, space, &tol);
        let q = lcg_nonisotropic(&mut rng, space, &tol);
        let iso = lcg_isometry(&mut rng, space, &tol);
        let a = space.tance(&p, &q, &tol).unwrap();
        let b = space.tance(&iso.apply(&p), &iso.apply(&q), &tol).unwrap();
        assert!((a - b).abs() < 1e-9 * (1.0 + a.abs()), "{a} vs {b}");
    }
}

#[test]
fn fixture_gram_signature() {
    let pent = fixture_pentagon();
    let sig = pent.space().gram_eigenvalues();
    assert!(sig[0] < 0.0 && sig[1] > 0.0 && sig[2] > 0.0, "{sig:?}");
}

#[test]
fn orientation_numbers_when_q2_holds() {
    // ε0 in (0,1), |ε| = 1 and the vertex Gram determinant negative
    let tol = Tolerance::default();
    let pent = fixture_pentagon();
    let mut rng = Lcg::new(92);
    for trial in 0..20 {
        let bent = if trial == 0 {
            pent.clone()
        } else {
            let theta = rng.range(-0.05, 0.05);
            let index = 1 + (rng.next_u64() % 5) as usize;
            quadbend::bending::bend_pentagon(&pent, index, theta, &tol).unwrap()
        };
        let data = polar_sequence_with(&bent, None, &tol).unwrap();
        if !check_q1(&data).ok {
            continue;
        }
        let q2 = check_q2(&data).unwrap();
        if !q2.ok {
            continue;
        }
        assert!(data.eps.norm() > 1.0 - 1e-10 && data.eps.norm() < 1.0 + 1e-10);
        assert!(data.eps.re > 0.0 && data.eps.re < 1.0, "eps0 = {}", data.eps.re);
        assert!(data.chi.re > 0.0 && data.chi.re < 1.0, "chi0 = {}", data.chi.re);
        // det of the vertex Gram for (q1, q2, q3) must be negative
        let space = bent.space();
        let mut gram = quadbend::Mat3::zero();
        for i in 0..3 {
            for j in 0..3 {
                gram.0[i][j] = space.inner(&data.qs[i].rep(), &data.qs[j].rep());
            }
        }
        let det = gram.det();
        assert!(det.re < 0.0 && det.im.abs() < 1e-9 * det.norm().max(1.0));
    }
}

/// Independent oracle for the polar point: solve ⟨z,x⟩ = ⟨z,y⟩ = 0 as a 2×3
/// complex linear system by explicit elimination, no cross products.
fn orth_point_by_elimination(
    space: &quadbend::HermitianSpace,
    x: &ProjPoint,
    y: &ProjPoint,
) -> Vec3 {
    // rows of the system: z · (G x̄) = 0 and z · (G ȳ) = 0
    let r1 = (*space.gram() * x.rep().conj()).0;
    let r2 = (*space.gram() * y.rep().conj()).0;
    // pivot on the largest entry of r1
    let p = (0..3)
        .max_by(|&i, &j| r1[i].norm().partial_cmp(&r1[j].norm()).unwrap())
        .unwrap();
    let others: Vec<usize> = (0..3).filter(|k| *k != p).collect();
    // eliminate coordinate p from r2
    let factor = r2[p] / r1[p];
    let t = [
        r2[others[0]] - factor * r1[others[0]],
        r2[others[1]] - factor * r1[others[1]],
    ];
    // set the free coordinate and back-substitute
    let (a, b) = (others[0], others[1]);
    let mut z = [C64::new(0.0, 0.0); 3];
    if t[0].norm() >= t[1].norm() {
        // z_a = -t[1]/t[0] * z_b, choose z_b = 1
        z[b] = C64::new(1.0, 0.0);
        z[a] = -t[1] / t[0];
    } else {
        z[a] = C64::new(1.0, 0.0);
        z[b] = -t[0] / t[1];
    }
    z[p] = -(r1[a] * z[a] + r1[b] * z[b]) / r1[p];
    Vec3(z)
}

#[test]
fn orthogonal_complement_matches_brute_force_solver() {
    let tol = Tolerance::default();
    let pent = fixture_pentagon();
    let space = pent.space();
    let data = polar_sequence_with(&pent, None, &tol).unwrap();
    // the complex-spine polar of the diagonal bisector, from the oracle
    let q1 = data.qs[0];
    let q3 = data.qs[2];
    let fast = space.orthogonal_complement_point(&q1, &q3, &tol).unwrap();
    let slow = orth_point_by_elimination(space, &q1, &q3);
    assert!(space.inner(&slow, &q1.rep()).norm() < 1e-9 * slow.norm());
    assert!(space.inner(&slow, &q3.rep()).norm() < 1e-9 * slow.norm());
    let overlap = fast.rep().conj().dot(&slow).norm() / (fast.rep().norm() * slow.norm());
    assert!(overlap > 1.0 - 1e-10, "projective mismatch: overlap {overlap}");
    // and on random pairs
    let mut rng = Lcg::new(94);
    for _ in 0..100 {
        let x = lcg_nonisotropic(&mut rng, space, &tol);
        let y = lcg_nonisotropic(&mut rng, space, &tol);
        if space.proj_eq(&x, &y, &tol) {
            continue;
        }
        let fast = space.orthogonal_complement_point(&x, &y, &tol).unwrap();
        let slow = orth_point_by_elimination(space, &x, &y);
        let overlap = fast.rep().conj().dot(&slow).norm() / (fast.rep().norm() * slow.norm());
        assert!(overlap > 1.0 - 1e-9, "overlap {overlap}");
    }
}

#[test]
fn loxodromic_fixed_set_shared_with_inverse() {
    let tol = Tolerance::default();
    let pent = fixture_pentagon();
    let space = pent.space();
    let f = pent.reflection(3).compose(&pent.reflection(4));
    let frame = quadbend::isometry::loxodromic_frame(space, &f, &tol).unwrap();
    let frame_inv = quadbend::isometry::loxodromic_frame(space, &f.inverse(), &tol).unwrap();
    // same unordered fixed-point set; v1 and v2 swap roles under inversion
    assert!(space.proj_eq(&frame.v1, &frame_inv.v2, &tol));
    assert!(space.proj_eq(&frame.v2, &frame_inv.v1, &tol));
    assert!(space.proj_eq(&frame.c, &frame_inv.c, &tol));
    // the isotropic fixed points pair nontrivially under the form
    assert!(
        space
            .inner(&frame.v1.rep(), &frame.v2.rep())
            .norm()
            > 1e-6
    );
}

#[test]
fn q3_verdict_independent_of_witness() {
    let tol = Tolerance::default();
    let pent = fixture_pentagon();
    let chart = {
        let data = polar_sequence_with(&pent, None, &tol).unwrap();
        let space = pent.space();
        let v = space
            .orthogonal_complement_point(&data.qs[0], &data.witness, &tol)
            .unwrap();
        let vq = space.quad(&v.rep());
        (data.witness.rep(), v.rep().scale(C64::new(1.0 / vq.sqrt(), 0.0)))
    };
    let mut rng = Lcg::new(95);
    for _ in 0..100 {
        let t = rng.range(0.0, 0.95);
        let phi = rng.range(0.0, std::f64::consts::TAU);
        let x = ProjPoint::new(chart.0 + chart.1.scale(C64::from_polar(t, phi))).unwrap();
        let data = polar_sequence_with(&pent, Some(x), &tol).unwrap();
        let q3 = quadbend::quadrangle::check_q3(&pent, &data, &tol).unwrap();
        assert!(q3.ok, "sector membership changed at witness t={t} phi={phi}");
    }
}

#[test]
fn io_interfaces_round_trip() {
    let tol = Tolerance::default();
    let pent = fixture_pentagon();
    // isometry serialization
    let iso = pent.reflection(1).compose(&pent.reflection(0));
    let text = serde_json::to_string(&quadbend::io::isometry_to_json(&iso, "fixture")).unwrap();
    let back = quadbend::io::isometry_from_json(&text, pent.space(), &tol).unwrap();
    assert_eq!(*back.mat(), *iso.mat());
    // surface coordinates serialization
    let coords = quadbend::testutil::fixture_coords();
    let text = serde_json::to_string(&quadbend::io::surface_coords_to_json(&coords)).unwrap();
    let back = quadbend::io::surface_coords_from_json(&text, &tol).unwrap();
    assert_eq!(back.s1, coords.s1);
    assert_eq!(back.s2, coords.s2);
    assert_eq!(back.s, coords.s);
    assert_eq!(back.tau, coords.tau);
}

#[test]
fn quadrangle_verdict_invariant_under_conjugation() {
    let tol = Tolerance::default();
    let pent = fixture_pentagon();
    let base = quadbend::quadrangle::quadrangle_report(&pent, None, &tol);
    let mut rng = Lcg::new(93);
    for _ in 0..20 {
        let iso = lcg_isometry(&mut rng, pent.space(), &tol);
        let moved = pent.conjugated(&iso);
        let report = quadbend::quadrangle::quadrangle_report(&moved, None, &tol);
        assert_eq!(report.all_ok, base.all_ok);
    }
}

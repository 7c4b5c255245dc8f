//! Hermitian linear algebra on C³ for an arbitrary signature-(−,+,+) Gram matrix:
//! inner products, tance, point signs, polar points, relative position of lines.

use crate::linalg::{C64, Mat3, Vec3};
use crate::{Error, Result, Tolerance};

/// Sign of a nonzero point under the form: ⟨p,p⟩ < 0, = 0, > 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointSign {
    Negative,
    Isotropic,
    Positive,
}

impl PointSign {
    pub fn as_i8(self) -> i8 {
        match self {
            PointSign::Negative => -1,
            PointSign::Isotropic => 0,
            PointSign::Positive => 1,
        }
    }
}

/// Relative position of two hyperbolic lines, given by their polar points.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum LineRelation {
    Ultraparallel { dist: f64 },
    Asymptotic,
    Concurrent { angle: f64 },
}

/// A point of the complex projective plane, by a nonzero representative.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProjPoint {
    rep: Vec3,
}

impl ProjPoint {
    pub fn new(rep: Vec3) -> Result<Self> {
        if rep.norm() == 0.0 {
            return Err(Error::ZeroVector);
        }
        Ok(ProjPoint { rep })
    }

    pub(crate) fn from_raw(rep: Vec3) -> Self {
        debug_assert!(rep.norm() > 0.0);
        ProjPoint { rep }
    }

    pub fn rep(&self) -> Vec3 {
        self.rep
    }

    pub fn scale(&self, s: C64) -> ProjPoint {
        ProjPoint {
            rep: self.rep.scale(s),
        }
    }
}

/// C³ with a Hermitian form of signature (−,+,+), ⟨x,y⟩ = xᵀ G ȳ.
///
/// The constructor diagonalizes G once; the eigenframe provides the
/// scale-fixing norm against which isotropy tolerances are measured.
#[derive(Clone, Debug)]
pub struct HermitianSpace {
    gram: Mat3,
    eigvals: [f64; 3],
    eigvecs: [Vec3; 3],
}

impl HermitianSpace {
    pub fn new(gram: Mat3, _tol: &Tolerance) -> Result<Self> {
        for i in 0..3 {
            for j in 0..3 {
                if gram.0[i][j] != gram.0[j][i].conj() {
                    return Err(Error::NotHermitian);
                }
            }
        }
        let (eigvals, eigvecs) = hermitian_eigen(&gram)?;
        // exactly one negative, two positive eigenvalues (ordered ascending)
        if !(eigvals[0] < 0.0 && eigvals[1] > 0.0 && eigvals[2] > 0.0) {
            return Err(Error::SignatureError);
        }
        Ok(HermitianSpace {
            gram,
            eigvals,
            eigvecs,
        })
    }

    pub fn gram(&self) -> &Mat3 {
        &self.gram
    }

    /// Eigenvalues of the Gram matrix, ascending.
    pub fn gram_eigenvalues(&self) -> [f64; 3] {
        self.eigvals
    }

    /// ⟨x,y⟩ = xᵀ G ȳ; conjugate-symmetric.
    pub fn inner(&self, x: &Vec3, y: &Vec3) -> C64 {
        x.dot(&(self.gram * y.conj()))
    }

    /// ⟨x,x⟩, which is real for a Hermitian form.
    pub fn quad(&self, x: &Vec3) -> f64 {
        self.inner(x, x).re
    }

    /// Squared scale-fixing norm: the Euclidean square in the orthogonalizing
    /// eigenframe, Σ |λᵢ| |uᵢᴴx|². Comparable with |⟨x,x⟩| at any scale.
    pub fn norm2(&self, x: &Vec3) -> f64 {
        let mut s = 0.0;
        for k in 0..3 {
            let c = self.eigvecs[k].conj().dot(x);
            s += self.eigvals[k].abs() * c.norm_sqr();
        }
        s
    }

    pub fn sign(&self, p: &ProjPoint, tol: &Tolerance) -> PointSign {
        let q = self.quad(&p.rep);
        let n2 = self.norm2(&p.rep);
        if q < -tol.iso_tol * n2 {
            PointSign::Negative
        } else if q > tol.iso_tol * n2 {
            PointSign::Positive
        } else {
            PointSign::Isotropic
        }
    }

    /// ta(p,q) = ⟨p,q⟩⟨q,p⟩ / (⟨p,p⟩⟨q,q⟩). Scale- and isometry-invariant.
    pub fn tance(&self, p: &ProjPoint, q: &ProjPoint, tol: &Tolerance) -> Result<f64> {
        if self.sign(p, tol) == PointSign::Isotropic || self.sign(q, tol) == PointSign::Isotropic {
            return Err(Error::IsotropicArgument);
        }
        Ok(self.tance_unchecked(&p.rep, &q.rep))
    }

    pub(crate) fn tance_unchecked(&self, x: &Vec3, y: &Vec3) -> f64 {
        let num = self.inner(x, y).norm_sqr();
        num / (self.quad(x) * self.quad(y))
    }

    /// The point orthogonal to both x and y: the polar point of the line
    /// through them. Unique up to scale; returned with unit Euclidean norm.
    pub fn orthogonal_complement_point(
        &self,
        x: &ProjPoint,
        y: &ProjPoint,
        tol: &Tolerance,
    ) -> Result<ProjPoint> {
        let span = x.rep.cross(&y.rep);
        if span.norm() < tol.eq_tol * x.rep.norm() * y.rep.norm() {
            return Err(Error::DegenerateSpan);
        }
        let gx = self.gram * x.rep.conj();
        let gy = self.gram * y.rep.conj();
        let z = gx.cross(&gy);
        let n = z.norm();
        if n == 0.0 {
            return Err(Error::DegenerateSpan);
        }
        Ok(ProjPoint::from_raw(z.scale(C64::new(1.0 / n, 0.0))))
    }

    /// Ultraparallel / asymptotic / concurrent classification of the
    /// hyperbolic lines polar to two positive points.
    pub fn line_relation(
        &self,
        p: &ProjPoint,
        q: &ProjPoint,
        tol: &Tolerance,
    ) -> Result<LineRelation> {
        if self.sign(p, tol) != PointSign::Positive || self.sign(q, tol) != PointSign::Positive {
            return Err(Error::NotPolarPoints);
        }
        let ta = self.tance_unchecked(&p.rep, &q.rep);
        if ta > 1.0 + tol.eq_tol {
            Ok(LineRelation::Ultraparallel {
                dist: ta.sqrt().acosh(),
            })
        } else if ta < 1.0 - tol.eq_tol {
            Ok(LineRelation::Concurrent {
                angle: ta.max(0.0).sqrt().acos(),
            })
        } else {
            Ok(LineRelation::Asymptotic)
        }
    }

    /// Representative-free projective equality: tance for nonisotropic pairs,
    /// eigenframe overlap for isotropic ones.
    pub fn proj_eq(&self, p: &ProjPoint, q: &ProjPoint, tol: &Tolerance) -> bool {
        let sp = self.sign(p, tol);
        let sq = self.sign(q, tol);
        if sp != sq {
            return false;
        }
        if sp != PointSign::Isotropic {
            return (self.tance_unchecked(&p.rep, &q.rep) - 1.0).abs() < tol.eq_tol;
        }
        let mut dot = C64::new(0.0, 0.0);
        for k in 0..3 {
            let a = self.eigvecs[k].conj().dot(&p.rep) * self.eigvals[k].abs().sqrt();
            let b = self.eigvecs[k].conj().dot(&q.rep) * self.eigvals[k].abs().sqrt();
            dot += a.conj() * b;
        }
        dot.norm_sqr() / (self.norm2(&p.rep) * self.norm2(&q.rep)) > 1.0 - tol.eq_tol
    }
}

/// Eigen-decomposition of a 3x3 Hermitian matrix by cyclic complex Jacobi
/// rotations: real eigenvalues ascending, orthonormal eigenvectors. Robust
/// for repeated eigenvalues (e.g. the canonical diag(−1,1,1) form).
fn hermitian_eigen(g: &Mat3) -> Result<([f64; 3], [Vec3; 3])> {
    let mut a = *g;
    let mut v = Mat3::identity();
    let scale = g.norm_inf().max(1e-300);
    for _sweep in 0..30 {
        let mut off = 0.0f64;
        for (p, q) in [(0usize, 1usize), (0, 2), (1, 2)] {
            off = off.max(a.0[p][q].norm());
        }
        if off < 1e-15 * scale {
            break;
        }
        for (p, q) in [(0usize, 1usize), (0, 2), (1, 2)] {
            let apq = a.0[p][q];
            if apq.norm() < 1e-18 * scale {
                continue;
            }
            // phase rotation makes the pivot real, then a real Jacobi angle
            let phase = apq / apq.norm();
            let app = a.0[p][p].re;
            let aqq = a.0[q][q].re;
            let theta = 0.5 * (2.0 * apq.norm()).atan2(app - aqq);
            let c = theta.cos();
            let s = phase.scale(theta.sin());
            // U = Id except U[p][p] = c, U[p][q] = -conj(s), U[q][p] = s, U[q][q] = c
            let mut u = Mat3::identity();
            u.0[p][p] = C64::new(c, 0.0);
            u.0[p][q] = -s.conj();
            u.0[q][p] = s;
            u.0[q][q] = C64::new(c, 0.0);
            a = u.conj_transpose() * a * u;
            v = v * u;
        }
    }
    let mut pairs: Vec<(f64, Vec3)> = (0..3).map(|k| (a.0[k][k].re, v.col(k))).collect();
    pairs.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
    let vals = [pairs[0].0, pairs[1].0, pairs[2].0];
    let vecs = [pairs[0].1, pairs[1].1, pairs[2].1];
    Ok((vals, vecs))
}

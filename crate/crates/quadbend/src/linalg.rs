//! Minimal dense 3x3 complex linear algebra.
//!
//! Everything in the crate lives on C³, so vectors and matrices are fixed-size
//! and the eigenproblem is solved by the closed-form cubic with a Newton polish
//! per root, keeping results deterministic across platforms.

use num_complex::Complex64;
use std::ops::{Add, Mul, Neg, Sub};

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Vec3(pub [C64; 3]);

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat3(pub [[C64; 3]; 3]);

impl Vec3 {
    pub fn zero() -> Self {
        Vec3([ZERO; 3])
    }

    pub fn from_reals(re: [f64; 3]) -> Self {
        Vec3([
            C64::new(re[0], 0.0),
            C64::new(re[1], 0.0),
            C64::new(re[2], 0.0),
        ])
    }

    pub fn basis(k: usize) -> Self {
        let mut v = Vec3::zero();
        v.0[k] = ONE;
        v
    }

    pub fn conj(&self) -> Self {
        Vec3([self.0[0].conj(), self.0[1].conj(), self.0[2].conj()])
    }

    /// Bilinear dot product (no conjugation).
    pub fn dot(&self, o: &Vec3) -> C64 {
        self.0[0] * o.0[0] + self.0[1] * o.0[1] + self.0[2] * o.0[2]
    }

    /// Bilinear cross product (no conjugation).
    pub fn cross(&self, o: &Vec3) -> Vec3 {
        Vec3([
            self.0[1] * o.0[2] - self.0[2] * o.0[1],
            self.0[2] * o.0[0] - self.0[0] * o.0[2],
            self.0[0] * o.0[1] - self.0[1] * o.0[0],
        ])
    }

    pub fn norm(&self) -> f64 {
        (self.0[0].norm_sqr() + self.0[1].norm_sqr() + self.0[2].norm_sqr()).sqrt()
    }

    pub fn norm_inf(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn scale(&self, s: C64) -> Vec3 {
        Vec3([self.0[0] * s, self.0[1] * s, self.0[2] * s])
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3([self.0[0] - o.0[0], self.0[1] - o.0[1], self.0[2] - o.0[2]])
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3([-self.0[0], -self.0[1], -self.0[2]])
    }
}

impl Mat3 {
    pub fn zero() -> Self {
        Mat3([[ZERO; 3]; 3])
    }

    pub fn identity() -> Self {
        let mut m = Mat3::zero();
        for k in 0..3 {
            m.0[k][k] = ONE;
        }
        m
    }

    pub fn from_cols(c0: Vec3, c1: Vec3, c2: Vec3) -> Self {
        let mut m = Mat3::zero();
        for r in 0..3 {
            m.0[r][0] = c0.0[r];
            m.0[r][1] = c1.0[r];
            m.0[r][2] = c2.0[r];
        }
        m
    }

    pub fn col(&self, j: usize) -> Vec3 {
        Vec3([self.0[0][j], self.0[1][j], self.0[2][j]])
    }

    pub fn row(&self, i: usize) -> Vec3 {
        Vec3(self.0[i])
    }

    pub fn transpose(&self) -> Mat3 {
        let mut m = Mat3::zero();
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] = self.0[j][i];
            }
        }
        m
    }

    pub fn conj(&self) -> Mat3 {
        let mut m = Mat3::zero();
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] = self.0[i][j].conj();
            }
        }
        m
    }

    pub fn conj_transpose(&self) -> Mat3 {
        let mut m = Mat3::zero();
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] = self.0[j][i].conj();
            }
        }
        m
    }

    /// Outer product u * v^T (no conjugation of v).
    pub fn outer(u: &Vec3, v: &Vec3) -> Mat3 {
        let mut m = Mat3::zero();
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] = u.0[i] * v.0[j];
            }
        }
        m
    }

    pub fn trace(&self) -> C64 {
        self.0[0][0] + self.0[1][1] + self.0[2][2]
    }

    pub fn det(&self) -> C64 {
        let m = &self.0;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    /// Adjugate (transposed cofactor matrix): `self * adj = det * I`.
    pub fn adjugate(&self) -> Mat3 {
        let m = &self.0;
        let c = |i1: usize, i2: usize, j1: usize, j2: usize| {
            m[i1][j1] * m[i2][j2] - m[i1][j2] * m[i2][j1]
        };
        Mat3([
            [c(1, 2, 1, 2), -c(0, 2, 1, 2), c(0, 1, 1, 2)],
            [-c(1, 2, 0, 2), c(0, 2, 0, 2), -c(0, 1, 0, 2)],
            [c(1, 2, 0, 1), -c(0, 2, 0, 1), c(0, 1, 0, 1)],
        ])
    }

    pub fn inverse(&self) -> Option<Mat3> {
        let d = self.det();
        if d.norm() < 1e-300 {
            return None;
        }
        Some(self.adjugate().scale(ONE / d))
    }

    pub fn scale(&self, s: C64) -> Mat3 {
        let mut m = *self;
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] *= s;
            }
        }
        m
    }

    /// Entrywise max modulus (the paper's matrix max norm).
    pub fn norm_inf(&self) -> f64 {
        let mut n = 0.0f64;
        for i in 0..3 {
            for j in 0..3 {
                n = n.max(self.0[i][j].norm());
            }
        }
        n
    }

    /// Solve `self * x = b` by LU with partial pivoting.
    pub fn solve(&self, b: &Vec3) -> Option<Vec3> {
        let mut a = self.0;
        let mut x = b.0;
        let mut perm = [0usize, 1, 2];
        for k in 0..3 {
            let piv = (k..3)
                .max_by(|&i, &j| {
                    a[perm[i]][k]
                        .norm()
                        .partial_cmp(&a[perm[j]][k].norm())
                        .unwrap()
                })
                .unwrap();
            perm.swap(k, piv);
            let pk = a[perm[k]][k];
            if pk.norm() < 1e-300 {
                return None;
            }
            for i in (k + 1)..3 {
                let f = a[perm[i]][k] / pk;
                for j in k..3 {
                    let t = a[perm[k]][j];
                    a[perm[i]][j] -= f * t;
                }
                let t = x[perm[k]];
                x[perm[i]] -= f * t;
            }
        }
        let mut out = [ZERO; 3];
        for k in (0..3).rev() {
            let mut s = x[perm[k]];
            for j in (k + 1)..3 {
                s -= a[perm[k]][j] * out[j];
            }
            out[k] = s / a[perm[k]][k];
        }
        Some(Vec3(out))
    }
}

impl Add for Mat3 {
    type Output = Mat3;
    fn add(self, o: Mat3) -> Mat3 {
        let mut m = Mat3::zero();
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] = self.0[i][j] + o.0[i][j];
            }
        }
        m
    }
}

impl Sub for Mat3 {
    type Output = Mat3;
    fn sub(self, o: Mat3) -> Mat3 {
        let mut m = Mat3::zero();
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] = self.0[i][j] - o.0[i][j];
            }
        }
        m
    }
}

impl Mul for Mat3 {
    type Output = Mat3;
    fn mul(self, o: Mat3) -> Mat3 {
        let mut m = Mat3::zero();
        for i in 0..3 {
            for j in 0..3 {
                let mut s = ZERO;
                for k in 0..3 {
                    s += self.0[i][k] * o.0[k][j];
                }
                m.0[i][j] = s;
            }
        }
        m
    }
}

impl Mul<Vec3> for Mat3 {
    type Output = Vec3;
    fn mul(self, v: Vec3) -> Vec3 {
        let mut out = [ZERO; 3];
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.0[i][0] * v.0[0] + self.0[i][1] * v.0[1] + self.0[i][2] * v.0[2];
        }
        Vec3(out)
    }
}

/// Roots of `z^3 + a2 z^2 + a1 z + a0` (Cardano), each polished by a Newton step.
pub fn cubic_roots(a2: C64, a1: C64, a0: C64) -> [C64; 3] {
    // depressed cubic t^3 + p t + q with z = t - a2/3
    let shift = a2 / 3.0;
    let p = a1 - a2 * a2 / 3.0;
    let q = a0 - a1 * a2 / 3.0 + a2 * a2 * a2 * 2.0 / 27.0;
    let half_q = q / 2.0;
    let disc = half_q * half_q + p * p * p / 27.0;
    let sq = disc.sqrt();
    // pick the branch keeping |u| large for stability
    let mut u3 = -half_q + sq;
    let alt = -half_q - sq;
    if alt.norm() > u3.norm() {
        u3 = alt;
    }
    let omega = C64::new(-0.5, 0.75f64.sqrt());
    let mut roots = [ZERO; 3];
    if u3.norm() < 1e-280 {
        for r in roots.iter_mut() {
            *r = -shift;
        }
        return roots;
    }
    let u = u3.powf(1.0 / 3.0);
    for (k, r) in roots.iter_mut().enumerate() {
        let uk = u * omega.powu(k as u32);
        *r = uk - p / (uk * 3.0) - shift;
    }
    // Newton polish on the original cubic
    for r in roots.iter_mut() {
        for _ in 0..2 {
            let z = *r;
            let f = ((z + a2) * z + a1) * z + a0;
            let df = (z * 3.0 + a2 * 2.0) * z + a1;
            if df.norm() > 1e-280 {
                *r = z - f / df;
            }
        }
    }
    roots
}

/// Eigenvalues and eigenvectors of a 3x3 complex matrix with separated spectrum.
///
/// Kernel vectors come from cross products of rows of `m - λI` (the largest of
/// the three pairings), which is exact for rank-2 matrices up to rounding.
pub fn eigen3(m: &Mat3) -> [(C64, Vec3); 3] {
    let tr = m.trace();
    // second elementary symmetric function = sum of principal 2x2 minors
    let a = &m.0;
    let e2 = a[0][0] * a[1][1] - a[0][1] * a[1][0] + a[0][0] * a[2][2] - a[0][2] * a[2][0]
        + a[1][1] * a[2][2]
        - a[1][2] * a[2][1];
    let det = m.det();
    let roots = cubic_roots(-tr, e2, -det);
    let mut out = [(ZERO, Vec3::zero()); 3];
    for (k, &lam) in roots.iter().enumerate() {
        let mut b = *m;
        for i in 0..3 {
            b.0[i][i] -= lam;
        }
        let r0 = b.row(0);
        let r1 = b.row(1);
        let r2 = b.row(2);
        let cands = [r0.cross(&r1), r0.cross(&r2), r1.cross(&r2)];
        let mut best = cands[0];
        for c in &cands[1..] {
            if c.norm() > best.norm() {
                best = *c;
            }
        }
        let mut v = best.scale(C64::new(1.0 / best.norm().max(1e-300), 0.0));
        // one inverse-iteration step against a slightly shifted matrix
        let mut bs = *m;
        let shift = lam * (1.0 + 1e-12) + C64::new(1e-14, 0.0);
        for i in 0..3 {
            bs.0[i][i] -= shift;
        }
        if let Some(w) = bs.solve(&v) {
            let n = w.norm();
            if n.is_finite() && n > 0.0 {
                v = w.scale(C64::new(1.0 / n, 0.0));
            }
        }
        out[k] = (lam, v);
    }
    out
}

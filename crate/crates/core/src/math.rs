//! Small fixed-size linear algebra used throughout the crate.
//!
//! The types are deliberately minimal: 3-vectors for ambient quantities and
//! symmetric 2x2 matrices for metric-like tensors on the parameter domain.
//! Keeping the arithmetic in-crate (instead of pulling in a matrix library)
//! guarantees a fixed floating-point evaluation order, which the reflection
//! tests rely on: mirrored data must produce bitwise-mirrored results.

use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

/// Vector in ambient 3-space.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

pub const fn vec3(x: f64, y: f64, z: f64) -> Vec3 {
    Vec3 { x, y, z }
}

impl Vec3 {
    pub const ZERO: Vec3 = vec3(0.0, 0.0, 0.0);
    pub const EX: Vec3 = vec3(1.0, 0.0, 0.0);
    pub const EY: Vec3 = vec3(0.0, 1.0, 0.0);
    pub const EZ: Vec3 = vec3(0.0, 0.0, 1.0);

    pub fn dot(self, o: Vec3) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(self, o: Vec3) -> Vec3 {
        vec3(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn normalized(self) -> Vec3 {
        self / self.norm()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn from_array(a: [f64; 3]) -> Vec3 {
        vec3(a[0], a[1], a[2])
    }

    /// Component-wise sign flip by a diagonal matrix diag(s.x, s.y, s.z).
    /// Used for the reflection operators, where exactness matters: each
    /// component is multiplied on its own, so +/-1 factors are lossless.
    pub fn diag_mul(self, s: Vec3) -> Vec3 {
        vec3(s.x * self.x, s.y * self.y, s.z * self.z)
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        vec3(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl AddAssign for Vec3 {
    fn add_assign(&mut self, o: Vec3) {
        *self = *self + o;
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        vec3(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        vec3(-self.x, -self.y, -self.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, s: f64) -> Vec3 {
        vec3(self.x * s, self.y * s, self.z * s)
    }
}

impl Mul<Vec3> for f64 {
    type Output = Vec3;
    fn mul(self, v: Vec3) -> Vec3 {
        v * self
    }
}

impl Div<f64> for Vec3 {
    type Output = Vec3;
    fn div(self, s: f64) -> Vec3 {
        vec3(self.x / s, self.y / s, self.z / s)
    }
}

/// Symmetric 2x2 tensor on the parameter domain (metric, second fundamental
/// form, ...), stored as the three independent entries.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Sym2 {
    pub a11: f64,
    pub a12: f64,
    pub a22: f64,
}

pub const fn sym2(a11: f64, a12: f64, a22: f64) -> Sym2 {
    Sym2 { a11, a12, a22 }
}

impl Sym2 {
    pub const IDENTITY: Sym2 = sym2(1.0, 0.0, 1.0);

    pub fn det(self) -> f64 {
        self.a11 * self.a22 - self.a12 * self.a12
    }

    /// Inverse of a symmetric 2x2 matrix; caller guarantees det != 0.
    pub fn inverse(self) -> Sym2 {
        let d = self.det();
        sym2(self.a22 / d, -self.a12 / d, self.a11 / d)
    }

    /// trace(g^-1 A) for a metric g = self^-1 supplied as its inverse.
    pub fn trace_with_inverse(self, inv: Sym2) -> f64 {
        inv.a11 * self.a11 + 2.0 * inv.a12 * self.a12 + inv.a22 * self.a22
    }

    /// The squared norm |A|_g^2 = g^{ik} g^{jl} A_{ij} A_{kl}, given g^-1.
    pub fn norm_sq_with_inverse(self, inv: Sym2) -> f64 {
        // |A|^2 = trace((g^-1 A)^2); expand with B = g^-1 A.
        let b11 = inv.a11 * self.a11 + inv.a12 * self.a12;
        let b12 = inv.a11 * self.a12 + inv.a12 * self.a22;
        let b21 = inv.a12 * self.a11 + inv.a22 * self.a12;
        let b22 = inv.a12 * self.a12 + inv.a22 * self.a22;
        b11 * b11 + b12 * b21 + b21 * b12 + b22 * b22
    }

    /// Apply to a coordinate pair: (A v)_i = A_{ij} v^j.
    pub fn apply(self, v: [f64; 2]) -> [f64; 2] {
        [
            self.a11 * v[0] + self.a12 * v[1],
            self.a12 * v[0] + self.a22 * v[1],
        ]
    }

    /// Bilinear form A(v, w) on coordinate pairs.
    pub fn form(self, v: [f64; 2], w: [f64; 2]) -> f64 {
        let av = self.apply(v);
        av[0] * w[0] + av[1] * w[1]
    }

    pub fn scale(self, s: f64) -> Sym2 {
        sym2(self.a11 * s, self.a12 * s, self.a22 * s)
    }

    pub fn add(self, o: Sym2) -> Sym2 {
        sym2(self.a11 + o.a11, self.a12 + o.a12, self.a22 + o.a22)
    }

    pub fn sub(self, o: Sym2) -> Sym2 {
        sym2(self.a11 - o.a11, self.a12 - o.a12, self.a22 - o.a22)
    }

    pub fn is_finite(self) -> bool {
        self.a11.is_finite() && self.a12.is_finite() && self.a22.is_finite()
    }
}

/// General (not necessarily symmetric) 2x2 matrix, used for mixed tensors
/// such as the shape operator `g^-1 h`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Mat2 {
    pub a11: f64,
    pub a12: f64,
    pub a21: f64,
    pub a22: f64,
}

impl Mat2 {
    pub fn from_sym(s: Sym2) -> Mat2 {
        Mat2 {
            a11: s.a11,
            a12: s.a12,
            a21: s.a12,
            a22: s.a22,
        }
    }

    /// Raise one index of a symmetric tensor: `inv * s`.
    pub fn mixed(inv: Sym2, s: Sym2) -> Mat2 {
        Mat2 {
            a11: inv.a11 * s.a11 + inv.a12 * s.a12,
            a12: inv.a11 * s.a12 + inv.a12 * s.a22,
            a21: inv.a12 * s.a11 + inv.a22 * s.a12,
            a22: inv.a12 * s.a12 + inv.a22 * s.a22,
        }
    }

    pub fn mul(self, o: Mat2) -> Mat2 {
        Mat2 {
            a11: self.a11 * o.a11 + self.a12 * o.a21,
            a12: self.a11 * o.a12 + self.a12 * o.a22,
            a21: self.a21 * o.a11 + self.a22 * o.a21,
            a22: self.a21 * o.a12 + self.a22 * o.a22,
        }
    }

    pub fn trace(self) -> f64 {
        self.a11 + self.a22
    }
}

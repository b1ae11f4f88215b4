//! Uniform parameter grids on a rectangle, finite-difference operators and
//! trapezoid quadrature.
//!
//! The rectangle is `[x0, x1] x [y0, y1]`, sampled on an `nx x ny` lattice of
//! nodes stored row-major (`index = j * nx + i`, `i` along x). Derivatives use
//! second-order central stencils in the interior and second-order one-sided
//! stencils on the edge rows/columns, so every derived field lives on the full
//! lattice with uniform O(h^2) accuracy.
//!
//! Two properties are load-bearing for the rest of the crate and deliberately
//! built into the evaluation order:
//!
//! * **Mirror exactness.** All stencils evaluate edge-in, with coefficient
//!   arrays shared between the two edges. Data that is exactly mirrored about
//!   the middle row therefore produces derivative fields that are exactly
//!   (bitwise) mirrored, up to the intended sign.
//! * **Paired-row summation.** Area quadrature first sums each row
//!   left-to-right, then combines row `j` with row `ny-1-j` before
//!   accumulating. Integrands that are exactly odd about the middle row cancel
//!   in floating point instead of leaving an O(n * eps) residue.

use crate::error::{Error, Result};
use crate::math::Vec3;

/// Values that finite-difference stencils can combine linearly.
pub trait Field: Copy {
    fn zero() -> Self;
    fn add(self, o: Self) -> Self;
    fn sub(self, o: Self) -> Self;
    fn scale(self, s: f64) -> Self;
}

impl Field for f64 {
    fn zero() -> Self {
        0.0
    }
    fn add(self, o: Self) -> Self {
        self + o
    }
    fn sub(self, o: Self) -> Self {
        self - o
    }
    fn scale(self, s: f64) -> Self {
        self * s
    }
}

impl Field for Vec3 {
    fn zero() -> Self {
        Vec3::ZERO
    }
    fn add(self, o: Self) -> Self {
        self + o
    }
    fn sub(self, o: Self) -> Self {
        self - o
    }
    fn scale(self, s: f64) -> Self {
        self * s
    }
}

/// Uniform tensor-product grid over a parameter rectangle.
#[derive(Clone, Debug, PartialEq)]
pub struct ParamGrid {
    pub nx: usize,
    pub ny: usize,
    pub x_range: (f64, f64),
    pub y_range: (f64, f64),
    pub hx: f64,
    pub hy: f64,
    /// Node coordinates, kept explicitly so that derived grids (reflections)
    /// can share coordinates bitwise with their parents.
    xs: Vec<f64>,
    ys: Vec<f64>,
}

impl ParamGrid {
    pub const MIN_NODES: usize = 5;

    pub fn new(nx: usize, ny: usize, x_range: (f64, f64), y_range: (f64, f64)) -> Result<Self> {
        if nx < Self::MIN_NODES || ny < Self::MIN_NODES {
            return Err(Error::InvalidGrid { nx, ny });
        }
        if !(x_range.1 > x_range.0) || !(y_range.1 > y_range.0) {
            return Err(Error::InvalidGrid { nx, ny });
        }
        let hx = (x_range.1 - x_range.0) / (nx - 1) as f64;
        let hy = (y_range.1 - y_range.0) / (ny - 1) as f64;
        let xs = linspace(x_range.0, x_range.1, nx, hx);
        let ys = linspace(y_range.0, y_range.1, ny, hy);
        Ok(ParamGrid {
            nx,
            ny,
            x_range,
            y_range,
            hx,
            hy,
            xs,
            ys,
        })
    }

    /// Standard half-strip domain `[-pi, pi] x [0, 1]`.
    pub fn half_strip(nx: usize, ny: usize) -> Result<Self> {
        Self::new(nx, ny, (-std::f64::consts::PI, std::f64::consts::PI), (0.0, 1.0))
    }

    /// Build from explicit coordinate arrays (used by the reflection module so
    /// mirrored grids share node coordinates bitwise). Coordinates must be
    /// uniformly spaced; `hx`/`hy` are taken from the ends.
    pub(crate) fn from_coords(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self> {
        let nx = xs.len();
        let ny = ys.len();
        if nx < Self::MIN_NODES || ny < Self::MIN_NODES {
            return Err(Error::InvalidGrid { nx, ny });
        }
        let x_range = (xs[0], xs[nx - 1]);
        let y_range = (ys[0], ys[ny - 1]);
        let hx = (x_range.1 - x_range.0) / (nx - 1) as f64;
        let hy = (y_range.1 - y_range.0) / (ny - 1) as f64;
        Ok(ParamGrid {
            nx,
            ny,
            x_range,
            y_range,
            hx,
            hy,
            xs,
            ys,
        })
    }

    #[inline]
    pub fn idx(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < self.nx && j < self.ny);
        j * self.nx + i
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn x(&self, i: usize) -> f64 {
        self.xs[i]
    }

    #[inline]
    pub fn y(&self, j: usize) -> f64 {
        self.ys[j]
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn ys(&self) -> &[f64] {
        &self.ys
    }

    /// True when the bottom row lies exactly on y = 0, i.e. the grid carries
    /// the boundary interval I of the half-strip convention.
    pub fn has_zero_boundary_row(&self) -> bool {
        self.ys[0] == 0.0
    }

    /// Sample a scalar function on all nodes.
    pub fn sample_scalar(&self, f: impl Fn(f64, f64) -> f64) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.len());
        for j in 0..self.ny {
            for i in 0..self.nx {
                out.push(f(self.xs[i], self.ys[j]));
            }
        }
        out
    }

    /// Sample a vector function on all nodes.
    pub fn sample_vec(&self, f: impl Fn(f64, f64) -> Vec3) -> Vec<Vec3> {
        let mut out = Vec::with_capacity(self.len());
        for j in 0..self.ny {
            for i in 0..self.nx {
                out.push(f(self.xs[i], self.ys[j]));
            }
        }
        out
    }

    // ---- finite differences -------------------------------------------------

    /// First derivative along x, second order everywhere.
    pub fn d_x<T: Field>(&self, f: &[T]) -> Vec<T> {
        assert_eq!(f.len(), self.len());
        let mut out = vec![T::zero(); self.len()];
        let inv2h = 1.0 / (2.0 * self.hx);
        for j in 0..self.ny {
            let row = j * self.nx;
            out[row] = one_sided_d1(f[row], f[row + 1], f[row + 2], inv2h, 1.0);
            for i in 1..self.nx - 1 {
                out[row + i] = f[row + i + 1].sub(f[row + i - 1]).scale(inv2h);
            }
            let e = row + self.nx - 1;
            out[e] = one_sided_d1(f[e], f[e - 1], f[e - 2], inv2h, -1.0);
        }
        out
    }

    /// First derivative along y, second order everywhere.
    pub fn d_y<T: Field>(&self, f: &[T]) -> Vec<T> {
        assert_eq!(f.len(), self.len());
        let mut out = vec![T::zero(); self.len()];
        let inv2h = 1.0 / (2.0 * self.hy);
        let nx = self.nx;
        for i in 0..nx {
            out[i] = one_sided_d1(f[i], f[nx + i], f[2 * nx + i], inv2h, 1.0);
            for j in 1..self.ny - 1 {
                let k = j * nx + i;
                out[k] = f[k + nx].sub(f[k - nx]).scale(inv2h);
            }
            let e = (self.ny - 1) * nx + i;
            out[e] = one_sided_d1(f[e], f[e - nx], f[e - 2 * nx], inv2h, -1.0);
        }
        out
    }

    /// Second derivative along x.
    pub fn d_xx<T: Field>(&self, f: &[T]) -> Vec<T> {
        assert_eq!(f.len(), self.len());
        let mut out = vec![T::zero(); self.len()];
        let invh2 = 1.0 / (self.hx * self.hx);
        for j in 0..self.ny {
            let row = j * self.nx;
            out[row] = one_sided_d2(f[row], f[row + 1], f[row + 2], f[row + 3], invh2);
            for i in 1..self.nx - 1 {
                let k = row + i;
                out[k] = f[k + 1].add(f[k - 1]).sub(f[k].scale(2.0)).scale(invh2);
            }
            let e = row + self.nx - 1;
            out[e] = one_sided_d2(f[e], f[e - 1], f[e - 2], f[e - 3], invh2);
        }
        out
    }

    /// Second derivative along y.
    pub fn d_yy<T: Field>(&self, f: &[T]) -> Vec<T> {
        assert_eq!(f.len(), self.len());
        let mut out = vec![T::zero(); self.len()];
        let invh2 = 1.0 / (self.hy * self.hy);
        let nx = self.nx;
        for i in 0..nx {
            out[i] = one_sided_d2(f[i], f[nx + i], f[2 * nx + i], f[3 * nx + i], invh2);
            for j in 1..self.ny - 1 {
                let k = j * nx + i;
                out[k] = f[k + nx].add(f[k - nx]).sub(f[k].scale(2.0)).scale(invh2);
            }
            let e = (self.ny - 1) * nx + i;
            out[e] = one_sided_d2(f[e], f[e - nx], f[e - 2 * nx], f[e - 3 * nx], invh2);
        }
        out
    }

    /// Mixed second derivative, computed as d_x(d_y f); O(h^2) everywhere.
    pub fn d_xy<T: Field>(&self, f: &[T]) -> Vec<T> {
        self.d_x(&self.d_y(f))
    }

    // ---- quadrature ---------------------------------------------------------

    /// Composite trapezoid rule over the rectangle.
    ///
    /// Rows are summed left-to-right, then row `j` is paired with row
    /// `ny-1-j` before the final accumulation. For integrands that are exactly
    /// odd about the middle row the pair sums vanish in floating point.
    pub fn integrate_area(&self, values: &[f64]) -> f64 {
        assert_eq!(values.len(), self.len());
        let mut rows = Vec::with_capacity(self.ny);
        for j in 0..self.ny {
            let row = &values[j * self.nx..(j + 1) * self.nx];
            let mut s = 0.5 * row[0];
            for &v in &row[1..self.nx - 1] {
                s += v;
            }
            s += 0.5 * row[self.nx - 1];
            let wy = if j == 0 || j == self.ny - 1 { 0.5 } else { 1.0 };
            rows.push(s * wy);
        }
        let mut total = 0.0;
        let mut lo = 0;
        let mut hi = self.ny - 1;
        while lo < hi {
            total += rows[lo] + rows[hi];
            lo += 1;
            hi -= 1;
        }
        if lo == hi {
            total += rows[lo];
        }
        total * self.hx * self.hy
    }

    /// Composite trapezoid rule along one grid row (values indexed by i).
    pub fn integrate_row(&self, values: &[f64]) -> f64 {
        assert_eq!(values.len(), self.nx);
        let mut s = 0.5 * values[0];
        for &v in &values[1..self.nx - 1] {
            s += v;
        }
        s += 0.5 * values[self.nx - 1];
        s * self.hx
    }

    /// Extract the bottom row (j = 0) of a node field.
    pub fn row0<T: Copy>(&self, f: &[T]) -> Vec<T> {
        f[..self.nx].to_vec()
    }
}

fn linspace(a: f64, b: f64, n: usize, h: f64) -> Vec<f64> {
    let mut v: Vec<f64> = (0..n).map(|k| a + k as f64 * h).collect();
    v[0] = a;
    v[n - 1] = b;
    v
}

/// Second-order one-sided first derivative at an edge node. `sign` is +1 when
/// the stencil walks in the positive coordinate direction, -1 otherwise.
#[inline]
fn one_sided_d1<T: Field>(f0: T, f1: T, f2: T, inv2h: f64, sign: f64) -> T {
    // (-3 f0 + 4 f1 - f2) / (2h), walking edge-in.
    f0.scale(-3.0)
        .add(f1.scale(4.0))
        .add(f2.scale(-1.0))
        .scale(inv2h * sign)
}

/// Second-order one-sided second derivative at an edge node (direction-free).
#[inline]
fn one_sided_d2<T: Field>(f0: T, f1: T, f2: T, f3: T, invh2: f64) -> T {
    // (2 f0 - 5 f1 + 4 f2 - f3) / h^2, walking edge-in.
    f0.scale(2.0)
        .add(f1.scale(-5.0))
        .add(f2.scale(4.0))
        .add(f3.scale(-1.0))
        .scale(invh2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn grid() -> ParamGrid {
        ParamGrid::new(33, 17, (-PI, PI), (0.0, 1.0)).unwrap()
    }

    #[test]
    fn rejects_small_grids() {
        assert!(matches!(
            ParamGrid::new(4, 17, (0.0, 1.0), (0.0, 1.0)),
            Err(Error::InvalidGrid { .. })
        ));
        assert!(matches!(
            ParamGrid::new(9, 9, (1.0, 0.0), (0.0, 1.0)),
            Err(Error::InvalidGrid { .. })
        ));
    }

    #[test]
    fn boundary_row_detection() {
        assert!(grid().has_zero_boundary_row());
        let g = ParamGrid::new(9, 9, (-1.0, 1.0), (-1.0, 1.0)).unwrap();
        assert!(!g.has_zero_boundary_row());
    }

    /// Derivatives of a smooth function converge at second order, including
    /// the one-sided edge stencils.
    #[test]
    fn fd_convergence_order_two() {
        let f = |x: f64, y: f64| (1.3 * x).sin() * (0.7 * y).cosh() + x * y;
        let fx = |x: f64, y: f64| 1.3 * (1.3 * x).cos() * (0.7 * y).cosh() + y;
        let fyy = |x: f64, y: f64| 0.49 * (1.3 * x).sin() * (0.7 * y).cosh();
        let mut errs = Vec::new();
        for n in [17, 33, 65] {
            let g = ParamGrid::new(n, n, (-1.0, 1.0), (0.0, 1.0)).unwrap();
            let vals = g.sample_scalar(f);
            let dx = g.d_x(&vals);
            let dyy = g.d_yy(&vals);
            let mut e: f64 = 0.0;
            for j in 0..g.ny {
                for i in 0..g.nx {
                    let k = g.idx(i, j);
                    e = e.max((dx[k] - fx(g.x(i), g.y(j))).abs());
                    e = e.max((dyy[k] - fyy(g.x(i), g.y(j))).abs());
                }
            }
            errs.push(e);
        }
        for w in errs.windows(2) {
            let order = (w[0] / w[1]).log2();
            assert!(order > 1.9, "expected order 2, got {order} ({errs:?})");
        }
    }

    #[test]
    fn trapezoid_integrates_polynomial_exactly() {
        // Bilinear integrand: trapezoid is exact.
        let g = grid();
        let vals = g.sample_scalar(|x, y| 2.0 + x * y);
        let area = 2.0 * PI * 1.0;
        assert!((g.integrate_area(&vals) - 2.0 * area).abs() < 1e-12);
    }

    #[test]
    fn odd_integrand_cancels_exactly() {
        // Integrand values that are exact sign-mirrors row for row (the way a
        // doubled patch produces them) must integrate to exactly zero thanks
        // to the paired-row accumulation.
        let g = ParamGrid::new(21, 20, (-1.0, 1.0), (-1.0, 1.0)).unwrap();
        let mut vals = vec![0.0; g.len()];
        for j in 10..20 {
            for i in 0..21 {
                let v = ((i as f64) * 0.37 + (j as f64) * 0.19).sin() * 3.7 + 0.1;
                vals[g.idx(i, j)] = v;
                vals[g.idx(i, 19 - j)] = -v;
            }
        }
        assert_eq!(g.integrate_area(&vals), 0.0);
    }

    #[test]
    fn mirrored_data_gives_mirrored_derivatives_bitwise() {
        // Build data on a symmetric strip that is exactly even about y = 0 and
        // check D_y is exactly odd, including the one-sided edge rows.
        let g = ParamGrid::new(9, 11, (-1.0, 1.0), (-1.0, 1.0)).unwrap();
        let mut vals = vec![0.0; g.len()];
        for j in 0..g.ny {
            for i in 0..g.nx {
                // sample only the upper half smoothly, mirror the lower half
                let jj = if j >= 5 { j } else { 10 - j };
                let y = g.y(jj);
                vals[g.idx(i, j)] = (g.x(i) + 0.3).cos() * (1.0 + y * y * y).sqrt();
            }
        }
        let dy = g.d_y(&vals);
        for j in 0..g.ny {
            for i in 0..g.nx {
                let a = dy[g.idx(i, j)];
                let b = dy[g.idx(i, 10 - j)];
                // exact as reals (this is what makes paired sums cancel);
                // for nonzero values that means identical bit patterns
                assert!(a == -b, "row {j}: {a} vs {}", -b);
                if a != 0.0 {
                    assert_eq!(a.to_bits(), (-b).to_bits(), "row {j}");
                }
            }
        }
    }
}

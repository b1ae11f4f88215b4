//! Pointwise jets of maps from the parameter rectangle into ambient space,
//! plus combinators for building derived surfaces and fields.
//!
//! A `Jet2` carries a map value together with its first and second partial
//! derivatives (and optionally the four third derivatives, needed when a unit
//! normal has to be differentiated twice, e.g. for normal variations). All
//! gallery surfaces and synthetic test fields implement [`SurfaceMap`], so
//! geometric quantities can be evaluated without finite-difference error.

use crate::math::{vec3, Vec3};
use std::sync::Arc;

/// Value, gradient and Hessian of a map `R^2 -> R^3` at one parameter point;
/// `third` optionally holds `[f_xxx, f_xxy, f_xyy, f_yyy]`.
#[derive(Clone, Copy, Debug)]
pub struct Jet2 {
    pub f: Vec3,
    pub fx: Vec3,
    pub fy: Vec3,
    pub fxx: Vec3,
    pub fxy: Vec3,
    pub fyy: Vec3,
    pub third: Option<[Vec3; 4]>,
}

impl Jet2 {
    pub fn constant(v: Vec3) -> Jet2 {
        Jet2 {
            f: v,
            fx: Vec3::ZERO,
            fy: Vec3::ZERO,
            fxx: Vec3::ZERO,
            fxy: Vec3::ZERO,
            fyy: Vec3::ZERO,
            third: Some([Vec3::ZERO; 4]),
        }
    }

    /// self + t * other; third derivatives survive only if both jets have them.
    pub fn axpy(&self, t: f64, o: &Jet2) -> Jet2 {
        Jet2 {
            f: self.f + t * o.f,
            fx: self.fx + t * o.fx,
            fy: self.fy + t * o.fy,
            fxx: self.fxx + t * o.fxx,
            fxy: self.fxy + t * o.fxy,
            fyy: self.fyy + t * o.fyy,
            third: match (self.third, o.third) {
                (Some(a), Some(b)) => {
                    Some([a[0] + t * b[0], a[1] + t * b[1], a[2] + t * b[2], a[3] + t * b[3]])
                }
                _ => None,
            },
        }
    }

    pub fn is_finite(&self) -> bool {
        self.f.is_finite()
            && self.fx.is_finite()
            && self.fy.is_finite()
            && self.fxx.is_finite()
            && self.fxy.is_finite()
            && self.fyy.is_finite()
    }
}

/// Value, gradient and Hessian of a scalar function on the parameter domain.
#[derive(Clone, Copy, Debug, Default)]
pub struct ScalarJet2 {
    pub v: f64,
    pub vx: f64,
    pub vy: f64,
    pub vxx: f64,
    pub vxy: f64,
    pub vyy: f64,
}

/// An analytically differentiable map from the parameter rectangle to R^3.
pub trait SurfaceMap: Send + Sync {
    fn jet(&self, x: f64, y: f64) -> Jet2;
}

/// An analytically differentiable scalar function on the parameter rectangle.
pub trait ScalarMap: Send + Sync {
    fn jet(&self, x: f64, y: f64) -> ScalarJet2;
}

pub type DynSurface = Arc<dyn SurfaceMap>;
pub type DynScalar = Arc<dyn ScalarMap>;

// ---------------------------------------------------------------------------
// trigonometric polynomials (closed-form jets to third order)
// ---------------------------------------------------------------------------

/// One separable term `amp * cos(kx x + px) * cos(ky y + py)`.
#[derive(Clone, Copy, Debug)]
pub struct TrigTerm {
    pub amp: Vec3,
    pub kx: f64,
    pub px: f64,
    pub ky: f64,
    pub py: f64,
}

/// Affine map plus a trigonometric polynomial; jets are exact to third order.
#[derive(Clone, Debug, Default)]
pub struct TrigSurface {
    pub offset: Vec3,
    pub ax: Vec3,
    pub ay: Vec3,
    pub terms: Vec<TrigTerm>,
}

/// cos-chain derivatives: returns (u, u', u'', u''') for u = cos(k t + p).
#[inline]
fn cos_chain(k: f64, p: f64, t: f64) -> [f64; 4] {
    let (s, c) = (k * t + p).sin_cos();
    [c, -k * s, -k * k * c, k * k * k * s]
}

impl SurfaceMap for TrigSurface {
    fn jet(&self, x: f64, y: f64) -> Jet2 {
        let mut f = self.offset + x * self.ax + y * self.ay;
        let mut fx = self.ax;
        let mut fy = self.ay;
        let (mut fxx, mut fxy, mut fyy) = (Vec3::ZERO, Vec3::ZERO, Vec3::ZERO);
        let mut th = [Vec3::ZERO; 4];
        for t in &self.terms {
            let u = cos_chain(t.kx, t.px, x);
            let w = cos_chain(t.ky, t.py, y);
            f += t.amp * (u[0] * w[0]);
            fx += t.amp * (u[1] * w[0]);
            fy += t.amp * (u[0] * w[1]);
            fxx += t.amp * (u[2] * w[0]);
            fxy += t.amp * (u[1] * w[1]);
            fyy += t.amp * (u[0] * w[2]);
            th[0] += t.amp * (u[3] * w[0]);
            th[1] += t.amp * (u[2] * w[1]);
            th[2] += t.amp * (u[1] * w[2]);
            th[3] += t.amp * (u[0] * w[3]);
        }
        Jet2 {
            f,
            fx,
            fy,
            fxx,
            fxy,
            fyy,
            third: Some(th),
        }
    }
}

/// Scalar counterpart of [`TrigSurface`].
#[derive(Clone, Debug, Default)]
pub struct ScalarTrig {
    pub offset: f64,
    pub terms: Vec<(f64, f64, f64, f64, f64)>, // (amp, kx, px, ky, py)
}

impl ScalarMap for ScalarTrig {
    fn jet(&self, x: f64, y: f64) -> ScalarJet2 {
        let mut j = ScalarJet2 {
            v: self.offset,
            ..Default::default()
        };
        for &(amp, kx, px, ky, py) in &self.terms {
            let u = cos_chain(kx, px, x);
            let w = cos_chain(ky, py, y);
            j.v += amp * u[0] * w[0];
            j.vx += amp * u[1] * w[0];
            j.vy += amp * u[0] * w[1];
            j.vxx += amp * u[2] * w[0];
            j.vxy += amp * u[1] * w[1];
            j.vyy += amp * u[0] * w[2];
        }
        j
    }
}

// ---------------------------------------------------------------------------
// polynomial spline windows
// ---------------------------------------------------------------------------

/// Smoothness class of the spline plateaus used for cutoffs and test bumps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Smoothness {
    /// Nonic smoothstep, C^4 across the knots:
    /// `s(t) = 70 t^9 - 315 t^8 + 540 t^7 - 420 t^6 + 126 t^5`.
    C4,
    /// Degree-13 smoothstep, C^6 across the knots:
    /// `s(t) = 924 t^13 - 6006 t^12 + 16380 t^11 - 24024 t^10 + 20020 t^9 - 9009 t^8 + 1716 t^7`.
    C6,
}

/// (s, s', s'', s''') of the chosen smoothstep on [0,1], clamped outside.
pub fn smoothstep(kind: Smoothness, t: f64) -> [f64; 4] {
    if t <= 0.0 {
        return [0.0, 0.0, 0.0, 0.0];
    }
    if t >= 1.0 {
        return [1.0, 0.0, 0.0, 0.0];
    }
    let u = 1.0 - t;
    match kind {
        Smoothness::C4 => {
            let v = ((((70.0 * t - 315.0) * t + 540.0) * t - 420.0) * t + 126.0) * t.powi(5);
            let tu = t * u;
            let d1 = 630.0 * tu.powi(4);
            let d2 = 2520.0 * tu.powi(3) * (1.0 - 2.0 * t);
            let d3 = 2520.0 * tu.powi(2) * (3.0 - 14.0 * t + 14.0 * t * t);
            [v, d1, d2, d3]
        }
        Smoothness::C6 => {
            let v = ((((((924.0 * t - 6006.0) * t + 16380.0) * t - 24024.0) * t + 20020.0) * t
                - 9009.0)
                * t
                + 1716.0)
                * t.powi(7);
            let tu = t * u;
            let d1 = 12012.0 * tu.powi(6);
            let d2 = 72072.0 * tu.powi(5) * (1.0 - 2.0 * t);
            let d3 = 72072.0 * tu.powi(4) * (5.0 - 22.0 * t + 22.0 * t * t);
            [v, d1, d2, d3]
        }
    }
}

/// One-dimensional plateau window: ramps 0 -> 1 over `[lo, lo+ramp]`, stays 1,
/// ramps back to 0 over `[hi-ramp, hi]`; identically 0 outside `[lo, hi]`.
#[derive(Clone, Copy, Debug)]
pub struct Window1 {
    pub lo: f64,
    pub hi: f64,
    pub ramp: f64,
    pub kind: Smoothness,
}

impl Window1 {
    pub fn new(lo: f64, hi: f64, ramp: f64, kind: Smoothness) -> Window1 {
        assert!(hi - lo >= 2.0 * ramp && ramp > 0.0, "window too narrow for its ramps");
        Window1 { lo, hi, ramp, kind }
    }

    /// (w, w', w'', w''') at x.
    pub fn eval(&self, x: f64) -> [f64; 4] {
        let r = 1.0 / self.ramp;
        let up = smoothstep(self.kind, (x - self.lo) * r);
        let dn = smoothstep(self.kind, (self.hi - x) * r);
        // chain rule: up side scales by r^k, down side by (-r)^k
        let u = [up[0], up[1] * r, up[2] * r * r, up[3] * r * r * r];
        let v = [dn[0], -dn[1] * r, dn[2] * r * r, -dn[3] * r * r * r];
        // product rule up to third order
        [
            u[0] * v[0],
            u[1] * v[0] + u[0] * v[1],
            u[2] * v[0] + 2.0 * u[1] * v[1] + u[0] * v[2],
            u[3] * v[0] + 3.0 * u[2] * v[1] + 3.0 * u[1] * v[2] + u[0] * v[3],
        ]
    }
}

/// Tensor-product window `wx(x) * wy(y)` as a scalar field on the rectangle.
#[derive(Clone, Copy, Debug)]
pub struct SeparableWindow {
    pub wx: Window1,
    pub wy: Window1,
}

impl ScalarMap for SeparableWindow {
    fn jet(&self, x: f64, y: f64) -> ScalarJet2 {
        let a = self.wx.eval(x);
        let b = self.wy.eval(y);
        ScalarJet2 {
            v: a[0] * b[0],
            vx: a[1] * b[0],
            vy: a[0] * b[1],
            vxx: a[2] * b[0],
            vxy: a[1] * b[1],
            vyy: a[0] * b[2],
        }
    }
}

// ---------------------------------------------------------------------------
// combinators
// ---------------------------------------------------------------------------

/// Rigid motion / linear image `x -> Q x + b` of another surface.
pub struct AffineImage {
    pub inner: DynSurface,
    pub q: [[f64; 3]; 3],
    pub b: Vec3,
}

fn mat_apply(q: &[[f64; 3]; 3], v: Vec3) -> Vec3 {
    vec3(
        q[0][0] * v.x + q[0][1] * v.y + q[0][2] * v.z,
        q[1][0] * v.x + q[1][1] * v.y + q[1][2] * v.z,
        q[2][0] * v.x + q[2][1] * v.y + q[2][2] * v.z,
    )
}

impl SurfaceMap for AffineImage {
    fn jet(&self, x: f64, y: f64) -> Jet2 {
        let j = self.inner.jet(x, y);
        Jet2 {
            f: mat_apply(&self.q, j.f) + self.b,
            fx: mat_apply(&self.q, j.fx),
            fy: mat_apply(&self.q, j.fy),
            fxx: mat_apply(&self.q, j.fxx),
            fxy: mat_apply(&self.q, j.fxy),
            fyy: mat_apply(&self.q, j.fyy),
            third: j.third.map(|t| t.map(|v| mat_apply(&self.q, v))),
        }
    }
}

/// Sum `base + t * dir` of two surface maps (used for Gateaux difference
/// quotients `W(f + t phi)`).
pub struct OffsetBy {
    pub base: DynSurface,
    pub dir: DynSurface,
    pub t: f64,
}

impl SurfaceMap for OffsetBy {
    fn jet(&self, x: f64, y: f64) -> Jet2 {
        self.base.jet(x, y).axpy(self.t, &self.dir.jet(x, y))
    }
}

/// Pointwise product `s(x,y) * v(x,y)` of a scalar window and a vector field.
pub struct ProductScalarSurface {
    pub s: DynScalar,
    pub v: DynSurface,
}

impl SurfaceMap for ProductScalarSurface {
    fn jet(&self, x: f64, y: f64) -> Jet2 {
        let s = self.s.jet(x, y);
        let v = self.v.jet(x, y);
        Jet2 {
            f: s.v * v.f,
            fx: s.vx * v.f + s.v * v.fx,
            fy: s.vy * v.f + s.v * v.fy,
            fxx: s.vxx * v.f + 2.0 * s.vx * v.fx + s.v * v.fxx,
            fxy: s.vxy * v.f + s.vx * v.fy + s.vy * v.fx + s.v * v.fxy,
            fyy: s.vyy * v.f + 2.0 * s.vy * v.fy + s.v * v.fyy,
            third: None,
        }
    }
}

/// The 2-jet of the unit normal `nu = (f_x x f_y)/|f_x x f_y|`; requires the
/// third derivatives of the underlying surface.
pub fn normal_jet(j: &Jet2) -> Option<(Jet2, ())> {
    let t = j.third?;
    let [fxxx, fxxy, fxyy, fyyy] = t;
    let c = j.fx.cross(j.fy);
    let cx = j.fxx.cross(j.fy) + j.fx.cross(j.fxy);
    let cy = j.fxy.cross(j.fy) + j.fx.cross(j.fyy);
    // second derivatives of the cross product (f_xy x f_xy = 0 is dropped)
    let cxx = fxxx.cross(j.fy) + 2.0 * j.fxx.cross(j.fxy) + j.fx.cross(fxxy);
    let cxy = fxxy.cross(j.fy) + j.fxx.cross(j.fyy) + j.fx.cross(fxyy);
    let cyy = fxyy.cross(j.fy) + 2.0 * j.fxy.cross(j.fyy) + j.fx.cross(fyyy);

    let r = c.norm();
    let rx = c.dot(cx) / r;
    let ry = c.dot(cy) / r;
    let rxx = (cx.dot(cx) + c.dot(cxx) - rx * rx) / r;
    let rxy = (cy.dot(cx) + c.dot(cxy) - rx * ry) / r;
    let ryy = (cy.dot(cy) + c.dot(cyy) - ry * ry) / r;

    let r2 = r * r;
    let r3 = r2 * r;
    let nu = c / r;
    let nux = cx / r - c * (rx / r2);
    let nuy = cy / r - c * (ry / r2);
    let nuxx = cxx / r - cx * (2.0 * rx / r2) - c * (rxx / r2) + c * (2.0 * rx * rx / r3);
    let nuxy = cxy / r - cx * (ry / r2) - cy * (rx / r2) - c * (rxy / r2) + c * (2.0 * rx * ry / r3);
    let nuyy = cyy / r - cy * (2.0 * ry / r2) - c * (ryy / r2) + c * (2.0 * ry * ry / r3);

    Some((
        Jet2 {
            f: nu,
            fx: nux,
            fy: nuy,
            fxx: nuxx,
            fxy: nuxy,
            fyy: nuyy,
            third: None,
        },
        (),
    ))
}

/// Normal graph `f + t * phi * nu(f)` over a base surface. The base must carry
/// third derivatives (checked at construction via a probe point).
pub struct NormalOffset {
    pub base: DynSurface,
    pub phi: DynScalar,
    pub t: f64,
}

impl NormalOffset {
    pub fn new(base: DynSurface, phi: DynScalar, t: f64, probe: (f64, f64)) -> crate::error::Result<Self> {
        if base.jet(probe.0, probe.1).third.is_none() {
            return Err(crate::error::Error::ThirdJetUnavailable);
        }
        Ok(NormalOffset { base, phi, t })
    }
}

impl SurfaceMap for NormalOffset {
    fn jet(&self, x: f64, y: f64) -> Jet2 {
        let j = self.base.jet(x, y);
        let (nu, ()) = normal_jet(&j).expect("NormalOffset base lost its third derivatives");
        let p = self.phi.jet(x, y);
        let t = self.t;
        Jet2 {
            f: j.f + t * (p.v * nu.f),
            fx: j.fx + t * (p.vx * nu.f + p.v * nu.fx),
            fy: j.fy + t * (p.vy * nu.f + p.v * nu.fy),
            fxx: j.fxx + t * (p.vxx * nu.f + 2.0 * p.vx * nu.fx + p.v * nu.fxx),
            fxy: j.fxy + t * (p.vxy * nu.f + p.vx * nu.fy + p.vy * nu.fx + p.v * nu.fxy),
            fyy: j.fyy + t * (p.vyy * nu.f + 2.0 * p.vy * nu.fy + p.v * nu.fyy),
            third: None,
        }
    }
}

/// Sphere inversion `p -> c + r^2 (p - c)/|p - c|^2` of another surface.
pub struct InversionImage {
    pub inner: DynSurface,
    pub center: Vec3,
    pub radius_sq: f64,
}

impl SurfaceMap for InversionImage {
    fn jet(&self, x: f64, y: f64) -> Jet2 {
        let j = self.inner.jet(x, y);
        invert_jet(&j, self.center, self.radius_sq)
    }
}

/// 2-jet of the inversion applied to a 2-jet (third derivatives dropped).
pub fn invert_jet(j: &Jet2, center: Vec3, radius_sq: f64) -> Jet2 {
    let q = j.f - center;
    let q2 = q.norm_sq();
    let sa = q.dot(j.fx);
    let sb = q.dot(j.fy);
    let sxx = j.fx.dot(j.fx) + q.dot(j.fxx);
    let sxy = j.fy.dot(j.fx) + q.dot(j.fxy);
    let syy = j.fy.dot(j.fy) + q.dot(j.fyy);
    let iq2 = 1.0 / q2;
    let iq4 = iq2 * iq2;
    let iq6 = iq4 * iq2;

    let a = q * iq2;
    let ax = j.fx * iq2 - q * (2.0 * sa * iq4);
    let ay = j.fy * iq2 - q * (2.0 * sb * iq4);
    let axx = j.fxx * iq2 - (4.0 * sa * iq4) * j.fx - (2.0 * sxx * iq4) * q + (8.0 * sa * sa * iq6) * q;
    let axy = j.fxy * iq2 - (2.0 * sb * iq4) * j.fx - (2.0 * sa * iq4) * j.fy - (2.0 * sxy * iq4) * q
        + (8.0 * sa * sb * iq6) * q;
    let ayy = j.fyy * iq2 - (4.0 * sb * iq4) * j.fy - (2.0 * syy * iq4) * q + (8.0 * sb * sb * iq6) * q;

    let r2 = radius_sq;
    Jet2 {
        f: center + r2 * a,
        fx: r2 * ax,
        fy: r2 * ay,
        fxx: r2 * axx,
        fxy: r2 * axy,
        fyy: r2 * ayy,
        third: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Finite-difference cross-check of a jet at one point. First derivatives
    /// use h = 1e-5; second derivatives use h = 1e-4 (the roundoff floor of a
    /// second difference is ~eps/h^2, so the smaller step would drown them).
    fn check_jet_against_fd(map: &dyn SurfaceMap, x: f64, y: f64, tol1: f64, tol2: f64) {
        let j = map.jet(x, y);
        let fp = |dx: f64, dy: f64| map.jet(x + dx, y + dy).f;
        let h = 1e-5;
        let fx = (fp(h, 0.0) - fp(-h, 0.0)) / (2.0 * h);
        let fy = (fp(0.0, h) - fp(0.0, -h)) / (2.0 * h);
        assert!((j.fx - fx).norm() < tol1, "fx: {:?} vs {:?}", j.fx, fx);
        assert!((j.fy - fy).norm() < tol1);
        let h = 1e-4;
        let fxx = (fp(h, 0.0) - 2.0 * fp(0.0, 0.0) + fp(-h, 0.0)) / (h * h);
        let fyy = (fp(0.0, h) - 2.0 * fp(0.0, 0.0) + fp(0.0, -h)) / (h * h);
        let fxy = (fp(h, h) - fp(h, -h) - fp(-h, h) + fp(-h, -h)) / (4.0 * h * h);
        assert!((j.fxx - fxx).norm() < tol2, "fxx: {:?} vs {:?}", j.fxx, fxx);
        assert!((j.fxy - fxy).norm() < tol2);
        assert!((j.fyy - fyy).norm() < tol2);
    }

    fn sample_trig() -> Arc<TrigSurface> {
        Arc::new(TrigSurface {
            offset: vec3(0.1, -0.2, 0.05),
            ax: Vec3::EX,
            ay: Vec3::EY,
            terms: vec![
                TrigTerm {
                    amp: vec3(0.03, -0.02, 0.08),
                    kx: 2.0,
                    px: 0.3,
                    ky: 1.0,
                    py: -0.6,
                },
                TrigTerm {
                    amp: vec3(-0.01, 0.05, 0.02),
                    kx: 1.0,
                    px: -1.1,
                    ky: 3.0,
                    py: 0.2,
                },
            ],
        })
    }

    #[test]
    fn trig_jet_matches_finite_differences() {
        check_jet_against_fd(sample_trig().as_ref(), 0.37, 0.58, 1e-9, 1e-6);
    }

    #[test]
    fn inversion_jet_matches_finite_differences() {
        let inv = InversionImage {
            inner: sample_trig(),
            center: vec3(5.0, 0.0, 0.0),
            radius_sq: 2.0,
        };
        check_jet_against_fd(&inv, 0.37, 0.58, 1e-9, 1e-6);
    }

    #[test]
    fn normal_offset_jet_matches_finite_differences() {
        let phi: DynScalar = Arc::new(ScalarTrig {
            offset: 0.0,
            terms: vec![(0.7, 1.0, 0.2, 2.0, 0.4)],
        });
        let no = NormalOffset::new(sample_trig(), phi, 0.05, (0.3, 0.5)).unwrap();
        check_jet_against_fd(&no, 0.37, 0.58, 1e-8, 1e-5);
    }

    #[test]
    fn normal_jet_is_unit_and_orthogonal() {
        let j = sample_trig().jet(-0.9, 0.33);
        let (nu, ()) = normal_jet(&j).unwrap();
        assert!((nu.f.norm() - 1.0).abs() < 1e-14);
        assert!(nu.f.dot(j.fx).abs() < 1e-14);
        // |nu|^2 = 1 implies <nu, d nu> = 0
        assert!(nu.f.dot(nu.fx).abs() < 1e-13);
        assert!(nu.f.dot(nu.fy).abs() < 1e-13);
    }

    #[test]
    fn smoothstep_endpoints_and_symmetry() {
        for kind in [Smoothness::C4, Smoothness::C6] {
            let s = smoothstep(kind, 0.5);
            assert!((s[0] - 0.5).abs() < 1e-12);
            assert_eq!(smoothstep(kind, -0.1)[0], 0.0);
            assert_eq!(smoothstep(kind, 1.3)[0], 1.0);
            // symmetric: s(t) + s(1-t) = 1
            let a = smoothstep(kind, 0.23)[0];
            let b = smoothstep(kind, 0.77)[0];
            assert!((a + b - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn window_plateau_and_support() {
        let w = Window1::new(-2.0, 2.0, 0.5, Smoothness::C6);
        assert_eq!(w.eval(-2.1)[0], 0.0);
        assert_eq!(w.eval(0.0), [1.0, 0.0, 0.0, 0.0]);
        assert_eq!(w.eval(2.0)[0], 0.0);
        // derivative cross-check on the ramp
        let h = 1e-6;
        let d = (w.eval(1.8 + h)[0] - w.eval(1.8 - h)[0]) / (2.0 * h);
        assert!((w.eval(1.8)[1] - d).abs() < 1e-7);
    }
}

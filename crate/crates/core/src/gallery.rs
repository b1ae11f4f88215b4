//! Closed-form sample surfaces with exact jets.
//!
//! Every surface here implements [`SurfaceMap`] with analytically evaluated
//! first and second derivatives (and third derivatives where normal-variation
//! machinery needs them), so it can serve as an oracle for finite-difference
//! pipelines. Each gallery entry also records a recommended grid, the support
//! surface its free boundary lives on (if any), and closed-form energy values
//! where they exist.

use crate::error::{Error, Result};
use crate::geometry::SupportSurface;
use crate::grid::ParamGrid;
use crate::jet::{invert_jet, DynSurface, Jet2, SurfaceMap};
use crate::math::{vec3, Vec3};
use crate::surface::Immersion;
use num_complex::Complex64;
use std::sync::Arc;

// ---------------------------------------------------------------------------
// round sphere in the conformal strip chart
// ---------------------------------------------------------------------------

/// Conformal chart of the round unit sphere on a horizontal strip:
/// `f(x, y) = (sech y cos x, sech y sin x, tanh y)`, metric `sech^2 y * Id`,
/// outward unit normal equal to `f` itself, mean curvature `H = -2`.
#[derive(Clone, Copy, Debug, Default)]
pub struct MercatorSphere;

impl SurfaceMap for MercatorSphere {
    fn jet(&self, x: f64, y: f64) -> Jet2 {
        let (sn, c) = x.sin_cos();
        let s = 1.0 / y.cosh();
        let t = y.tanh();
        let s2 = s * s;
        // chain: (sech)' = -sech tanh, (tanh)' = sech^2
        let ds = -s * t;
        let dds = s * (t * t - s2);
        let ddds = s * t * (5.0 * s2 - t * t);
        Jet2 {
            f: vec3(s * c, s * sn, t),
            fx: vec3(-s * sn, s * c, 0.0),
            fy: vec3(ds * c, ds * sn, s2),
            fxx: vec3(-s * c, -s * sn, 0.0),
            fxy: vec3(-ds * sn, ds * c, 0.0),
            fyy: vec3(dds * c, dds * sn, -2.0 * s2 * t),
            third: Some([
                vec3(s * sn, -s * c, 0.0),
                vec3(-ds * c, -ds * sn, 0.0),
                vec3(-dds * sn, dds * c, 0.0),
                vec3(ddds * c, ddds * sn, 4.0 * s2 * t * t - 2.0 * s2 * s2),
            ]),
        }
    }
}

// ---------------------------------------------------------------------------
// catenoid and helicoid
// ---------------------------------------------------------------------------

/// Catenoid `f(x, y) = a (cosh y cos x, cosh y sin x, y)`: minimal, conformal
/// with factor `a cosh y`, meets the plane `z = 0` orthogonally along `y = 0`.
#[derive(Clone, Copy, Debug)]
pub struct Catenoid {
    pub scale: f64,
}

impl SurfaceMap for Catenoid {
    fn jet(&self, x: f64, y: f64) -> Jet2 {
        let a = self.scale;
        let (sn, c) = x.sin_cos();
        let u = y.cosh();
        let v = y.sinh();
        Jet2 {
            f: a * vec3(u * c, u * sn, y),
            fx: a * vec3(-u * sn, u * c, 0.0),
            fy: a * vec3(v * c, v * sn, 1.0),
            fxx: a * vec3(-u * c, -u * sn, 0.0),
            fxy: a * vec3(-v * sn, v * c, 0.0),
            fyy: a * vec3(u * c, u * sn, 0.0),
            third: Some([
                a * vec3(u * sn, -u * c, 0.0),
                a * vec3(-v * c, -v * sn, 0.0),
                a * vec3(-u * sn, u * c, 0.0),
                a * vec3(v * c, v * sn, 0.0),
            ]),
        }
    }
}

/// Helicoid `f(x, y) = (sinh y cos x, sinh y sin x, x)`: minimal, conformal
/// with factor `cosh y`, contains the z-axis as its `y = 0` boundary, and
/// satisfies the exact line symmetry `f(x, -y) = diag(-1,-1,1) f(x, y)`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Helicoid;

impl SurfaceMap for Helicoid {
    fn jet(&self, x: f64, y: f64) -> Jet2 {
        let (sn, c) = x.sin_cos();
        let u = y.cosh();
        let v = y.sinh();
        Jet2 {
            f: vec3(v * c, v * sn, x),
            fx: vec3(-v * sn, v * c, 1.0),
            fy: vec3(u * c, u * sn, 0.0),
            fxx: vec3(-v * c, -v * sn, 0.0),
            fxy: vec3(-u * sn, u * c, 0.0),
            fyy: vec3(v * c, v * sn, 0.0),
            third: Some([
                vec3(v * sn, -v * c, 0.0),
                vec3(-u * c, -u * sn, 0.0),
                vec3(-v * sn, v * c, 0.0),
                vec3(u * c, u * sn, 0.0),
            ]),
        }
    }
}

// ---------------------------------------------------------------------------
// flat disk annulus and spherical cap
// ---------------------------------------------------------------------------

/// Flat annulus in the plane `z = 0`: `f(x, y) = (1 - y/2)(cos x, sin x, 0)`.
/// The `y = 0` boundary is the unit circle, where the chart meets the unit
/// sphere orthogonally; all curvature energies vanish.
#[derive(Clone, Copy, Debug, Default)]
pub struct FlatDisk;

impl SurfaceMap for FlatDisk {
    fn jet(&self, x: f64, y: f64) -> Jet2 {
        let (sn, c) = x.sin_cos();
        let r = 1.0 - 0.5 * y;
        let dr = -0.5;
        Jet2 {
            f: vec3(r * c, r * sn, 0.0),
            fx: vec3(-r * sn, r * c, 0.0),
            fy: vec3(dr * c, dr * sn, 0.0),
            fxx: vec3(-r * c, -r * sn, 0.0),
            fxy: vec3(-dr * sn, dr * c, 0.0),
            fyy: Vec3::ZERO,
            third: Some([
                vec3(r * sn, -r * c, 0.0),
                vec3(-dr * c, -dr * sn, 0.0),
                vec3(dr * sn, -dr * c, 0.0),
                Vec3::ZERO,
            ]),
        }
    }
}

/// Cap of a unit sphere centered at `(0, 0, sqrt 2)`, parametrized by polar
/// angle `Theta(y) = pi/4 - (pi/8) y` from the cap's south pole:
/// `f = center + (sin T cos x, sin T sin x, -cos T)`. Its `y = 0` boundary
/// circle lies on the unit support sphere about the origin and the cap meets
/// that sphere orthogonally.
#[derive(Clone, Copy, Debug, Default)]
pub struct SphericalCap;

impl SphericalCap {
    pub const CENTER: Vec3 = vec3(0.0, 0.0, std::f64::consts::SQRT_2);
}

impl SurfaceMap for SphericalCap {
    fn jet(&self, x: f64, y: f64) -> Jet2 {
        let (sn, c) = x.sin_cos();
        let theta = std::f64::consts::FRAC_PI_4 - std::f64::consts::FRAC_PI_8 * y;
        let q = -std::f64::consts::FRAC_PI_8;
        let (s, co) = theta.sin_cos();
        let q2 = q * q;
        let q3 = q2 * q;
        Jet2 {
            f: Self::CENTER + vec3(s * c, s * sn, -co),
            fx: vec3(-s * sn, s * c, 0.0),
            fy: vec3(q * co * c, q * co * sn, q * s),
            fxx: vec3(-s * c, -s * sn, 0.0),
            fxy: vec3(-q * co * sn, q * co * c, 0.0),
            fyy: vec3(-q2 * s * c, -q2 * s * sn, q2 * co),
            third: Some([
                vec3(s * sn, -s * c, 0.0),
                vec3(-q * co * c, -q * co * sn, 0.0),
                vec3(q2 * s * sn, -q2 * s * c, 0.0),
                vec3(-q3 * co * c, -q3 * co * sn, -q3 * s),
            ]),
        }
    }
}

// ---------------------------------------------------------------------------
// inverted catenoid (two charts)
// ---------------------------------------------------------------------------

/// Scale of the catenoid whose unit-sphere inversion the gallery uses.
pub const INVERTED_CATENOID_SCALE: f64 = 2.0;

/// Cyclic axis permutation `(a, b, c) -> (b, c, a)`; carries the vertical
/// plane `x1 = 0` (which the natural half chart meets orthogonally) onto the
/// horizontal plane `z = 0` used by the reflection convention.
pub const CYCLE_AXES: [[f64; 3]; 3] = [[0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [1.0, 0.0, 0.0]];

/// Half of the inverted catenoid in the strip chart: the catenoid
/// `2(cosh s cos t, cosh s sin t, s)` is inverted in the unit sphere at the
/// origin; the chart takes `(x, y)` to `(s, t) = (x, sigma (pi/2 - y))`, so
/// the `y = 0` row is the free boundary ray `t = sigma pi/2` on which the
/// surface meets a plane orthogonally. With `permute_axes` the meeting plane
/// is moved from `x1 = 0` to `z = 0`.
#[derive(Clone, Copy, Debug)]
pub struct InvertedCatenoidHalf {
    pub sigma: f64,
    pub permute_axes: bool,
}

impl Default for InvertedCatenoidHalf {
    fn default() -> Self {
        InvertedCatenoidHalf {
            sigma: 1.0,
            permute_axes: true,
        }
    }
}

impl SurfaceMap for InvertedCatenoidHalf {
    fn jet(&self, x: f64, y: f64) -> Jet2 {
        let cat = Catenoid {
            scale: INVERTED_CATENOID_SCALE,
        };
        // chart x is the catenoid's axial coordinate (jet argument 2);
        // chart y enters the angle (jet argument 1) as sigma(pi/2 - y)
        let j = cat.jet(self.sigma * (std::f64::consts::FRAC_PI_2 - y), x);
        let sg = -self.sigma;
        let reparam = Jet2 {
            f: j.f,
            fx: j.fy,
            fy: sg * j.fx,
            fxx: j.fyy,
            fxy: sg * j.fxy,
            fyy: j.fxx, // sg^2 = 1
            third: None,
        };
        let inv = invert_jet(&reparam, Vec3::ZERO, 1.0);
        if !self.permute_axes {
            return inv;
        }
        let p = |v: Vec3| vec3(v.y, v.z, v.x);
        Jet2 {
            f: p(inv.f),
            fx: p(inv.fx),
            fy: p(inv.fy),
            fxx: p(inv.fxx),
            fxy: p(inv.fxy),
            fyy: p(inv.fyy),
            third: None,
        }
    }
}

/// The inverted catenoid in its planar chart around the compactified end:
/// `(x, y)` are Cartesian coordinates of `w = x + iy`, `(s, t) = (log |w|,
/// arg w)`, and the map is the unit-sphere inversion of the catenoid point.
/// The chart is conformal and degenerates logarithmically at the puncture
/// `w = 0`, where the induced metric has the closed form
/// [`inverted_catenoid_chart_metric`].
#[derive(Clone, Copy, Debug, Default)]
pub struct InvertedCatenoidPlanar;

impl SurfaceMap for InvertedCatenoidPlanar {
    fn jet(&self, x: f64, y: f64) -> Jet2 {
        let cat = Catenoid {
            scale: INVERTED_CATENOID_SCALE,
        };
        let r2 = x * x + y * y;
        let s = 0.5 * r2.ln();
        let t = y.atan2(x);
        // jet arguments are (angle, axial) = (t, s)
        let j = cat.jet(t, s);
        // conformal log chart: first and second derivatives of (s, t) in (x, y)
        let ir2 = 1.0 / r2;
        let ir4 = ir2 * ir2;
        let (sx, sy) = (x * ir2, y * ir2);
        let (tx, ty) = (-y * ir2, x * ir2);
        let sxx = (y * y - x * x) * ir4;
        let sxy = -2.0 * x * y * ir4;
        let syy = -sxx;
        let txx = -sxy;
        let txy = sxx;
        let tyy = sxy;
        let chain2 = |css: Vec3, cst: Vec3, ctt: Vec3, cs: Vec3, ct: Vec3,
                      a1: f64, b1: f64, a2: f64, b2: f64, da: f64, db: f64| {
            a1 * a2 * css + (a1 * b2 + a2 * b1) * cst + b1 * b2 * ctt + da * cs + db * ct
        };
        let reparam = Jet2 {
            f: j.f,
            fx: tx * j.fx + sx * j.fy,
            fy: ty * j.fx + sy * j.fy,
            fxx: chain2(j.fxx, j.fxy, j.fyy, j.fx, j.fy, tx, sx, tx, sx, txx, sxx),
            fxy: chain2(j.fxx, j.fxy, j.fyy, j.fx, j.fy, tx, sx, ty, sy, txy, sxy),
            fyy: chain2(j.fxx, j.fxy, j.fyy, j.fx, j.fy, ty, sy, ty, sy, tyy, syy),
            third: None,
        };
        invert_jet(&reparam, Vec3::ZERO, 1.0)
    }
}

/// Closed-form conformal metric coefficient of [`InvertedCatenoidPlanar`] at
/// chart radius `rho`: `g11 = g22 = (1 + 2 rho^2 + rho^4) /
/// (1 + 2 rho^2 + rho^4 + 4 rho^2 log^2 rho)^2`, `g12 = 0`.
pub fn inverted_catenoid_chart_metric(rho: f64) -> f64 {
    let r2 = rho * rho;
    let p = 1.0 + 2.0 * r2 + r2 * r2;
    let l = rho.ln();
    let q = p + 4.0 * r2 * l * l;
    p / (q * q)
}

// ---------------------------------------------------------------------------
// Morin-type immersed sphere
// ---------------------------------------------------------------------------

/// Rational immersion of the sphere with a fourfold symmetric image:
/// `f(w) = Re( (i(w^3 - w), w^3 + w, (i/2)(w^4 + 1)) / (w^4 + 2 sqrt3 w^2 - 1) )`.
/// For real parameter `w` the image lies on the y-axis (`f1 = f3 = 0`). The
/// immersion has four poles where the denominator vanishes; grids must stay
/// away from them.
#[derive(Clone, Copy, Debug, Default)]
pub struct MorinSphere;

/// The four parameter points where the Morin denominator vanishes.
pub fn morin_poles() -> [Complex64; 4] {
    let sqrt3 = 3.0f64.sqrt();
    let a = (2.0 - sqrt3).sqrt();
    let b = (2.0 + sqrt3).sqrt();
    [
        Complex64::new(a, 0.0),
        Complex64::new(-a, 0.0),
        Complex64::new(0.0, b),
        Complex64::new(0.0, -b),
    ]
}

fn morin_f(w: Complex64) -> ([Complex64; 3], [Complex64; 3], [Complex64; 3]) {
    let i = Complex64::i();
    let sqrt3 = 3.0f64.sqrt();
    let w2 = w * w;
    let w3 = w2 * w;
    let w4 = w2 * w2;
    let n = [i * (w3 - w), w3 + w, 0.5 * i * (w4 + 1.0)];
    let n1 = [i * (3.0 * w2 - 1.0), 3.0 * w2 + 1.0, 2.0 * i * w3];
    let n2 = [6.0 * i * w, 6.0 * w, 6.0 * i * w2];
    let d = w4 + 2.0 * sqrt3 * w2 - 1.0;
    let d1 = 4.0 * w3 + 4.0 * sqrt3 * w;
    let d2 = 12.0 * w2 + 4.0 * sqrt3;
    let mut f = [Complex64::default(); 3];
    let mut fp = [Complex64::default(); 3];
    let mut fpp = [Complex64::default(); 3];
    for k in 0..3 {
        f[k] = n[k] / d;
        fp[k] = n1[k] / d - n[k] * d1 / (d * d);
        fpp[k] = n2[k] / d - 2.0 * n1[k] * d1 / (d * d) - n[k] * d2 / (d * d)
            + 2.0 * n[k] * d1 * d1 / (d * d * d);
    }
    (f, fp, fpp)
}

impl SurfaceMap for MorinSphere {
    fn jet(&self, x: f64, y: f64) -> Jet2 {
        let (f, fp, fpp) = morin_f(Complex64::new(x, y));
        let re = |z: [Complex64; 3]| vec3(z[0].re, z[1].re, z[2].re);
        let im = |z: [Complex64; 3]| vec3(z[0].im, z[1].im, z[2].im);
        // f analytic in w = x + iy: d/dx = F', d/dy = i F'
        Jet2 {
            f: re(f),
            fx: re(fp),
            fy: -1.0 * im(fp),
            fxx: re(fpp),
            fxy: -1.0 * im(fpp),
            fyy: -1.0 * re(fpp),
            third: None,
        }
    }
}

// ---------------------------------------------------------------------------
// the gallery registry
// ---------------------------------------------------------------------------

/// Identifiers of the built-in surfaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GalleryId {
    MercatorSphere,
    Hemisphere,
    Catenoid,
    InvertedCatenoid,
    Helicoid,
    Morin,
    FlatDisk,
    SphericalCap,
}

impl GalleryId {
    pub const ALL: [GalleryId; 8] = [
        GalleryId::MercatorSphere,
        GalleryId::Hemisphere,
        GalleryId::Catenoid,
        GalleryId::InvertedCatenoid,
        GalleryId::Helicoid,
        GalleryId::Morin,
        GalleryId::FlatDisk,
        GalleryId::SphericalCap,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GalleryId::MercatorSphere => "mercator-sphere",
            GalleryId::Hemisphere => "hemisphere",
            GalleryId::Catenoid => "catenoid",
            GalleryId::InvertedCatenoid => "inverted-catenoid",
            GalleryId::Helicoid => "helicoid",
            GalleryId::Morin => "morin",
            GalleryId::FlatDisk => "flat-disk",
            GalleryId::SphericalCap => "spherical-cap",
        }
    }

    pub fn parse(name: &str) -> Result<GalleryId> {
        GalleryId::ALL
            .into_iter()
            .find(|id| id.name() == name)
            .ok_or_else(|| {
                Error::Invalid(format!(
                    "unknown gallery surface {name:?}; available: {}",
                    GalleryId::ALL.map(|i| i.name()).join(", ")
                ))
            })
    }
}

/// Exact energy values of a gallery patch, where closed forms exist.
#[derive(Clone, Copy, Debug)]
pub struct ClosedFormEnergies {
    /// Willmore energy `1/4 integral H^2`
    pub willmore: f64,
    /// total curvature energy `1/2 integral |h|^2`
    pub total: f64,
    /// trace-free energy `1/2 integral |h0|^2`
    pub tracefree: f64,
}

/// A gallery entry: the analytic map, a recommended grid, the support surface
/// of its free boundary (if any), parameter points to stay away from, and
/// closed-form energies when known.
#[derive(Clone)]
pub struct GallerySurface {
    pub id: GalleryId,
    pub map: DynSurface,
    pub grid: ParamGrid,
    pub support: Option<SupportSurface>,
    pub singular: Vec<(f64, f64)>,
    pub energies: Option<ClosedFormEnergies>,
}

impl GallerySurface {
    pub fn immersion(&self) -> Result<Immersion> {
        Immersion::from_map(self.grid.clone(), self.map.clone(), self.id.name())
    }

    /// Same surface resampled on an `nx x ny` grid over the default ranges.
    pub fn immersion_on(&self, nx: usize, ny: usize) -> Result<Immersion> {
        let grid = ParamGrid::new(nx, ny, self.grid.x_range, self.grid.y_range)?;
        Immersion::from_map(grid, self.map.clone(), self.id.name())
    }
}

/// Chart height at which sphere charts are truncated: keeps the metric
/// determinant `sech^4 y` an order of magnitude above the degeneracy floor
/// while the missing area tail `1 - tanh y` stays below 2e-6.
pub const SPHERE_CHART_HEIGHT: f64 = 7.0;

const PI: f64 = std::f64::consts::PI;

/// Build the gallery entry for `id`.
pub fn gallery_surface(id: GalleryId) -> GallerySurface {
    match id {
        GalleryId::MercatorSphere => {
            let y = SPHERE_CHART_HEIGHT;
            let area = 4.0 * PI * y.tanh();
            GallerySurface {
                id,
                map: Arc::new(MercatorSphere),
                grid: ParamGrid::new(257, 257, (-PI, PI), (-y, y)).unwrap(),
                support: None,
                singular: vec![],
                energies: Some(ClosedFormEnergies {
                    willmore: area,
                    total: area,
                    tracefree: 0.0,
                }),
            }
        }
        GalleryId::Hemisphere => {
            let y = SPHERE_CHART_HEIGHT;
            let area = 2.0 * PI * y.tanh();
            GallerySurface {
                id,
                map: Arc::new(MercatorSphere),
                grid: ParamGrid::new(257, 129, (-PI, PI), (0.0, y)).unwrap(),
                support: Some(SupportSurface::Plane {
                    point: Vec3::ZERO,
                    normal: Vec3::EZ,
                }),
                singular: vec![],
                energies: Some(ClosedFormEnergies {
                    willmore: area,
                    total: area,
                    tracefree: 0.0,
                }),
            }
        }
        GalleryId::Catenoid => {
            let e = 2.0 * PI * 1.0f64.tanh();
            GallerySurface {
                id,
                map: Arc::new(Catenoid { scale: 2.0 }),
                grid: ParamGrid::new(129, 65, (-PI, PI), (0.0, 1.0)).unwrap(),
                support: Some(SupportSurface::Plane {
                    point: Vec3::ZERO,
                    normal: Vec3::EZ,
                }),
                singular: vec![],
                energies: Some(ClosedFormEnergies {
                    willmore: 0.0,
                    total: e,
                    tracefree: e,
                }),
            }
        }
        GalleryId::InvertedCatenoid => GallerySurface {
            id,
            map: Arc::new(InvertedCatenoidHalf::default()),
            grid: ParamGrid::new(129, 65, (-PI, PI), (0.0, 1.0)).unwrap(),
            support: Some(SupportSurface::Plane {
                point: Vec3::ZERO,
                normal: Vec3::EZ,
            }),
            // puncture sits at s -> -inf; the chart edge x = -pi is the
            // closest approach (ambient radius e^{-pi})
            singular: vec![],
            energies: None,
        },
        GalleryId::Helicoid => {
            let e = 2.0 * PI * 1.0f64.tanh();
            GallerySurface {
                id,
                map: Arc::new(Helicoid),
                grid: ParamGrid::new(129, 65, (-PI, PI), (0.0, 1.0)).unwrap(),
                support: Some(SupportSurface::Line {
                    point: Vec3::ZERO,
                    direction: Vec3::EZ,
                }),
                singular: vec![],
                energies: Some(ClosedFormEnergies {
                    willmore: 0.0,
                    total: e,
                    tracefree: e,
                }),
            }
        }
        GalleryId::Morin => {
            let singular = morin_poles()
                .into_iter()
                .map(|p| (p.re, p.im))
                .collect();
            GallerySurface {
                id,
                map: Arc::new(MorinSphere),
                // keep a 0.1 parameter margin from the two real-axis poles
                grid: ParamGrid::new(129, 65, (-PI, PI), (0.1, 1.0)).unwrap(),
                support: None,
                singular,
                energies: None,
            }
        }
        GalleryId::FlatDisk => GallerySurface {
            id,
            map: Arc::new(FlatDisk),
            grid: ParamGrid::new(129, 65, (-PI, PI), (0.0, 1.0)).unwrap(),
            support: Some(SupportSurface::Sphere {
                center: Vec3::ZERO,
                radius: 1.0,
            }),
            singular: vec![],
            energies: Some(ClosedFormEnergies {
                willmore: 0.0,
                total: 0.0,
                tracefree: 0.0,
            }),
        },
        GalleryId::SphericalCap => {
            let area = 2.0 * PI * ((PI / 8.0).cos() - (PI / 4.0).cos());
            GallerySurface {
                id,
                map: Arc::new(SphericalCap),
                grid: ParamGrid::new(129, 65, (-PI, PI), (0.0, 1.0)).unwrap(),
                support: Some(SupportSurface::Sphere {
                    center: Vec3::ZERO,
                    radius: 1.0,
                }),
                singular: vec![],
                energies: Some(ClosedFormEnergies {
                    willmore: area,
                    total: area,
                    tracefree: 0.0,
                }),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{compute_geometry, point_geometry, EPS_WEAK};
    use crate::surface::DerivScheme;

    fn geom_of(id: GalleryId) -> crate::geometry::SurfaceGeometry {
        let g = gallery_surface(id);
        let im = g.immersion().unwrap();
        compute_geometry(&im, DerivScheme::Analytic, EPS_WEAK).unwrap()
    }

    #[test]
    fn sphere_chart_has_constant_mean_curvature() {
        let geom = geom_of(GalleryId::Hemisphere);
        for k in 0..geom.len() {
            assert!((geom.mean_h[k] + 2.0).abs() < 1e-11, "H = {}", geom.mean_h[k]);
            assert!(geom.h0_norm_sq[k].abs() < 1e-11);
            assert!((geom.k_gauss[k] - 1.0).abs() < 1e-9);
        }
        // outward normal equals the position vector on the unit sphere
        let k = geom.grid.idx(31, 17);
        let j = MercatorSphere.jet(geom.grid.x(31), geom.grid.y(17));
        assert!((geom.nu[k] - j.f).norm() < 1e-12);
    }

    #[test]
    fn minimal_surfaces_have_vanishing_mean_curvature() {
        for id in [GalleryId::Catenoid, GalleryId::Helicoid] {
            let geom = geom_of(id);
            let sup = geom
                .mean_h
                .iter()
                .fold(0.0f64, |m, h| m.max(h.abs()));
            assert!(sup < 1e-12, "{:?}: sup |H| = {sup}", id);
            let conf = crate::geometry::conformality_residual(&geom);
            assert!(conf < 1e-12, "{:?}: conformality {conf}", id);
        }
    }

    #[test]
    fn third_derivative_jets_match_finite_differences() {
        let h = 1e-4;
        let maps: [(&str, DynSurface); 4] = [
            ("sphere", Arc::new(MercatorSphere)),
            ("catenoid", Arc::new(Catenoid { scale: 2.0 })),
            ("helicoid", Arc::new(Helicoid)),
            ("cap", Arc::new(SphericalCap)),
        ];
        for (name, map) in maps {
            let (x, y) = (0.73, 0.41);
            let t = map.jet(x, y).third.unwrap();
            let fd_x = |f: fn(&Jet2) -> Vec3| {
                let a = map.jet(x + h, y);
                let b = map.jet(x - h, y);
                (f(&a) - f(&b)) / (2.0 * h)
            };
            let fd_y = |f: fn(&Jet2) -> Vec3| {
                let a = map.jet(x, y + h);
                let b = map.jet(x, y - h);
                (f(&a) - f(&b)) / (2.0 * h)
            };
            assert!((t[0] - fd_x(|j| j.fxx)).norm() < 1e-6, "{name} fxxx");
            assert!((t[1] - fd_y(|j| j.fxx)).norm() < 1e-6, "{name} fxxy");
            assert!((t[2] - fd_y(|j| j.fxy)).norm() < 1e-6, "{name} fxyy");
            assert!((t[3] - fd_y(|j| j.fyy)).norm() < 1e-6, "{name} fyyy");
        }
    }

    #[test]
    fn cap_boundary_sits_on_support_sphere_orthogonally() {
        let g = gallery_surface(GalleryId::SphericalCap);
        let geom = geom_of(GalleryId::SphericalCap);
        let support = g.support.unwrap();
        for i in 0..geom.grid.nx {
            let k = geom.grid.idx(i, 0);
            let pos = g.map.jet(geom.grid.x(i), 0.0).f;
            assert!(support.distance(pos).abs() < 1e-12);
            // orthogonal meeting: support normal is tangent to the cap,
            // i.e. perpendicular to the cap's normal
            let ns = support.normal_at(pos).unwrap();
            assert!(ns.dot(geom.nu[k]).abs() < 1e-12);
        }
    }

    #[test]
    fn inverted_catenoid_boundary_lies_in_meeting_plane() {
        let g = gallery_surface(GalleryId::InvertedCatenoid);
        let geom = geom_of(GalleryId::InvertedCatenoid);
        for i in 0..geom.grid.nx {
            let k = geom.grid.idx(i, 0);
            let pos = g.map.jet(geom.grid.x(i), 0.0).f;
            assert!(pos.z.abs() < 1e-14, "boundary leaves z = 0: {}", pos.z);
            // orthogonal meeting with the plane: e3 tangent to the surface
            assert!(geom.nu[k].z.abs() < 1e-12);
        }
    }

    #[test]
    fn planar_chart_matches_closed_form_metric() {
        let map = InvertedCatenoidPlanar;
        for (x, y) in [(0.07, -0.0713), (0.3, 0.2), (-0.02, 0.04), (0.6, -0.5)] {
            let j = map.jet(x, y);
            let pg = point_geometry(j.fx, j.fy, j.fxx, j.fxy, j.fyy);
            let rho = x.hypot(y);
            let want = inverted_catenoid_chart_metric(rho);
            assert!(
                (pg.g.a11 - want).abs() / want < 1e-12,
                "g11 at rho = {rho}: {} vs {want}",
                pg.g.a11
            );
            assert!((pg.g.a22 - want).abs() / want < 1e-12);
            assert!(pg.g.a12.abs() / want < 1e-12);
        }
    }

    #[test]
    fn morin_real_axis_maps_into_y_axis() {
        let m = MorinSphere;
        for k in 0..40 {
            let w = -2.5 + 0.123 * k as f64;
            // stay away from the two real poles
            if (w.abs() - 0.5176).abs() < 0.1 {
                continue;
            }
            let f = m.jet(w, 0.0).f;
            assert!(f.x.abs() < 1e-12, "f1({w}) = {}", f.x);
            assert!(f.z.abs() < 1e-12, "f3({w}) = {}", f.z);
        }
        // spot value f(1) = (0, 1/sqrt3, 0)
        let f1 = m.jet(1.0, 0.0).f;
        assert!((f1.y - 1.0 / 3.0f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn morin_poles_annihilate_denominator() {
        let sqrt3 = 3.0f64.sqrt();
        for p in morin_poles() {
            let d = p.powi(4) + 2.0 * sqrt3 * p.powi(2) - 1.0;
            assert!(d.norm() < 1e-14, "D({p}) = {d}");
        }
    }

    #[test]
    fn helicoid_has_exact_line_symmetry() {
        let h = Helicoid;
        for (x, y) in [(0.3, 0.7), (-1.2, 0.4), (2.0, 0.9)] {
            let a = h.jet(x, -y).f;
            let b = h.jet(x, y).f.diag_mul(vec3(-1.0, -1.0, 1.0));
            assert_eq!(a.to_array(), b.to_array());
        }
    }

    #[test]
    fn gallery_energies_match_quadrature() {
        for id in [
            GalleryId::Hemisphere,
            GalleryId::Catenoid,
            GalleryId::Helicoid,
            GalleryId::SphericalCap,
        ] {
            let g = gallery_surface(id);
            let geom = geom_of(id);
            let e = g.energies.unwrap();
            // W = 1/4 integral H^2 dmu via raw quadrature here; the energy
            // module wraps this with reporting
            let wvals: Vec<f64> = (0..geom.len())
                .map(|k| 0.25 * geom.mean_h[k] * geom.mean_h[k] * geom.area[k])
                .collect();
            let w = geom.grid.integrate_area(&wvals);
            assert!(
                (w - e.willmore).abs() < 2e-4 * (1.0 + e.willmore),
                "{:?}: W = {w} vs {}",
                id,
                e.willmore
            );
        }
    }
}

//! First and second fundamental forms and derived curvature fields.
//!
//! Conventions: the unit normal is `nu = (f_x x f_y)/|f_x x f_y|`, the second
//! fundamental form is `h_ab = <d2f/dxa dxb, nu>`, and the scalar mean
//! curvature is the full trace `H = g^{ab} h_ab` (not the average). With this
//! pairing the mean curvature vector `H nu` equals the surface Laplacian of
//! the immersion, so a round sphere traced with outward normal has `H = -2/R`.

use crate::error::{Error, Result};
use crate::grid::ParamGrid;
use crate::math::{Sym2, Vec3};
use crate::surface::{DerivBundle, DerivScheme, Immersion};

/// Default relative floor for the induced metric: nodes with
/// `det g <= EPS_WEAK^2` are rejected as degenerate.
pub const EPS_WEAK: f64 = 1e-6;

/// All pointwise geometric data derived from a 2-jet of the immersion.
#[derive(Clone, Copy, Debug)]
pub struct PointGeometry {
    pub g: Sym2,
    pub det: f64,
    pub inv: Sym2,
    /// area element `sqrt(det g)`
    pub area: f64,
    pub nu: Vec3,
    pub h: Sym2,
    /// trace-free part `h - (H/2) g`
    pub h0: Sym2,
    /// scalar mean curvature `H = g^{ab} h_ab`
    pub mean_h: f64,
    /// `|h|^2 = g^{ac} g^{bd} h_ab h_cd`
    pub h_norm_sq: f64,
    /// `|h0|^2 = |h|^2 - H^2/2`
    pub h0_norm_sq: f64,
    /// Gauss curvature `det h / det g`
    pub k_gauss: f64,
}

/// Pointwise geometry from first and second derivatives of the immersion.
pub fn point_geometry(fx: Vec3, fy: Vec3, fxx: Vec3, fxy: Vec3, fyy: Vec3) -> PointGeometry {
    let g = Sym2 {
        a11: fx.dot(fx),
        a12: fx.dot(fy),
        a22: fy.dot(fy),
    };
    let det = g.det();
    let inv = g.inverse();
    let nu = fx.cross(fy).normalized();
    let h = Sym2 {
        a11: fxx.dot(nu),
        a12: fxy.dot(nu),
        a22: fyy.dot(nu),
    };
    let mean_h = h.trace_with_inverse(inv);
    let h_norm_sq = h.norm_sq_with_inverse(inv);
    let h0 = h.sub(g.scale(0.5 * mean_h));
    let h0_norm_sq = h_norm_sq - 0.5 * mean_h * mean_h;
    let k_gauss = h.det() / det;
    PointGeometry {
        g,
        det,
        inv,
        area: det.sqrt(),
        nu,
        h,
        h0,
        mean_h,
        h_norm_sq,
        h0_norm_sq,
        k_gauss,
    }
}

/// Geometry of every grid node, kept in struct-of-arrays form so energy and
/// boundary operators can stream over single quantities.
#[derive(Clone)]
pub struct SurfaceGeometry {
    pub grid: ParamGrid,
    pub deriv: DerivBundle,
    pub g: Vec<Sym2>,
    pub det: Vec<f64>,
    pub inv: Vec<Sym2>,
    pub area: Vec<f64>,
    pub nu: Vec<Vec3>,
    pub h: Vec<Sym2>,
    pub h0: Vec<Sym2>,
    pub mean_h: Vec<f64>,
    pub h_norm_sq: Vec<f64>,
    pub h0_norm_sq: Vec<f64>,
    pub k_gauss: Vec<f64>,
}

/// Compute nodal geometry, rejecting non-finite data and metrics at or below
/// the degeneracy floor `eps^2`.
pub fn compute_geometry(im: &Immersion, scheme: DerivScheme, eps: f64) -> Result<SurfaceGeometry> {
    let deriv = im.derivatives(scheme)?;
    let grid = im.grid.clone();
    let n = grid.len();
    let mut out = SurfaceGeometry {
        grid: grid.clone(),
        g: Vec::with_capacity(n),
        det: Vec::with_capacity(n),
        inv: Vec::with_capacity(n),
        area: Vec::with_capacity(n),
        nu: Vec::with_capacity(n),
        h: Vec::with_capacity(n),
        h0: Vec::with_capacity(n),
        mean_h: Vec::with_capacity(n),
        h_norm_sq: Vec::with_capacity(n),
        h0_norm_sq: Vec::with_capacity(n),
        k_gauss: Vec::with_capacity(n),
        deriv,
    };
    let eps_sq = eps * eps;
    for j in 0..grid.ny {
        for i in 0..grid.nx {
            let k = grid.idx(i, j);
            let pg = point_geometry(
                out.deriv.fx[k],
                out.deriv.fy[k],
                out.deriv.fxx[k],
                out.deriv.fxy[k],
                out.deriv.fyy[k],
            );
            if !pg.det.is_finite() {
                return Err(Error::NonFinite { i, j });
            }
            // degeneracy before NaN checks: a collapsed chart makes the unit
            // normal NaN, but the metric floor is the actionable diagnosis
            if pg.det <= eps_sq {
                return Err(Error::DegenerateMetric {
                    i,
                    j,
                    det: pg.det,
                    eps_sq,
                });
            }
            if !(pg.nu.is_finite() && pg.h.is_finite()) {
                return Err(Error::NonFinite { i, j });
            }
            out.g.push(pg.g);
            out.det.push(pg.det);
            out.inv.push(pg.inv);
            out.area.push(pg.area);
            out.nu.push(pg.nu);
            out.h.push(pg.h);
            out.h0.push(pg.h0);
            out.mean_h.push(pg.mean_h);
            out.h_norm_sq.push(pg.h_norm_sq);
            out.h0_norm_sq.push(pg.h0_norm_sq);
            out.k_gauss.push(pg.k_gauss);
        }
    }
    Ok(out)
}

impl SurfaceGeometry {
    pub fn len(&self) -> usize {
        self.det.len()
    }

    pub fn is_empty(&self) -> bool {
        self.det.is_empty()
    }

    /// Total area `integral of dmu`.
    pub fn total_area(&self) -> f64 {
        self.grid.integrate_area(&self.area)
    }

    /// Christoffel symbols `Gamma^k_ij = g^{kl} <d2_ij f, d_l f>` at a node;
    /// returned as `[[G^x_xx, G^x_xy, G^x_yy], [G^y_xx, G^y_xy, G^y_yy]]`.
    pub fn christoffels(&self, k: usize) -> [[f64; 3]; 2] {
        let d = &self.deriv;
        christoffels_at(d.fx[k], d.fy[k], d.fxx[k], d.fxy[k], d.fyy[k], self.inv[k])
    }
}

/// Christoffel symbols from pointwise derivatives and the inverse metric;
/// layout as in [`SurfaceGeometry::christoffels`].
pub fn christoffels_at(
    fx: Vec3,
    fy: Vec3,
    fxx: Vec3,
    fxy: Vec3,
    fyy: Vec3,
    inv: Sym2,
) -> [[f64; 3]; 2] {
    let proj = |w: Vec3| -> [f64; 2] {
        let c1 = w.dot(fx);
        let c2 = w.dot(fy);
        [inv.a11 * c1 + inv.a12 * c2, inv.a12 * c1 + inv.a22 * c2]
    };
    let gxx = proj(fxx);
    let gxy = proj(fxy);
    let gyy = proj(fyy);
    [[gxx[0], gxy[0], gyy[0]], [gxx[1], gxy[1], gyy[1]]]
}

/// Largest relative deviation of the metric from a conformal one,
/// `max(|g11 - g22|, 2 |g12|) / (tr g / 2)` over all nodes.
pub fn conformality_residual(geom: &SurfaceGeometry) -> f64 {
    let mut worst = 0.0f64;
    for g in &geom.g {
        let scale = 0.5 * (g.a11 + g.a22);
        let r = (g.a11 - g.a22).abs().max(2.0 * g.a12.abs()) / scale;
        worst = worst.max(r);
    }
    worst
}

/// Conformal factor `u = log(lambda)` with `g = lambda^2 Id`; errors with
/// [`Error::NotConformal`] when the metric is not conformal within `tol`.
pub fn conformal_factor(geom: &SurfaceGeometry, tol: f64) -> Result<Vec<f64>> {
    let residual = conformality_residual(geom);
    if residual > tol {
        return Err(Error::NotConformal { residual, tol });
    }
    Ok(geom.g.iter().map(|g| 0.5 * (0.5 * (g.a11 + g.a22)).ln()).collect())
}

/// Outcome of the uniform-ellipticity audit of the induced metric.
#[derive(Clone, Copy, Debug)]
pub struct WeakImmersionReport {
    pub min_det: f64,
    pub floor: f64,
    /// `1/4 log(min det g)`: lower conformal exponent if the chart were conformal
    pub lambda_low: f64,
    pub pass: bool,
}

/// Check `det g > eps^2` over all nodes without failing hard.
pub fn weak_immersion_check(geom: &SurfaceGeometry, eps: f64) -> WeakImmersionReport {
    let min_det = geom.det.iter().cloned().fold(f64::INFINITY, f64::min);
    let floor = eps * eps;
    WeakImmersionReport {
        min_det,
        floor,
        lambda_low: 0.25 * min_det.ln(),
        pass: min_det > floor,
    }
}

/// Split an ambient field `phi` along the surface into its scalar normal part
/// and tangential coordinates: `phi = phi_n nu + xi^a d_a f`. Returns
/// `(phi_n, xi, max reconstruction error)`.
pub fn normal_tangential_split(
    geom: &SurfaceGeometry,
    phi: &[Vec3],
) -> (Vec<f64>, Vec<[f64; 2]>, f64) {
    let n = geom.len();
    let mut phi_n = Vec::with_capacity(n);
    let mut xi = Vec::with_capacity(n);
    let mut worst = 0.0f64;
    for k in 0..n {
        let pn = phi[k].dot(geom.nu[k]);
        let c1 = phi[k].dot(geom.deriv.fx[k]);
        let c2 = phi[k].dot(geom.deriv.fy[k]);
        let inv = &geom.inv[k];
        let x = [inv.a11 * c1 + inv.a12 * c2, inv.a12 * c1 + inv.a22 * c2];
        let recon = pn * geom.nu[k] + x[0] * geom.deriv.fx[k] + x[1] * geom.deriv.fy[k];
        worst = worst.max((recon - phi[k]).norm());
        phi_n.push(pn);
        xi.push(x);
    }
    (phi_n, xi, worst)
}

/// Interior-pointing unit conormal along the bottom boundary row, as
/// coordinate components on `(d_x f, d_y f)` and as an ambient vector.
/// It is tangent to the surface, orthogonal to the boundary curve, and has
/// positive `d_y f` coefficient.
pub fn boundary_conormal(geom: &SurfaceGeometry) -> Vec<([f64; 2], Vec3)> {
    let grid = &geom.grid;
    let mut out = Vec::with_capacity(grid.nx);
    for i in 0..grid.nx {
        let k = grid.idx(i, 0);
        let g = &geom.g[k];
        let s = 1.0 / (g.a11 * geom.det[k]).sqrt();
        let comp = [-g.a12 * s, g.a11 * s];
        let amb = comp[0] * geom.deriv.fx[k] + comp[1] * geom.deriv.fy[k];
        out.push((comp, amb));
    }
    out
}

/// The fixed ambient object a free boundary is confined to: a plane, a round
/// sphere, or a straight line.
#[derive(Clone, Copy, Debug)]
pub enum SupportSurface {
    /// Plane through `point` with unit `normal`.
    Plane { point: Vec3, normal: Vec3 },
    /// Round sphere.
    Sphere { center: Vec3, radius: f64 },
    /// Straight line through `point` with unit `direction`.
    Line { point: Vec3, direction: Vec3 },
}

impl SupportSurface {
    /// Signed distance (planes), radial distance offset (spheres), or
    /// orthogonal distance (lines) from `p` to the support.
    pub fn distance(&self, p: Vec3) -> f64 {
        match *self {
            SupportSurface::Plane { point, normal } => (p - point).dot(normal),
            SupportSurface::Sphere { center, radius } => (p - center).norm() - radius,
            SupportSurface::Line { point, direction } => {
                let d = p - point;
                (d - d.dot(direction) * direction).norm()
            }
        }
    }

    /// Unit normal of the support at a point on it. Lines have no normal
    /// field (codimension two), so `None` is returned for them.
    pub fn normal_at(&self, p: Vec3) -> Option<Vec3> {
        match *self {
            SupportSurface::Plane { normal, .. } => Some(normal),
            SupportSurface::Sphere { center, .. } => Some((p - center).normalized()),
            SupportSurface::Line { .. } => None,
        }
    }

    /// Second fundamental form of the support evaluated on tangent vectors,
    /// with the normal pointing away from the sphere's center (so a unit
    /// sphere has `h(v, v) = |v|^2 / R`); identically zero for planes.
    pub fn second_form(&self, _p: Vec3, v: Vec3, w: Vec3) -> f64 {
        match *self {
            SupportSurface::Plane { .. } => 0.0,
            SupportSurface::Sphere { radius, .. } => v.dot(w) / radius,
            SupportSurface::Line { .. } => 0.0,
        }
    }
}

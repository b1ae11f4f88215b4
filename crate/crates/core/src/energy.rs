//! Curvature energies, their exact first variations, and the pointwise
//! evolution identities of normal perturbations.
//!
//! Three energies are integrated from the same nodal geometry and quadrature
//! rule: the Willmore energy `W = 1/4 integral H^2 dmu`, the total curvature
//! energy `E = 1/2 integral |h|^2 dmu`, and the trace-free energy
//! `T = 1/2 integral |h0|^2 dmu`. Since `|h|^2 = |h0|^2 + H^2/2` holds
//! pointwise, the reports satisfy `E = T + W` up to roundoff.
//!
//! First variations are computed by differentiating the *discrete* energy
//! exactly: every delta-quantity (metric, normal, second fundamental form) is
//! the algebraic derivative of the corresponding nodal value under
//! `f -> f + t phi`, so the result matches a central difference quotient of
//! the energy to `O(t^2)` with no quadrature-consistency error. A second,
//! independently derived form of the Willmore variation (via the surface
//! Laplacian of the field) is provided as a cross-check.

use crate::error::{Error, Result};
use crate::geometry::{
    christoffels_at, compute_geometry, point_geometry, PointGeometry, SurfaceGeometry,
};
use crate::jet::{DynScalar, DynSurface, Jet2, NormalOffset, OffsetBy, SurfaceMap};
use crate::math::{Mat2, Sym2, Vec3};
use crate::surface::{DerivScheme, Immersion, VariationField};
use serde::Serialize;
use std::sync::Arc;

/// Which curvature energy a computation refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnergyKind {
    /// `1/4 integral H^2 dmu`
    Willmore,
    /// `1/2 integral |h|^2 dmu`
    Total,
    /// `1/2 integral |h0|^2 dmu`
    TraceFree,
}

/// All three curvature energies plus the area, from one quadrature pass.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct EnergyReport {
    pub area: f64,
    pub willmore: f64,
    pub total: f64,
    pub tracefree: f64,
}

impl EnergyReport {
    pub fn get(&self, kind: EnergyKind) -> f64 {
        match kind {
            EnergyKind::Willmore => self.willmore,
            EnergyKind::Total => self.total,
            EnergyKind::TraceFree => self.tracefree,
        }
    }
}

/// Integrate the three curvature energies over precomputed geometry.
pub fn energies(geom: &SurfaceGeometry) -> EnergyReport {
    let n = geom.len();
    let mut wd = Vec::with_capacity(n);
    let mut ed = Vec::with_capacity(n);
    let mut td = Vec::with_capacity(n);
    for k in 0..n {
        let a = geom.area[k];
        wd.push(0.25 * geom.mean_h[k] * geom.mean_h[k] * a);
        ed.push(0.5 * geom.h_norm_sq[k] * a);
        td.push(0.5 * geom.h0_norm_sq[k] * a);
    }
    EnergyReport {
        area: geom.total_area(),
        willmore: geom.grid.integrate_area(&wd),
        total: geom.grid.integrate_area(&ed),
        tracefree: geom.grid.integrate_area(&td),
    }
}

/// Convenience wrapper: geometry plus energies in one call.
pub fn energies_of(im: &Immersion, scheme: DerivScheme, eps: f64) -> Result<EnergyReport> {
    Ok(energies(&compute_geometry(im, scheme, eps)?))
}

/// Frobenius contraction `sum_ij a_ij b_ij` of two mixed 2x2 matrices.
fn frob(a: Mat2, b: Mat2) -> f64 {
    a.a11 * b.a11 + a.a12 * b.a12 + a.a21 * b.a21 + a.a22 * b.a22
}

/// Exact first variation of a curvature energy in the direction of an ambient
/// field: the algebraic `t`-derivative of the discrete energy of `f + t phi`
/// at `t = 0`. Valid for arbitrary fields (no boundary terms are discarded).
pub fn first_variation(
    geom: &SurfaceGeometry,
    field: &VariationField,
    kind: EnergyKind,
    scheme: DerivScheme,
) -> Result<f64> {
    let fb = field.derivatives(&geom.grid, scheme)?;
    let n = geom.len();
    let mut vals = Vec::with_capacity(n);
    for k in 0..n {
        let (fx, fy) = (geom.deriv.fx[k], geom.deriv.fy[k]);
        let (px, py) = (fb.fx[k], fb.fy[k]);
        // delta g_ij = <d_i phi, d_j f> + <d_i f, d_j phi>
        let dg = Sym2 {
            a11: 2.0 * fx.dot(px),
            a12: fx.dot(py) + fy.dot(px),
            a22: 2.0 * fy.dot(py),
        };
        // delta nu = (delta c - nu <nu, delta c>)/|c|, c = f_x x f_y
        let nu = geom.nu[k];
        let dc = px.cross(fy) + fx.cross(py);
        let dnu = (dc - nu.dot(dc) * nu) / geom.area[k];
        // delta h_ij = <d2_ij phi, nu> + <d2_ij f, delta nu>
        let dh = Sym2 {
            a11: fb.fxx[k].dot(nu) + geom.deriv.fxx[k].dot(dnu),
            a12: fb.fxy[k].dot(nu) + geom.deriv.fxy[k].dot(dnu),
            a22: fb.fyy[k].dot(nu) + geom.deriv.fyy[k].dot(dnu),
        };
        let inv = geom.inv[k];
        let m = Mat2::mixed(inv, geom.h[k]);
        let d = Mat2::mixed(inv, dh);
        let gm = Mat2::mixed(inv, dg);
        // delta H = tr(g^-1 dh) - tr(g^-1 dg g^-1 h)
        let d_mean = d.trace() - gm.mul(m).trace();
        // delta |h|^2 = 2 tr(g^-1 dh g^-1 h) - 2 tr(g^-1 dg (g^-1 h)^2)
        let d_hsq = 2.0 * d.mul(m).trace() - 2.0 * gm.mul(m).mul(m).trace();
        // delta dmu = (1/2) tr(g^-1 dg) dmu
        let trg = gm.trace();
        let mean = geom.mean_h[k];
        let w_density = 0.5 * mean * d_mean + 0.125 * mean * mean * trg;
        let e_density = 0.5 * d_hsq + 0.25 * geom.h_norm_sq[k] * trg;
        let density = match kind {
            EnergyKind::Willmore => w_density,
            EnergyKind::Total => e_density,
            EnergyKind::TraceFree => e_density - w_density,
        };
        vals.push(density * geom.area[k]);
    }
    Ok(geom.grid.integrate_area(&vals))
}

/// Independently derived form of the Willmore first variation, written
/// through the surface Laplacian of the field:
/// `1/2 <H nu, Lap_g phi> - H g^{ij} g^{kl} h_ik <d_j f, d_l phi>
///  + 1/4 H^2 g^{ij} <d_i f, d_j phi>`, integrated against `dmu`.
/// Agrees with [`first_variation`] for the Willmore energy up to roundoff.
pub fn willmore_variation_laplace_form(
    geom: &SurfaceGeometry,
    field: &VariationField,
    scheme: DerivScheme,
) -> Result<f64> {
    let fb = field.derivatives(&geom.grid, scheme)?;
    let n = geom.len();
    let mut vals = Vec::with_capacity(n);
    for k in 0..n {
        let (fx, fy) = (geom.deriv.fx[k], geom.deriv.fy[k]);
        let (px, py) = (fb.fx[k], fb.fy[k]);
        let inv = geom.inv[k];
        let ch = geom.christoffels(k);
        // vector surface Laplacian of the field
        let hess = |pij: Vec3, gx: f64, gy: f64| pij - gx * px - gy * py;
        let lap = inv.a11 * hess(fb.fxx[k], ch[0][0], ch[1][0])
            + 2.0 * inv.a12 * hess(fb.fxy[k], ch[0][1], ch[1][1])
            + inv.a22 * hess(fb.fyy[k], ch[0][2], ch[1][2]);
        let mean = geom.mean_h[k];
        // B^{kl} = (g^-1 h g^-1)^{kl}, P_{kl} = <d_k f, d_l phi>
        let b = Mat2::mixed(inv, geom.h[k]).mul(Mat2::from_sym(inv));
        let p = Mat2 {
            a11: fx.dot(px),
            a12: fx.dot(py),
            a21: fy.dot(px),
            a22: fy.dot(py),
        };
        let term1 = 0.5 * mean * geom.nu[k].dot(lap);
        let term2 = -mean * frob(b, p);
        let term3 = 0.25 * mean * mean
            * (inv.a11 * p.a11 + inv.a12 * (p.a12 + p.a21) + inv.a22 * p.a22);
        vals.push((term1 + term2 + term3) * geom.area[k]);
    }
    Ok(geom.grid.integrate_area(&vals))
}

/// The perturbed immersion `f + t phi`, keeping analytic jets when both the
/// base and the field carry them, falling back to nodal positions otherwise.
pub fn offset_immersion(im: &Immersion, field: &VariationField, t: f64) -> Result<Immersion> {
    match (&im.map, &field.map) {
        (Some(base), Some(dir)) => Immersion::from_map(
            im.grid.clone(),
            Arc::new(OffsetBy {
                base: base.clone(),
                dir: dir.clone(),
                t,
            }),
            im.name.clone(),
        ),
        _ => {
            let positions = im
                .positions
                .iter()
                .zip(&field.values)
                .map(|(p, v)| *p + t * *v)
                .collect();
            Immersion::from_positions(im.grid.clone(), positions, im.name.clone())
        }
    }
}

/// Central difference quotient `(E(f + t phi) - E(f - t phi)) / 2t` of the
/// discrete energy; the oracle against which [`first_variation`] is checked.
pub fn central_difference_variation(
    im: &Immersion,
    field: &VariationField,
    kind: EnergyKind,
    t: f64,
    scheme: DerivScheme,
    eps: f64,
) -> Result<f64> {
    let at = |s: f64| -> Result<f64> {
        let offset = offset_immersion(im, field, s)?;
        Ok(energies_of(&offset, scheme, eps)?.get(kind))
    };
    Ok((at(t)? - at(-t)?) / (2.0 * t))
}

// ---------------------------------------------------------------------------
// surface Laplacian and the Willmore operator
// ---------------------------------------------------------------------------

/// Surface Laplacian of a nodal scalar field in divergence form,
/// `(1/sqrt g) d_i (sqrt g g^{ij} d_j u)`, via nested grid differences.
pub fn laplace_beltrami_divergence(geom: &SurfaceGeometry, u: &[f64]) -> Vec<f64> {
    let grid = &geom.grid;
    let ux = grid.d_x(u);
    let uy = grid.d_y(u);
    let n = geom.len();
    let mut v1 = Vec::with_capacity(n);
    let mut v2 = Vec::with_capacity(n);
    for k in 0..n {
        let inv = geom.inv[k];
        let a = geom.area[k];
        v1.push(a * (inv.a11 * ux[k] + inv.a12 * uy[k]));
        v2.push(a * (inv.a12 * ux[k] + inv.a22 * uy[k]));
    }
    let d1 = grid.d_x(&v1);
    let d2 = grid.d_y(&v2);
    (0..n).map(|k| (d1[k] + d2[k]) / geom.area[k]).collect()
}

/// Surface Laplacian of a nodal scalar field through the covariant Hessian,
/// `g^{ij} (d2_ij u - Gamma^k_ij d_k u)`; an independent discretization used
/// to cross-check the divergence form.
pub fn laplace_beltrami_hessian(geom: &SurfaceGeometry, u: &[f64]) -> Vec<f64> {
    let grid = &geom.grid;
    let ux = grid.d_x(u);
    let uy = grid.d_y(u);
    let uxx = grid.d_xx(u);
    let uxy = grid.d_xy(u);
    let uyy = grid.d_yy(u);
    (0..geom.len())
        .map(|k| {
            let inv = geom.inv[k];
            let ch = geom.christoffels(k);
            let hxx = uxx[k] - ch[0][0] * ux[k] - ch[1][0] * uy[k];
            let hxy = uxy[k] - ch[0][1] * ux[k] - ch[1][1] * uy[k];
            let hyy = uyy[k] - ch[0][2] * ux[k] - ch[1][2] * uy[k];
            inv.a11 * hxx + 2.0 * inv.a12 * hxy + inv.a22 * hyy
        })
        .collect()
}

/// The fourth-order Willmore operator `Lap_g H + |h0|^2 H`, whose vanishing
/// characterizes critical points of the Willmore energy. Uses the
/// divergence-form Laplacian on the nodal mean curvature.
pub fn willmore_operator(geom: &SurfaceGeometry) -> Vec<f64> {
    let lap = laplace_beltrami_divergence(geom, &geom.mean_h);
    (0..geom.len())
        .map(|k| lap[k] + geom.h0_norm_sq[k] * geom.mean_h[k])
        .collect()
}

// ---------------------------------------------------------------------------
// evolution identities of normal perturbations
// ---------------------------------------------------------------------------

/// Sup-norm residuals of the four pointwise evolution identities under a
/// normal perturbation `f_t = f + t phi nu`:
/// `d/dt g_ij = -2 phi h_ij`, `d/dt dmu = -phi H dmu`,
/// `d/dt h_ij = Hess_ij phi - phi (h g^-1 h)_ij`, and
/// `d/dt H = Lap_g phi + |h|^2 phi`.
#[derive(Clone, Copy, Debug, Default)]
pub struct EvolutionResiduals {
    pub metric: f64,
    pub measure: f64,
    pub shape: f64,
    pub mean: f64,
}

impl EvolutionResiduals {
    pub fn max(&self) -> f64 {
        self.metric.max(self.measure).max(self.shape).max(self.mean)
    }
}

fn point_geometry_of(j: &Jet2) -> PointGeometry {
    point_geometry(j.fx, j.fy, j.fxx, j.fxy, j.fyy)
}

/// Check the normal-evolution identities by a centered difference in `t` at
/// the given parameter points. Runs at `dt` and `dt/2`; if halving the step
/// does not shrink the residuals the quotient is outside its quadratic
/// regime (step too coarse, or so small that roundoff dominates) and
/// [`Error::StepTooLarge`] is returned. On success the `dt/2` residuals are
/// returned.
pub fn normal_evolution_residuals(
    base: &DynSurface,
    phi: &DynScalar,
    pts: &[(f64, f64)],
    dt: f64,
) -> Result<EvolutionResiduals> {
    let probe = *pts.first().ok_or_else(|| {
        Error::Invalid("evolution check needs at least one sample point".into())
    })?;
    let run = |step: f64| -> Result<EvolutionResiduals> {
        let plus = NormalOffset::new(base.clone(), phi.clone(), step, probe)?;
        let minus = NormalOffset::new(base.clone(), phi.clone(), -step, probe)?;
        let mut r = EvolutionResiduals::default();
        for &(x, y) in pts {
            let j0 = base.jet(x, y);
            let p0 = point_geometry_of(&j0);
            let pp = point_geometry_of(&plus.jet(x, y));
            let pm = point_geometry_of(&minus.jet(x, y));
            let s = phi.jet(x, y);
            let half = 0.5 / step;

            let dg = pp.g.sub(pm.g).scale(half);
            let want_g = p0.h.scale(-2.0 * s.v);
            let eg = dg.sub(want_g);
            r.metric = r
                .metric
                .max(eg.a11.abs())
                .max(eg.a12.abs())
                .max(eg.a22.abs());

            let da = (pp.area - pm.area) * half;
            r.measure = r.measure.max((da + s.v * p0.mean_h * p0.area).abs());

            let ch = christoffels_at(j0.fx, j0.fy, j0.fxx, j0.fxy, j0.fyy, p0.inv);
            let hess = Sym2 {
                a11: s.vxx - ch[0][0] * s.vx - ch[1][0] * s.vy,
                a12: s.vxy - ch[0][1] * s.vx - ch[1][1] * s.vy,
                a22: s.vyy - ch[0][2] * s.vx - ch[1][2] * s.vy,
            };
            let hgh_full = Mat2::from_sym(p0.h)
                .mul(Mat2::from_sym(p0.inv))
                .mul(Mat2::from_sym(p0.h));
            let hgh = Sym2 {
                a11: hgh_full.a11,
                a12: 0.5 * (hgh_full.a12 + hgh_full.a21),
                a22: hgh_full.a22,
            };
            let dh = pp.h.sub(pm.h).scale(half);
            let want_h = hess.sub(hgh.scale(s.v));
            let eh = dh.sub(want_h);
            r.shape = r
                .shape
                .max(eh.a11.abs())
                .max(eh.a12.abs())
                .max(eh.a22.abs());

            let dmean = (pp.mean_h - pm.mean_h) * half;
            let want_mean = hess.trace_with_inverse(p0.inv) + p0.h_norm_sq * s.v;
            r.mean = r.mean.max((dmean - want_mean).abs());
        }
        if !(r.metric.is_finite() && r.measure.is_finite() && r.shape.is_finite() && r.mean.is_finite()) {
            return Err(Error::Invalid(
                "evolution sample produced non-finite geometry; the normal offset left the \
                 immersed regime"
                    .into(),
            ));
        }
        Ok(r)
    };
    let coarse = run(dt)?;
    let fine = run(0.5 * dt)?;
    if coarse.max() > 1e-10 && fine.max() > 0.6 * coarse.max() {
        return Err(Error::StepTooLarge {
            coarse: coarse.max(),
            fine: fine.max(),
        });
    }
    Ok(fine)
}

// ---------------------------------------------------------------------------
// pointwise curvature algebra
// ---------------------------------------------------------------------------

/// Relative residual of the cubic trace identity for 2x2 shape-operator
/// algebra: `tr((g^-1 h)^3) = (3/2) |h0|^2 H + (1/4) H^3`, where
/// `H = tr(g^-1 h)` and `|h0|^2 = |h|^2 - H^2/2`.
pub fn cubic_trace_residual(g: Sym2, h: Sym2) -> f64 {
    let inv = g.inverse();
    let m = Mat2::mixed(inv, h);
    let m2 = m.mul(m);
    let lhs = m2.mul(m).trace();
    let mean = m.trace();
    let h0sq = m2.trace() - 0.5 * mean * mean;
    let rhs = 1.5 * h0sq * mean + 0.25 * mean * mean * mean;
    (lhs - rhs).abs() / lhs.abs().max(1.0)
}

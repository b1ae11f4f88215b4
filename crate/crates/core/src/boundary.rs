//! Diagnostics along the free edge of the half-strip chart.
//!
//! The bottom grid row `y = 0` plays the role of the free boundary: the
//! surface is allowed to slide along a fixed support (a plane, sphere, or
//! line) while meeting it orthogonally. This module provides the boundary
//! calculus that goes with that setup: derivatives along the interior
//! conormal and along arclength, the boundary forms produced by the first
//! variation of the curvature energies, residuals of the natural boundary
//! conditions each energy induces, admissibility audits, a boundary
//! trace / biharmonic extension operator pair, Gauss-Bonnet bookkeeping,
//! and a logarithmic fit of the normal mean-curvature component near a
//! puncture.
//!
//! Derivatives of *derived* scalar fields (such as the mean curvature) are
//! grid finite differences and carry the usual second-order error; all
//! purely pointwise quantities are exact in the analytic scheme, and the
//! normal component of a field is differentiated through the Weingarten
//! relation so no finite differences of the unit normal are ever taken.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{boundary_conormal, point_geometry, SupportSurface, SurfaceGeometry};
use crate::grid::ParamGrid;
use crate::jet::{Jet2, ScalarJet2, ScalarMap, Smoothness, SurfaceMap, Window1};
use crate::math::{vec3, Vec3};
use crate::spectral::{max_alias_free_mode, BiharmonicExtension, SupportPolicy};
use crate::surface::{DerivScheme, Immersion, VariationField};

fn grids_match(a: &ParamGrid, b: &ParamGrid) -> bool {
    a.nx == b.nx && a.ny == b.ny && a.x_range == b.x_range && a.y_range == b.y_range
}

fn sup_abs(values: &[f64]) -> f64 {
    values.iter().fold(0.0f64, |m, v| m.max(v.abs()))
}

/// First derivative of a single row of nodal values: centered in the
/// interior, one-sided second-order at the two ends (the same stencils the
/// grid operators use).
fn row_d1(values: &[f64], h: f64) -> Vec<f64> {
    let n = values.len();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let d = if i == 0 {
            -3.0 * values[0] + 4.0 * values[1] - values[2]
        } else if i == n - 1 {
            3.0 * values[n - 1] - 4.0 * values[n - 2] + values[n - 3]
        } else {
            values[i + 1] - values[i - 1]
        };
        out.push(d / (2.0 * h));
    }
    out
}

// ---------------------------------------------------------------------------
// conormal and arclength calculus
// ---------------------------------------------------------------------------

/// Derivative of a nodal scalar field along the interior unit conormal of
/// the bottom boundary row. Interior derivatives are finite differences,
/// so the result is second-order accurate.
pub fn conormal_derivative(geom: &SurfaceGeometry, values: &[f64]) -> Result<Vec<f64>> {
    if values.len() != geom.len() {
        return Err(Error::Invalid(format!(
            "{} nodal values for a geometry with {} nodes",
            values.len(),
            geom.len()
        )));
    }
    let grid = &geom.grid;
    let dx = grid.d_x(values);
    let dy = grid.d_y(values);
    let out = boundary_conormal(geom)
        .iter()
        .enumerate()
        .map(|(i, (comp, _))| {
            let k = grid.idx(i, 0);
            comp[0] * dx[k] + comp[1] * dy[k]
        })
        .collect();
    Ok(out)
}

/// Derivative of boundary-row values with respect to arclength along the
/// boundary curve, `d/ds = g11^{-1/2} d/dx`.
pub fn arclength_derivative_row(geom: &SurfaceGeometry, row: &[f64]) -> Result<Vec<f64>> {
    let grid = &geom.grid;
    if row.len() != grid.nx {
        return Err(Error::Invalid(format!(
            "{} row values for a grid with {} columns",
            row.len(),
            grid.nx
        )));
    }
    let d = row_d1(row, grid.hx);
    let out = d
        .into_iter()
        .enumerate()
        .map(|(i, v)| v / geom.g[grid.idx(i, 0)].a11.sqrt())
        .collect();
    Ok(out)
}

// ---------------------------------------------------------------------------
// variational boundary forms
// ---------------------------------------------------------------------------

/// The three boundary 1-forms produced when the first variations of the
/// Willmore, trace-free, and total curvature energies are integrated by
/// parts, evaluated on the interior conormal at each bottom-row node.
///
/// With `phi_n = <phi, nu>`, `xi` the tangential part of the field, and
/// `eta` the interior unit conormal:
///
/// - `omega = phi_n dH/deta - (dphi_n/deta) H - (H^2/2) g(xi, eta)`
/// - `alpha = (phi_n/2) dH/deta - h0(grad phi_n, eta) - (|h0|^2/2) g(xi, eta)`
/// - `tau   = phi_n dH/deta - h(grad phi_n, eta) - (|h|^2/2) g(xi, eta)`
///
/// They satisfy `tau = alpha + omega/2` identically, mirroring the splitting
/// of the total curvature energy into its trace-free and Willmore parts.
#[derive(Clone, Debug, Serialize)]
pub struct BoundaryForms {
    pub omega: Vec<f64>,
    pub alpha: Vec<f64>,
    pub tau: Vec<f64>,
}

impl BoundaryForms {
    /// Largest absolute value among all three forms.
    pub fn sup(&self) -> f64 {
        sup_abs(&self.omega)
            .max(sup_abs(&self.alpha))
            .max(sup_abs(&self.tau))
    }
}

/// Evaluate the variational boundary forms of a field along the bottom row.
///
/// The normal component is differentiated exactly through the Weingarten
/// relation `d_a nu = -h_ab g^{bc} d_c f`, so only the mean-curvature slope
/// `dH/deta` involves grid finite differences.
pub fn boundary_forms(
    geom: &SurfaceGeometry,
    field: &VariationField,
    scheme: DerivScheme,
) -> Result<BoundaryForms> {
    let grid = &geom.grid;
    if field.values.len() != geom.len() {
        return Err(Error::Invalid(format!(
            "{} field values for a geometry with {} nodes",
            field.values.len(),
            geom.len()
        )));
    }
    let bundle = field.derivatives(grid, scheme)?;
    let dh_deta = conormal_derivative(geom, &geom.mean_h)?;
    let conormal = boundary_conormal(geom);

    let nx = grid.nx;
    let mut omega = Vec::with_capacity(nx);
    let mut alpha = Vec::with_capacity(nx);
    let mut tau = Vec::with_capacity(nx);
    for i in 0..nx {
        let k = grid.idx(i, 0);
        let (eta, _) = conormal[i];
        let nu = geom.nu[k];
        let phi = field.values[k];
        let phi_n = phi.dot(nu);
        // tangential coordinates xi^b = g^{bc} <phi, d_c f>
        let t = [phi.dot(geom.deriv.fx[k]), phi.dot(geom.deriv.fy[k])];
        let xi = geom.inv[k].apply(t);
        // d_a <phi, nu> = <d_a phi, nu> - h_ab xi^b   (Weingarten)
        let hxi = geom.h[k].apply(xi);
        let dphi_n = [
            bundle.fx[k].dot(nu) - hxi[0],
            bundle.fy[k].dot(nu) - hxi[1],
        ];
        let dphi_n_deta = eta[0] * dphi_n[0] + eta[1] * dphi_n[1];
        let grad = geom.inv[k].apply(dphi_n);
        let g_xi_eta = geom.g[k].form(xi, eta);
        let h_mean = geom.mean_h[k];

        omega.push(phi_n * dh_deta[i] - dphi_n_deta * h_mean - 0.5 * h_mean * h_mean * g_xi_eta);
        alpha.push(
            0.5 * phi_n * dh_deta[i]
                - geom.h0[k].form(grad, eta)
                - 0.5 * geom.h0_norm_sq[k] * g_xi_eta,
        );
        tau.push(
            phi_n * dh_deta[i] - geom.h[k].form(grad, eta) - 0.5 * geom.h_norm_sq[k] * g_xi_eta,
        );
    }
    Ok(BoundaryForms { omega, alpha, tau })
}

// ---------------------------------------------------------------------------
// natural boundary conditions
// ---------------------------------------------------------------------------

/// The natural (free-boundary) condition whose residual is requested. Each
/// curvature energy, minimized over surfaces that slide freely along a
/// support while meeting it orthogonally, induces its own condition on the
/// contact curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FreeBoundaryCondition {
    /// `H = 0`: the weak (Navier-type) condition.
    Navier,
    /// `dH/deta + hS(nu, nu) H = 0` for the Willmore energy.
    Willmore,
    /// `dH/deta + hS(nu, nu) h(eta, eta) - d/ds[ hS(nu, t) ] = 0` for the
    /// total curvature energy, `t` the unit boundary tangent.
    Total,
    /// The trace-free variant, which subtracts `hS(nu, nu) h(t, t)`.
    TraceFree,
}

impl FreeBoundaryCondition {
    pub fn name(self) -> &'static str {
        match self {
            FreeBoundaryCondition::Navier => "navier",
            FreeBoundaryCondition::Willmore => "willmore",
            FreeBoundaryCondition::Total => "total",
            FreeBoundaryCondition::TraceFree => "tracefree",
        }
    }
}

/// Pointwise residual of a natural boundary condition along the bottom row.
/// `hS` is the second fundamental form of the support; for planes and lines
/// it vanishes and every slope condition reduces to `dH/deta = 0`.
pub fn free_boundary_residual(
    im: &Immersion,
    geom: &SurfaceGeometry,
    support: &SupportSurface,
    cond: FreeBoundaryCondition,
) -> Result<Vec<f64>> {
    if !grids_match(&im.grid, &geom.grid) {
        return Err(Error::Invalid(
            "immersion and geometry live on different grids".into(),
        ));
    }
    let grid = &geom.grid;
    let nx = grid.nx;
    let h_row: Vec<f64> = grid.row0(&geom.mean_h);
    if cond == FreeBoundaryCondition::Navier {
        return Ok(h_row);
    }
    let dh_deta = conormal_derivative(geom, &geom.mean_h)?;
    let conormal = boundary_conormal(geom);

    // hS(nu, t) along the row, for the arclength-derivative term
    let mut hs_nu_t = Vec::with_capacity(nx);
    for i in 0..nx {
        let k = grid.idx(i, 0);
        let tangent = geom.deriv.fx[k] * (1.0 / geom.g[k].a11.sqrt());
        hs_nu_t.push(support.second_form(im.positions[k], geom.nu[k], tangent));
    }
    let dhs_ds = arclength_derivative_row(geom, &hs_nu_t)?;

    let mut out = Vec::with_capacity(nx);
    for i in 0..nx {
        let k = grid.idx(i, 0);
        let (eta, _) = conormal[i];
        let hs_nn = support.second_form(im.positions[k], geom.nu[k], geom.nu[k]);
        let r = match cond {
            FreeBoundaryCondition::Navier => unreachable!(),
            FreeBoundaryCondition::Willmore => dh_deta[i] + hs_nn * h_row[i],
            FreeBoundaryCondition::Total => {
                dh_deta[i] + hs_nn * geom.h[k].form(eta, eta) - dhs_ds[i]
            }
            FreeBoundaryCondition::TraceFree => {
                let h_tt = geom.h[k].a11 / geom.g[k].a11;
                dh_deta[i] + hs_nn * (geom.h[k].form(eta, eta) - h_tt) - dhs_ds[i]
            }
        };
        out.push(r);
    }
    Ok(out)
}

/// Sup-norm of [`free_boundary_residual`].
pub fn free_boundary_residual_sup(
    im: &Immersion,
    geom: &SurfaceGeometry,
    support: &SupportSurface,
    cond: FreeBoundaryCondition,
) -> Result<f64> {
    Ok(sup_abs(&free_boundary_residual(im, geom, support, cond)?))
}

// ---------------------------------------------------------------------------
// admissibility
// ---------------------------------------------------------------------------

/// Sup-norm audit of the free-boundary constraints along the bottom row:
/// the boundary must lie on the support (`trace`), the surface normal must
/// be tangent to the support there (`orthogonality`, the orthogonal-meeting
/// condition), and `conformality` reports how far the boundary-row metric is
/// from conformal (informational; it is not an admissibility constraint).
#[derive(Clone, Copy, Debug, Serialize)]
pub struct AdmissibilityReport {
    pub trace: f64,
    pub orthogonality: f64,
    pub conformality: f64,
}

/// Measure the admissibility of an immersion against a support surface.
pub fn admissibility(
    im: &Immersion,
    geom: &SurfaceGeometry,
    support: &SupportSurface,
) -> Result<AdmissibilityReport> {
    if !grids_match(&im.grid, &geom.grid) {
        return Err(Error::Invalid(
            "immersion and geometry live on different grids".into(),
        ));
    }
    let grid = &geom.grid;
    let mut trace = 0.0f64;
    let mut orthogonality = 0.0f64;
    let mut conformality = 0.0f64;
    for i in 0..grid.nx {
        let k = grid.idx(i, 0);
        let p = im.positions[k];
        trace = trace.max(support.distance(p).abs());
        let o = match *support {
            SupportSurface::Line { direction, .. } => geom.nu[k].dot(direction).abs(),
            _ => {
                let n = support
                    .normal_at(p)
                    .expect("planes and spheres have a normal field");
                geom.nu[k].dot(n).abs()
            }
        };
        orthogonality = orthogonality.max(o);
        let g = &geom.g[k];
        let scale = 0.5 * (g.a11 + g.a22);
        conformality = conformality.max((g.a11 - g.a22).abs().max(2.0 * g.a12.abs()) / scale);
    }
    Ok(AdmissibilityReport {
        trace,
        orthogonality,
        conformality,
    })
}

/// Enforce the two admissibility constraints, failing with
/// [`Error::ConstraintViolated`] (trace) or [`Error::NotOrthogonal`].
pub fn check_admissible(
    im: &Immersion,
    geom: &SurfaceGeometry,
    support: &SupportSurface,
    trace_tol: f64,
    ortho_tol: f64,
) -> Result<AdmissibilityReport> {
    let report = admissibility(im, geom, support)?;
    if report.trace > trace_tol {
        return Err(Error::ConstraintViolated {
            kind: "support trace".into(),
            residual: report.trace,
            tol: trace_tol,
        });
    }
    if report.orthogonality > ortho_tol {
        return Err(Error::NotOrthogonal {
            residual: report.orthogonality,
            tol: ortho_tol,
        });
    }
    Ok(report)
}

// ---------------------------------------------------------------------------
// boundary trace / extension operator pair
// ---------------------------------------------------------------------------

/// Boundary trace data of an ambient field, in the canonical frame where the
/// support plane is `{z = 0}`: at each bottom-row node,
///
/// - `value = <phi, e_z>` is the displacement off the support plane, and
/// - `slope = e^{-u} <d_y phi, nu>` is the conformally weighted tilt of the
///   field along the chart's vertical direction.
#[derive(Clone, Debug, Serialize)]
pub struct BoundaryPair {
    pub value: Vec<f64>,
    pub slope: Vec<f64>,
}

fn boundary_row_conformality(geom: &SurfaceGeometry) -> f64 {
    let grid = &geom.grid;
    let mut worst = 0.0f64;
    for i in 0..grid.nx {
        let g = &geom.g[grid.idx(i, 0)];
        let scale = 0.5 * (g.a11 + g.a22);
        worst = worst.max((g.a11 - g.a22).abs().max(2.0 * g.a12.abs()) / scale);
    }
    worst
}

/// The boundary trace operator: read off the [`BoundaryPair`] of a variation
/// field along the bottom row. The chart must be conformal on that row
/// (within `conformal_tol`) so the weight `e^u = sqrt(g11)` is meaningful.
pub fn trace_pair(
    geom: &SurfaceGeometry,
    field: &VariationField,
    scheme: DerivScheme,
    conformal_tol: f64,
) -> Result<BoundaryPair> {
    let grid = &geom.grid;
    if field.values.len() != geom.len() {
        return Err(Error::Invalid(format!(
            "{} field values for a geometry with {} nodes",
            field.values.len(),
            geom.len()
        )));
    }
    let residual = boundary_row_conformality(geom);
    if residual > conformal_tol {
        return Err(Error::NotConformal {
            residual,
            tol: conformal_tol,
        });
    }
    let bundle = field.derivatives(grid, scheme)?;
    let mut value = Vec::with_capacity(grid.nx);
    let mut slope = Vec::with_capacity(grid.nx);
    for i in 0..grid.nx {
        let k = grid.idx(i, 0);
        value.push(field.values[k].dot(Vec3::EZ));
        slope.push(bundle.fy[k].dot(geom.nu[k]) / geom.g[k].a11.sqrt());
    }
    Ok(BoundaryPair { value, slope })
}

/// Configuration of the pair-extension operator: mode cap for the boundary
/// Fourier analysis, vertical cutoff window, boundary support policy, and
/// the conformality tolerance for the boundary row.
#[derive(Clone, Debug)]
pub struct ExtensionConfig {
    pub k_max: usize,
    pub window: Window1,
    pub policy: SupportPolicy,
    pub conformal_tol: f64,
}

impl ExtensionConfig {
    /// Sensible defaults for a half-strip grid: the full alias-free mode
    /// range, a quartic-smoothstep window whose plateau covers `y = 0` and
    /// which dies out below the top row, interior-support enforcement, and
    /// a tight conformality gate.
    pub fn standard(grid: &ParamGrid) -> Result<ExtensionConfig> {
        if !grid.has_zero_boundary_row() {
            return Err(Error::Invalid(
                "pair extension needs a grid whose bottom row is the y = 0 axis".into(),
            ));
        }
        let y_top = grid.y_range.1;
        let ramp = (0.4 * y_top).min(1.0);
        Ok(ExtensionConfig {
            k_max: max_alias_free_mode(grid.nx),
            window: Window1::new(-2.0 * ramp, y_top, ramp, Smoothness::C4),
            policy: SupportPolicy::Interior {
                margin: 0.25,
                tol: 1e-9,
            },
            conformal_tol: 1e-8,
        })
    }
}

/// The extension operator's output: an ambient variation field whose three
/// components are windowed biharmonic mode sums. Along `y = 0` it restores
/// the requested [`BoundaryPair`] — the `z` component carries the `value`
/// data with zero vertical slope, while the horizontal components are pure
/// slopes directed along the surface normal with the conformal weight
/// `e^u` undoing the trace operator's `e^{-u}`.
#[derive(Clone, Debug)]
pub struct PairExtension {
    pub x: BiharmonicExtension,
    pub y: BiharmonicExtension,
    pub z: BiharmonicExtension,
}

impl SurfaceMap for PairExtension {
    fn jet(&self, x: f64, y: f64) -> Jet2 {
        let a: ScalarJet2 = self.x.jet(x, y);
        let b: ScalarJet2 = self.y.jet(x, y);
        let c: ScalarJet2 = self.z.jet(x, y);
        Jet2 {
            f: vec3(a.v, b.v, c.v),
            fx: vec3(a.vx, b.vx, c.vx),
            fy: vec3(a.vy, b.vy, c.vy),
            fxx: vec3(a.vxx, b.vxx, c.vxx),
            fxy: vec3(a.vxy, b.vxy, c.vxy),
            fyy: vec3(a.vyy, b.vyy, c.vyy),
            third: None,
        }
    }
}

/// The extension operator: build the ambient field that the trace operator
/// maps back onto `(value, slope)`. The round trip is the identity up to
/// Fourier truncation whenever the surface meets the plane orthogonally
/// (`nu` horizontal on the row), since the slope components then recombine
/// as `slope (nu_1^2 + nu_2^2) = slope`.
pub fn extend_pair(
    geom: &SurfaceGeometry,
    value: &[f64],
    slope: &[f64],
    cfg: &ExtensionConfig,
) -> Result<PairExtension> {
    let grid = &geom.grid;
    if value.len() != grid.nx || slope.len() != grid.nx {
        return Err(Error::Invalid(format!(
            "boundary data of lengths {}/{} for a grid with {} columns",
            value.len(),
            slope.len(),
            grid.nx
        )));
    }
    let residual = boundary_row_conformality(geom);
    if residual > cfg.conformal_tol {
        return Err(Error::NotConformal {
            residual,
            tol: cfg.conformal_tol,
        });
    }
    let xs = grid.xs();
    let zeros = vec![0.0; grid.nx];
    let mut d1 = Vec::with_capacity(grid.nx);
    let mut d2 = Vec::with_capacity(grid.nx);
    for i in 0..grid.nx {
        let k = grid.idx(i, 0);
        let eu = geom.g[k].a11.sqrt();
        d1.push(eu * slope[i] * geom.nu[k].x);
        d2.push(eu * slope[i] * geom.nu[k].y);
    }
    let build = |dirichlet: &[f64], neumann: &[f64]| -> Result<BiharmonicExtension> {
        BiharmonicExtension::from_samples(xs, dirichlet, neumann, cfg.k_max, cfg.policy)?
            .with_window(cfg.window)
    };
    Ok(PairExtension {
        x: build(&zeros, &d1)?,
        y: build(&zeros, &d2)?,
        z: build(value, &zeros)?,
    })
}

/// Convenience: run the extension and wrap it as a [`VariationField`] with
/// exact jets on the geometry's grid.
pub fn extend_pair_field(
    geom: &SurfaceGeometry,
    value: &[f64],
    slope: &[f64],
    cfg: &ExtensionConfig,
) -> Result<VariationField> {
    let ext = extend_pair(geom, value, slope, cfg)?;
    Ok(VariationField::from_map(&geom.grid, Arc::new(ext)))
}

// ---------------------------------------------------------------------------
// Gauss-Bonnet bookkeeping
// ---------------------------------------------------------------------------

/// Which horizontal edge of the strip chart.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StripEdge {
    Bottom,
    Top,
}

/// How to compute the geodesic curvature of an edge curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CurvatureRoute {
    /// `<f_xx, eta> / g11` with the ambient interior unit conormal `eta`.
    Ambient,
    /// `Gamma^y_xx sqrt(det g) / g11^{3/2}` from the Christoffel symbols,
    /// algebraically identical to the ambient route.
    Intrinsic,
}

/// Geodesic curvature of an edge row with respect to the interior conormal,
/// so that a flat disk's outer rim has `kappa_g = +1`.
pub fn geodesic_curvature(
    geom: &SurfaceGeometry,
    edge: StripEdge,
    route: CurvatureRoute,
) -> Vec<f64> {
    let grid = &geom.grid;
    let (j, sign) = match edge {
        StripEdge::Bottom => (0, 1.0),
        StripEdge::Top => (grid.ny - 1, -1.0),
    };
    let mut out = Vec::with_capacity(grid.nx);
    for i in 0..grid.nx {
        let k = grid.idx(i, j);
        let g = &geom.g[k];
        let kappa = match route {
            CurvatureRoute::Ambient => {
                let s = 1.0 / (g.a11 * geom.det[k]).sqrt();
                let eta = (g.a11 * geom.deriv.fy[k] - g.a12 * geom.deriv.fx[k]) * (sign * s);
                geom.deriv.fxx[k].dot(eta) / g.a11
            }
            CurvatureRoute::Intrinsic => {
                let gamma = geom.christoffels(k)[1][0];
                sign * gamma * geom.det[k].sqrt() / (g.a11 * g.a11.sqrt())
            }
        };
        out.push(kappa);
    }
    out
}

/// Arclength integral of the geodesic curvature along one edge.
pub fn edge_turning(geom: &SurfaceGeometry, edge: StripEdge) -> f64 {
    let grid = &geom.grid;
    let j = match edge {
        StripEdge::Bottom => 0,
        StripEdge::Top => grid.ny - 1,
    };
    let kappa = geodesic_curvature(geom, edge, CurvatureRoute::Ambient);
    let integrand: Vec<f64> = kappa
        .iter()
        .enumerate()
        .map(|(i, k)| k * geom.g[grid.idx(i, j)].a11.sqrt())
        .collect();
    grid.integrate_row(&integrand)
}

/// Total boundary turning: both edge rows of the strip.
pub fn boundary_turning(geom: &SurfaceGeometry) -> f64 {
    edge_turning(geom, StripEdge::Bottom) + edge_turning(geom, StripEdge::Top)
}

/// For a boundary row lying on a support with a normal field, the interior
/// conormal is (up to sign) that normal and the geodesic curvature reduces
/// to `-hS(t, t) <eta, nS>` with `t` the unit boundary tangent. This returns
/// the sup gap between that reduction and the ambient route — a consistency
/// check of the orthogonal-meeting setup. Lines carry no normal field, so
/// they are rejected.
pub fn support_route_curvature_gap(
    im: &Immersion,
    geom: &SurfaceGeometry,
    support: &SupportSurface,
) -> Result<f64> {
    if !grids_match(&im.grid, &geom.grid) {
        return Err(Error::Invalid(
            "immersion and geometry live on different grids".into(),
        ));
    }
    if matches!(support, SupportSurface::Line { .. }) {
        return Err(Error::Invalid(
            "a line support has no normal field to compare the conormal against".into(),
        ));
    }
    let grid = &geom.grid;
    let ambient = geodesic_curvature(geom, StripEdge::Bottom, CurvatureRoute::Ambient);
    let conormal = boundary_conormal(geom);
    let mut worst = 0.0f64;
    for i in 0..grid.nx {
        let k = grid.idx(i, 0);
        let p = im.positions[k];
        let n = support.normal_at(p).expect("not a line support");
        let tangent = geom.deriv.fx[k] * (1.0 / geom.g[k].a11.sqrt());
        let reduced = -support.second_form(p, tangent, tangent) * conormal[i].1.dot(n);
        worst = worst.max((ambient[i] - reduced).abs());
    }
    Ok(worst)
}

/// The two sides of the Gauss-Bonnet identity on the strip chart, with both
/// edge rows counted as boundary. `euler_estimate` is `(interior +
/// turning) / 2 pi`; `residual` is the defect against the expected Euler
/// characteristic (0 for a periodic strip chart, which is an annulus).
#[derive(Clone, Copy, Debug, Serialize)]
pub struct GaussBonnetReport {
    /// `integral K dmu`
    pub interior: f64,
    pub turning_bottom: f64,
    pub turning_top: f64,
    pub euler_estimate: f64,
    pub residual: f64,
}

/// Evaluate the Gauss-Bonnet balance `integral K + boundary turning =
/// 2 pi chi` against an expected Euler characteristic.
pub fn gauss_bonnet(geom: &SurfaceGeometry, expected_euler: f64) -> GaussBonnetReport {
    let weighted: Vec<f64> = geom
        .k_gauss
        .iter()
        .zip(&geom.area)
        .map(|(k, a)| k * a)
        .collect();
    let interior = geom.grid.integrate_area(&weighted);
    let turning_bottom = edge_turning(geom, StripEdge::Bottom);
    let turning_top = edge_turning(geom, StripEdge::Top);
    let total = interior + turning_bottom + turning_top;
    GaussBonnetReport {
        interior,
        turning_bottom,
        turning_top,
        euler_estimate: total / (2.0 * std::f64::consts::PI),
        residual: total - 2.0 * std::f64::consts::PI * expected_euler,
    }
}

// ---------------------------------------------------------------------------
// logarithmic fit near a puncture
// ---------------------------------------------------------------------------

/// Least-squares fit of the normal mean-curvature component against
/// `log rho` on a ray into a chart puncture at the origin.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct LogFitReport {
    /// Fitted coefficient of `log rho`.
    pub slope: f64,
    /// Fitted constant term.
    pub intercept: f64,
    /// Largest absolute fit residual.
    pub max_residual: f64,
    /// `max_residual` relative to the sampled spread — the bend of the data
    /// away from an affine function of `log rho`.
    pub bend: f64,
    pub window: (f64, f64),
    pub samples: usize,
}

/// Sample `<H nu, axis>` at geometrically spaced radii `rho` in `window`
/// along the ray of angle `theta`, and fit it as `slope * log rho +
/// intercept`. Fails with [`Error::WindowTooWide`] when the data bends away
/// from an affine-in-`log rho` profile by more than 5% of its spread —
/// evidence the window has left the asymptotic regime of the puncture.
pub fn mean_curvature_log_fit(
    map: &dyn SurfaceMap,
    axis: Vec3,
    window: (f64, f64),
    samples: usize,
    theta: f64,
) -> Result<LogFitReport> {
    let (lo, hi) = window;
    if !(lo > 0.0 && hi > lo && lo.is_finite() && hi.is_finite()) {
        return Err(Error::Invalid(format!(
            "radial window ({lo}, {hi}) must satisfy 0 < lo < hi"
        )));
    }
    if samples < 3 {
        return Err(Error::InsufficientGrid {
            needed: 3,
            got: samples,
        });
    }
    let (sin_t, cos_t) = theta.sin_cos();
    let ratio = hi / lo;
    let mut us = Vec::with_capacity(samples);
    let mut vs = Vec::with_capacity(samples);
    for m in 0..samples {
        let rho = lo * ratio.powf(m as f64 / (samples - 1) as f64);
        let jet = map.jet(rho * cos_t, rho * sin_t);
        let pg = point_geometry(jet.fx, jet.fy, jet.fxx, jet.fxy, jet.fyy);
        let v = pg.mean_h * pg.nu.dot(axis);
        if !v.is_finite() {
            return Err(Error::Invalid(format!(
                "non-finite curvature sample at rho = {rho:.3e}"
            )));
        }
        us.push(rho.ln());
        vs.push(v);
    }
    let n = samples as f64;
    let mean_u = us.iter().sum::<f64>() / n;
    let mean_v = vs.iter().sum::<f64>() / n;
    let mut suu = 0.0;
    let mut suv = 0.0;
    for (u, v) in us.iter().zip(&vs) {
        suu += (u - mean_u) * (u - mean_u);
        suv += (u - mean_u) * (v - mean_v);
    }
    let slope = suv / suu;
    let intercept = mean_v - slope * mean_u;
    let max_residual = us
        .iter()
        .zip(&vs)
        .map(|(u, v)| (v - (slope * u + intercept)).abs())
        .fold(0.0f64, f64::max);
    let spread = vs.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
        - vs.iter().cloned().fold(f64::INFINITY, f64::min);
    if spread <= 0.0 {
        return Err(Error::Invalid(
            "curvature samples show no variation across the window".into(),
        ));
    }
    let bend = max_residual / spread;
    if bend > 0.05 {
        return Err(Error::WindowTooWide { residual: bend });
    }
    Ok(LogFitReport {
        slope,
        intercept,
        max_residual,
        bend,
        window,
        samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery::{
        gallery_surface, GalleryId, InvertedCatenoidHalf, InvertedCatenoidPlanar,
    };
    use crate::geometry::{compute_geometry, EPS_WEAK};
    use crate::jet::{TrigSurface, TrigTerm};
    use crate::surface::Immersion;
    use std::f64::consts::PI;

    fn geom_of(im: &Immersion) -> SurfaceGeometry {
        compute_geometry(im, DerivScheme::Analytic, EPS_WEAK).unwrap()
    }

    fn gallery_geom(id: GalleryId) -> (Immersion, SurfaceGeometry) {
        let im = gallery_surface(id).immersion().unwrap();
        let geom = geom_of(&im);
        (im, geom)
    }

    fn wavy_patch() -> TrigSurface {
        TrigSurface {
            offset: Vec3::ZERO,
            ax: vec3(1.0, 0.1, 0.0),
            ay: vec3(-0.05, 1.0, 0.2),
            terms: vec![
                TrigTerm {
                    amp: vec3(0.15, -0.1, 0.3),
                    kx: 1.0,
                    px: 0.4,
                    ky: 2.0,
                    py: 0.9,
                },
                TrigTerm {
                    amp: vec3(0.05, 0.2, -0.12),
                    kx: 2.0,
                    px: -0.8,
                    ky: 1.0,
                    py: 0.25,
                },
            ],
        }
    }

    fn wavy_field() -> TrigSurface {
        TrigSurface {
            offset: vec3(0.1, -0.2, 0.05),
            ax: Vec3::ZERO,
            ay: Vec3::ZERO,
            terms: vec![
                TrigTerm {
                    amp: vec3(0.4, 0.3, -0.6),
                    kx: 2.0,
                    px: 0.15,
                    ky: 1.0,
                    py: -0.5,
                },
                TrigTerm {
                    amp: vec3(-0.25, 0.5, 0.2),
                    kx: 1.0,
                    px: 1.1,
                    ky: 3.0,
                    py: 0.7,
                },
            ],
        }
    }

    #[test]
    fn tau_combines_alpha_and_omega_exactly() {
        let grid = ParamGrid::half_strip(33, 17).unwrap();
        let im = Immersion::from_map(grid.clone(), Arc::new(wavy_patch()), "wavy").unwrap();
        let field = VariationField::from_map(&grid, Arc::new(wavy_field()));
        for scheme in [DerivScheme::Analytic, DerivScheme::CentralFd] {
            let geom = compute_geometry(&im, scheme, EPS_WEAK).unwrap();
            let forms = boundary_forms(&geom, &field, scheme).unwrap();
            let scale = 1.0 + forms.sup();
            for i in 0..grid.nx {
                let combo = forms.alpha[i] + 0.5 * forms.omega[i];
                assert!(
                    (forms.tau[i] - combo).abs() <= 1e-12 * scale,
                    "splitting identity broke at column {i} ({scheme:?}): tau = {}, alpha + omega/2 = {combo}",
                    forms.tau[i],
                );
            }
        }
    }

    #[test]
    fn translations_leave_boundary_forms_silent_on_critical_surfaces() {
        // The hemisphere is a free-boundary critical point of the Willmore
        // energy on its plane: the omega form must vanish for every ambient
        // translation. The minimal catenoid kills omega through H = 0 and
        // makes tau and alpha coincide.
        let hemi = gallery_surface(GalleryId::Hemisphere)
            .immersion_on(129, 65)
            .unwrap();
        let hemi_geom = geom_of(&hemi);
        for axis in [Vec3::EX, Vec3::EY, Vec3::EZ] {
            let field = VariationField::from_map(
                &hemi.grid,
                Arc::new(TrigSurface {
                    offset: axis,
                    ..TrigSurface::default()
                }),
            );
            let forms = boundary_forms(&hemi_geom, &field, DerivScheme::Analytic).unwrap();
            assert!(
                sup_abs(&forms.omega) < 1e-9,
                "omega({axis:?}) = {}",
                sup_abs(&forms.omega)
            );
        }

        let (cat, cat_geom) = gallery_geom(GalleryId::Catenoid);
        let field = VariationField::from_map(&cat.grid, Arc::new(wavy_field()));
        let forms = boundary_forms(&cat_geom, &field, DerivScheme::Analytic).unwrap();
        assert!(sup_abs(&forms.omega) < 1e-10);
        for i in 0..cat.grid.nx {
            assert!((forms.tau[i] - forms.alpha[i]).abs() < 1e-10);
        }
    }

    #[test]
    fn natural_conditions_vanish_on_critical_pairings() {
        let cases = [
            (GalleryId::Hemisphere, FreeBoundaryCondition::Willmore, 1e-10),
            (GalleryId::Helicoid, FreeBoundaryCondition::Navier, 1e-12),
            (GalleryId::FlatDisk, FreeBoundaryCondition::Navier, 1e-12),
            (GalleryId::Catenoid, FreeBoundaryCondition::Total, 1e-10),
            (GalleryId::Catenoid, FreeBoundaryCondition::TraceFree, 1e-10),
        ];
        for (id, cond, tol) in cases {
            let entry = gallery_surface(id);
            let im = entry.immersion().unwrap();
            let geom = geom_of(&im);
            let support = entry.support.unwrap();
            let sup = free_boundary_residual_sup(&im, &geom, &support, cond).unwrap();
            assert!(
                sup < tol,
                "{} residual on {} is {sup:.3e}",
                cond.name(),
                id.name()
            );
        }
        // anti-test: the hemisphere is nowhere near the Navier condition
        let (im, geom) = gallery_geom(GalleryId::Hemisphere);
        let support = gallery_surface(GalleryId::Hemisphere).support.unwrap();
        let sup =
            free_boundary_residual_sup(&im, &geom, &support, FreeBoundaryCondition::Navier)
                .unwrap();
        assert!(sup > 1.9);
    }

    #[test]
    fn cap_residuals_match_closed_forms() {
        // A spherical cap orthogonal to the unit support sphere: H is
        // constant, hS(nu, nu) = 1, h = (H/2) g. The four conditions give
        // H, H, H/2, and exactly 0 (any piece of a round sphere minimizes
        // the trace-free energy, so that natural condition must hold).
        let entry = gallery_surface(GalleryId::SphericalCap);
        let im = entry.immersion().unwrap();
        let geom = geom_of(&im);
        let support = entry.support.unwrap();
        let h0 = geom.mean_h[0];
        assert!((h0.abs() - 2.0).abs() < 1e-12, "cap |H| = {}", h0.abs());
        let expect = [
            (FreeBoundaryCondition::Navier, h0),
            (FreeBoundaryCondition::Willmore, h0),
            (FreeBoundaryCondition::Total, 0.5 * h0),
            (FreeBoundaryCondition::TraceFree, 0.0),
        ];
        for (cond, want) in expect {
            let res = free_boundary_residual(&im, &geom, &support, cond).unwrap();
            for (i, r) in res.iter().enumerate() {
                assert!(
                    (r - want).abs() < 1e-8,
                    "{} residual at column {i}: {r} vs {want}",
                    cond.name()
                );
            }
        }
    }

    #[test]
    fn admissibility_audits_gallery_pairings() {
        for id in [
            GalleryId::Hemisphere,
            GalleryId::Catenoid,
            GalleryId::Helicoid,
            GalleryId::FlatDisk,
            GalleryId::SphericalCap,
        ] {
            let entry = gallery_surface(id);
            let im = entry.immersion().unwrap();
            let geom = geom_of(&im);
            let support = entry.support.unwrap();
            let report = check_admissible(&im, &geom, &support, 1e-9, 1e-9).unwrap();
            assert!(report.trace <= 1e-9, "{}: {:?}", id.name(), report);
        }

        // catenoid boundary lies ON the sphere of radius 2 but meets it
        // tangentially in the normal direction: orthogonality must fail
        let (im, geom) = gallery_geom(GalleryId::Catenoid);
        let sphere = SupportSurface::Sphere {
            center: Vec3::ZERO,
            radius: 2.0,
        };
        match check_admissible(&im, &geom, &sphere, 1e-9, 1e-9) {
            Err(Error::NotOrthogonal { residual, .. }) => assert!(residual > 0.9),
            other => panic!("expected an orthogonality failure, got {other:?}"),
        }

        // the helicoid axis is not in the plane z = 0
        let (im, geom) = gallery_geom(GalleryId::Helicoid);
        let plane = SupportSurface::Plane {
            point: Vec3::ZERO,
            normal: Vec3::EZ,
        };
        match check_admissible(&im, &geom, &plane, 1e-9, 1e-9) {
            Err(Error::ConstraintViolated { kind, .. }) => {
                assert_eq!(kind, "support trace")
            }
            other => panic!("expected a trace failure, got {other:?}"),
        }

        // mismatched grid pairs are rejected outright
        let entry = gallery_surface(GalleryId::Hemisphere);
        let im_a = entry.immersion_on(65, 33).unwrap();
        let (_, geom_b) = gallery_geom(GalleryId::Hemisphere);
        assert!(matches!(
            admissibility(&im_a, &geom_b, &entry.support.unwrap()),
            Err(Error::Invalid(_))
        ));
    }

    #[test]
    fn trace_extension_round_trip_is_the_identity_on_conformal_charts() {
        let wx = Window1::new(-PI + 0.35, PI - 0.35, 1.1, Smoothness::C6);
        let bump = move |x: f64, k: f64, ph: f64| (k * x + ph).cos() * wx.eval(x)[0];
        for id in [GalleryId::Hemisphere, GalleryId::Catenoid] {
            let im = gallery_surface(id).immersion_on(129, 65).unwrap();
            let grid = im.grid.clone();
            let geom = geom_of(&im);
            let value: Vec<f64> = grid.xs().iter().map(|&x| bump(x, 3.0, 0.2)).collect();
            let slope: Vec<f64> = grid
                .xs()
                .iter()
                .map(|&x| 0.7 * bump(x, 5.0, -0.9) + 0.25 * bump(x, 2.0, 0.55))
                .collect();
            let cfg = ExtensionConfig::standard(&grid).unwrap();
            let field = extend_pair_field(&geom, &value, &slope, &cfg).unwrap();
            // the window has fully decayed at the top row: the field is
            // exactly zero there (it stays x-periodic, so the lateral seam
            // columns carry the same interior values as their partners)
            for i in 0..grid.nx {
                assert_eq!(field.values[grid.idx(i, grid.ny - 1)], Vec3::ZERO);
            }
            let pair = trace_pair(&geom, &field, DerivScheme::Analytic, 1e-8).unwrap();
            let mut worst = 0.0f64;
            for i in 0..grid.nx {
                worst = worst
                    .max((pair.value[i] - value[i]).abs())
                    .max((pair.slope[i] - slope[i]).abs());
            }
            assert!(
                worst <= 1e-8,
                "round trip defect on {} is {worst:.3e}",
                id.name()
            );
        }
    }

    #[test]
    fn extension_gates_and_errors_trip_correctly() {
        let im = gallery_surface(GalleryId::Catenoid)
            .immersion_on(129, 65)
            .unwrap();
        let grid = im.grid.clone();
        let geom = geom_of(&im);
        let cfg = ExtensionConfig::standard(&grid).unwrap();
        let zeros = vec![0.0; grid.nx];

        // boundary data reaching the lateral edges violates the policy
        let full: Vec<f64> = grid.xs().iter().map(|&x| x.cos()).collect();
        assert!(matches!(
            extend_pair(&geom, &zeros, &full, &cfg),
            Err(Error::SupportViolation { .. })
        ));

        // a vertical window whose plateau misses y = 0 is rejected
        let mut bad = cfg.clone();
        bad.window = Window1::new(0.5, 4.0, 1.0, Smoothness::C4);
        let wx = Window1::new(-PI + 0.5, PI - 0.5, 1.0, Smoothness::C6);
        let bumpy: Vec<f64> = grid.xs().iter().map(|&x| x.sin() * wx.eval(x)[0]).collect();
        assert!(matches!(
            extend_pair(&geom, &bumpy, &zeros, &bad),
            Err(Error::Invalid(_))
        ));

        // mode count beyond the alias-free cap
        let mut greedy = cfg.clone();
        greedy.k_max = 200;
        assert!(matches!(
            extend_pair(&geom, &bumpy, &zeros, &greedy),
            Err(Error::TooManyModes { max_k: 63, requested: 200 })
        ));

        // non-conformal charts are rejected by both operators
        let (disk, disk_geom) = gallery_geom(GalleryId::FlatDisk);
        let disk_cfg = ExtensionConfig::standard(&disk.grid).unwrap();
        assert!(matches!(
            extend_pair(&disk_geom, &zeros, &zeros, &disk_cfg),
            Err(Error::NotConformal { .. })
        ));
        let field = VariationField::from_map(&disk.grid, Arc::new(wavy_field()));
        assert!(matches!(
            trace_pair(&disk_geom, &field, DerivScheme::Analytic, 1e-8),
            Err(Error::NotConformal { .. })
        ));

        // mismatched boundary-data lengths
        assert!(matches!(
            extend_pair(&geom, &zeros[..10], &zeros, &cfg),
            Err(Error::Invalid(_))
        ));
    }

    #[test]
    fn geodesic_curvature_routes_agree() {
        for id in [
            GalleryId::Hemisphere,
            GalleryId::FlatDisk,
            GalleryId::SphericalCap,
            GalleryId::Catenoid,
        ] {
            let im = gallery_surface(id).immersion_on(65, 33).unwrap();
            let geom = geom_of(&im);
            for edge in [StripEdge::Bottom, StripEdge::Top] {
                let a = geodesic_curvature(&geom, edge, CurvatureRoute::Ambient);
                let b = geodesic_curvature(&geom, edge, CurvatureRoute::Intrinsic);
                for i in 0..geom.grid.nx {
                    assert!(
                        (a[i] - b[i]).abs() < 1e-9,
                        "{} {edge:?} column {i}: {} vs {}",
                        id.name(),
                        a[i],
                        b[i]
                    );
                }
            }
        }

        // where the boundary rides on a sphere, the support reduction must
        // reproduce the ambient value
        for id in [GalleryId::FlatDisk, GalleryId::SphericalCap] {
            let entry = gallery_surface(id);
            let im = entry.immersion().unwrap();
            let geom = geom_of(&im);
            let gap = support_route_curvature_gap(&im, &geom, &entry.support.unwrap()).unwrap();
            assert!(gap < 1e-10, "{}: gap {gap:.3e}", id.name());
        }

        let entry = gallery_surface(GalleryId::Helicoid);
        let im = entry.immersion().unwrap();
        let geom = geom_of(&im);
        assert!(matches!(
            support_route_curvature_gap(&im, &geom, &entry.support.unwrap()),
            Err(Error::Invalid(_))
        ));
    }

    #[test]
    fn gauss_bonnet_balances_on_strip_charts() {
        // flat annulus: outer rim turns by +2 pi, inner rim by -2 pi, and
        // the Gauss curvature vanishes identically
        let (_, geom) = gallery_geom(GalleryId::FlatDisk);
        let report = gauss_bonnet(&geom, 0.0);
        assert!((report.turning_bottom - 2.0 * PI).abs() < 1e-10);
        assert!((report.turning_top + 2.0 * PI).abs() < 1e-10);
        assert!(report.interior.abs() < 1e-12);
        assert!(report.residual.abs() < 1e-10);

        // hemisphere chart: the equator is a geodesic, the interior captures
        // the spherical area, and the top rim balances it
        let (_, geom) = gallery_geom(GalleryId::Hemisphere);
        let report = gauss_bonnet(&geom, 0.0);
        let area = 2.0 * PI * crate::gallery::SPHERE_CHART_HEIGHT.tanh();
        assert!(report.turning_bottom.abs() < 1e-10);
        assert!((report.interior - area).abs() < 1e-3);
        assert!((report.turning_top + area).abs() < 1e-3);
        assert!(report.residual.abs() < 1e-3, "residual {}", report.residual);
        assert!(report.euler_estimate.abs() < 1e-3);

        for id in [GalleryId::SphericalCap, GalleryId::Catenoid] {
            let (_, geom) = gallery_geom(id);
            let report = gauss_bonnet(&geom, 0.0);
            assert!(
                report.residual.abs() < 1e-3,
                "{}: residual {}",
                id.name(),
                report.residual
            );
        }
    }

    #[test]
    fn conormal_and_arclength_helpers_match_closed_forms() {
        let (_, geom) = gallery_geom(GalleryId::Hemisphere);
        let grid = geom.grid.clone();
        // the chart is orthonormal on the equator row, so the conormal
        // derivative is d/dy; the stencils are exact on fields linear in y
        let values = grid.sample_scalar(|x, y| y * x.sin());
        let d = conormal_derivative(&geom, &values).unwrap();
        for (i, &x) in grid.xs().iter().enumerate() {
            assert!((d[i] - x.sin()).abs() < 1e-12);
        }
        // arclength equals x on the equator
        let linear: Vec<f64> = grid.xs().to_vec();
        let ds = arclength_derivative_row(&geom, &linear).unwrap();
        for v in ds {
            assert!((v - 1.0).abs() < 1e-12);
        }
        // length mismatches are rejected
        assert!(conormal_derivative(&geom, &values[..7]).is_err());
        assert!(arclength_derivative_row(&geom, &linear[..7]).is_err());
    }

    #[test]
    fn free_ray_of_the_inverted_catenoid_has_flat_normal_slope() {
        // The surface is rotationally symmetric, so H depends only on the
        // chart's x (the axial log-radius) and its conormal slope along the
        // free rays vanishes; both half charts must agree on that.
        let entry = gallery_surface(GalleryId::InvertedCatenoid);
        let upper = entry.immersion().unwrap();
        let lower = Immersion::from_map(
            entry.grid.clone(),
            Arc::new(InvertedCatenoidHalf {
                sigma: -1.0,
                permute_axes: true,
            }),
            "inverted-catenoid-lower",
        )
        .unwrap();
        let support = entry.support.unwrap();
        for im in [upper, lower] {
            let geom = geom_of(&im);
            let d = conormal_derivative(&geom, &geom.mean_h).unwrap();
            let res =
                free_boundary_residual(&im, &geom, &support, FreeBoundaryCondition::Willmore)
                    .unwrap();
            for (i, &x) in geom.grid.xs().iter().enumerate() {
                // chart radius rho = e^x; stay above rho = 0.05
                if x >= -2.9 {
                    assert!(d[i].abs() < 1e-7, "slope {:.3e} at x = {x}", d[i]);
                    assert!(res[i].abs() < 1e-7, "residual {:.3e} at x = {x}", res[i]);
                }
            }
        }
    }

    #[test]
    fn log_fit_measures_the_puncture_slope_and_guards_the_window() {
        let report = mean_curvature_log_fit(
            &InvertedCatenoidPlanar,
            Vec3::EZ,
            (1e-4, 1e-2),
            48,
            0.37,
        )
        .unwrap();
        assert!(
            (report.slope - 8.0).abs() < 0.6,
            "slope {} (expected the +8 log coefficient of the puncture)",
            report.slope
        );
        assert!(report.slope > 0.0);
        assert!(report.bend <= 0.05);

        match mean_curvature_log_fit(&InvertedCatenoidPlanar, Vec3::EZ, (0.05, 0.9), 48, 0.37) {
            Err(Error::WindowTooWide { residual }) => assert!(residual > 0.05),
            other => panic!("expected a too-wide window, got {other:?}"),
        }
        assert!(
            mean_curvature_log_fit(&InvertedCatenoidPlanar, Vec3::EZ, (-1.0, 0.5), 8, 0.0)
                .is_err()
        );
        assert!(matches!(
            mean_curvature_log_fit(&InvertedCatenoidPlanar, Vec3::EZ, (1e-4, 1e-2), 2, 0.0),
            Err(Error::InsufficientGrid { needed: 3, got: 2 })
        ));
    }
}

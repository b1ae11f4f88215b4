//! Mirror-doubling of a half-patch across its `y = 0` boundary.
//!
//! A patch whose boundary row lies on the fixed set of an ambient isometry
//! (the plane `z = 0` or the `z`-axis) can be doubled: the parameter strip is
//! extended to negative `y` and the surface on the new half is the ambient
//! reflection of the original. The construction here is *exact*: mirrored
//! grid coordinates are floating-point negations, mirrored positions are
//! componentwise sign flips, and the analytic jet of the doubled map is the
//! sign-flipped jet of the inner map. Consequently the symmetry of the
//! doubled geometry holds bitwise, not merely to truncation error, and the
//! [`parity_audit`] can demand it.

use crate::error::{Error, Result};
use crate::geometry::SurfaceGeometry;
use crate::grid::ParamGrid;
use crate::jet::{DynSurface, Jet2, SurfaceMap};
use crate::math::Vec3;
use crate::surface::{DerivScheme, Immersion};
use serde::Serialize;
use std::sync::Arc;

/// The ambient isometry used to double a patch across its `y = 0` edge.
///
/// Both choices are involutive isometries of Euclidean space whose fixed set
/// is the support of the free boundary: a mirror plane or a rotation axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ReflectionKind {
    /// Reflection through the plane `z = 0`; componentwise signs `(+,+,-)`.
    Plane,
    /// Rotation by pi about the `z`-axis; componentwise signs `(-,-,+)`.
    Line,
}

impl ReflectionKind {
    /// Componentwise signs of the isometry (it is diagonal in both cases).
    pub fn signs(self) -> Vec3 {
        match self {
            ReflectionKind::Plane => Vec3 { x: 1.0, y: 1.0, z: -1.0 },
            ReflectionKind::Line => Vec3 { x: -1.0, y: -1.0, z: 1.0 },
        }
    }

    /// Apply the isometry to an ambient vector.
    pub fn apply(self, v: Vec3) -> Vec3 {
        v.diag_mul(self.signs())
    }

    /// Distance from a point to the fixed set of the isometry.
    pub fn fixed_set_distance(self, p: Vec3) -> f64 {
        match self {
            ReflectionKind::Plane => p.z.abs(),
            ReflectionKind::Line => p.x.hypot(p.y),
        }
    }

    /// Human-readable name of the fixed set.
    pub fn fixed_set_name(self) -> &'static str {
        match self {
            ReflectionKind::Plane => "plane z = 0",
            ReflectionKind::Line => "z-axis",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ReflectionKind::Plane => "plane",
            ReflectionKind::Line => "line",
        }
    }
}

/// Parity class of an ambient vector field under the doubling symmetry
/// `(Theta phi)(x, y) = R phi(x, -y)`.
///
/// Even fields (`Theta phi = phi`) preserve the symmetry of a doubled
/// surface; odd fields (`Theta phi = -phi`) are the directions in which the
/// first variation of any reflection-invariant energy vanishes identically.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldParity {
    Even,
    Odd,
}

/// The jet of `Theta psi` at `(x, y)` given the jet of `psi` at `(x, -y)`:
/// every slot is reflected, and each `y`-derivative contributes a sign flip.
fn theta_jet(j: &Jet2, signs: Vec3) -> Jet2 {
    let neg = Vec3 { x: -signs.x, y: -signs.y, z: -signs.z };
    Jet2 {
        f: j.f.diag_mul(signs),
        fx: j.fx.diag_mul(signs),
        fy: j.fy.diag_mul(neg),
        fxx: j.fxx.diag_mul(signs),
        fxy: j.fxy.diag_mul(neg),
        fyy: j.fyy.diag_mul(signs),
        third: j.third.map(|t| {
            [
                t[0].diag_mul(signs), // xxx
                t[1].diag_mul(neg),   // xxy
                t[2].diag_mul(signs), // xyy
                t[3].diag_mul(neg),   // yyy
            ]
        }),
    }
}

/// Analytic map of a doubled patch: the inner map on `y >= 0`, its ambient
/// reflection evaluated at `(x, -y)` on `y < 0`. The two branches agree on
/// the seam exactly when the inner map's boundary trace lies on the fixed
/// set, which [`reflect_double`] checks before constructing this map.
pub struct DoubledMap {
    pub inner: DynSurface,
    pub kind: ReflectionKind,
}

impl SurfaceMap for DoubledMap {
    fn jet(&self, x: f64, y: f64) -> Jet2 {
        if y < 0.0 {
            theta_jet(&self.inner.jet(x, -y), self.kind.signs())
        } else {
            self.inner.jet(x, y)
        }
    }
}

/// Projection of an arbitrary analytic field onto its even or odd part under
/// the doubling symmetry: `phi = (psi -+ Theta psi) / 2`.
///
/// The construction is exact in floating point: evaluating the odd part at
/// `(x, -y)` runs the same two inner evaluations as at `(x, y)` with the
/// roles of the operands swapped and signs flipped, so `phi(x, -y)` equals
/// `-R phi(x, y)` bitwise (and analogously for the even part).
pub struct SymmetrizedField {
    pub inner: DynSurface,
    pub kind: ReflectionKind,
    pub parity: FieldParity,
}

impl SurfaceMap for SymmetrizedField {
    fn jet(&self, x: f64, y: f64) -> Jet2 {
        let a = self.inner.jet(x, y);
        let b = theta_jet(&self.inner.jet(x, -y), self.kind.signs());
        let sgn = match self.parity {
            FieldParity::Even => 1.0,
            FieldParity::Odd => -1.0,
        };
        Jet2 {
            f: 0.5 * (a.f + sgn * b.f),
            fx: 0.5 * (a.fx + sgn * b.fx),
            fy: 0.5 * (a.fy + sgn * b.fy),
            fxx: 0.5 * (a.fxx + sgn * b.fxx),
            fxy: 0.5 * (a.fxy + sgn * b.fxy),
            fyy: 0.5 * (a.fyy + sgn * b.fyy),
            third: match (a.third, b.third) {
                (Some(ta), Some(tb)) => Some([
                    0.5 * (ta[0] + sgn * tb[0]),
                    0.5 * (ta[1] + sgn * tb[1]),
                    0.5 * (ta[2] + sgn * tb[2]),
                    0.5 * (ta[3] + sgn * tb[3]),
                ]),
                _ => None,
            },
        }
    }
}

/// Largest distance from the bottom-row trace to the fixed set of the
/// isometry.
pub fn boundary_trace_violation(im: &Immersion, kind: ReflectionKind) -> f64 {
    let grid = &im.grid;
    let mut worst = 0.0f64;
    for i in 0..grid.nx {
        worst = worst.max(kind.fixed_set_distance(im.positions[grid.idx(i, 0)]));
    }
    worst
}

/// Require the boundary trace to lie on the fixed set within `tol`.
pub fn check_boundary_trace(im: &Immersion, kind: ReflectionKind, tol: f64) -> Result<()> {
    let residual = boundary_trace_violation(im, kind);
    if residual > tol {
        return Err(Error::ConstraintViolated {
            kind: format!("{} fixed-set trace", kind.name()),
            residual,
            tol,
        });
    }
    Ok(())
}

/// Require the patch to meet the fixed set orthogonally along the boundary
/// row, in the strict sense that makes the doubled surface `C^1` across the
/// seam: `f_y(x, 0)` must lie in the `-1` eigenspace of the isometry
/// (normal to the mirror plane, respectively perpendicular to the axis).
/// The residual is the relative size of the offending component of `f_y`.
pub fn check_orthogonal_meeting(
    im: &Immersion,
    kind: ReflectionKind,
    scheme: DerivScheme,
    tol: f64,
) -> Result<()> {
    let grid = &im.grid;
    let bundle = im.derivatives(scheme)?;
    let mut worst = 0.0f64;
    for i in 0..grid.nx {
        let fy = bundle.fy[grid.idx(i, 0)];
        let bad = match kind {
            ReflectionKind::Plane => fy.x.hypot(fy.y),
            ReflectionKind::Line => fy.z.abs(),
        };
        let n = fy.norm();
        if n == 0.0 {
            return Err(Error::DegenerateMetric {
                i,
                j: 0,
                det: 0.0,
                eps_sq: 0.0,
            });
        }
        worst = worst.max(bad / n);
    }
    if worst > tol {
        return Err(Error::NotOrthogonal {
            residual: worst,
            tol,
        });
    }
    Ok(())
}

/// Double a half-patch across its `y = 0` boundary by the given isometry.
///
/// The parameter strip `(x, y) in X x [0, Y]` becomes `X x [-Y, Y]`; the new
/// rows carry the reflected positions and, when the patch has an analytic
/// map, a [`DoubledMap`] so exact jets remain available. Mirrored `y`
/// coordinates are exact negations of the original ones and mirrored
/// positions are exact sign flips, so sampling the doubled map reproduces
/// the mirrored positions bitwise.
///
/// Fails unless the bottom row sits at `y = 0` and its trace lies on the
/// fixed set within `trace_tol`. Orthogonal meeting is *not* required here —
/// a non-orthogonal double is a valid Lipschitz surface; call
/// [`check_orthogonal_meeting`] separately when `C^1` gluing matters.
pub fn reflect_double(
    im: &Immersion,
    kind: ReflectionKind,
    trace_tol: f64,
) -> Result<Immersion> {
    let grid = &im.grid;
    if !grid.has_zero_boundary_row() {
        return Err(Error::Invalid(format!(
            "cannot double '{}': its bottom row is at y = {:?}, not y = 0",
            im.name, grid.y_range.0
        )));
    }
    check_boundary_trace(im, kind, trace_tol)?;

    let ys = grid.ys();
    let mut dys = Vec::with_capacity(2 * ys.len() - 1);
    for &y in ys.iter().skip(1).rev() {
        dys.push(-y);
    }
    dys.extend_from_slice(ys);
    let dgrid = ParamGrid::from_coords(grid.xs().to_vec(), dys)?;

    let signs = kind.signs();
    let mut positions = Vec::with_capacity(dgrid.len());
    for j in (1..grid.ny).rev() {
        for i in 0..grid.nx {
            positions.push(im.positions[grid.idx(i, j)].diag_mul(signs));
        }
    }
    positions.extend_from_slice(&im.positions);

    let map: Option<DynSurface> = im
        .map
        .clone()
        .map(|inner| Arc::new(DoubledMap { inner, kind }) as DynSurface);

    Ok(Immersion {
        grid: dgrid,
        positions,
        map,
        name: format!("{} doubled across the {}", im.name, kind.fixed_set_name()),
    })
}

/// Worst deviations from the predicted mirror parities of the fundamental
/// forms of a doubled surface, measured between every node and its mirror
/// image. For a surface produced by [`reflect_double`] every entry is exactly
/// zero: the mirrored arithmetic is sign-symmetric operation by operation.
///
/// The parities of the *scalar* second-fundamental-form data depend on the
/// orientation character of the isometry. Write `sigma = -det Q`: the mirror
/// plane has `det = -1` so `sigma = +1`, the half-turn about the axis has
/// `det = +1` so `sigma = -1`. The parameter flip `y -> -y` reverses the
/// orientation of the chart, the ambient map contributes `det Q`, and the
/// unit normal picks up the product: `nu(x, -y) = sigma Q nu(x, y)`. Hence
/// `h11`, `h22` and `H` transform with `sigma` (even across a mirror plane,
/// odd across a rotation axis — the doubled helicoid keeps `H = 0` smooth),
/// `h12` with `-sigma`, while everything quadratic in `h` and the whole
/// first fundamental form are even regardless.
#[derive(Clone, Copy, Debug, Default, Serialize)]
pub struct ParityReport {
    /// `g11`, `g22`, `det g` and the area element: even for both kinds.
    pub metric_even: f64,
    /// `g12`: odd for both kinds.
    pub metric_odd: f64,
    /// `h11`, `h22` and `H` against the sign `sigma`; `h12` against `-sigma`.
    pub shape: f64,
    /// `|h|^2`, `|h0|^2` and the Gauss curvature: even for both kinds.
    pub scalar_even: f64,
    /// Deviation of `nu(x, -y)` from `sigma Q nu(x, y)`.
    pub normal: f64,
}

impl ParityReport {
    pub fn max(&self) -> f64 {
        self.metric_even
            .max(self.metric_odd)
            .max(self.shape)
            .max(self.scalar_even)
            .max(self.normal)
    }
}

/// Check that the grid of `geom` is mirror-symmetric in `y` (exactly, as
/// floating-point coordinates) and measure the parity deviations of its
/// fundamental forms between mirrored nodes.
pub fn parity_audit(geom: &SurfaceGeometry, kind: ReflectionKind) -> Result<ParityReport> {
    let grid = &geom.grid;
    let ny = grid.ny;
    if ny % 2 == 0 {
        return Err(Error::Invalid(format!(
            "parity audit needs an odd number of rows with a central seam, got ny = {ny}"
        )));
    }
    let ys = grid.ys();
    for j in 0..ny {
        if ys[j] != -ys[ny - 1 - j] {
            return Err(Error::Invalid(format!(
                "grid rows are not mirror-symmetric: y[{j}] = {} vs y[{}] = {}",
                ys[j],
                ny - 1 - j,
                ys[ny - 1 - j]
            )));
        }
    }

    let signs = kind.signs();
    let sigma = -(signs.x * signs.y * signs.z);
    let mut report = ParityReport::default();
    for j in 0..=(ny - 1) / 2 {
        let jm = ny - 1 - j;
        for i in 0..grid.nx {
            let p = grid.idx(i, jm); // y > 0 side
            let m = grid.idx(i, j); // mirrored node, y < 0 side
            let even = |a: f64, b: f64| (a - b).abs();
            let with = |a: f64, s: f64, b: f64| (a - s * b).abs();
            report.metric_even = report
                .metric_even
                .max(even(geom.g[m].a11, geom.g[p].a11))
                .max(even(geom.g[m].a22, geom.g[p].a22))
                .max(even(geom.det[m], geom.det[p]))
                .max(even(geom.area[m], geom.area[p]));
            report.metric_odd = report
                .metric_odd
                .max(with(geom.g[m].a12, -1.0, geom.g[p].a12));
            report.shape = report
                .shape
                .max(with(geom.h[m].a11, sigma, geom.h[p].a11))
                .max(with(geom.h[m].a22, sigma, geom.h[p].a22))
                .max(with(geom.h[m].a12, -sigma, geom.h[p].a12))
                .max(with(geom.mean_h[m], sigma, geom.mean_h[p]));
            report.scalar_even = report
                .scalar_even
                .max(even(geom.h_norm_sq[m], geom.h_norm_sq[p]))
                .max(even(geom.h0_norm_sq[m], geom.h0_norm_sq[p]))
                .max(even(geom.k_gauss[m], geom.k_gauss[p]));
            report.normal = report
                .normal
                .max((geom.nu[m] - sigma * geom.nu[p].diag_mul(signs)).norm());
        }
    }
    Ok(report)
}

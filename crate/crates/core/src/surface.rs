//! Discrete immersions and variation fields over a parameter grid.
//!
//! An [`Immersion`] is a grid of ambient positions, optionally backed by an
//! analytic [`SurfaceMap`] so derivatives can be evaluated exactly instead of
//! by finite differences. A [`VariationField`] has the same shape and backs
//! the directional-derivative (first variation) machinery.

use crate::error::{Error, Result};
use crate::grid::ParamGrid;
use crate::jet::{DynSurface, Jet2};
use crate::math::Vec3;

/// How nodal derivatives of a grid map are produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DerivScheme {
    /// Evaluate the attached analytic map's jet at each node (exact).
    Analytic,
    /// Second-order centered finite differences, one-sided at edges.
    CentralFd,
}

/// Nodal first and second derivatives of a grid map.
#[derive(Clone, Debug)]
pub struct DerivBundle {
    pub fx: Vec<Vec3>,
    pub fy: Vec<Vec3>,
    pub fxx: Vec<Vec3>,
    pub fxy: Vec<Vec3>,
    pub fyy: Vec<Vec3>,
}

/// Produce nodal derivatives from values (finite differences) or from an
/// attached analytic map (exact jets).
pub fn derivative_bundle(
    grid: &ParamGrid,
    values: &[Vec3],
    map: Option<&DynSurface>,
    scheme: DerivScheme,
) -> Result<DerivBundle> {
    match scheme {
        DerivScheme::CentralFd => Ok(DerivBundle {
            fx: grid.d_x(values),
            fy: grid.d_y(values),
            fxx: grid.d_xx(values),
            fxy: grid.d_xy(values),
            fyy: grid.d_yy(values),
        }),
        DerivScheme::Analytic => {
            let map = map.ok_or(Error::JetUnavailable)?;
            let n = grid.len();
            let mut b = DerivBundle {
                fx: Vec::with_capacity(n),
                fy: Vec::with_capacity(n),
                fxx: Vec::with_capacity(n),
                fxy: Vec::with_capacity(n),
                fyy: Vec::with_capacity(n),
            };
            for j in 0..grid.ny {
                for i in 0..grid.nx {
                    let jet = map.jet(grid.x(i), grid.y(j));
                    b.fx.push(jet.fx);
                    b.fy.push(jet.fy);
                    b.fxx.push(jet.fxx);
                    b.fxy.push(jet.fxy);
                    b.fyy.push(jet.fyy);
                }
            }
            Ok(b)
        }
    }
}

fn sample_map(grid: &ParamGrid, map: &dyn crate::jet::SurfaceMap) -> Vec<Vec3> {
    let mut out = Vec::with_capacity(grid.len());
    for j in 0..grid.ny {
        for i in 0..grid.nx {
            out.push(map.jet(grid.x(i), grid.y(j)).f);
        }
    }
    out
}

/// A discrete immersed patch: nodal positions over a parameter grid, with an
/// optional exact analytic description.
#[derive(Clone)]
pub struct Immersion {
    pub grid: ParamGrid,
    pub positions: Vec<Vec3>,
    pub map: Option<DynSurface>,
    pub name: String,
}

impl Immersion {
    pub fn from_map(grid: ParamGrid, map: DynSurface, name: impl Into<String>) -> Result<Immersion> {
        let positions = sample_map(&grid, map.as_ref());
        let im = Immersion {
            grid,
            positions,
            map: Some(map),
            name: name.into(),
        };
        im.check_finite()?;
        Ok(im)
    }

    pub fn from_positions(
        grid: ParamGrid,
        positions: Vec<Vec3>,
        name: impl Into<String>,
    ) -> Result<Immersion> {
        if positions.len() != grid.len() {
            return Err(Error::Invalid(format!(
                "{} positions for a {}x{} grid",
                positions.len(),
                grid.nx,
                grid.ny
            )));
        }
        let im = Immersion {
            grid,
            positions,
            map: None,
            name: name.into(),
        };
        im.check_finite()?;
        Ok(im)
    }

    fn check_finite(&self) -> Result<()> {
        for j in 0..self.grid.ny {
            for i in 0..self.grid.nx {
                if !self.positions[self.grid.idx(i, j)].is_finite() {
                    return Err(Error::NonFinite { i, j });
                }
            }
        }
        Ok(())
    }

    /// Nodal derivatives under the requested scheme.
    pub fn derivatives(&self, scheme: DerivScheme) -> Result<DerivBundle> {
        derivative_bundle(&self.grid, &self.positions, self.map.as_ref(), scheme)
    }

    /// Exact jet at an arbitrary parameter point (analytic surfaces only).
    pub fn jet_at(&self, x: f64, y: f64) -> Result<Jet2> {
        let map = self.map.as_ref().ok_or(Error::JetUnavailable)?;
        Ok(map.jet(x, y))
    }
}

/// A variation direction: an ambient vector field along the patch.
#[derive(Clone)]
pub struct VariationField {
    pub values: Vec<Vec3>,
    pub map: Option<DynSurface>,
}

impl VariationField {
    pub fn from_map(grid: &ParamGrid, map: DynSurface) -> VariationField {
        VariationField {
            values: sample_map(grid, map.as_ref()),
            map: Some(map),
        }
    }

    pub fn from_values(grid: &ParamGrid, values: Vec<Vec3>) -> Result<VariationField> {
        if values.len() != grid.len() {
            return Err(Error::Invalid(format!(
                "{} field values for a {}x{} grid",
                values.len(),
                grid.nx,
                grid.ny
            )));
        }
        Ok(VariationField { values, map: None })
    }

    pub fn derivatives(&self, grid: &ParamGrid, scheme: DerivScheme) -> Result<DerivBundle> {
        derivative_bundle(grid, &self.values, self.map.as_ref(), scheme)
    }

    /// Interior-support gate for boundary-term-free variation formulas: the
    /// field must vanish on the lateral edges and the top row; the bottom row
    /// may carry the field only when it is the `y = 0` boundary axis.
    pub fn check_support(&self, grid: &ParamGrid, tol: f64) -> Result<()> {
        let mut worst = (0usize, 0usize, 0.0f64);
        let mut check = |i: usize, j: usize, v: Vec3| {
            let n = v.norm();
            if n > worst.2 {
                worst = (i, j, n);
            }
        };
        for j in 0..grid.ny {
            check(0, j, self.values[grid.idx(0, j)]);
            check(grid.nx - 1, j, self.values[grid.idx(grid.nx - 1, j)]);
        }
        for i in 0..grid.nx {
            check(i, grid.ny - 1, self.values[grid.idx(i, grid.ny - 1)]);
            if !grid.has_zero_boundary_row() {
                check(i, 0, self.values[grid.idx(i, 0)]);
            }
        }
        if worst.2 > tol {
            return Err(Error::SupportViolation {
                what: format!(
                    "variation field is {:.3e} at edge node ({}, {}); it must vanish on \
                     clamped edges",
                    worst.2, worst.0, worst.1
                ),
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::{ScalarTrig, SeparableWindow, Smoothness, TrigSurface, TrigTerm, Window1};
    use crate::math::vec3;
    use std::sync::Arc;

    fn flat_map() -> DynSurface {
        Arc::new(TrigSurface {
            offset: Vec3::ZERO,
            ax: Vec3::EX,
            ay: Vec3::EY,
            terms: vec![TrigTerm {
                amp: vec3(0.0, 0.0, 0.1),
                kx: 1.0,
                px: 0.0,
                ky: 2.0,
                py: 0.3,
            }],
        })
    }

    #[test]
    fn analytic_and_fd_derivatives_agree_to_fd_order() {
        let grid = ParamGrid::half_strip(81, 41).unwrap();
        let im = Immersion::from_map(grid, flat_map(), "wavy plane").unwrap();
        let exact = im.derivatives(DerivScheme::Analytic).unwrap();
        let fd = im.derivatives(DerivScheme::CentralFd).unwrap();
        let mut worst = 0.0f64;
        for k in 0..im.grid.len() {
            worst = worst.max((exact.fx[k] - fd.fx[k]).norm());
            worst = worst.max((exact.fy[k] - fd.fy[k]).norm());
        }
        assert!(worst < 1e-3, "fd first derivatives off by {worst}");
    }

    #[test]
    fn support_gate_accepts_windowed_fields_and_rejects_edge_mass() {
        let grid = ParamGrid::half_strip(41, 21).unwrap();
        let window = SeparableWindow {
            wx: Window1::new(-3.0, 3.0, 1.0, Smoothness::C4),
            wy: Window1::new(-1.0, 0.9, 0.4, Smoothness::C4),
        };
        let bumped: DynSurface = Arc::new(crate::jet::ProductScalarSurface {
            s: Arc::new(window),
            v: Arc::new(TrigSurface {
                offset: vec3(0.0, 0.0, 1.0),
                ..Default::default()
            }),
        });
        let ok = VariationField::from_map(&grid, bumped);
        ok.check_support(&grid, 1e-12).unwrap();

        let constant: DynSurface = Arc::new(TrigSurface {
            offset: vec3(0.0, 0.0, 1.0),
            ..Default::default()
        });
        let bad = VariationField::from_map(&grid, constant);
        assert!(matches!(
            bad.check_support(&grid, 1e-12),
            Err(Error::SupportViolation { .. })
        ));
    }

    #[test]
    fn missing_map_yields_jet_unavailable() {
        let grid = ParamGrid::half_strip(11, 11).unwrap();
        let im = Immersion::from_positions(
            grid.clone(),
            vec![Vec3::ZERO; grid.len()],
            "point cloud",
        );
        // a constant map is degenerate as an immersion but fine as data
        let im = im.unwrap();
        assert!(matches!(
            im.derivatives(DerivScheme::Analytic),
            Err(Error::JetUnavailable)
        ));
        let _ = ScalarTrig::default();
    }
}

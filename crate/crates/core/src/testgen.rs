//! Seeded generators for randomized testing.
//!
//! Everything here is deterministic given a seed: the generators draw from a
//! ChaCha8 stream, so failures reproduce exactly across runs and platforms.
//! Patches are graph-like trigonometric surfaces kept far from degeneracy;
//! fields are bounded trigonometric vector fields, optionally multiplied by an
//! interior window so they vanish near the edges of a chart.

use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::grid::ParamGrid;
use crate::jet::{
    DynSurface, ProductScalarSurface, SeparableWindow, Smoothness, TrigSurface, TrigTerm, Window1,
};
use crate::math::{sym2, vec3, Sym2, Vec3};

/// Seed used by the test suites and CLI defaults.
pub const DEFAULT_SEED: u64 = 42;

/// Deterministic stream for a given seed.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_vec(rng: &mut impl Rng, scale: f64) -> Vec3 {
    vec3(
        rng.gen_range(-scale..scale),
        rng.gen_range(-scale..scale),
        rng.gen_range(-scale..scale),
    )
}

fn random_terms(rng: &mut impl Rng, terms: usize, amplitude: f64) -> Vec<TrigTerm> {
    (0..terms)
        .map(|_| TrigTerm {
            amp: random_vec(rng, amplitude),
            kx: rng.gen_range(1..=3) as f64,
            px: rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI),
            ky: rng.gen_range(1..=3) as f64,
            py: rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI),
        })
        .collect()
}

/// A graph-like immersed patch: the identity plane tilted slightly, plus
/// `terms` bounded waves. For `amplitude <= 0.05` and at most a handful of
/// terms the metric stays uniformly nondegenerate on the half strip (each
/// wave contributes at most `3 * amplitude` to the tangent perturbation, so
/// the Gram determinant stays well above zero).
pub fn random_patch(rng: &mut impl Rng, terms: usize, amplitude: f64) -> TrigSurface {
    TrigSurface {
        offset: random_vec(rng, 0.5),
        ax: vec3(1.0, rng.gen_range(-0.1..0.1), rng.gen_range(-0.2..0.2)),
        ay: vec3(rng.gen_range(-0.1..0.1), 1.0, rng.gen_range(-0.2..0.2)),
        terms: random_terms(rng, terms, amplitude),
    }
}

/// A bounded ambient vector field: pure waves, no affine part, so the field
/// and all its derivatives are `O(amplitude)`.
pub fn random_ambient_field(rng: &mut impl Rng, terms: usize, amplitude: f64) -> TrigSurface {
    TrigSurface {
        offset: random_vec(rng, amplitude),
        ax: Vec3::ZERO,
        ay: Vec3::ZERO,
        terms: random_terms(rng, terms, amplitude),
    }
}

/// Multiply a map by a smooth plateau that is `1` on the chart interior and
/// `0` within `margin` of every edge, yielding a compactly supported field.
pub fn windowed(map: DynSurface, grid: &ParamGrid, margin: f64, kind: Smoothness) -> DynSurface {
    let (x0, x1) = grid.x_range;
    let (y0, y1) = grid.y_range;
    let window = SeparableWindow {
        wx: Window1::new(x0, x1, margin, kind),
        wy: Window1::new(y0, y1, margin, kind),
    };
    Arc::new(ProductScalarSurface {
        s: Arc::new(window),
        v: map,
    })
}

/// Random symmetric positive-definite 2x2 matrix: `A^T A` plus a ridge that
/// keeps the condition number moderate.
pub fn random_spd(rng: &mut impl Rng, scale: f64) -> Sym2 {
    let (a, b) = (rng.gen_range(-scale..scale), rng.gen_range(-scale..scale));
    let (c, d) = (rng.gen_range(-scale..scale), rng.gen_range(-scale..scale));
    let ridge = 0.3 * scale * scale;
    sym2(
        a * a + c * c + ridge,
        a * b + c * d,
        b * b + d * d + ridge,
    )
}

/// Random symmetric 2x2 matrix with entries in `[-scale, scale]`.
pub fn random_sym(rng: &mut impl Rng, scale: f64) -> Sym2 {
    sym2(
        rng.gen_range(-scale..scale),
        rng.gen_range(-scale..scale),
        rng.gen_range(-scale..scale),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{DerivScheme, Immersion, VariationField};

    #[test]
    fn generators_are_deterministic_per_seed() {
        use crate::jet::SurfaceMap;
        let mut r1 = rng(7);
        let mut r2 = rng(7);
        let p1 = random_patch(&mut r1, 3, 0.05);
        let p2 = random_patch(&mut r2, 3, 0.05);
        let grid = ParamGrid::half_strip(9, 7).unwrap();
        for j in 0..grid.ny {
            for i in 0..grid.nx {
                let (x, y) = (grid.x(i), grid.y(j));
                let (a, b) = (p1.jet(x, y).f, p2.jet(x, y).f);
                assert_eq!(a.x.to_bits(), b.x.to_bits());
                assert_eq!(a.y.to_bits(), b.y.to_bits());
                assert_eq!(a.z.to_bits(), b.z.to_bits());
            }
        }
        let mut r3 = rng(8);
        let p3 = random_patch(&mut r3, 3, 0.05);
        assert_ne!(p1.jet(0.3, 0.4).f, p3.jet(0.3, 0.4).f);
    }

    #[test]
    fn random_patches_stay_uniformly_immersed() {
        let grid = ParamGrid::half_strip(33, 17).unwrap();
        let mut r = rng(DEFAULT_SEED);
        for _ in 0..20 {
            let patch = random_patch(&mut r, 4, 0.05);
            let im = Immersion::from_map(grid.clone(), Arc::new(patch), "patch").unwrap();
            let geom =
                crate::geometry::compute_geometry(&im, DerivScheme::Analytic, 1e-12).unwrap();
            let min_det = geom.det.iter().cloned().fold(f64::INFINITY, f64::min);
            assert!(
                min_det > 0.3,
                "metric determinant dipped to {min_det:.3e}"
            );
        }
    }

    #[test]
    fn windowed_fields_vanish_on_every_edge() {
        let grid = ParamGrid::half_strip(33, 17).unwrap();
        let mut r = rng(DEFAULT_SEED);
        let raw = random_ambient_field(&mut r, 3, 1.0);
        let field = windowed(Arc::new(raw), &grid, 0.3, Smoothness::C4);
        let vf = VariationField::from_map(&grid, field);
        vf.check_support(&grid, 1e-15).unwrap();
        let mid = vf.values[grid.idx(grid.nx / 2, grid.ny / 2)];
        assert!(mid.norm() > 1e-3, "window crushed the field interior");
    }

    #[test]
    fn random_spd_matrices_are_positive_definite() {
        let mut r = rng(DEFAULT_SEED);
        for _ in 0..1000 {
            let g = random_spd(&mut r, 1.5);
            assert!(g.det() > 0.0);
            assert!(g.a11 > 0.0 && g.a22 > 0.0);
            let h = random_sym(&mut r, 2.0);
            assert_eq!(h.a12, h.a12);
            assert!(h.a11.abs() <= 2.0 && h.a22.abs() <= 2.0);
        }
    }
}

//! Randomized structural invariants.
//!
//! Each property here is an algebraic identity that must hold for *every*
//! admissible input, not just gallery surfaces: the cubic trace identity
//! behind the Euler-Lagrange assembly, the pointwise splitting of the total
//! curvature energy, exactness of mirror doubling, and the criticality of
//! odd variation directions on doubled patches.

use std::sync::Arc;

use proptest::prelude::*;

use freewill_core::energy::{
    cubic_trace_residual, energies_of, first_variation, EnergyKind,
};
use freewill_core::geometry::compute_geometry;
use freewill_core::grid::ParamGrid;
use freewill_core::math::{sym2, vec3};
use freewill_core::reflection::{
    parity_audit, reflect_double, FieldParity, ReflectionKind, SymmetrizedField,
};
use freewill_core::surface::{DerivScheme, Immersion, VariationField};
use freewill_core::testgen::{random_ambient_field, random_patch, rng};

const EPS: f64 = 1e-9;

/// Random patch that meets the plane `z = 0` orthogonally along its bottom
/// row, the geometry in which doubling produces a smooth surface: the trace
/// stays in the plane, the `y`-velocity there is purely vertical (in-plane
/// waves get even `cos(ky y)` profiles, vertical waves odd `sin(ky y)`
/// profiles, and the affine `y`-direction is vertical). The residual trace
/// from the phased cosine is below 1e-17.
fn orthogonal_patch(seed: u64, terms: usize, amplitude: f64) -> freewill_core::jet::TrigSurface {
    let mut r = rng(seed);
    let mut patch = random_patch(&mut r, terms, amplitude);
    patch.offset.z = 0.0;
    patch.ax.z = 0.0;
    patch.ay = vec3(0.0, 0.0, patch.ay.norm().max(0.8));
    let mut split = Vec::with_capacity(2 * patch.terms.len());
    for t in &patch.terms {
        let mut planar = *t;
        planar.amp.z = 0.0;
        planar.py = 0.0;
        split.push(planar);
        let mut vertical = *t;
        vertical.amp = vec3(0.0, 0.0, t.amp.z);
        vertical.py = -std::f64::consts::FRAC_PI_2;
        split.push(vertical);
    }
    patch.terms = split;
    patch
}

/// Clear the sub-1e-17 bottom-row vertical residue left by the phased
/// cosine, so bitwise assertions about the mirror seam are meaningful.
fn snap_trace_to_plane(im: &mut Immersion) {
    for i in 0..im.grid.nx {
        let k = im.grid.idx(i, 0);
        assert!(im.positions[k].z.abs() < 1e-16, "trace was not residual");
        im.positions[k].z = 0.0;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    /// tr(M^3) = 3/2 |M0|^2 tr(M) + 1/4 tr(M)^3 for M = g^{-1} h, the
    /// identity that lets the fourth-order operator avoid explicit cubes.
    #[test]
    fn cubic_trace_identity_holds_for_all_pencils(
        a in -2.0f64..2.0, b in -2.0f64..2.0,
        c in -2.0f64..2.0, d in -2.0f64..2.0,
        h11 in -3.0f64..3.0, h12 in -3.0f64..3.0, h22 in -3.0f64..3.0,
    ) {
        let g = sym2(a * a + c * c + 0.5, a * b + c * d, b * b + d * d + 0.5);
        let h = sym2(h11, h12, h22);
        let res = cubic_trace_residual(g, h);
        prop_assert!(res < 1e-12, "cubic identity residual {res:.3e}");
    }

    /// The total curvature energy splits pointwise into its tracefree and
    /// mean parts, so the integrals obey E = T + W to rounding.
    #[test]
    fn total_energy_splits_into_tracefree_plus_willmore(
        seed in 0u64..1_000_000,
        terms in 1usize..4,
        amplitude in 0.01f64..0.08,
    ) {
        let grid = ParamGrid::half_strip(33, 17).unwrap();
        let mut r = rng(seed);
        let patch = random_patch(&mut r, terms, amplitude);
        let im = Immersion::from_map(grid, Arc::new(patch), "random patch").unwrap();
        let e = energies_of(&im, DerivScheme::Analytic, EPS).unwrap();
        let gap = (e.total - (e.tracefree + e.willmore)).abs();
        prop_assert!(
            gap <= 1e-12 * e.total.abs().max(1.0),
            "splitting gap {gap:.3e} against total {:.3e}", e.total
        );
    }

    /// Doubling a patch with a plane trace is exact: the parities of the
    /// fundamental forms hold bitwise and every curvature energy doubles.
    #[test]
    fn mirror_doubling_is_exact_for_random_patches(
        seed in 0u64..1_000_000,
        terms in 1usize..4,
        amplitude in 0.01f64..0.06,
    ) {
        let grid = ParamGrid::half_strip(33, 17).unwrap();
        let patch = orthogonal_patch(seed, terms, amplitude);
        let mut im = Immersion::from_map(grid, Arc::new(patch), "half patch").unwrap();
        snap_trace_to_plane(&mut im);
        let doubled = reflect_double(&im, ReflectionKind::Plane, 1e-12).unwrap();

        let geom = compute_geometry(&doubled, DerivScheme::CentralFd, EPS).unwrap();
        let parity = parity_audit(&geom, ReflectionKind::Plane).unwrap();
        prop_assert!(parity.max() == 0.0, "parity audit {:?}", parity);

        let eh = energies_of(&im, DerivScheme::Analytic, EPS).unwrap();
        let ed = energies_of(&doubled, DerivScheme::Analytic, EPS).unwrap();
        for (two_half, dbl) in [
            (2.0 * eh.willmore, ed.willmore),
            (2.0 * eh.total, ed.total),
            (2.0 * eh.tracefree, ed.tracefree),
            (2.0 * eh.area, ed.area),
        ] {
            let gap = (two_half - dbl).abs();
            prop_assert!(
                gap <= 1e-11 * two_half.abs().max(1.0),
                "doubling gap {gap:.3e}: half x2 = {two_half}, doubled = {dbl}"
            );
        }
    }

    /// On a doubled patch, odd-symmetrized fields are critical directions of
    /// every curvature energy: mirrored nodes contribute opposite integrand
    /// values, so the first variation cancels to quadrature rounding.
    #[test]
    fn odd_fields_are_critical_on_doubled_patches(
        seed in 0u64..1_000_000,
        amplitude in 0.05f64..0.5,
    ) {
        let grid = ParamGrid::half_strip(33, 17).unwrap();
        let patch = orthogonal_patch(seed, 2, 0.05);
        let im = Immersion::from_map(grid, Arc::new(patch), "half patch").unwrap();
        let doubled = reflect_double(&im, ReflectionKind::Plane, 1e-12).unwrap();
        let geom = compute_geometry(&doubled, DerivScheme::Analytic, EPS).unwrap();

        let mut r = rng(seed ^ 0x9e3779b97f4a7c15);
        let raw = random_ambient_field(&mut r, 3, amplitude);
        let odd = SymmetrizedField {
            inner: Arc::new(raw),
            kind: ReflectionKind::Plane,
            parity: FieldParity::Odd,
        };
        let field = VariationField::from_map(&geom.grid, Arc::new(odd));

        for kind in [EnergyKind::Willmore, EnergyKind::Total, EnergyKind::TraceFree] {
            let dv = first_variation(&geom, &field, kind, DerivScheme::Analytic).unwrap();
            prop_assert!(
                dv.abs() < 1e-10 * (1.0 + amplitude),
                "{kind:?} first variation {dv:.3e} along an odd field"
            );
        }
    }
}

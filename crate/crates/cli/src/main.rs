//! Command-line driver for the freewill surface-geometry toolkit.
//!
//! Every subcommand loads an analytic gallery surface, runs one family of
//! diagnostics, prints a human-readable summary, and optionally writes a JSON
//! or CSV report. Exit codes: `0` all checks passed, `1` a tolerance was
//! violated, `2` a hard error (bad arguments, degenerate geometry, I/O).

use std::path::PathBuf;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use freewill_core::boundary::{
    admissibility, extend_pair_field, free_boundary_residual, gauss_bonnet, trace_pair,
    ExtensionConfig, FreeBoundaryCondition,
};
use freewill_core::convergence::order_study;
use freewill_core::energy::{
    central_difference_variation, energies_of, first_variation, EnergyKind, EnergyReport,
};
use freewill_core::gallery::{gallery_surface, GalleryId, GallerySurface};
use freewill_core::geometry::{compute_geometry, SurfaceGeometry};
use freewill_core::grid::ParamGrid;
use freewill_core::io::{save_immersion, write_csv, write_json};
use freewill_core::jet::{DynSurface, ProductScalarSurface, SeparableWindow, Smoothness, Window1};

use freewill_core::reflection::{parity_audit, reflect_double, ReflectionKind};
use freewill_core::surface::{DerivScheme, Immersion, VariationField};
use freewill_core::testgen::{random_ambient_field, rng, DEFAULT_SEED};

/// Degeneracy floor passed to the geometry assembly.
const EPS_GEOM: f64 = 1e-9;

#[derive(Parser)]
#[command(
    name = "freewill",
    about = "Curvature energies, reflections and free-boundary diagnostics for immersed patches",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the analytic gallery, or export one surface as JSON
    Gallery(GalleryArgs),
    /// Curvature energies of a surface, checked against closed forms
    Energy(EnergyArgs),
    /// First variation along random fields vs central differences
    Variation(VariationArgs),
    /// Double a surface across its support and audit the mirror symmetry
    Reflect(ReflectArgs),
    /// Free-boundary condition residuals along the contact line
    Residuals(ResidualsArgs),
    /// Trace -> extension round trip through the boundary operators
    Extend(ExtendArgs),
    /// Energy convergence order on a grid ladder
    Converge(ConvergeArgs),
    /// Admissibility and Gauss-Bonnet audit of a surface/support pairing
    Audit(AuditArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum SchemeArg {
    /// exact jets of the analytic map
    Analytic,
    /// second-order centered finite differences
    Central,
}

impl From<SchemeArg> for DerivScheme {
    fn from(s: SchemeArg) -> DerivScheme {
        match s {
            SchemeArg::Analytic => DerivScheme::Analytic,
            SchemeArg::Central => DerivScheme::CentralFd,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Willmore,
    Total,
    Tracefree,
}

impl From<KindArg> for EnergyKind {
    fn from(k: KindArg) -> EnergyKind {
        match k {
            KindArg::Willmore => EnergyKind::Willmore,
            KindArg::Total => EnergyKind::Total,
            KindArg::Tracefree => EnergyKind::TraceFree,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ConditionArg {
    Navier,
    Willmore,
    Total,
    Tracefree,
}

impl From<ConditionArg> for FreeBoundaryCondition {
    fn from(c: ConditionArg) -> FreeBoundaryCondition {
        match c {
            ConditionArg::Navier => FreeBoundaryCondition::Navier,
            ConditionArg::Willmore => FreeBoundaryCondition::Willmore,
            ConditionArg::Total => FreeBoundaryCondition::Total,
            ConditionArg::Tracefree => FreeBoundaryCondition::TraceFree,
        }
    }
}

/// Shared surface selection: a gallery name plus an optional grid override.
#[derive(Args)]
struct SurfaceArgs {
    /// Gallery surface name (see `freewill gallery`)
    name: String,
    /// Grid nodes along x (defaults to the gallery's recommendation)
    #[arg(long)]
    nx: Option<usize>,
    /// Grid nodes along y (defaults to the gallery's recommendation)
    #[arg(long)]
    ny: Option<usize>,
    /// Derivative scheme for nodal geometry
    #[arg(long, value_enum, default_value = "analytic")]
    scheme: SchemeArg,
}

impl SurfaceArgs {
    fn entry(&self) -> Result<GallerySurface> {
        Ok(gallery_surface(GalleryId::parse(&self.name)?))
    }

    fn immersion(&self) -> Result<(GallerySurface, Immersion)> {
        let entry = self.entry()?;
        let im = match (self.nx, self.ny) {
            (None, None) => entry.immersion()?,
            (nx, ny) => entry.immersion_on(
                nx.unwrap_or(entry.grid.nx),
                ny.unwrap_or(entry.grid.ny),
            )?,
        };
        Ok((entry, im))
    }

    fn geometry(&self, im: &Immersion) -> Result<SurfaceGeometry> {
        Ok(compute_geometry(im, self.scheme.into(), EPS_GEOM)?)
    }
}

#[derive(Args)]
struct GalleryArgs {
    /// Surface to describe (omit to list the whole gallery)
    name: Option<String>,
    /// Write the sampled immersion to this JSON file
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EnergyArgs {
    #[command(flatten)]
    surface: SurfaceArgs,
    /// Relative tolerance against closed-form energies, where known
    #[arg(long, default_value_t = 1e-2)]
    tol: f64,
    /// Write the energy report as JSON
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VariationArgs {
    #[command(flatten)]
    surface: SurfaceArgs,
    /// Energy whose first variation is probed
    #[arg(long, value_enum, default_value = "willmore")]
    kind: KindArg,
    /// Number of random variation fields
    #[arg(long, default_value_t = 5)]
    pairs: usize,
    /// Seed for the field generator
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Central-difference step
    #[arg(long, default_value_t = 1e-5)]
    step: f64,
    /// Allowed gap: absolute part (the relative part is fixed at 1e-3)
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    /// Write the per-field comparison as JSON
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ReflectArgs {
    #[command(flatten)]
    surface: SurfaceArgs,
    /// Mirror across the plane z = 0 or rotate about the z-axis
    #[arg(long, value_enum, default_value = "plane")]
    kind: ReflectKindArg,
    /// Allowed boundary-trace distance from the fixed set
    #[arg(long, default_value_t = 1e-9)]
    tol_constraint: f64,
    /// Write the doubled immersion to this JSON file
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReflectKindArg {
    Plane,
    Line,
}

impl From<ReflectKindArg> for ReflectionKind {
    fn from(k: ReflectKindArg) -> ReflectionKind {
        match k {
            ReflectKindArg::Plane => ReflectionKind::Plane,
            ReflectKindArg::Line => ReflectionKind::Line,
        }
    }
}

#[derive(Args)]
struct ResidualsArgs {
    #[command(flatten)]
    surface: SurfaceArgs,
    /// Which natural boundary condition to evaluate
    #[arg(long, value_enum, default_value = "willmore")]
    condition: ConditionArg,
    /// Fail if the sup-norm residual exceeds this bound
    #[arg(long)]
    tol: Option<f64>,
    /// Write per-node residuals as CSV (columns x, residual)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ExtendArgs {
    #[command(flatten)]
    surface: SurfaceArgs,
    /// Number of trigonometric bump pairs to round-trip
    #[arg(long, default_value_t = 4)]
    pairs: usize,
    /// Allowed sup-norm defect of the round trip
    #[arg(long, default_value_t = 1e-8)]
    tol_spectral: f64,
    /// Write the worst reconstructed pair as JSON
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ConvergeArgs {
    #[command(flatten)]
    surface: SurfaceArgs,
    /// Number of grid refinements (each level doubles the resolution)
    #[arg(long, default_value_t = 3)]
    levels: usize,
    /// Require at least this fitted convergence order
    #[arg(long)]
    min_order: Option<f64>,
    /// Write the order study as JSON
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct AuditArgs {
    #[command(flatten)]
    surface: SurfaceArgs,
    /// Allowed distance of the boundary trace from the support
    #[arg(long, default_value_t = 1e-9)]
    tol_constraint: f64,
    /// Expected Euler characteristic for the Gauss-Bonnet balance
    #[arg(long, default_value_t = 0.0)]
    euler: f64,
    /// Write both reports as JSON
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() {
    std::process::exit(match run() {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(err) => {
            eprintln!("error: {err:#}");
            2
        }
    });
}

fn run() -> Result<bool> {
    match Cli::parse().command {
        Command::Gallery(a) => cmd_gallery(a),
        Command::Energy(a) => cmd_energy(a),
        Command::Variation(a) => cmd_variation(a),
        Command::Reflect(a) => cmd_reflect(a),
        Command::Residuals(a) => cmd_residuals(a),
        Command::Extend(a) => cmd_extend(a),
        Command::Converge(a) => cmd_converge(a),
        Command::Audit(a) => cmd_audit(a),
    }
}

fn describe_support(entry: &GallerySurface) -> String {
    use freewill_core::geometry::SupportSurface;
    match &entry.support {
        None => "none".to_string(),
        Some(SupportSurface::Plane { point, normal }) => format!(
            "plane through ({:.2}, {:.2}, {:.2}), normal ({:.2}, {:.2}, {:.2})",
            point.x, point.y, point.z, normal.x, normal.y, normal.z
        ),
        Some(SupportSurface::Line { point, direction }) => format!(
            "line through ({:.2}, {:.2}, {:.2}) along ({:.2}, {:.2}, {:.2})",
            point.x, point.y, point.z, direction.x, direction.y, direction.z
        ),
        Some(SupportSurface::Sphere { center, radius }) => format!(
            "sphere at ({:.2}, {:.2}, {:.2}), radius {:.2}",
            center.x, center.y, center.z, radius
        ),
    }
}

fn cmd_gallery(args: GalleryArgs) -> Result<bool> {
    match args.name {
        None => {
            println!("{:<18} {:>9} {:<28} closed-form energies", "name", "grid", "support");
            for id in GalleryId::ALL {
                let e = gallery_surface(id);
                let energies = match e.energies {
                    Some(c) => format!(
                        "W = {:.6}, E = {:.6}, T = {:.6}",
                        c.willmore, c.total, c.tracefree
                    ),
                    None => "-".to_string(),
                };
                println!(
                    "{:<18} {:>4}x{:<4} {:<28} {}",
                    id.name(),
                    e.grid.nx,
                    e.grid.ny,
                    describe_support(&e),
                    energies
                );
            }
            Ok(true)
        }
        Some(name) => {
            let entry = gallery_surface(GalleryId::parse(&name)?);
            let im = entry.immersion()?;
            println!(
                "{}: {}x{} grid over [{:.3}, {:.3}] x [{:.3}, {:.3}], support {}",
                name,
                im.grid.nx,
                im.grid.ny,
                im.grid.x_range.0,
                im.grid.x_range.1,
                im.grid.y_range.0,
                im.grid.y_range.1,
                describe_support(&entry)
            );
            if let Some(out) = args.out {
                save_immersion(&out, &im)
                    .with_context(|| format!("writing {}", out.display()))?;
                println!("wrote {}", out.display());
            }
            Ok(true)
        }
    }
}

#[derive(Serialize)]
struct EnergyOutput {
    surface: String,
    nx: usize,
    ny: usize,
    report: EnergyReport,
    relative_errors: Option<[f64; 3]>,
}

fn cmd_energy(args: EnergyArgs) -> Result<bool> {
    let (entry, im) = args.surface.immersion()?;
    let report = energies_of(&im, args.surface.scheme.into(), EPS_GEOM)?;
    println!(
        "{} on {}x{}: area = {:.9}, W = {:.9}, E = {:.9}, T = {:.9}",
        im.name, im.grid.nx, im.grid.ny, report.area, report.willmore, report.total,
        report.tracefree
    );

    let mut pass = true;
    let relative_errors = entry.energies.map(|c| {
        let rel = |got: f64, want: f64| (got - want).abs() / want.abs().max(1.0);
        [
            rel(report.willmore, c.willmore),
            rel(report.total, c.total),
            rel(report.tracefree, c.tracefree),
        ]
    });
    if let Some(errs) = relative_errors {
        let worst = errs.iter().cloned().fold(0.0f64, f64::max);
        pass = worst <= args.tol;
        println!(
            "closed-form check: relative errors W {:.3e}, E {:.3e}, T {:.3e} ({})",
            errs[0],
            errs[1],
            errs[2],
            if pass { "pass" } else { "FAIL" }
        );
    } else {
        println!("no closed forms recorded for this surface");
    }

    if let Some(out) = args.out {
        write_json(
            &out,
            &EnergyOutput {
                surface: im.name.clone(),
                nx: im.grid.nx,
                ny: im.grid.ny,
                report,
                relative_errors,
            },
        )?;
        println!("wrote {}", out.display());
    }
    Ok(pass)
}

#[derive(Serialize)]
struct VariationSample {
    direct: f64,
    centered: f64,
    gap: f64,
    allowed: f64,
}

fn cmd_variation(args: VariationArgs) -> Result<bool> {
    let (_, im) = args.surface.immersion()?;
    let geom = args.surface.geometry(&im)?;
    let kind: EnergyKind = args.kind.into();
    let scheme: DerivScheme = args.surface.scheme.into();
    let mut r = rng(args.seed);
    let mut samples = Vec::with_capacity(args.pairs);
    let mut pass = true;
    // Window the probe fields to the chart region whose metric is within a
    // factor 100 of its maximum. Charts that compactify a pole (metric
    // decaying exponentially towards an edge) make the energy violently
    // nonlinear under chart-coordinate perturbations of the near-degenerate
    // rows, which would swamp a fixed-step difference quotient; the formula
    // itself is checked where the chart is well scaled.
    let grid = &im.grid;
    let det_row_max: Vec<f64> = (0..grid.ny)
        .map(|j| (0..grid.nx).map(|i| geom.det[grid.idx(i, j)]).fold(0.0, f64::max))
        .collect();
    let det_max = det_row_max.iter().cloned().fold(0.0f64, f64::max);
    let mut j_hi = 0;
    while j_hi + 1 < grid.ny && det_row_max[j_hi + 1] >= 1e-2 * det_max {
        j_hi += 1;
    }
    let (y_lo, y_hi) = (grid.y_range.0, grid.y(j_hi));
    let x_span = grid.x_range.1 - grid.x_range.0;
    let probe_window = Arc::new(SeparableWindow {
        wx: Window1::new(
            grid.x_range.0,
            grid.x_range.1,
            0.15 * x_span,
            Smoothness::C4,
        ),
        wy: Window1::new(y_lo, y_hi, 0.2 * (y_hi - y_lo), Smoothness::C4),
    });
    for n in 0..args.pairs {
        let raw: DynSurface = Arc::new(random_ambient_field(&mut r, 3, 0.5));
        let field = VariationField::from_map(
            &im.grid,
            Arc::new(ProductScalarSurface {
                s: probe_window.clone(),
                v: raw,
            }),
        );
        let direct = first_variation(&geom, &field, kind, scheme)?;
        let centered =
            central_difference_variation(&im, &field, kind, args.step, scheme, EPS_GEOM)?;
        let gap = (direct - centered).abs();
        let allowed = args.tol + 1e-3 * direct.abs();
        let ok = gap <= allowed;
        pass &= ok;
        println!(
            "field {n}: direct = {direct:+.9e}, centered = {centered:+.9e}, gap = {gap:.3e} ({})",
            if ok { "pass" } else { "FAIL" }
        );
        samples.push(VariationSample {
            direct,
            centered,
            gap,
            allowed,
        });
    }
    if let Some(out) = args.out {
        write_json(&out, &samples)?;
        println!("wrote {}", out.display());
    }
    Ok(pass)
}

fn cmd_reflect(args: ReflectArgs) -> Result<bool> {
    let (_, im) = args.surface.immersion()?;
    let kind: ReflectionKind = args.kind.into();
    let doubled = reflect_double(&im, kind, args.tol_constraint)?;
    let geom = compute_geometry(&doubled, DerivScheme::CentralFd, EPS_GEOM)?;
    let parity = parity_audit(&geom, kind)?;
    let eh = energies_of(&im, args.surface.scheme.into(), EPS_GEOM)?;
    let ed = energies_of(&doubled, args.surface.scheme.into(), EPS_GEOM)?;

    println!(
        "doubled '{}' across the {}: {}x{} -> {}x{}",
        im.name,
        kind.fixed_set_name(),
        im.grid.nx,
        im.grid.ny,
        doubled.grid.nx,
        doubled.grid.ny
    );
    let p = parity.max();
    println!("parity audit: worst deviation {p:.3e}");
    let w_gap = (ed.willmore - 2.0 * eh.willmore).abs() / ed.willmore.abs().max(1.0);
    let e_gap = (ed.total - 2.0 * eh.total).abs() / ed.total.abs().max(1.0);
    println!(
        "energy doubling: W {:.9} -> {:.9} (rel gap {w_gap:.3e}), E {:.9} -> {:.9} (rel gap {e_gap:.3e})",
        eh.willmore, ed.willmore, eh.total, ed.total
    );
    let pass = p <= 1e-12 && w_gap <= 1e-10 && e_gap <= 1e-10;
    println!("{}", if pass { "pass" } else { "FAIL" });

    if let Some(out) = args.out {
        save_immersion(&out, &doubled)?;
        println!("wrote {}", out.display());
    }
    Ok(pass)
}

fn cmd_residuals(args: ResidualsArgs) -> Result<bool> {
    let (entry, im) = args.surface.immersion()?;
    let support = entry
        .support
        .ok_or_else(|| anyhow!("surface '{}' has no support", im.name))?;
    let geom = args.surface.geometry(&im)?;
    let cond: FreeBoundaryCondition = args.condition.into();
    let residual = free_boundary_residual(&im, &geom, &support, cond)?;
    let sup = residual.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    println!(
        "{} residual of '{}' along the contact line: sup = {sup:.6e}",
        cond.name(),
        im.name
    );
    if let Some(out) = args.out {
        let xs = im.grid.xs().to_vec();
        write_csv(&out, &["x", "residual"], &[xs, residual])?;
        println!("wrote {}", out.display());
    }
    match args.tol {
        Some(tol) => {
            let pass = sup <= tol;
            println!("{}", if pass { "pass" } else { "FAIL" });
            Ok(pass)
        }
        None => Ok(true),
    }
}

#[derive(Serialize)]
struct ExtendOutput {
    surface: String,
    pairs: usize,
    modes: usize,
    worst_defect: f64,
}

fn cmd_extend(args: ExtendArgs) -> Result<bool> {
    if args.pairs == 0 {
        bail!("need at least one boundary pair");
    }
    let (_, im) = args.surface.immersion()?;
    let grid = im.grid.clone();
    let geom = args.surface.geometry(&im)?;
    let cfg = ExtensionConfig::standard(&grid)?;

    let margin = 0.35 * (grid.x_range.1 - grid.x_range.0) / (2.0 * std::f64::consts::PI);
    let wx = Window1::new(
        grid.x_range.0 + margin,
        grid.x_range.1 - margin,
        1.1,
        Smoothness::C6,
    );
    let bump = |x: f64, k: f64, ph: f64| (k * x + ph).cos() * wx.eval(x)[0];

    let mut worst = 0.0f64;
    for n in 0..args.pairs {
        let k = (n + 1) as f64;
        let value: Vec<f64> = grid.xs().iter().map(|&x| bump(x, k, 0.2 * k)).collect();
        let slope: Vec<f64> = grid
            .xs()
            .iter()
            .map(|&x| 0.7 * bump(x, k + 1.0, -0.9))
            .collect();
        let field = extend_pair_field(&geom, &value, &slope, &cfg)?;
        let pair = trace_pair(&geom, &field, DerivScheme::Analytic, cfg.conformal_tol)?;
        for i in 0..grid.nx {
            worst = worst
                .max((pair.value[i] - value[i]).abs())
                .max((pair.slope[i] - slope[i]).abs());
        }
    }
    let pass = worst <= args.tol_spectral;
    println!(
        "trace -> extension round trip on '{}' ({} pairs, {} modes): worst defect {worst:.3e} ({})",
        im.name,
        args.pairs,
        cfg.k_max,
        if pass { "pass" } else { "FAIL" }
    );
    if let Some(out) = args.out {
        write_json(
            &out,
            &ExtendOutput {
                surface: im.name.clone(),
                pairs: args.pairs,
                modes: cfg.k_max,
                worst_defect: worst,
            },
        )?;
        println!("wrote {}", out.display());
    }
    Ok(pass)
}

fn cmd_converge(args: ConvergeArgs) -> Result<bool> {
    let (entry, _) = args.surface.immersion()?;
    let closed = entry
        .energies
        .ok_or_else(|| anyhow!("'{}' has no closed-form energies to converge to", args.surface.name))?;
    if args.levels < 2 {
        bail!("need at least two ladder levels");
    }

    let mut hs = Vec::new();
    let mut errors = Vec::new();
    let (mut nx, mut ny) = (33usize, 17usize);
    for _ in 0..args.levels {
        let grid = ParamGrid::new(nx, ny, entry.grid.x_range, entry.grid.y_range)?;
        let im = Immersion::from_map(grid.clone(), entry.map.clone(), entry.id.name())?;
        let report = energies_of(&im, args.surface.scheme.into(), EPS_GEOM)?;
        let err = (report.total - closed.total)
            .abs()
            .max((report.willmore - closed.willmore).abs());
        println!(
            "{}x{}: E = {:.9} (err {:.3e}), W = {:.9}",
            nx, ny, report.total, err, report.willmore
        );
        hs.push(grid.hx.max(grid.hy));
        errors.push(err.max(1e-16));
        nx = 2 * nx - 1;
        ny = 2 * ny - 1;
    }
    let study = order_study(hs, errors)?;
    println!("fitted convergence order: {:.3}", study.fitted);
    if let Some(out) = args.out {
        write_json(&out, &study)?;
        println!("wrote {}", out.display());
    }
    match args.min_order {
        Some(min) => {
            let pass = study.fitted >= min;
            println!("{}", if pass { "pass" } else { "FAIL" });
            Ok(pass)
        }
        None => Ok(true),
    }
}

#[derive(Serialize)]
struct AuditOutput {
    admissibility: freewill_core::boundary::AdmissibilityReport,
    gauss_bonnet: freewill_core::boundary::GaussBonnetReport,
}

fn cmd_audit(args: AuditArgs) -> Result<bool> {
    let (entry, im) = args.surface.immersion()?;
    let support = entry
        .support
        .ok_or_else(|| anyhow!("surface '{}' has no support", im.name))?;
    let geom = args.surface.geometry(&im)?;

    let adm = admissibility(&im, &geom, &support)?;
    println!(
        "admissibility of '{}': trace {:.3e}, orthogonality {:.3e}, boundary conformality {:.3e}",
        im.name, adm.trace, adm.orthogonality, adm.conformality
    );
    let gb = gauss_bonnet(&geom, args.euler);
    println!(
        "Gauss-Bonnet: interior {:.6}, turning {:.6} + {:.6}, residual {:.3e}",
        gb.interior, gb.turning_bottom, gb.turning_top, gb.residual
    );

    let pass = adm.trace <= args.tol_constraint && adm.orthogonality <= args.tol_constraint;
    println!("{}", if pass { "pass" } else { "FAIL" });
    if let Some(out) = args.out {
        write_json(
            &out,
            &AuditOutput {
                admissibility: adm,
                gauss_bonnet: gb,
            },
        )?;
        println!("wrote {}", out.display());
    }
    Ok(pass)
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }
}

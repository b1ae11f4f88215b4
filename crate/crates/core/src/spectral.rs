//! Fourier analysis on the periodic boundary circle and explicit harmonic /
//! biharmonic extensions to the half-strip above it.
//!
//! Boundary functions live on `x in [-pi, pi]` with the endpoints identified.
//! Extensions decay mode by mode in `y`: the harmonic extension of `cos kx`
//! is `e^{-ky} cos kx`, and the biharmonic extension with prescribed boundary
//! value and normal derivative uses the decaying solutions `(1, y) e^{-ky}`
//! of the per-mode fourth-order equation. Two independent evaluation routes
//! are provided for the harmonic case — the explicit Poisson kernel under
//! adaptive quadrature, and the truncated mode series — so each can serve as
//! an oracle for the other.

use crate::error::{Error, Result};
use crate::grid::ParamGrid;
use crate::jet::{ScalarJet2, ScalarMap, Window1};
use serde::Serialize;
use std::f64::consts::PI;

// ---------------------------------------------------------------------------
// Fourier analysis on the circle
// ---------------------------------------------------------------------------

/// Real trigonometric coefficients of a `2 pi`-periodic function:
/// `phi(x) = a[0] + sum_{k>=1} a[k] cos kx + b[k] sin kx` (so `a[0]` is the
/// mean value; `b[0]` is kept as a placeholder zero).
#[derive(Clone, Debug, Default, Serialize)]
pub struct FourierCoeffs {
    pub a: Vec<f64>,
    pub b: Vec<f64>,
}

impl FourierCoeffs {
    pub fn zero(k_max: usize) -> FourierCoeffs {
        FourierCoeffs {
            a: vec![0.0; k_max + 1],
            b: vec![0.0; k_max + 1],
        }
    }

    /// Highest mode index carried (coefficients above it are treated as 0).
    pub fn max_mode(&self) -> usize {
        self.a.len().saturating_sub(1)
    }

    pub fn mode(&self, k: usize) -> (f64, f64) {
        if k < self.a.len() {
            (self.a[k], self.b[k])
        } else {
            (0.0, 0.0)
        }
    }

    /// Evaluate the trigonometric polynomial.
    pub fn eval(&self, x: f64) -> f64 {
        let mut s = self.a[0];
        for k in 1..self.a.len() {
            let kx = k as f64 * x;
            s += self.a[k] * kx.cos() + self.b[k] * kx.sin();
        }
        s
    }

    /// Coefficients of the derivative: `(a_k, b_k) -> (k b_k, -k a_k)`.
    pub fn derivative(&self) -> FourierCoeffs {
        let n = self.a.len();
        let mut d = FourierCoeffs::zero(self.max_mode());
        for k in 1..n {
            let kf = k as f64;
            d.a[k] = kf * self.b[k];
            d.b[k] = -kf * self.a[k];
        }
        d
    }

    /// Squared `L^2(S^1)` norm via Parseval:
    /// `2 pi a_0^2 + pi sum_{k>=1} (a_k^2 + b_k^2)`.
    pub fn circle_norm_sq(&self) -> f64 {
        let mut s = 2.0 * PI * self.a[0] * self.a[0];
        for k in 1..self.a.len() {
            s += PI * (self.a[k] * self.a[k] + self.b[k] * self.b[k]);
        }
        s
    }
}

/// Highest mode a periodic row of `nx` nodes (endpoint duplicated) can carry
/// without aliasing under trapezoid analysis: with `N = nx - 1` distinct
/// samples, products of two modes up to `K` stay below frequency `N` exactly
/// when `2K <= N - 1`.
pub fn max_alias_free_mode(nx: usize) -> usize {
    ((nx.saturating_sub(1)).saturating_sub(1)) / 2
}

fn check_periodic_row(xs: &[f64], values: &[f64]) -> Result<usize> {
    if xs.len() != values.len() || xs.len() < 5 {
        return Err(Error::Invalid(format!(
            "periodic analysis needs matching x/value rows of at least 5 nodes, got {} and {}",
            xs.len(),
            values.len()
        )));
    }
    let n = xs.len() - 1;
    let span = xs[n] - xs[0];
    if (span - 2.0 * PI).abs() > 1e-9 {
        return Err(Error::Invalid(format!(
            "analysis row must span one full period 2 pi, spans {span}"
        )));
    }
    let h = span / n as f64;
    for i in 0..n {
        if (xs[i + 1] - xs[i] - h).abs() > 1e-9 * (1.0 + h.abs()) {
            return Err(Error::Invalid(
                "analysis row must be uniformly spaced".into(),
            ));
        }
    }
    Ok(n)
}

/// Trapezoid (= rectangle, by periodicity) Fourier analysis of one periodic
/// row of samples. `xs` must span exactly one period with the endpoint
/// duplicated; the duplicate sample is ignored. Exact for band-limited data
/// up to [`max_alias_free_mode`].
pub fn fourier_analyze(xs: &[f64], values: &[f64], k_max: usize) -> Result<FourierCoeffs> {
    let n = check_periodic_row(xs, values)?;
    let alias_cap = max_alias_free_mode(xs.len());
    if k_max > alias_cap {
        return Err(Error::TooManyModes {
            max_k: alias_cap,
            requested: k_max,
        });
    }
    let mut c = FourierCoeffs::zero(k_max);
    let inv_n = 1.0 / n as f64;
    for i in 0..n {
        c.a[0] += values[i];
    }
    c.a[0] *= inv_n;
    for k in 1..=k_max {
        let kf = k as f64;
        let (mut sa, mut sb) = (0.0, 0.0);
        for i in 0..n {
            let kx = kf * xs[i];
            sa += values[i] * kx.cos();
            sb += values[i] * kx.sin();
        }
        c.a[k] = 2.0 * inv_n * sa;
        c.b[k] = 2.0 * inv_n * sb;
    }
    Ok(c)
}

/// Where boundary data for an extension is allowed to live.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SupportPolicy {
    /// Accept any periodic data.
    Permissive,
    /// Require the data to vanish within `tol` on the outer collar
    /// `|x| >= pi - margin`, so that cutoff constructions have room.
    Interior { margin: f64, tol: f64 },
}

/// Enforce a [`SupportPolicy`] on one row of boundary samples.
pub fn check_boundary_support(xs: &[f64], values: &[f64], policy: SupportPolicy) -> Result<()> {
    if let SupportPolicy::Interior { margin, tol } = policy {
        for (&x, &v) in xs.iter().zip(values) {
            if x.abs() >= PI - margin && v.abs() > tol {
                return Err(Error::SupportViolation {
                    what: format!(
                        "boundary datum {v:.3e} at x = {x:.4} inside the excluded collar \
                         |x| >= {:.4}",
                        PI - margin
                    ),
                });
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Poisson kernel route
// ---------------------------------------------------------------------------

/// Periodic Poisson kernel of the upper half-strip:
/// `G(x, y) = sinh y / (2 pi (cosh y - cos x))` for `y > 0`.
/// It has unit mass over one period and Fourier series
/// `1/(2 pi) + (1/pi) sum_{k>=1} e^{-ky} cos kx`.
pub fn poisson_kernel(x: f64, y: f64) -> f64 {
    y.sinh() / (2.0 * PI * (y.cosh() - x.cos()))
}

const QUAD_START: usize = 64;
const QUAD_DEPTH: usize = 14;

/// Harmonic extension at `(x, y)`, `y > 0`, of raw boundary values, by
/// adaptive doubling of the periodic trapezoid rule on the convolution
/// `int G(x - t, y) phi(t) dt`. Doubles the node count until two successive
/// levels agree to `tol` (relative to `max(1, |I|)`), failing with
/// [`Error::QuadratureFail`] after 14 doublings — which happens for `y` so
/// small that the kernel spike outruns the budget.
pub fn poisson_extend<F: Fn(f64) -> f64>(phi: F, x: f64, y: f64, tol: f64) -> Result<f64> {
    if !(y > 0.0) {
        return Err(Error::Invalid(format!(
            "the Poisson kernel extends into y > 0; got y = {y}"
        )));
    }
    let mut n = QUAD_START;
    let mut sum = 0.0;
    for i in 0..n {
        let t = -PI + 2.0 * PI * i as f64 / n as f64;
        sum += poisson_kernel(x - t, y) * phi(t);
    }
    let mut value = sum * 2.0 * PI / n as f64;
    for _ in 0..QUAD_DEPTH {
        // refine: keep old nodes, add the midpoints
        let mut mid = 0.0;
        for i in 0..n {
            let t = -PI + 2.0 * PI * (i as f64 + 0.5) / n as f64;
            mid += poisson_kernel(x - t, y) * phi(t);
        }
        sum += mid;
        n *= 2;
        let next = sum * 2.0 * PI / n as f64;
        let done = (next - value).abs() <= tol * next.abs().max(1.0);
        value = next;
        if !value.is_finite() {
            return Err(Error::Invalid(
                "poisson quadrature produced a non-finite value".into(),
            ));
        }
        if done {
            return Ok(value);
        }
    }
    Err(Error::QuadratureFail {
        tol,
        depth: QUAD_DEPTH,
    })
}

/// Mass of the kernel at height `y` (should be exactly 1 for every `y > 0`).
pub fn kernel_mass(y: f64, tol: f64) -> Result<f64> {
    poisson_extend(|_| 1.0, 0.0, y, tol)
}

// ---------------------------------------------------------------------------
// series extensions with exact jets
// ---------------------------------------------------------------------------

/// Mode-series harmonic extension of Dirichlet data.
#[derive(Clone, Debug)]
pub struct HarmonicExtension {
    pub coeffs: FourierCoeffs,
}

impl HarmonicExtension {
    pub fn from_samples(xs: &[f64], values: &[f64], k_max: usize, policy: SupportPolicy) -> Result<Self> {
        check_boundary_support(xs, values, policy)?;
        Ok(HarmonicExtension {
            coeffs: fourier_analyze(xs, values, k_max)?,
        })
    }
}

impl ScalarMap for HarmonicExtension {
    fn jet(&self, x: f64, y: f64) -> ScalarJet2 {
        let mut j = ScalarJet2 {
            v: self.coeffs.a[0],
            ..Default::default()
        };
        for k in 1..self.coeffs.a.len() {
            let kf = k as f64;
            let e = (-kf * y).exp();
            let (s, c) = (kf * x).sin_cos();
            let t = self.coeffs.a[k] * c + self.coeffs.b[k] * s;
            let tp = kf * (-self.coeffs.a[k] * s + self.coeffs.b[k] * c);
            j.v += e * t;
            j.vx += e * tp;
            j.vy += -kf * e * t;
            j.vxx += -kf * kf * e * t;
            j.vxy += -kf * e * tp;
            j.vyy += kf * kf * e * t;
        }
        j
    }
}

/// Decaying biharmonic extension with prescribed boundary value (Dirichlet)
/// and outward `y`-derivative (Neumann), optionally damped by a plateau
/// window in `y` whose flat part must cover `y = 0` so the boundary jets are
/// untouched.
///
/// Mode `k >= 1` solves `(d^2/dy^2 - k^2)^2 A = 0` with the decaying basis
/// `(1 + 0y) e^{-ky}, y e^{-ky}`: for value `c` and slope `d`,
/// `A(y) = (c + (kc + d) y) e^{-ky}`. Mode `0` is the linear `c + d y`.
#[derive(Clone, Debug)]
pub struct BiharmonicExtension {
    pub dirichlet: FourierCoeffs,
    pub neumann: FourierCoeffs,
    pub window: Option<Window1>,
}

impl BiharmonicExtension {
    pub fn new(dirichlet: FourierCoeffs, neumann: FourierCoeffs) -> Result<Self> {
        if dirichlet.max_mode() != neumann.max_mode() {
            return Err(Error::Invalid(format!(
                "dirichlet and neumann data carry different mode counts ({} vs {})",
                dirichlet.max_mode(),
                neumann.max_mode()
            )));
        }
        Ok(BiharmonicExtension {
            dirichlet,
            neumann,
            window: None,
        })
    }

    pub fn from_samples(
        xs: &[f64],
        dirichlet: &[f64],
        neumann: &[f64],
        k_max: usize,
        policy: SupportPolicy,
    ) -> Result<Self> {
        check_boundary_support(xs, dirichlet, policy)?;
        check_boundary_support(xs, neumann, policy)?;
        Self::new(
            fourier_analyze(xs, dirichlet, k_max)?,
            fourier_analyze(xs, neumann, k_max)?,
        )
    }

    /// Attach a `y`-window. Its plateau must contain `y = 0` strictly, so the
    /// window is identically 1 with two vanishing derivatives there and the
    /// boundary jets of the extension are preserved exactly.
    pub fn with_window(mut self, window: Window1) -> Result<Self> {
        let w0 = window.eval(0.0);
        if w0 != [1.0, 0.0, 0.0, 0.0] {
            return Err(Error::Invalid(format!(
                "cutoff window must be flat at the boundary row; w(0) jet is {w0:?}"
            )));
        }
        self.window = Some(window);
        Ok(self)
    }

    /// The raw (unwindowed) jet.
    fn series_jet(&self, x: f64, y: f64) -> ScalarJet2 {
        let mut j = ScalarJet2 {
            v: self.dirichlet.a[0] + self.neumann.a[0] * y,
            vy: self.neumann.a[0],
            ..Default::default()
        };
        for k in 1..self.dirichlet.a.len() {
            let kf = k as f64;
            let e = (-kf * y).exp();
            let (s, c) = (kf * x).sin_cos();
            // per-mode profiles for the cos and sin channels
            let profile = |cv: f64, dv: f64| {
                let ev = kf * cv + dv;
                let a = (cv + ev * y) * e;
                let ap = (ev - kf * cv - kf * ev * y) * e;
                let app = (kf * kf * cv - 2.0 * kf * ev + kf * kf * ev * y) * e;
                (a, ap, app)
            };
            let (ac, acp, acpp) = profile(self.dirichlet.a[k], self.neumann.a[k]);
            let (as_, asp, aspp) = profile(self.dirichlet.b[k], self.neumann.b[k]);
            let t = ac * c + as_ * s;
            let tp = kf * (-ac * s + as_ * c);
            j.v += t;
            j.vx += tp;
            j.vxx += -kf * kf * t;
            j.vy += acp * c + asp * s;
            j.vxy += kf * (-acp * s + asp * c);
            j.vyy += acpp * c + aspp * s;
        }
        j
    }
}

impl ScalarMap for BiharmonicExtension {
    fn jet(&self, x: f64, y: f64) -> ScalarJet2 {
        let j = self.series_jet(x, y);
        match &self.window {
            None => j,
            Some(w) => {
                let [w0, w1, w2, _] = w.eval(y);
                ScalarJet2 {
                    v: j.v * w0,
                    vx: j.vx * w0,
                    vy: j.vy * w0 + j.v * w1,
                    vxx: j.vxx * w0,
                    vxy: j.vxy * w0 + j.vx * w1,
                    vyy: j.vyy * w0 + 2.0 * j.vy * w1 + j.v * w2,
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// mode norms, trace pairings
// ---------------------------------------------------------------------------

/// Squared `L^2(S^1)` norm of the `k`-th mode `a cos kx + b sin kx`
/// (`2 pi a^2` for the mean mode).
pub fn mode_circle_norm_sq(k: usize, a: f64, b: f64) -> f64 {
    if k == 0 {
        2.0 * PI * a * a
    } else {
        PI * (a * a + b * b)
    }
}

/// Closed form of the squared `L^2` norm over the half-strip of the weighted
/// harmonic mode `k^s (a cos kx + b sin kx) e^{-ky}`, `k >= 1`:
/// `k^{2s} * ||mode||^2_{S^1} * int_0^inf e^{-2ky} dy = k^{2s-1}/2 * ||mode||^2`.
pub fn weighted_mode_norm_sq(k: usize, s: f64, a: f64, b: f64) -> f64 {
    let kf = k as f64;
    0.5 * kf.powf(2.0 * s - 1.0) * mode_circle_norm_sq(k, a, b)
}

/// Squared homogeneous `H^s(S^1)` seminorm: `sum_{k>=1} k^{2s} ||mode_k||^2`.
pub fn sobolev_seminorm_sq(c: &FourierCoeffs, s: f64) -> f64 {
    let mut sum = 0.0;
    for k in 1..c.a.len() {
        sum += (k as f64).powf(2.0 * s) * mode_circle_norm_sq(k, c.a[k], c.b[k]);
    }
    sum
}

/// The periodic integration-by-parts pairing
/// `int (phi' psi' - phi'' psi) dx = 2 sum_{k>=1} k^2 <phi_k, psi_k>`,
/// with `<phi_k, psi_k> = pi (a_k a'_k + b_k b'_k)`: both terms on the left
/// contribute one factor `k^2` times the mode pairing.
pub fn boundary_pairing_ibp(phi: &FourierCoeffs, psi: &FourierCoeffs) -> f64 {
    let kmax = phi.max_mode().min(psi.max_mode());
    let mut sum = 0.0;
    for k in 1..=kmax {
        let kf = k as f64;
        sum += 2.0 * kf * kf * PI * (phi.a[k] * psi.a[k] + phi.b[k] * psi.b[k]);
    }
    sum
}

/// Plain periodic trapezoid sum of `f` over `[-pi, pi]` with `n` panels.
/// Exact (to roundoff) for trigonometric polynomials of degree `< n/2`.
pub fn periodic_trapezoid<F: Fn(f64) -> f64>(f: F, n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        s += f(-PI + 2.0 * PI * i as f64 / n as f64);
    }
    s * 2.0 * PI / n as f64
}

// ---------------------------------------------------------------------------
// discrete operators for decay studies
// ---------------------------------------------------------------------------

/// Finite-difference flat Laplacian `u_xx + u_yy` of nodal values.
pub fn flat_laplacian(grid: &ParamGrid, values: &[f64]) -> Vec<f64> {
    let uxx = grid.d_xx(values);
    let uyy = grid.d_yy(values);
    uxx.iter().zip(&uyy).map(|(a, b)| a + b).collect()
}

/// Sup of `|L u|` over nodes at least `collar` in from every edge, where `L`
/// is `flat_laplacian` applied `passes` times (1 = Laplacian, 2 =
/// bilaplacian). The collar keeps one-sided stencils out of the measurement.
pub fn iterated_laplacian_sup(
    grid: &ParamGrid,
    values: &[f64],
    passes: usize,
    collar: usize,
) -> f64 {
    let mut v = values.to_vec();
    for _ in 0..passes {
        v = flat_laplacian(grid, &v);
    }
    let mut sup = 0.0f64;
    for j in collar..grid.ny.saturating_sub(collar) {
        for i in collar..grid.nx.saturating_sub(collar) {
            sup = sup.max(v[grid.idx(i, j)].abs());
        }
    }
    sup
}

//! Error type shared by all numerical operations in the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("grid must have nx, ny >= 5 and strictly increasing ranges (got nx={nx}, ny={ny})")]
    InvalidGrid { nx: usize, ny: usize },

    #[error("degenerate metric at node ({i},{j}): det g = {det:.3e} <= eps^2 = {eps_sq:.3e}")]
    DegenerateMetric {
        i: usize,
        j: usize,
        det: f64,
        eps_sq: f64,
    },

    #[error("non-finite value encountered at node ({i},{j})")]
    NonFinite { i: usize, j: usize },

    #[error("operation needs at least {needed} interior rows/columns, grid has {got}")]
    InsufficientGrid { needed: usize, got: usize },

    #[error("field support touches an excluded edge of the parameter domain ({what})")]
    SupportViolation { what: String },

    #[error("boundary trace violates the {kind} constraints: max residual {residual:.3e} > tol {tol:.3e}")]
    ConstraintViolated {
        kind: String,
        residual: f64,
        tol: f64,
    },

    #[error("surface does not meet the support surface orthogonally: residual {residual:.3e} > tol {tol:.3e}")]
    NotOrthogonal { residual: f64, tol: f64 },

    #[error("chart is not conformal on the boundary row: residual {residual:.3e} > tol {tol:.3e}")]
    NotConformal { residual: f64, tol: f64 },

    #[error("surface is not minimal: sup |H| = {sup_h:.3e} > tol {tol:.3e}")]
    NotMinimal { sup_h: f64, tol: f64 },

    #[error("time step too large or too small: residual grew from {coarse:.3e} to {fine:.3e} under step halving")]
    StepTooLarge { coarse: f64, fine: f64 },

    #[error("adaptive quadrature failed to reach tolerance {tol:.3e} within depth {depth}")]
    QuadratureFail { tol: f64, depth: usize },

    #[error("refinement ladder is not monotone: error rose from {prev:.3e} to {next:.3e} at rung {rung}")]
    NonMonotone { rung: usize, prev: f64, next: f64 },

    #[error("grid samples the singular set of '{surface}' at ({x:.6}, {y:.6})")]
    SingularitySampled { surface: String, x: f64, y: f64 },

    #[error("inversion center hit at node ({i},{j}): |f - c| = {dist:.3e} below guard {guard:.3e}")]
    SingularityHit {
        i: usize,
        j: usize,
        dist: f64,
        guard: f64,
    },

    #[error("fit window too wide: residual {residual:.3e} indicates the O(1) term dominates the log term")]
    WindowTooWide { residual: f64 },

    #[error("too few Fourier modes: grid supports K <= {max_k}, requested {requested}")]
    TooManyModes { max_k: usize, requested: usize },

    #[error("analytic jet required but not available for this immersion")]
    JetUnavailable,

    #[error("higher-order jet (third derivatives) required but not available")]
    ThirdJetUnavailable,

    #[error("{0}")]
    Invalid(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),
}

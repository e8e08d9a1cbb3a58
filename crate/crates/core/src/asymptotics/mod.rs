//! Generating-function side of the crate: high-precision constants by
//! quadrature, and exact rational series solutions of the underlying ODE
//! systems as an independent route to the same quantities.

pub mod constants;
pub mod ode;
pub mod quad;
pub mod series;

use thiserror::Error;

pub use constants::{
    a_func, constants_bin, constants_rec, constants_report, euler_gompertz, BinConstants,
    ConstantsReport, RecConstants, ValueWithError,
};
pub use quad::{QuadError, QuadratureResult};
pub use series::{
    rational_to_f64,
    closed_form_check, series_solve, series_solve_with_limit, ClosedFormReport, SeriesRow,
    SeriesTable, DEFAULT_MAX_ORDER,
};

#[derive(Debug, Clone, Error)]
pub enum AsymptoticsError {
    #[error("series order {order} out of range 1..={max}")]
    OrderOutOfRange { order: usize, max: usize },
    #[error(transparent)]
    Quadrature(#[from] QuadError),
    #[error("argument outside domain: {0}")]
    DomainError(String),
    #[error("{family} closed form for {series} disagrees at x^{n}: exact {exact}, closed {closed}")]
    ClosedFormMismatch { family: &'static str, series: String, n: usize, exact: f64, closed: f64 },
}

//! Space–time B-spline collocation for the viscous Burgers' equation
//! `u_t + u u_x = ν u_xx`.
//!
//! Quadratic B-splines integrate in time and cubic B-splines in space. Each
//! time level is a cubic-spline expansion ([`field::CoefficientVector`]);
//! every step collocates the time-discretized equation at the grid nodes and
//! solves one tridiagonal system per inner pass ([`stepper`]).
//!
//! ```
//! use bspline_burgers::{make_problem, run, SolverConfig};
//!
//! let problem = make_problem("front", 0.1)?;
//! let cfg = SolverConfig::for_problem(&problem, 0.02, 0.02, 0.2);
//! let profiles = run(&problem, &cfg, &[0.2])?;
//! assert_eq!(profiles[0].values.len(), 51);
//! # Ok::<(), bspline_burgers::Error>(())
//! ```
//!
//! The `book/` directory next to the workspace walks through the method
//! chapter by chapter; its code listings are compiled as doctests of this
//! crate.

pub mod basis;
pub mod error;
pub mod field;
pub mod linsys;
pub mod metrics;
pub mod oracle;
pub mod problems;
pub mod stepper;

/// Version of this crate, recorded in run metadata.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub use basis::UniformGrid;
pub use error::{Error, Result};
pub use field::{CoefficientVector, NodalTriple};
pub use metrics::{ErrorReport, L2Weighting};
pub use problems::{make_problem, FrontParams, ProblemKind, ProblemSpec};
pub use stepper::{
    run, InitStrategy, InnerUpdate, Mode, Profile, Solver, SolverConfig, SolverState,
};

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
mod readme {}

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/basis.md")]
    mod basis {}
    #[doc = include_str!("../../../book/src/field.md")]
    mod field {}
    #[doc = include_str!("../../../book/src/linsys.md")]
    mod linsys {}
    #[doc = include_str!("../../../book/src/stepping.md")]
    mod stepping {}
    #[doc = include_str!("../../../book/src/problems.md")]
    mod problems {}
    #[doc = include_str!("../../../book/src/metrics.md")]
    mod metrics {}
    #[doc = include_str!("../../../book/src/oracle.md")]
    mod oracle {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}

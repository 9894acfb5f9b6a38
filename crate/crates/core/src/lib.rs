//! Riemannian entanglement measures for pure multi-qubit states.
//!
//! The crate provides a small dense complex linear-algebra kernel, pure
//! states and reductions, generalized Bloch geometry with monotone metrics,
//! the two-qubit REM, the bipartite bREM and its geometric mean GBR, the
//! usual baselines (entropy, concurrence, GGM, GMC, concurrence fill, GBC),
//! a catalog of named states, and brute-force oracles used for validation.
//!
//! ```
//! use qgeo::{catalog, measures};
//!
//! let ghz = catalog::ghz(3).unwrap();
//! assert!((measures::gbr(&ghz).unwrap().value - 1.0).abs() < 1e-9);
//! ```

pub mod baseline;
pub mod bloch;
pub mod catalog;
pub mod error;
pub mod linalg;
pub mod measures;
pub mod oracle;
pub mod quadrature;
pub mod sampling;
pub mod state;

pub use baseline::{measure_report, Measure, MeasureReport};
pub use bloch::{McFunction, MetricConfig};
pub use error::{Error, Result};
pub use linalg::ComplexMatrix;
pub use measures::{brem, gbr, rem_two_qubit, BremResult, GbrResult, RemResult};
pub use state::{Bipartition, DensityOperator, PureState};

//! Exact checks of partition and overpartition identities.
//!
//! Every identity is verified twice: by brute-force enumeration of the
//! combinatorial objects, and by truncated power-series arithmetic over
//! arbitrary-precision integers. The two routes share no code beyond the
//! [`Partition`] and [`Overpartition`] types.
//!
//! ```
//! use overpart_core::verify::verify_corollary;
//!
//! let report = verify_corollary(3, 1, 60, 15).unwrap();
//! assert!(report.passed());
//! ```

// coefficient tables are indexed in lockstep by n and m throughout
#![allow(clippy::needless_range_loop)]

pub mod appell;
pub mod error;
pub mod overpartition;
pub mod partition;
pub mod series;
pub mod verify;

pub use appell::{FormalLimit, InitialConditions, RSequence};
pub use error::{Error, Result};
pub use overpartition::{Overpartition, PartEntry};
pub use partition::{Partition, Phrasing};
pub use series::{BivariateSeries, Monomial, QSeries, Sign};
pub use verify::{Identity, Status, VerificationReport, Witness};

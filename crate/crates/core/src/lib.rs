//! Exact computations on the space of symmetric matrices fixed by a
//! unipotent operator of a given Jordan type.

pub mod algebra;
pub mod error;
pub mod fixed_space;
pub mod partitions;
pub mod quadric;
pub mod report;

pub use algebra::{Catalog, Polynomial, QPoly, Rational, Ring, RingMatrix, ZPoly};
pub use error::{Error, Result};
pub use partitions::{enumerate_partitions, BlockGrid, Partition};
pub use report::{sweep, verify, Check, CheckResult, Config, Report, Status, SweepReport, Verifier};

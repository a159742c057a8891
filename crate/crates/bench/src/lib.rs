//! Fixtures shared by the benchmarks.

use quadfix::fixed_space::GenericFixedMatrix;
use quadfix::Partition;

/// Jordan types used across benchmark groups, smallest first.
pub const PARTITIONS: [&str; 5] = ["2,2,1,1", "3,2,1", "3,3,2", "4,2,2,2", "3,3,2,2,1"];

pub fn generic(parts: &str) -> GenericFixedMatrix {
    let partition: Partition = parts.parse().expect("benchmark partition");
    GenericFixedMatrix::new(&partition)
}

//! Fixtures shared by the engine benchmarks.

use pfaff_core::{Partition, X1Model};

/// Mildly odd and generic diagrams of growing size.
pub fn diagrams() -> Vec<Partition> {
    [vec![4, 4, 3], vec![3, 3, 2, 2, 1], vec![5, 4, 4, 2, 2, 1], vec![4, 4, 3, 3, 2, 1, 1]]
        .into_iter()
        .map(|r| Partition::new(r).expect("weakly decreasing"))
        .collect()
}

pub fn model(n: usize) -> X1Model {
    X1Model::new(n).expect("n ≥ 2")
}

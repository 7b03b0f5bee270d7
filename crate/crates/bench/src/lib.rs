//! Fixtures shared by the benchmarks.

use pseries_core::{build_group_algebra, builtins, ExponentVector, GroupAlgebra, WeightSchedule};

/// Heisenberg group over `F_2` with weights `(a, b, z) = (1, 1, 3)`.
pub fn heisenberg(cutoff: u64) -> GroupAlgebra {
    let sched = WeightSchedule::from_generator_weights(vec![1, 1, 3]).expect("positive weights");
    build_group_algebra(&builtins::heisenberg(2), &sched, cutoff)
        .expect("heisenberg builds")
        .0
}

/// A fixed spread of Heisenberg elements with exponents up to `bound`.
pub fn heisenberg_elements(bound: i64) -> Vec<ExponentVector> {
    let mut out = Vec::new();
    for a in [-bound, 1, bound] {
        for b in [-bound, -1, bound] {
            out.push(ExponentVector::from_i64(&[a, b, a - b]));
        }
    }
    out
}

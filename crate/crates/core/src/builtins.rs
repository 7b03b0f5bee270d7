//! Named groups, realizations and their standard weight schedules.

use std::sync::Arc;

use num_bigint::BigInt;

use crate::algebra::{FilteredAlgebra, GeneratorMap, GroupAlgebra};
use crate::builder::{build_group_algebra, BuildError, BuildLog, WeightSchedule};
use crate::pcgroup::{PcPresentation, PcPresentationBuilder, RelativeOrder};
use crate::pseries::lower_series_weight;

fn one(i: usize) -> (usize, BigInt) {
    (i, BigInt::from(1))
}

fn syl(i: usize, e: i64) -> (usize, BigInt) {
    (i, BigInt::from(e))
}

/// Free abelian group of rank `k` with generators `g1, ..., gk`.
pub fn free_abelian(p: u32, k: usize) -> PcPresentation {
    let mut b = PcPresentationBuilder::new(p);
    for i in 0..k {
        let name = if k == 1 { "g".to_string() } else { format!("g{}", i + 1) };
        b = b.generator(name, RelativeOrder::Infinite);
    }
    b.build().expect("free abelian presentation is valid")
}

/// Discrete Heisenberg group on `a, b, z` with `[a, b] = z` central, in the
/// polycyclic order `(a, b, z)`; `b a = a b z^{-1}`.
pub fn heisenberg(p: u32) -> PcPresentation {
    PcPresentationBuilder::new(p)
        .generator("a", RelativeOrder::Infinite)
        .generator("b", RelativeOrder::Infinite)
        .generator("z", RelativeOrder::Infinite)
        .conjugate(0, 1, vec![one(1), syl(2, -1)])
        .build()
        .expect("Heisenberg presentation is valid")
}

/// Cyclic group of order `p^m`, refined to the series
/// `<g> ⊃ <g^p> ⊃ ... ⊃ <g^{p^{m-1}}> ⊃ 1` with every factor of order `p`.
pub fn cyclic_p_power(p: u32, m: usize) -> PcPresentation {
    assert!(m >= 1, "cyclic group of order p^m needs m >= 1");
    let mut b = PcPresentationBuilder::new(p);
    for i in 0..m {
        b = b.generator(power_name(p, i), RelativeOrder::PrimePower(1));
    }
    for i in 0..m - 1 {
        b = b.power(i, vec![one(i + 1)]);
    }
    b.build().expect("cyclic presentation is valid")
}

/// The infinite cyclic group `<g>` presented through the tower
/// `<g> ⊃ <g^p> ⊃ ... ⊃ <g^{p^levels}>`: `levels` factors of order `p`
/// followed by the infinite cyclic subgroup generated by `g^{p^levels}`.
pub fn cyclic_tower(p: u32, levels: usize) -> PcPresentation {
    let mut b = PcPresentationBuilder::new(p);
    for i in 0..levels {
        b = b.generator(power_name(p, i), RelativeOrder::PrimePower(1));
    }
    b = b.generator(power_name(p, levels), RelativeOrder::Infinite);
    for i in 0..levels {
        b = b.power(i, vec![one(i + 1)]);
    }
    b.build().expect("tower presentation is valid")
}

fn power_name(p: u32, i: usize) -> String {
    if i == 0 {
        "g".to_string()
    } else {
        format!("g^{}", (p as u64).pow(i as u32))
    }
}

/// Free abelian group on two generators `u, v`.
pub fn free_abelian_uv(p: u32) -> PcPresentation {
    PcPresentationBuilder::new(p)
        .generator("u", RelativeOrder::Infinite)
        .generator("v", RelativeOrder::Infinite)
        .build()
        .expect("free abelian presentation is valid")
}

/// The free abelian group `<u, v>` realized by the units `u = 1 + t` and
/// `v = 1 + t + t^p` of the one-variable algebra `F_p[t]`, `t` of weight 1.
pub fn units_example(p: u32, cutoff: u64) -> Result<GroupAlgebra, BuildError> {
    let alg = FilteredAlgebra::polynomial(p, &[1], cutoff)?;
    let u = alg.element(&[(vec![0], 1), (vec![1], 1)])?;
    let v = alg.element(&[(vec![0], 1), (vec![1], 1), (vec![p], 1)])?;
    let map = GeneratorMap::new(&alg, vec![u, v])?;
    Ok(GroupAlgebra::new(Arc::new(free_abelian_uv(p)), alg, map)?)
}

/// Generator weights `w_1, ..., w_n` with `w_1 = 1`, `w_{i+1} = p w_i + 1`.
pub fn lower_series_weights(p: u32, n: usize) -> Vec<u64> {
    (1..=n as u32)
        .map(|i| lower_series_weight(p as u64, i).finite().expect("weight fits in u64"))
        .collect()
}

/// Number of order-`p` levels needed so that the infinite bottom of the
/// tower has weight above `cutoff`.
pub fn tower_levels(p: u32, cutoff: u64) -> usize {
    let mut levels = 0;
    while lower_series_weight(p as u64, levels as u32 + 1) <= crate::value::Value::Finite(cutoff) {
        levels += 1;
    }
    levels
}

/// The infinite cyclic group with the series whose factors all have order
/// `p`, realized on the tower `<g> ⊃ <g^p> ⊃ ...` deep enough that every
/// weight up to `cutoff` is visible.
pub fn tower_example(p: u32, cutoff: u64) -> Result<(GroupAlgebra, BuildLog), BuildError> {
    let levels = tower_levels(p, cutoff);
    let pres = cyclic_tower(p, levels);
    let schedule = WeightSchedule::from_generator_weights(lower_series_weights(p, levels + 1))?;
    build_group_algebra(&pres, &schedule, cutoff)
}

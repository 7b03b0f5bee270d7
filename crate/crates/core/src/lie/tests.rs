use std::collections::BTreeMap;

use super::*;
use crate::builder::{build_group_algebra, direct_product_groups, finite_pgroup_schedule, WeightSchedule};
use crate::builtins;
use crate::sample;

fn gen_weights(w: &[u64]) -> WeightSchedule {
    WeightSchedule::from_generator_weights(w.to_vec()).unwrap()
}

fn heisenberg(cutoff: u64) -> GroupAlgebra {
    build_group_algebra(&builtins::heisenberg(2), &gen_weights(&[1, 1, 3]), cutoff)
        .unwrap()
        .0
}

fn dims(pairs: &[(u64, usize)]) -> BTreeMap<u64, usize> {
    pairs.iter().copied().collect()
}

/// Truncated power series over `F_p` as plain coefficient vectors.
mod series {
    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let n = a.len();
        let mut r = vec![0; n];
        for i in 0..n {
            for j in 0..n - i {
                r[i + j] = (r[i + j] + a[i] * b[j]) % p;
            }
        }
        r
    }

    pub fn inv(a: &[u32], p: u32) -> Vec<u32> {
        let n = a.len();
        let mut r = vec![0; n];
        r[0] = 1;
        for k in 1..n {
            let s: u32 = (1..=k).map(|j| a[j] * r[k - j] % p).sum::<u32>() % p;
            r[k] = (p - s) % p;
        }
        r
    }

    pub fn pow(a: &[u32], e: i64, p: u32) -> Vec<u32> {
        let base = if e < 0 { inv(a, p) } else { a.to_vec() };
        let mut r = vec![0; a.len()];
        r[0] = 1;
        for _ in 0..e.unsigned_abs() {
            r = mul(&r, &base, p);
        }
        r
    }
}

#[test]
fn components_of_units() {
    let ga = builtins::units_example(2, 20).unwrap();
    let alg = ga.algebra();
    let u = hom_component(&ga, &ga.element(&[1, 0])).unwrap();
    assert_eq!((u.degree(), u.body()), (1, &alg.variable(0)));
    let v = hom_component(&ga, &ga.element(&[0, 1])).unwrap();
    assert_eq!(v.body(), u.body());
    let h = hom_component(&ga, &ga.element(&[2, -2])).unwrap();
    assert_eq!((h.degree(), h.body()), (4, &alg.monomial(&[4], 1).unwrap()));
    assert_eq!(hom_component(&ga, &ga.element(&[0, 0])), Err(LieError::IdentityElement));
}

#[test]
fn unit_components_match_series_oracle() {
    for p in [2u32, 3] {
        let d = 20usize;
        let ga = builtins::units_example(p, d as u64).unwrap();
        let mut u = vec![0u32; d + 1];
        u[0] = 1;
        u[1] = 1;
        let mut v = u.clone();
        v[p as usize] = 1;
        for a in -3i64..=3 {
            for b in -3i64..=3 {
                let mut h = series::mul(&series::pow(&u, a, p), &series::pow(&v, b, p), p);
                h[0] = (h[0] + p - 1) % p;
                let g = ga.element(&[a, b]);
                match h.iter().position(|&c| c != 0) {
                    None => assert!(hom_component(&ga, &g).is_err()),
                    Some(k) => {
                        let c = hom_component(&ga, &g).unwrap();
                        assert_eq!(c.degree(), k as u64, "p = {p}, ({a}, {b})");
                        assert_eq!(c.body().coefficient(&[k as u32]), h[k]);
                    }
                }
            }
        }
    }
}

#[test]
fn product_of_the_two_units_has_a_cubic_component() {
    // (1 + t)(1 + t + t^2) = 1 + t^3 over F_2
    let ga = builtins::units_example(2, 20).unwrap();
    let c = hom_component(&ga, &ga.element(&[1, 1])).unwrap();
    assert_eq!((c.degree(), c.body()), (3, &ga.algebra().monomial(&[3], 1).unwrap()));
}

#[test]
fn heisenberg_components_and_brackets() {
    let ga = heisenberg(12);
    let alg = ga.algebra();
    let z = hom_component(&ga, &ga.element(&[0, 0, 1])).unwrap();
    assert_eq!((z.degree(), z.body()), (3, &alg.variable(0)));
    let a = hom_component(&ga, &ga.element(&[1, 0, 0])).unwrap();
    let b = hom_component(&ga, &ga.element(&[0, 1, 0])).unwrap();
    let g = bracket_group(&ga, &a, &b).unwrap();
    let r = bracket_ring(alg, &a, &b).unwrap();
    assert_eq!(g.degree(), 2);
    assert!(g.is_zero() && r.is_zero());
    assert!(bracket(&ga, &a, &a).unwrap().is_zero());
    assert!(matches!(
        bracket(&ga, &z, &hom_component(&ga, &ga.element(&[0, 0, 4])).unwrap()),
        Err(LieError::ExceedsCutoff { .. })
    ));
}

#[test]
fn p_powers() {
    let z = build_group_algebra(&builtins::free_abelian(2, 1), &gen_weights(&[1]), 8)
        .unwrap()
        .0;
    let g = hom_component(&z, &z.element(&[1])).unwrap();
    let gp = p_power(&z, &g).unwrap();
    assert_eq!((gp.degree(), gp.body()), (2, &z.algebra().monomial(&[2], 1).unwrap()));

    let ga = builtins::units_example(2, 20).unwrap();
    let x = hom_component(&ga, &ga.element(&[1, -1])).unwrap();
    let xp = p_power(&ga, &x).unwrap();
    let y = hom_component(&ga, &ga.element(&[2, -2])).unwrap();
    assert_eq!((xp.degree(), xp.body()), (y.degree(), y.body()));
    assert_eq!(p_power_ring(ga.algebra(), &x).unwrap().body(), y.body());
}

#[test]
fn tower_example_has_exponent_p() {
    let (ga, _) = builtins::tower_example(2, 15).unwrap();
    let seeds = generator_components(&ga);
    for s in &seeds {
        if s.degree() * 2 <= 15 {
            assert!(p_power(&ga, s).unwrap().is_zero());
            assert!(p_power_ring(ga.algebra(), s).unwrap().is_zero());
        }
    }
    let basis = generate_subalgebra(ga.algebra(), &seeds, 15);
    let c = classify(ga.algebra(), &basis);
    assert_eq!(c.dims, dims(&[(1, 1), (3, 1), (7, 1), (15, 1)]));
    assert!(c.abelian && c.exponent_p && !c.free_abelian);
}

#[test]
fn one_variable_closure() {
    let a = FilteredAlgebra::polynomial(2, &[1], 8).unwrap();
    let t = HomogeneousElement::from_body(&a, 1, &a.variable(0));
    let basis = generate_subalgebra(&a, &[t], 8);
    assert_eq!(basis.dims(), dims(&[(1, 1), (2, 1), (4, 1), (8, 1)]));
    let c = classify(&a, &basis);
    assert!(c.abelian && c.free_abelian && !c.exponent_p);
    assert_eq!(c.rank_estimate, 1);
    assert_eq!(generate_subalgebra(&a, &[], 8).total_dim(), 0);
}

#[test]
fn heisenberg_is_free_abelian_of_rank_three() {
    let ga = heisenberg(12);
    let basis = generate_subalgebra(ga.algebra(), &generator_components(&ga), 12);
    assert_eq!(
        basis.dims(),
        dims(&[(1, 2), (2, 2), (3, 1), (4, 2), (6, 1), (8, 2), (12, 1)])
    );
    let c = classify(ga.algebra(), &basis);
    assert!(c.abelian && c.free_abelian && !c.exponent_p);
    assert_eq!(c.rank_estimate, 3);
    assert!(c.rank_estimate <= ga.presentation().hirsch_number());
}

#[test]
fn finite_cyclic_groups() {
    for (p, weights) in [(2u32, [1u64, 3]), (3, [1, 4])] {
        let pres = builtins::cyclic_p_power(p, 2);
        let sched = finite_pgroup_schedule(&pres).unwrap();
        assert_eq!(sched.generator_weights(), weights);
        let cutoff = 12;
        let (ga, _) = build_group_algebra(&pres, &sched, cutoff).unwrap();
        let basis = generate_subalgebra(ga.algebra(), &generator_components(&ga), cutoff);
        let c = classify(ga.algebra(), &basis);
        assert_eq!(c.dims, dims(&[(weights[0], 1), (weights[1], 1)]));
        assert!(c.abelian && c.exponent_p);
    }
}

#[test]
fn klein_four_group() {
    let pres = crate::pcgroup::PcPresentationBuilder::new(2)
        .generator("a", crate::pcgroup::RelativeOrder::PrimePower(1))
        .generator("b", crate::pcgroup::RelativeOrder::PrimePower(1))
        .build()
        .unwrap();
    let sched = finite_pgroup_schedule(&pres).unwrap();
    assert_eq!(sched.generator_weights(), vec![1, 3]);
    let (ga, _) = build_group_algebra(&pres, &sched, 10).unwrap();
    let basis = generate_subalgebra(ga.algebra(), &generator_components(&ga), 10);
    assert_eq!(basis.dims(), dims(&[(1, 1), (3, 1)]));

    let c2 = builtins::cyclic_p_power(2, 1);
    let (x, _) = build_group_algebra(&c2, &gen_weights(&[1]), 10).unwrap();
    let prod = direct_product_groups(&x, &x).unwrap();
    let basis = generate_subalgebra(prod.algebra(), &generator_components(&prod), 10);
    assert_eq!(basis.dims(), dims(&[(1, 2)]));
}

#[test]
fn direct_product_dimensions_add() {
    let z = builtins::free_abelian(2, 1);
    let (g1, _) = build_group_algebra(&z, &gen_weights(&[1]), 16).unwrap();
    let (g2, _) = build_group_algebra(&z, &gen_weights(&[5]), 16).unwrap();
    let prod = direct_product_groups(&g1, &g2).unwrap();
    let d1 = generate_subalgebra(g1.algebra(), &generator_components(&g1), 16).dims();
    let d2 = generate_subalgebra(g2.algebra(), &generator_components(&g2), 16).dims();
    let dp = generate_subalgebra(prod.algebra(), &generator_components(&prod), 16).dims();
    for d in 1..=16 {
        let get = |m: &BTreeMap<u64, usize>| m.get(&d).copied().unwrap_or(0);
        assert_eq!(get(&dp), get(&d1) + get(&d2), "degree {d}");
    }
}

#[test]
fn routes_agree_on_heisenberg() {
    let ga = heisenberg(10);
    let pres = ga.presentation();
    let mut rng = sample::rng(21);
    let mut checked = 0;
    while checked < 100 {
        let g = pres.random_element(&mut rng, 2);
        let h = pres.random_element(&mut rng, 2);
        let (Ok(x), Ok(y)) = (hom_component(&ga, &g), hom_component(&ga, &h)) else {
            continue;
        };
        if x.degree() + y.degree() <= 10 {
            let a = bracket_group(&ga, &x, &y).unwrap();
            let b = bracket_ring(ga.algebra(), &x, &y).unwrap();
            assert_eq!(a.body(), b.body());
        }
        if x.degree() * 2 <= 10 {
            assert_eq!(
                p_power_group(&ga, &x).unwrap().body(),
                p_power_ring(ga.algebra(), &x).unwrap().body()
            );
        }
        checked += 1;
    }
}

#[test]
fn additivity_of_components() {
    let ga = heisenberg(10);
    let alg = ga.algebra();
    let pres = ga.presentation();
    let mut rng = sample::rng(4);
    for _ in 0..100 {
        let g = pres.random_element(&mut rng, 2);
        let h = pres.random_element(&mut rng, 2);
        let (Ok(x), Ok(y)) = (hom_component(&ga, &g), hom_component(&ga, &h)) else {
            continue;
        };
        if x.degree() != y.degree() {
            continue;
        }
        let sum = alg.add(x.body(), y.body()).unwrap();
        let gh = pres.multiply(&g, &h);
        match hom_component(&ga, &gh) {
            Ok(c) if c.degree() == x.degree() => assert_eq!(c.body(), &sum),
            _ => assert!(sum.is_zero()),
        }
    }
}

#[test]
fn basis_text_is_canonical() {
    let a = FilteredAlgebra::polynomial(3, &[1, 1], 4).unwrap();
    let x = HomogeneousElement::from_body(&a, 1, &a.add(&a.variable(0), &a.variable(1)).unwrap());
    let y = HomogeneousElement::from_body(&a, 1, &a.variable(1));
    let basis = generate_subalgebra(&a, &[x, y], 1);
    assert_eq!(basis.to_string(), "1: 1 * t2^1; 1 * t1^1\n");
}

//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::collections::BTreeMap;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::Rng;

use pseries_core::builder::{extend_infinite_cyclic, step_for_generator, theta_expansion, Tower};
use pseries_core::lie::{self, classify, generate_subalgebra};
use pseries_core::pcgroup::{PcPresentationBuilder, RelativeOrder};
use pseries_core::{
    build_group_algebra, builtins, direct_product_groups, finite_pgroup_schedule, sample, ExponentVector,
    FilteredAlgebra, GroupAlgebra, PSeriesSpec, Value, WeightSchedule,
};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn gen_weights(w: &[u64]) -> WeightSchedule {
    WeightSchedule::from_generator_weights(w.to_vec()).unwrap()
}

fn heisenberg(p: u32, cutoff: u64) -> GroupAlgebra {
    build_group_algebra(&builtins::heisenberg(p), &gen_weights(&[1, 1, 3]), cutoff)
        .unwrap()
        .0
}

fn finite(p: u32, m: usize, cutoff: u64) -> GroupAlgebra {
    let pres = builtins::cyclic_p_power(p, m);
    let sched = finite_pgroup_schedule(&pres).unwrap();
    build_group_algebra(&pres, &sched, cutoff).unwrap().0
}

fn klein(cutoff: u64) -> GroupAlgebra {
    let pres = PcPresentationBuilder::new(2)
        .generator("a", RelativeOrder::PrimePower(1))
        .generator("b", RelativeOrder::PrimePower(1))
        .build()
        .unwrap();
    let sched = finite_pgroup_schedule(&pres).unwrap();
    build_group_algebra(&pres, &sched, cutoff).unwrap().0
}

fn z_times_z(cutoff: u64) -> (GroupAlgebra, GroupAlgebra, GroupAlgebra) {
    let z = builtins::free_abelian(2, 1);
    let g1 = build_group_algebra(&z, &gen_weights(&[1]), cutoff).unwrap().0;
    let g2 = build_group_algebra(&z, &gen_weights(&[5]), cutoff).unwrap().0;
    let prod = direct_product_groups(&g1, &g2).unwrap();
    (g1, g2, prod)
}

/// Truncated power series over `F_p`, as coefficient vectors.
mod series {
    pub fn one(n: usize) -> Vec<u32> {
        let mut r = vec![0; n];
        r[0] = 1;
        r
    }

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
        let mut r = one(a.len());
        for k in 1..a.len() {
            let s: u32 = (1..=k).map(|j| a[j] * r[k - j] % p).sum::<u32>() % p;
            r[k] = (p - s) % p;
        }
        r
    }

    pub fn pow(a: &[u32], e: i64, p: u32) -> Vec<u32> {
        let base = if e < 0 { inv(a, p) } else { a.to_vec() };
        let mut r = one(a.len());
        for _ in 0..e.unsigned_abs() {
            r = mul(&r, &base, p);
        }
        r
    }
}

fn unit_series(p: u32, cutoff: usize) -> (Vec<u32>, Vec<u32>) {
    let mut u = series::one(cutoff + 1);
    u[1] = 1;
    let mut v = u.clone();
    v[p as usize] = (v[p as usize] + 1) % p;
    (u, v)
}

/// Degree and coefficient of the homogeneous component of `u^a v^b - 1`.
fn component(ga: &GroupAlgebra, a: i64, b: i64) -> Option<(u64, u32)> {
    let h = lie::hom_component(ga, &ga.element(&[a, b])).ok()?;
    Some((h.degree(), h.body().coefficient(&[h.degree() as u32])))
}

fn c1_units_components() -> Outcome {
    let mut checked = 0;
    for p in [2u32, 3] {
        let cutoff = 30;
        let ga = builtins::units_example(p, cutoff).map_err(|e| e.to_string())?;
        let (u, v) = unit_series(p, cutoff as usize);
        for n in 1i64..=6 {
            let (mut k, mut n1) = (0u32, n);
            while n1 % p as i64 == 0 {
                n1 /= p as i64;
                k += 1;
            }
            let deg = (p as u64).pow(k + 1);
            let coeff = (-n1).rem_euclid(p as i64) as u32;
            let got = component(&ga, n, -n);
            // independent check of the closed form against series arithmetic
            let mut s = series::mul(&series::pow(&u, n, p), &series::pow(&v, -n, p), p);
            s[0] = (s[0] + p - 1) % p;
            let lead = s.iter().position(|&c| c != 0).map(|d| (d as u64, s[d]));
            ensure(lead == Some((deg, coeff)), || {
                format!("series oracle disagrees at p={p}, n={n}")
            })?;
            ensure(got == Some((deg, coeff)), || {
                format!("p={p}: u^{n} v^-{n} gave {got:?}, expected ({deg}, {coeff})")
            })?;
            checked += 1;
        }
        for n in -6i64..=6 {
            for m in -6i64..=6 {
                if n == -m || (n + m).rem_euclid(p as i64) == 0 {
                    continue;
                }
                let expected = Some((1, (n + m).rem_euclid(p as i64) as u32));
                let got = component(&ga, n, m);
                ensure(got == expected, || {
                    format!("p={p}: u^{n} v^{m} gave {got:?}, expected {expected:?}")
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} components matched at p=2,3, cutoff 30"))
}

fn c2_units_classification() -> Outcome {
    let ga = builtins::units_example(2, 20).map_err(|e| e.to_string())?;
    let seeds = lie::box_components(&ga, 3);
    let basis = generate_subalgebra(ga.algebra(), &seeds, 20);
    let c = classify(ga.algebra(), &basis);
    let dims: Vec<u64> = c.dims.keys().copied().collect();
    ensure(c.free_abelian && c.rank_estimate == 1, || {
        format!(
            "free_abelian={}, rank_estimate={} (expected 1), degrees {:?}",
            c.free_abelian, c.rank_estimate, dims
        )
    })?;
    Ok(format!("free abelian, rank_estimate 1, degrees {dims:?}"))
}

fn c3_tower() -> Outcome {
    let cutoff = 20;
    let expected: Vec<Value> = [1, 3, 7, 15].map(Value::Finite).to_vec();
    let z = Arc::new(builtins::free_abelian(2, 1));
    let closed = PSeriesSpec::lower_p_series_example(z, cutoff).map_err(|e| e.to_string())?;
    let w: Vec<Value> = (0..4)
        .map(|k| closed.weight_of(&ExponentVector::from_i64(&[1 << k])))
        .collect();
    ensure(w == expected, || format!("closed form weights {w:?}"))?;

    let (ga, _) = builtins::tower_example(2, cutoff).map_err(|e| e.to_string())?;
    let pres = ga.presentation();
    let w: Vec<Value> = (0..4).map(|k| ga.weight(&pres.generator(k))).collect();
    ensure(w == expected, || format!("realized weights {w:?}"))?;

    let basis = generate_subalgebra(ga.algebra(), &lie::box_components(&ga, 1), cutoff);
    let c = classify(ga.algebra(), &basis);
    let want: BTreeMap<u64, usize> = builtins::lower_series_weights(2, 8)
        .into_iter()
        .filter(|&w| w <= cutoff)
        .map(|w| (w, 1))
        .collect();
    ensure(c.abelian && c.exponent_p, || {
        format!("abelian={}, exponent_p={}", c.abelian, c.exponent_p)
    })?;
    ensure(c.dims == want, || format!("dims {:?}, expected {want:?}", c.dims))?;
    Ok("weights 1,3,7,15; abelian, exponent p, one dimension at each w_n <= 20".into())
}

fn c4_cyclic_p_squared() -> Outcome {
    for (p, weights) in [(2u32, vec![1u64, 3]), (3, vec![1, 4])] {
        let pres = builtins::cyclic_p_power(p, 2);
        let sched = finite_pgroup_schedule(&pres).map_err(|e| e.to_string())?;
        ensure(sched.generator_weights() == weights, || {
            format!("p={p}: schedule {:?}", sched.generator_weights())
        })?;
        let ga = Arc::new(finite(p, 2, 12));
        PSeriesSpec::from_algebra(Arc::clone(&ga))
            .check_axioms(500, 40 + p as u64)
            .map_err(|e| e.to_string())?;
        let basis = generate_subalgebra(ga.algebra(), &lie::box_components(&ga, 2), 12);
        let c = classify(ga.algebra(), &basis);
        let want: BTreeMap<u64, usize> = weights.iter().map(|&w| (w, 1)).collect();
        ensure(c.abelian && c.exponent_p && c.dims == want, || {
            format!(
                "p={p}: abelian={}, exponent_p={}, dims {:?}",
                c.abelian, c.exponent_p, c.dims
            )
        })?;
    }
    Ok("C4 schedule (1,3), C9 schedule (1,4); axioms hold; L_p abelian of exponent p, dimension 2".into())
}

fn c5_heisenberg() -> Outcome {
    let pres = builtins::heisenberg(2);
    let (ga, log) = build_group_algebra(&pres, &gen_weights(&[1, 1, 3]), 12).map_err(|e| e.to_string())?;
    ensure(log.steps.len() == 3, || format!("{} steps logged", log.steps.len()))?;
    for (i, step) in log.steps.iter().enumerate() {
        ensure(step.margins.len() == 2 * i, || {
            format!("step {i} logged {} margins", step.margins.len())
        })?;
        ensure(step.margins.iter().all(|m| m.margin.is_none_or(|x| x > 0)), || {
            format!("nonpositive margin in {step}")
        })?;
    }
    let r = ga
        .algebra()
        .check_graded_polynomial(500, 55)
        .map_err(|e| e.to_string())?;
    ensure(r.domain_checked, || "domain property not checked".into())?;
    let basis = generate_subalgebra(ga.algebra(), &lie::generator_components(&ga), 12);
    let c = classify(ga.algebra(), &basis);
    let h = pres.hirsch_number();
    ensure(c.free_abelian && c.rank_estimate == 3 && h == 3, || {
        format!(
            "free_abelian={}, rank_estimate={}, hirsch={h}",
            c.free_abelian, c.rank_estimate
        )
    })?;
    Ok(format!(
        "margins logged for all 3 steps, graded check on 500 samples, free abelian of rank 3 (product checks {})",
        r.product_checks
    ))
}

fn c6_associativity() -> Outcome {
    let ga = heisenberg(2, 10);
    let (alg, pres) = (ga.algebra(), ga.presentation());
    let mut rng = sample::rng(6);
    for _ in 0..200 {
        let g: Vec<ExponentVector> = (0..3).map(|_| pres.random_element(&mut rng, 4)).collect();
        let [x, y, z] = [0, 1, 2].map(|i| ga.embed(&g[i]));
        let l = alg.mul(&alg.mul(&x, &y).unwrap(), &z).unwrap();
        let r = alg.mul(&x, &alg.mul(&y, &z).unwrap()).unwrap();
        ensure(l == r, || format!("(xy)z != x(yz) for {:?}", g))?;
        let inv = alg.mul(&x, &ga.embed(&pres.inverse(&g[0]))).unwrap();
        ensure(inv == alg.one(), || format!("embed(g) embed(g^-1) = {inv}"))?;
    }
    Ok("200 triples associative, 200 inverses exact".into())
}

fn c7_pseudovaluation() -> Outcome {
    let mut algebras: Vec<(String, FilteredAlgebra)> = vec![
        (
            "Z".into(),
            build_group_algebra(&builtins::free_abelian(2, 1), &gen_weights(&[1]), 16)
                .unwrap()
                .0,
        ),
        (
            "Z^2 (1,2) p=3".into(),
            build_group_algebra(&builtins::free_abelian(3, 2), &gen_weights(&[1, 2]), 16)
                .unwrap()
                .0,
        ),
        ("heisenberg p=2".into(), heisenberg(2, 12)),
        ("heisenberg p=3".into(), heisenberg(3, 12)),
        ("units p=2".into(), builtins::units_example(2, 20).unwrap()),
        ("units p=3".into(), builtins::units_example(3, 20).unwrap()),
        ("Z x Z (1,5)".into(), z_times_z(16).2),
        ("tower p=2".into(), builtins::tower_example(2, 20).unwrap().0),
        ("C4".into(), finite(2, 2, 12)),
        ("C9".into(), finite(3, 2, 12)),
        ("C2 x C2".into(), klein(12)),
    ]
    .into_iter()
    .map(|(n, ga)| (n, ga.algebra().clone()))
    .collect();
    // the intermediate algebras of the heisenberg climb
    let pres = builtins::heisenberg(2);
    let mut tower = Tower::trivial(2, 12).unwrap();
    for (i, w) in [(2usize, 3u64), (1, 1)] {
        tower = extend_infinite_cyclic(&tower, &step_for_generator(&pres, i, w))
            .unwrap()
            .0;
        algebras.push((format!("heisenberg level {}", i + 1), tower.algebra().clone()));
    }

    let (mut equal, mut capped) = (0, 0);
    for (k, (name, alg)) in algebras.iter().enumerate() {
        let domain = !alg.has_nilpotent_caps();
        if domain {
            equal += 1;
        } else {
            capped += 1;
        }
        let d = alg.cutoff();
        let mut rng = sample::rng(700 + k as u64);
        for _ in 0..500 {
            let x = alg.random_element(&mut rng, 4, (d / 2).max(1));
            let y = alg.random_element(&mut rng, 4, (d / 2).max(1));
            let (vx, vy) = (alg.value(&x), alg.value(&y));
            let vs = alg.value(&alg.add(&x, &y).unwrap());
            ensure(vs >= vx.min(vy), || {
                format!("{name}: value(x+y) = {vs} < min({vx}, {vy})")
            })?;
            let vp = alg.value(&alg.mul(&x, &y).unwrap());
            let sum = vx.plus(vy);
            if sum <= Value::Finite(d) {
                let ok = if domain { vp == sum } else { vp >= sum };
                ensure(ok, || format!("{name}: value(xy) = {vp}, value(x) + value(y) = {sum}"))?;
            } else {
                ensure(vp == Value::Infinite, || {
                    format!("{name}: product above cutoff has value {vp}")
                })?;
            }
        }
    }
    Ok(format!(
        "{} algebras x 500 pairs; product equality on {equal} algebras without nilpotent variables, inequality on {capped} finite ones",
        algebras.len()
    ))
}

fn c8_theta_expansion() -> Outcome {
    let mut steps = 0;
    for (p, pres, weights) in [
        (2u32, builtins::heisenberg(2), vec![1u64, 1, 3]),
        (3, builtins::heisenberg(3), vec![1, 1, 3]),
        (2, builtins::free_abelian(2, 2), vec![1, 5]),
    ] {
        let cutoff = 12;
        let mut tower = Tower::trivial(p, cutoff).unwrap();
        for i in (0..pres.len()).rev() {
            let k = weights[i];
            let (next, _) =
                extend_infinite_cyclic(&tower, &step_for_generator(&pres, i, k)).map_err(|e| e.to_string())?;
            let (old, new) = (tower.algebra(), next.algebra());
            let mut rng = sample::rng(800 + steps);
            for _ in 0..100 {
                let count = rng.gen_range(1..=4);
                let lams: Vec<_> = (0..count)
                    .map(|_| {
                        if old.is_empty() || rng.gen_bool(0.2) {
                            old.scalar(rng.gen_range(0..p as i64))
                        } else {
                            old.random_element(&mut rng, 3, cutoff / 2)
                        }
                    })
                    .collect();
                let x = theta_expansion(new, old, &lams).map_err(|e| e.to_string())?;
                let expected = lams
                    .iter()
                    .enumerate()
                    .map(|(i, l)| old.value(l).plus(Value::Finite(k * i as u64)))
                    .min()
                    .unwrap()
                    .capped(cutoff);
                let got = new.value(&x);
                ensure(got == expected, || {
                    format!("value {got}, expected {expected} at step {}", steps + 1)
                })?;
            }
            tower = next;
            steps += 1;
        }
    }
    Ok(format!("{steps} infinite cyclic extensions x 100 samples"))
}

/// Span of the weighted products of `(h - 1)` factors in `F_2[C_8 x C_8]`,
/// with elements as bitmasks over the 64 group elements.
mod quillen {
    const N: u32 = 8;

    fn index(a: u32, b: u32) -> u32 {
        (a % N) * N + (b % N)
    }

    /// `x (g - 1)` for `g = (a, b)`.
    fn times_h_minus_one(x: u64, a: u32, b: u32) -> u64 {
        let mut shifted = 0u64;
        for i in 0..N {
            for j in 0..N {
                if x >> index(i, j) & 1 == 1 {
                    shifted |= 1 << index(i + a, j + b);
                }
            }
        }
        shifted ^ x
    }

    /// Jennings weight of `(a, b)` with unit generator weights.
    fn weight(a: u32, b: u32) -> u32 {
        [a, b]
            .iter()
            .filter(|&&e| e != 0)
            .map(|&e| 1 << e.trailing_zeros())
            .min()
            .unwrap_or(u32::MAX)
    }

    fn reduce_into(basis: &mut Vec<u64>, mut v: u64) -> bool {
        for &r in basis.iter() {
            v = v.min(v ^ r);
        }
        if v == 0 {
            return false;
        }
        basis.push(v);
        basis.sort_unstable_by(|a, b| b.cmp(a));
        true
    }

    /// Dimensions of `F_0 ⊇ F_1 ⊇ ... ⊇ F_top`.
    pub fn filtration_dims(top: u32) -> Vec<usize> {
        let everything: Vec<u64> = (0..N * N).map(|i| 1u64 << i).collect();
        let mut levels: Vec<Vec<u64>> = vec![everything];
        for n in 1..=top {
            let mut basis = Vec::new();
            for a in 0..N {
                for b in 0..N {
                    let w = weight(a, b);
                    if w == u32::MAX {
                        continue;
                    }
                    let below = &levels[n.saturating_sub(w) as usize];
                    for &f in below {
                        reduce_into(&mut basis, times_h_minus_one(f, a, b));
                    }
                }
            }
            levels.push(basis);
        }
        levels.iter().map(Vec::len).collect()
    }
}

fn c9_quillen() -> Outcome {
    let dims = quillen::filtration_dims(7);
    let ga = build_group_algebra(&builtins::free_abelian(2, 2), &gen_weights(&[1, 1]), 12)
        .unwrap()
        .0;
    let poly = FilteredAlgebra::polynomial(2, &[1, 1], 12).unwrap();
    for n in 1..=6usize {
        let brute = dims[n] - dims[n + 1];
        let built = ga.algebra().standard_monomials(n as u64).len();
        let plain = poly.standard_monomials(n as u64).len();
        ensure(brute == built && built == plain, || {
            format!("degree {n}: brute force {brute}, standard monomials {built}")
        })?;
    }
    let per: Vec<usize> = (1..=6).map(|n| dims[n] - dims[n + 1]).collect();
    Ok(format!("degrees 1..6 dimensions {per:?}"))
}

fn route_scenarios() -> Vec<(&'static str, GroupAlgebra)> {
    vec![
        ("heisenberg p=2", heisenberg(2, 12)),
        ("heisenberg p=3", heisenberg(3, 12)),
        ("units p=2", builtins::units_example(2, 20).unwrap()),
        ("units p=3", builtins::units_example(3, 20).unwrap()),
        ("tower p=2", builtins::tower_example(2, 20).unwrap().0),
        ("C4", finite(2, 2, 12)),
        ("C9", finite(3, 2, 12)),
        ("Z x Z", z_times_z(16).2),
    ]
}

fn c10_routes() -> Outcome {
    let scenarios = route_scenarios();
    let (mut brackets, mut powers) = (0, 0);
    for (k, (name, ga)) in scenarios.iter().enumerate() {
        let (alg, pres) = (ga.algebra(), ga.presentation());
        let d = alg.cutoff();
        let mut rng = sample::rng(1000 + k as u64);
        let mut inputs = 0;
        while inputs < 300 {
            let g = pres.random_element(&mut rng, 3);
            let h = pres.random_element(&mut rng, 3);
            let (Ok(x), Ok(y)) = (lie::hom_component(ga, &g), lie::hom_component(ga, &h)) else {
                continue;
            };
            inputs += 1;
            if x.degree() + y.degree() <= d {
                let a = lie::bracket_group(ga, &x, &y).map_err(|e| e.to_string())?;
                let b = lie::bracket_ring(alg, &x, &y).map_err(|e| e.to_string())?;
                ensure(a.body() == b.body(), || {
                    format!("{name}: bracket routes differ: {a} vs {b}")
                })?;
                brackets += 1;
            }
            if x.degree() * alg.prime() as u64 <= d {
                let a = lie::p_power_group(ga, &x).map_err(|e| e.to_string())?;
                let b = lie::p_power_ring(alg, &x).map_err(|e| e.to_string())?;
                ensure(a.body() == b.body(), || {
                    format!("{name}: p-power routes differ: {a} vs {b}")
                })?;
                powers += 1;
            }
        }
    }
    Ok(format!(
        "{} scenarios x 300 inputs; {brackets} brackets and {powers} p-th powers agree",
        scenarios.len()
    ))
}

fn c11_direct_product() -> Outcome {
    let cutoff = 16;
    let (g1, g2, prod) = z_times_z(cutoff);
    let mut rng = sample::rng(11);
    for _ in 0..200 {
        let a = rng.gen_range(-8i64..=8);
        let b = rng.gen_range(-8i64..=8);
        let w = prod.weight(&prod.element(&[a, b]));
        let expected = g1.weight(&g1.element(&[a])).min(g2.weight(&g2.element(&[b])));
        ensure(w == expected, || format!("({a}, {b}): weight {w}, expected {expected}"))?;
    }
    let dims = |ga: &GroupAlgebra| generate_subalgebra(ga.algebra(), &lie::generator_components(ga), cutoff).dims();
    let (d1, d2, dp) = (dims(&g1), dims(&g2), dims(&prod));
    for d in 1..=cutoff {
        let get = |m: &BTreeMap<u64, usize>| m.get(&d).copied().unwrap_or(0);
        ensure(get(&dp) == get(&d1) + get(&d2), || {
            format!("degree {d}: {} != {} + {}", get(&dp), get(&d1), get(&d2))
        })?;
    }
    Ok(format!(
        "200 weights follow the min rule; dimensions add in degrees 1..{cutoff}"
    ))
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let secs = |s| Some(Duration::from_secs(s));
    let criteria = [
        Criterion {
            id: 1,
            name: "unit components",
            limit: secs(5),
            run: c1_units_components,
        },
        Criterion {
            id: 2,
            name: "unit subalgebra classification",
            limit: secs(5),
            run: c2_units_classification,
        },
        Criterion {
            id: 3,
            name: "lower p-series tower",
            limit: secs(1),
            run: c3_tower,
        },
        Criterion {
            id: 4,
            name: "cyclic groups of order p^2",
            limit: secs(1),
            run: c4_cyclic_p_squared,
        },
        Criterion {
            id: 5,
            name: "heisenberg group",
            limit: secs(30),
            run: c5_heisenberg,
        },
        Criterion {
            id: 6,
            name: "associativity and inverses",
            limit: secs(10),
            run: c6_associativity,
        },
        Criterion {
            id: 7,
            name: "pseudovaluation laws",
            limit: None,
            run: c7_pseudovaluation,
        },
        Criterion {
            id: 8,
            name: "theta expansion values",
            limit: None,
            run: c8_theta_expansion,
        },
        Criterion {
            id: 9,
            name: "dimension oracle",
            limit: secs(20),
            run: c9_quillen,
        },
        Criterion {
            id: 10,
            name: "route agreement",
            limit: None,
            run: c10_routes,
        },
        Criterion {
            id: 11,
            name: "direct product",
            limit: None,
            run: c11_direct_product,
        },
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let result = match (result, c.limit) {
            (Ok(_), Some(limit)) if elapsed > limit => Err(format!("took {elapsed:.2?}, limit {limit:?}")),
            (r, _) => r,
        };
        let (tag, detail) = match &result {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("{tag} {:>2} {}: {detail} [{elapsed:.2?}]", c.id, c.name);
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

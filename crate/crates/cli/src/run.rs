//! Turning a scenario into a report.

use std::sync::Arc;

use num_bigint::BigInt;
use pseries_core::builder::{layered_default_schedule, BuildLog, StepLog};
use pseries_core::lie::{self, classify, generate_subalgebra, HomogeneousElement};
use pseries_core::{
    build_group_algebra, builtins, finite_pgroup_schedule, sample, BuildError, ExponentVector, GroupAlgebra,
    PSeriesSpec, PcPresentation, PcPresentationBuilder, RelativeOrder, WeightSchedule,
};
use thiserror::Error;

use crate::report::*;
use crate::scenario::{Check, ExplicitGroup, GroupSpec, NamedGroup, NamedWord, Scenario, ScheduleSpec, SeedSpec};

/// Problems with the scenario itself, as opposed to failed checks.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RunError {
    #[error("invalid presentation: {0}")]
    Presentation(String),
    #[error("invalid schedule: {0}")]
    Schedule(String),
}

fn describe(spec: &GroupSpec, p: u32) -> String {
    match spec {
        GroupSpec::Named(NamedGroup::FreeAbelian(1)) => "Z".into(),
        GroupSpec::Named(NamedGroup::FreeAbelian(k)) => format!("Z^{k}"),
        GroupSpec::Named(NamedGroup::Heisenberg) => "heisenberg".into(),
        GroupSpec::Named(NamedGroup::Cyclic(m)) => format!("C_{{{p}^{m}}}"),
        GroupSpec::Named(NamedGroup::Tower) => "Z with its lower p-series (tower)".into(),
        GroupSpec::Named(NamedGroup::Units) => "Z^2 as units 1+t, 1+t+t^p".into(),
        GroupSpec::Explicit(_) => "explicit presentation".into(),
    }
}

fn explicit_presentation(p: u32, g: &ExplicitGroup) -> Result<PcPresentation, RunError> {
    let index = |name: &str| {
        g.generators
            .iter()
            .position(|x| x == name)
            .expect("validated by the parser")
    };
    let word =
        |w: &NamedWord| -> Vec<(usize, BigInt)> { w.iter().map(|(n, e)| (index(n), BigInt::from(*e))).collect() };
    let mut b = PcPresentationBuilder::new(p);
    for (name, order) in g.generators.iter().zip(&g.orders) {
        let rel = match order {
            None => RelativeOrder::Infinite,
            Some(n) => {
                let (mut n, mut m) = (*n, 0u32);
                while n > 1 && n % p as u64 == 0 {
                    n /= p as u64;
                    m += 1;
                }
                if n != 1 || m == 0 {
                    return Err(RunError::Presentation(format!(
                        "relative order of {name} is not a positive power of {p}"
                    )));
                }
                RelativeOrder::PrimePower(m)
            }
        };
        b = b.generator(name.clone(), rel);
    }
    for (x, w) in &g.powers {
        b = b.power(index(x), word(w));
    }
    for (x, y, w) in &g.conjugates {
        b = b.conjugate(index(x), index(y), word(w));
    }
    for (x, y, w) in &g.inverse_conjugates {
        b = b.conjugate_inverse(index(x), index(y), word(w));
    }
    b.build().map_err(|e| RunError::Presentation(e.to_string()))
}

fn presentation(s: &Scenario) -> Result<PcPresentation, RunError> {
    let p = s.prime;
    Ok(match &s.group {
        GroupSpec::Named(NamedGroup::FreeAbelian(k)) => builtins::free_abelian(p, *k),
        GroupSpec::Named(NamedGroup::Heisenberg) => builtins::heisenberg(p),
        GroupSpec::Named(NamedGroup::Cyclic(m)) => builtins::cyclic_p_power(p, *m as usize),
        GroupSpec::Named(NamedGroup::Tower) => builtins::cyclic_tower(p, builtins::tower_levels(p, s.cutoff)),
        GroupSpec::Named(NamedGroup::Units) => builtins::free_abelian_uv(p),
        GroupSpec::Explicit(g) => explicit_presentation(p, g)?,
    })
}

fn schedule(s: &Scenario, pres: &PcPresentation) -> Result<Option<WeightSchedule>, RunError> {
    let fail = |e: BuildError| RunError::Schedule(e.to_string());
    let realized = matches!(s.group, GroupSpec::Named(NamedGroup::Tower | NamedGroup::Units));
    match (&s.schedule, realized) {
        (ScheduleSpec::Builtin, true) => Ok(None),
        (ScheduleSpec::Builtin, false) => Err(RunError::Schedule("this group needs a [schedule]".into())),
        (_, true) => Err(RunError::Schedule("this group comes with its own weights".into())),
        (ScheduleSpec::Unit, false) => WeightSchedule::from_generator_weights(vec![1; pres.len()])
            .map(Some)
            .map_err(fail),
        (ScheduleSpec::Default3Powers(k), false) => layered_default_schedule(pres, *k).map(Some).map_err(fail),
        (ScheduleSpec::FinitePGroup, false) => finite_pgroup_schedule(pres).map(Some).map_err(fail),
        (ScheduleSpec::Explicit(entries), false) => {
            let mut weights = vec![None; pres.len()];
            for (name, w) in entries {
                match pres.generator_index(name) {
                    Some(i) if weights[i].is_none() => weights[i] = Some(*w),
                    Some(_) => return Err(RunError::Schedule(format!("{name} has two weights"))),
                    None => return Err(RunError::Schedule(format!("unknown generator {name}"))),
                }
            }
            let weights = weights
                .into_iter()
                .enumerate()
                .map(|(i, w)| w.ok_or_else(|| RunError::Schedule(format!("no weight for {}", pres.name(i)))))
                .collect::<Result<Vec<_>, _>>()?;
            WeightSchedule::from_generator_weights(weights).map(Some).map_err(fail)
        }
    }
}

fn realize(
    s: &Scenario,
    pres: &PcPresentation,
    sched: Option<&WeightSchedule>,
) -> Result<(GroupAlgebra, BuildLog), BuildError> {
    match (&s.group, sched) {
        (GroupSpec::Named(NamedGroup::Tower), _) => builtins::tower_example(s.prime, s.cutoff),
        (GroupSpec::Named(NamedGroup::Units), _) => {
            Ok((builtins::units_example(s.prime, s.cutoff)?, BuildLog::default()))
        }
        (_, Some(w)) => build_group_algebra(pres, w, s.cutoff),
        (_, None) => unreachable!("schedule resolved for every other group"),
    }
}

fn step_info(step: &StepLog) -> StepInfo {
    StepInfo {
        generator: step.generator.clone(),
        kind: step.kind.to_string(),
        variable: step.variable,
        weight: step.weight,
        regime: step.regime.map(|r| r.to_string()),
        power_value: step.power_value.and_then(|v| v.finite()),
        margins: step
            .margins
            .iter()
            .map(|m| MarginInfo {
                target: m.target.clone(),
                direction: m.direction.to_string(),
                margin: m.margin,
            })
            .collect(),
        line: step.to_string(),
    }
}

/// `a^2 b^-1`, with parentheses around names that contain `^`.
pub fn element_text(pres: &PcPresentation, g: &ExponentVector) -> String {
    let parts: Vec<String> = g
        .exponents()
        .iter()
        .enumerate()
        .filter(|(_, e)| *e != &BigInt::from(0))
        .map(|(i, e)| {
            let n = pres.name(i);
            if n.contains('^') {
                format!("({n})^{e}")
            } else {
                format!("{n}^{e}")
            }
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join(" ")
    }
}

fn component_row(ga: &GroupAlgebra, g: &ExponentVector) -> ComponentRow {
    let element = element_text(ga.presentation(), g);
    match lie::hom_component(ga, g) {
        Ok(h) => ComponentRow {
            element,
            degree: Some(h.degree()),
            body: Some(h.body().to_string()),
        },
        Err(_) => ComponentRow {
            element,
            degree: None,
            body: None,
        },
    }
}

fn components(s: &Scenario, ga: &GroupAlgebra) -> Vec<ComponentRow> {
    let pres = ga.presentation();
    let mut rows: Vec<ComponentRow> = (0..pres.len()).map(|i| component_row(ga, &pres.generator(i))).collect();
    if s.group == GroupSpec::Named(NamedGroup::Units) {
        for n in 1..=6 {
            rows.push(component_row(ga, &ga.element(&[n, -n])));
        }
    }
    rows
}

fn lie_seeds(ga: &GroupAlgebra, seeds: SeedSpec) -> Vec<HomogeneousElement> {
    match seeds {
        SeedSpec::Generators => lie::generator_components(ga),
        SeedSpec::Box(b) => lie::box_components(ga, b),
    }
}

fn lie_info(s: &Scenario, ga: &GroupAlgebra) -> LieInfo {
    let alg = ga.algebra();
    let basis = generate_subalgebra(alg, &lie_seeds(ga, s.seeds), s.cutoff);
    let c = classify(alg, &basis);
    LieInfo {
        seeds: match s.seeds {
            SeedSpec::Generators => "generators".into(),
            SeedSpec::Box(b) => format!("box {b}"),
        },
        dimensions: c
            .dims
            .iter()
            .map(|(&degree, &dim)| DimensionRow { degree, dim })
            .collect(),
        basis: basis
            .degrees()
            .map(|d| BasisRow {
                degree: d,
                rows: basis.rows(d).iter().map(|r| r.to_string()).collect(),
            })
            .collect(),
        classification: ClassificationInfo {
            up_to_degree: c.cutoff,
            abelian: c.abelian,
            exponent_p: c.exponent_p,
            free_abelian: c.free_abelian,
            rank_estimate: c.rank_estimate,
            hirsch_number: ga.presentation().hirsch_number(),
        },
    }
}

fn margin_text(m: Option<i64>) -> String {
    m.map_or("none".into(), |x| x.to_string())
}

fn associativity(ga: &GroupAlgebra, samples: usize, seed: u64) -> Result<String, String> {
    let (alg, pres) = (ga.algebra(), ga.presentation());
    let mut rng = sample::rng(seed);
    for _ in 0..samples {
        let g: Vec<ExponentVector> = (0..3).map(|_| pres.random_element(&mut rng, 4)).collect();
        let [x, y, z] = [0, 1, 2].map(|i| ga.embed(&g[i]));
        let mul = |a, b| alg.mul(a, b).map_err(|e| e.to_string());
        let (xy, yz) = (mul(&x, &y)?, mul(&y, &z)?);
        if mul(&xy, &z)? != mul(&x, &yz)? {
            let w: Vec<String> = g.iter().map(|e| element_text(pres, e)).collect();
            return Err(format!("(xy)z != x(yz) for x, y, z = {}", w.join(", ")));
        }
        if mul(&x, &ga.embed(&pres.inverse(&g[0])))? != alg.one() {
            return Err(format!(
                "embed(g) embed(g^-1) != 1 for g = {}",
                element_text(pres, &g[0])
            ));
        }
    }
    Ok(format!("samples={samples}"))
}

fn routes(ga: &GroupAlgebra, samples: usize, seed: u64) -> Result<String, String> {
    let (alg, pres) = (ga.algebra(), ga.presentation());
    let d = alg.cutoff();
    let p = alg.prime() as u64;
    let mut rng = sample::rng(seed);
    let (mut inputs, mut attempts, mut brackets, mut powers) = (0, 0, 0, 0);
    while inputs < samples && attempts < 20 * samples.max(1) {
        attempts += 1;
        let g = pres.random_element(&mut rng, 3);
        let h = pres.random_element(&mut rng, 3);
        let (Ok(x), Ok(y)) = (lie::hom_component(ga, &g), lie::hom_component(ga, &h)) else {
            continue;
        };
        inputs += 1;
        let witness = || format!("g = {}, h = {}", element_text(pres, &g), element_text(pres, &h));
        if x.degree() + y.degree() <= d {
            let a = lie::bracket_group(ga, &x, &y).map_err(|e| e.to_string())?;
            let b = lie::bracket_ring(alg, &x, &y).map_err(|e| e.to_string())?;
            if a.body() != b.body() {
                return Err(format!("bracket routes differ ({a} vs {b}) at {}", witness()));
            }
            brackets += 1;
        }
        if x.degree() * p <= d {
            let a = lie::p_power_group(ga, &x).map_err(|e| e.to_string())?;
            let b = lie::p_power_ring(alg, &x).map_err(|e| e.to_string())?;
            if a.body() != b.body() {
                return Err(format!("p-th power routes differ ({a} vs {b}) at {}", witness()));
            }
            powers += 1;
        }
    }
    Ok(format!("inputs={inputs} brackets={brackets} p_powers={powers}"))
}

fn expect<T: PartialEq + std::fmt::Display>(want: T, got: T) -> Result<String, String> {
    if want == got {
        Ok(format!("{got}"))
    } else {
        Err(format!("expected {want}, found {got}"))
    }
}

fn run_check(check: &Check, s: &Scenario, ga: &Arc<GroupAlgebra>, lie: &LieInfo) -> CheckResult {
    let c = &lie.classification;
    let outcome = match *check {
        Check::GradedPolynomial(n) => ga
            .algebra()
            .check_graded_polynomial(n, s.seed)
            .map(|r| {
                format!(
                    "samples={} product_checks={} domain={} min_commutator_margin={}",
                    r.samples,
                    r.product_checks,
                    r.domain_checked,
                    margin_text(r.min_commutator_margin)
                )
            })
            .map_err(|e| e.to_string()),
        Check::Axioms(n) => PSeriesSpec::from_algebra(Arc::clone(ga))
            .check_axioms(n, s.seed)
            .map(|r| {
                format!(
                    "samples={} commutator_vacuous={} min_commutator_margin={} min_power_margin={}",
                    r.samples,
                    r.commutator_vacuous,
                    margin_text(r.min_commutator_margin),
                    margin_text(r.min_power_margin)
                )
            })
            .map_err(|e| e.to_string()),
        Check::Associativity(n) => associativity(ga, n, s.seed),
        Check::Routes(n) => routes(ga, n, s.seed),
        Check::Abelian(b) => expect(b, c.abelian),
        Check::ExponentP(b) => expect(b, c.exponent_p),
        Check::FreeAbelian(b) => expect(b, c.free_abelian),
        Check::Rank(r) => expect(r, c.rank_estimate),
    };
    let (passed, detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    CheckResult {
        name: check.name().to_string(),
        passed,
        detail,
    }
}

/// Build, verify and summarize. Only malformed scenarios are errors; a
/// failed build or check is recorded in the report.
pub fn run(s: &Scenario) -> Result<Report, RunError> {
    let pres = presentation(s)?;
    let sched = schedule(s, &pres)?;
    let group = GroupInfo {
        description: describe(&s.group, s.prime),
        generators: pres.names().to_vec(),
        relative_orders: (0..pres.len())
            .map(|i| pres.order(i).map_or("inf".to_string(), |o| o.to_string()))
            .collect(),
        hirsch_number: pres.hirsch_number(),
    };
    let schedule = sched.as_ref().map(|w| {
        (0..pres.len())
            .map(|i| WeightEntry {
                generator: pres.name(i).to_string(),
                weight: w.for_generator(i),
            })
            .collect()
    });
    let mut report = Report {
        scenario: s.name.clone(),
        prime: s.prime,
        cutoff: s.cutoff,
        seed: s.seed,
        group,
        schedule,
        build: BuildInfo {
            ok: false,
            error: None,
            steps: Vec::new(),
        },
        components: Vec::new(),
        lie: None,
        checks: Vec::new(),
        passed: false,
    };
    let (ga, log) = match realize(s, &pres, sched.as_ref()) {
        Ok(x) => x,
        Err(e) => {
            report.build.error = Some(e.to_string());
            return Ok(report);
        }
    };
    report.build.ok = true;
    report.build.steps = log.steps.iter().map(step_info).collect();
    let ga = Arc::new(ga);
    report.components = components(s, &ga);
    let lie = lie_info(s, &ga);
    report.checks = s.checks.iter().map(|c| run_check(c, s, &ga, &lie)).collect();
    report.lie = Some(lie);
    report.passed = report.checks.iter().all(|c| c.passed);
    Ok(report)
}

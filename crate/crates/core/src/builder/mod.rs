//! Filtered algebras of polycyclic groups, built one cyclic extension at a
//! time from the bottom of the series upwards.
//!
//! A [`Tower`] realizes the subgroup `G_{i+1} = <g_{i+1}, ..., g_n>` inside a
//! truncated algebra in which each generator maps to `1 + t` for its own
//! variable `t`. Extending by `s = g_i` appends the variable `θ = s - 1` of
//! weight `k` and the rewrite rules
//!
//! * `θ x = x θ + (s x s^{-1} - x)(1 + θ)` for every deeper variable `x`,
//! * `θ^{p^m} = s^{p^m} - 1` when `s` has relative order `p^m`.
//!
//! The first rule is admissible when conjugation by `s` moves every deeper
//! generator `g` by more than `value(g - 1) + k` (the centralizing margin).
//! The second splits into two regimes: `value(s^{p^m} - 1) = k p^m`, where
//! `θ` stays algebraic in `gr`, and `value(s^{p^m} - 1) > k p^m`, where its
//! leading part is nilpotent. Anything lower is rejected.

mod product;
mod schedule;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

pub use product::{direct_product, direct_product_groups};
pub use schedule::{
    commutator_layers, default_schedule, finite_pgroup_schedule, layered_default_schedule, WeightSchedule,
};

use crate::algebra::{
    to_raw_element, AlgebraError, FilteredAlgebra, FilteredElement, GeneratorMap, GroupAlgebra, RawTerms,
    WeightedVariable,
};
use crate::pcgroup::{ExponentVector, PcError, PcPresentation, RelativeOrder};
use crate::value::Value;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("variable {variable} has weight 0")]
    ZeroWeight { variable: usize },
    #[error("k = {k} is smaller than the number of layers ({layers})")]
    KTooSmall { k: u32, layers: usize },
    #[error("weight overflows u64")]
    WeightOverflow,
    #[error(
        "layered doubling violated: t{} has weight {deeper_weight}, not above twice the weight {shallower_weight} of t{}",
        deeper + 1,
        shallower + 1
    )]
    DoublingViolated {
        deeper: usize,
        deeper_weight: u64,
        shallower: usize,
        shallower_weight: u64,
    },
    #[error("not a finite p-group: generator {generator} has infinite order")]
    NotAFinitePGroup { generator: String },
    #[error("relative order of {generator} is p^{m}; refine the series to factors of order p")]
    RelativeOrderNotPrime { generator: String, m: u32 },
    #[error("schedule has {got} weights for {expected} generators")]
    ScheduleLength { expected: usize, got: usize },
    #[error(
        "centralizing condition fails for {generator} acting on {target} ({direction}): value {value} is not above {bound}"
    )]
    CentralizingConditionViolated {
        generator: String,
        target: String,
        direction: &'static str,
        value: Value,
        bound: Value,
    },
    #[error("value of {generator}^(p^m) - 1 is {value}, below k p^m = {expected}")]
    PowerValueMismatch {
        generator: String,
        value: Value,
        expected: u64,
    },
    #[error("extension step for {generator} is malformed: {reason}")]
    MalformedStep { generator: String, reason: String },
    #[error("prime mismatch: {left} vs {right}")]
    PrimeMismatch { left: u32, right: u32 },
    #[error("cutoff mismatch: {left} vs {right}")]
    CutoffMismatch { left: u64, right: u64 },
    #[error("extension by generator {level} ({generator}) failed: {source}")]
    StepFailed {
        level: usize,
        generator: String,
        #[source]
        source: Box<BuildError>,
    },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Group(#[from] PcError),
}

/// Kind of a cyclic extension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtensionKind {
    InfiniteCyclic,
    /// `s^{p^m} = target`, an element of the tower.
    CyclicPPower {
        m: u32,
        target: ExponentVector,
    },
}

/// Data of one extension of a tower by a new top generator `s`.
///
/// The action is given by group elements: `conjugates[q] = s^{-1} g_q s`
/// and `inverse_conjugates[q] = s g_q s^{-1}` for each tower generator
/// `g_q`, as exponent vectors over the tower.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionStep {
    pub name: String,
    pub weight: u64,
    pub kind: ExtensionKind,
    pub conjugates: Vec<ExponentVector>,
    pub inverse_conjugates: Vec<ExponentVector>,
}

impl ExtensionStep {
    /// Step adding a generator that commutes with the whole tower.
    pub fn central(tower: &Tower, name: impl Into<String>, weight: u64, kind: ExtensionKind) -> Self {
        let fixed: Vec<_> = (0..tower.len()).map(|q| tower.generator(q)).collect();
        Self {
            name: name.into(),
            weight,
            kind,
            conjugates: fixed.clone(),
            inverse_conjugates: fixed,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// `value(s^{p^m} - 1) = k p^m`.
    Exact,
    /// `value(s^{p^m} - 1) > k p^m`; the leading part of `θ` is nilpotent.
    Raised,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::Exact => "a",
            Regime::Raised => "b",
        })
    }
}

/// Centralizing margin of one generator under one conjugation direction:
/// `value(c - g) - value(g - 1) - k`, `None` when `c = g` up to the cutoff.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Margin {
    pub target: String,
    pub direction: &'static str,
    pub margin: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepLog {
    pub generator: String,
    pub kind: &'static str,
    /// 1-based index of the new variable.
    pub variable: usize,
    pub weight: u64,
    pub regime: Option<Regime>,
    pub power_value: Option<Value>,
    pub margins: Vec<Margin>,
}

impl StepLog {
    /// Least finite margin, if any.
    pub fn min_margin(&self) -> Option<i64> {
        self.margins.iter().filter_map(|m| m.margin).min()
    }
}

impl fmt::Display for StepLog {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} -> t{} weight={}",
            self.kind, self.generator, self.variable, self.weight
        )?;
        if let (Some(r), Some(v)) = (self.regime, self.power_value) {
            write!(f, " regime=({r}) power_value={v}")?;
        }
        f.write_str(" margins=[")?;
        for (i, m) in self.margins.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            match m.margin {
                Some(x) => write!(f, "{}:{}={}", m.target, m.direction, x)?,
                None => write!(f, "{}:{}=inf", m.target, m.direction)?,
            }
        }
        f.write_str("]")
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BuildLog {
    pub steps: Vec<StepLog>,
}

impl fmt::Display for BuildLog {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}

/// A subgroup `<g_{i+1}, ..., g_n>` realized in a truncated algebra, each
/// generator mapped to `1 + t` for its own variable.
#[derive(Debug, Clone)]
pub struct Tower {
    algebra: FilteredAlgebra,
    /// Generator names in polycyclic order (top first).
    names: Vec<String>,
    map: GeneratorMap,
}

impl Tower {
    pub fn trivial(p: u32, cutoff: u64) -> Result<Self, BuildError> {
        let algebra = FilteredAlgebra::trivial(p, cutoff)?;
        let map = GeneratorMap::new(&algebra, Vec::new())?;
        Ok(Self {
            algebra,
            names: Vec::new(),
            map,
        })
    }

    pub fn algebra(&self) -> &FilteredAlgebra {
        &self.algebra
    }

    pub fn map(&self) -> &GeneratorMap {
        &self.map
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Tower generator `q` (polycyclic order) as an exponent vector.
    pub fn generator(&self, q: usize) -> ExponentVector {
        ExponentVector::generator_power(self.len(), q, 1)
    }

    /// Image of a tower element given by its exponents.
    pub fn embed(&self, g: &ExponentVector) -> FilteredElement {
        self.map.embed(&self.algebra, g.exponents())
    }

    fn into_parts(self) -> (FilteredAlgebra, GeneratorMap) {
        (self.algebra, self.map)
    }
}

/// Extend by an infinite cyclic factor.
pub fn extend_infinite_cyclic(tower: &Tower, step: &ExtensionStep) -> Result<(Tower, StepLog), BuildError> {
    if step.kind != ExtensionKind::InfiniteCyclic {
        return Err(malformed(step, "expected an infinite cyclic step"));
    }
    extend(tower, step)
}

/// Extend by a cyclic factor of order `p^m`.
pub fn extend_cyclic_p_power(tower: &Tower, step: &ExtensionStep) -> Result<(Tower, StepLog), BuildError> {
    if step.kind == ExtensionKind::InfiniteCyclic {
        return Err(malformed(step, "expected a cyclic p-power step"));
    }
    extend(tower, step)
}

fn malformed(step: &ExtensionStep, reason: &str) -> BuildError {
    BuildError::MalformedStep {
        generator: step.name.clone(),
        reason: reason.to_string(),
    }
}

fn extend(tower: &Tower, step: &ExtensionStep) -> Result<(Tower, StepLog), BuildError> {
    let old = &tower.algebra;
    let n_old = old.len();
    let k = step.weight;
    if k == 0 {
        return Err(BuildError::ZeroWeight { variable: n_old });
    }
    if step.conjugates.len() != tower.len() || step.inverse_conjugates.len() != tower.len() {
        return Err(malformed(step, "action must list one conjugate per tower generator"));
    }
    let widen = |exps: &[u32], top: u32| -> Vec<u32> {
        let mut v = exps.to_vec();
        v.push(top);
        v
    };

    let mut tails: BTreeMap<(usize, usize), RawTerms> = old
        .raw_tails()
        .into_iter()
        .map(|(key, t)| (key, t.into_iter().map(|(e, c)| (widen(&e, 0), c)).collect()))
        .collect();
    let mut power_tails: BTreeMap<usize, RawTerms> = old
        .raw_power_tails()
        .into_iter()
        .map(|(key, t)| (key, t.into_iter().map(|(e, c)| (widen(&e, 0), c)).collect()))
        .collect();

    let mut margins = Vec::new();
    for q in 0..tower.len() {
        let v = n_old - 1 - q;
        let g = tower.map.image(q);
        let bound = Value::Finite(old.weights()[v] + k);
        let mut forward = None;
        for (direction, c) in [
            ("s^-1 g s", &step.conjugates[q]),
            ("s g s^-1", &step.inverse_conjugates[q]),
        ] {
            if c.len() != tower.len() {
                return Err(malformed(step, "conjugate has the wrong length"));
            }
            let diff = old.sub(&tower.embed(c), g)?;
            let value = old.value(&diff);
            if value <= bound {
                return Err(BuildError::CentralizingConditionViolated {
                    generator: step.name.clone(),
                    target: tower.names[q].clone(),
                    direction,
                    value,
                    bound,
                });
            }
            margins.push(Margin {
                target: tower.names[q].clone(),
                direction,
                margin: value.margin_over(bound),
            });
            if direction == "s g s^-1" {
                forward = Some(diff);
            }
        }
        // θ x - x θ = (s x s^{-1} - x)(1 + θ)
        let diff = forward.expect("both directions visited");
        let mut tail = RawTerms::new();
        for (e, c) in to_raw_element(&diff) {
            tail.push((widen(&e, 0), c));
            tail.push((widen(&e, 1), c));
        }
        if !tail.is_empty() {
            tails.insert((v, n_old), tail);
        }
    }

    let p = old.prime();
    let (cap, regime, power_value, kind) = match &step.kind {
        ExtensionKind::InfiniteCyclic => (None, None, None, "infinite_cyclic"),
        ExtensionKind::CyclicPPower { m, target } => {
            if *m == 0 {
                return Err(malformed(step, "order exponent m must be positive"));
            }
            if target.len() != tower.len() {
                return Err(malformed(step, "power target has the wrong length"));
            }
            let cap = (p as u64)
                .checked_pow(*m)
                .filter(|&c| c <= u32::MAX as u64)
                .ok_or(BuildError::WeightOverflow)? as u32;
            let ptail = old.sub(&tower.embed(target), &old.one())?;
            let value = old.value(&ptail);
            let expected = k.checked_mul(cap as u64).ok_or(BuildError::WeightOverflow)?;
            let regime = match value.cmp(&Value::Finite(expected)) {
                std::cmp::Ordering::Less => {
                    return Err(BuildError::PowerValueMismatch {
                        generator: step.name.clone(),
                        value,
                        expected,
                    })
                }
                std::cmp::Ordering::Equal => Regime::Exact,
                std::cmp::Ordering::Greater => Regime::Raised,
            };
            let raw: RawTerms = to_raw_element(&ptail)
                .into_iter()
                .map(|(e, c)| (widen(&e, 0), c))
                .collect();
            if !raw.is_empty() {
                power_tails.insert(n_old, raw);
            }
            (Some(cap), Some(regime), Some(value), "cyclic_p_power")
        }
    };

    let mut vars = old.variables().to_vec();
    vars.push(WeightedVariable::new(step.name.clone(), k, cap));
    let algebra = FilteredAlgebra::new(p, vars, tails, power_tails, old.cutoff())?;

    let mut images = Vec::with_capacity(tower.len() + 1);
    images.push(algebra.add(&algebra.one(), &algebra.variable(n_old))?);
    for q in 0..tower.len() {
        images.push(algebra.lift_from(old, tower.map.image(q), 0)?);
    }
    let map = GeneratorMap::new(&algebra, images)?;
    let mut names = Vec::with_capacity(tower.len() + 1);
    names.push(step.name.clone());
    names.extend(tower.names.iter().cloned());

    let log = StepLog {
        generator: step.name.clone(),
        kind,
        variable: n_old + 1,
        weight: k,
        regime,
        power_value,
        margins,
    };
    Ok((Tower { algebra, names, map }, log))
}

/// The extension step adding generator `i` of `pres` on top of the tower of
/// `<g_{i+1}, ..., g_n>`.
pub fn step_for_generator(pres: &PcPresentation, i: usize, weight: u64) -> ExtensionStep {
    let tail = |x: &ExponentVector| ExponentVector::from_exponents(x.exponents()[i + 1..].to_vec());
    let n = pres.len();
    let kind = match pres.relative_orders()[i] {
        RelativeOrder::Infinite => ExtensionKind::InfiniteCyclic,
        RelativeOrder::PrimePower(m) => ExtensionKind::CyclicPPower {
            m,
            target: tail(pres.power_relation(i)),
        },
    };
    ExtensionStep {
        name: pres.name(i).to_string(),
        weight,
        kind,
        conjugates: (i + 1..n).map(|j| tail(pres.conjugate(i, j))).collect(),
        inverse_conjugates: (i + 1..n).map(|j| tail(pres.conjugate_inverse(i, j))).collect(),
    }
}

/// Climb the polycyclic series of `pres` from the bottom, checking every
/// step, and return the group realized in the final algebra.
///
/// For nonabelian groups the schedule must also satisfy the layered
/// doubling condition on the infinite-order generators.
pub fn build_group_algebra(
    pres: &PcPresentation,
    schedule: &WeightSchedule,
    cutoff: u64,
) -> Result<(GroupAlgebra, BuildLog), BuildError> {
    let n = pres.len();
    if schedule.len() != n {
        return Err(BuildError::ScheduleLength {
            expected: n,
            got: schedule.len(),
        });
    }
    if !pres.is_abelian() {
        schedule.check_doubling(&schedule.derived_layers(pres))?;
    }
    let mut tower = Tower::trivial(pres.prime(), cutoff)?;
    let mut log = BuildLog::default();
    for i in (0..n).rev() {
        let step = step_for_generator(pres, i, schedule.for_generator(i));
        let (next, entry) = extend(&tower, &step).map_err(|e| BuildError::StepFailed {
            level: i + 1,
            generator: pres.name(i).to_string(),
            source: Box::new(e),
        })?;
        tower = next;
        log.steps.push(entry);
    }
    let (algebra, map) = tower.into_parts();
    let ga = GroupAlgebra::new(Arc::new(pres.clone()), algebra, map)?;
    Ok((ga, log))
}

/// `Σ λ_i θ^i` in `alg`, where `θ` is the top variable and the `λ_i` are
/// elements of `below`, the algebra on the remaining variables. The sum is
/// assembled directly in standard form.
pub fn theta_expansion(
    alg: &FilteredAlgebra,
    below: &FilteredAlgebra,
    coefficients: &[FilteredElement],
) -> Result<FilteredElement, BuildError> {
    if below.len() + 1 != alg.len() || below.prime() != alg.prime() {
        return Err(AlgebraError::AlgebraMismatch.into());
    }
    let mut raw = Vec::new();
    for (i, lam) in coefficients.iter().enumerate() {
        if lam.algebra_id() != below.id() {
            return Err(AlgebraError::AlgebraMismatch.into());
        }
        for (mut exps, c) in to_raw_element(lam) {
            exps.push(i as u32);
            raw.push((exps, c as i64));
        }
    }
    Ok(alg.element(&raw)?)
}

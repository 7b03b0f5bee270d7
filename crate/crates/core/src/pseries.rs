//! p-series of a group, viewed as weight functions `w: G -> N ∪ {∞}` with
//! `H_i = {g : w(g) >= i}`.
//!
//! The axioms `[H_i, H_j] ⊆ H_{i+j}` and `H_i^p ⊆ H_{ip}` become
//! `w([x, y]) >= w(x) + w(y)` and `w(x^p) >= p w(x)`. All weights above the
//! cutoff are reported as infinite, so every check holds "up to the cutoff".

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::Rng;
use thiserror::Error;

use crate::algebra::GroupAlgebra;
use crate::pcgroup::{ExponentVector, PcPresentation, RelativeOrder};
use crate::sample;
use crate::value::Value;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PSeriesError {
    #[error("p-series axiom violated ({clause}): x = ({x}), y = ({y}), weight {lhs} < {rhs}")]
    AxiomViolated {
        clause: &'static str,
        x: ExponentVector,
        y: ExponentVector,
        lhs: Value,
        rhs: Value,
    },
    #[error("the closed form needs {0}")]
    UnsupportedGroup(&'static str),
    #[error("expected {expected} weights, got {got}")]
    WeightCount { expected: usize, got: usize },
    #[error("weights must be positive")]
    ZeroWeight,
}

#[derive(Debug, Clone)]
enum Source {
    FromAlgebra(Arc<GroupAlgebra>),
    /// `g^a` with `a = p^k u`, `p ∤ u`, has weight `w_{k+1}`, where
    /// `w_1 = 1` and `w_{n+1} = p w_n + 1`.
    LowerPSeriesExample,
    /// Free abelian group: `min_i p^{ν_p(a_i)} f_i` over nonzero `a_i`.
    AbelianJennings(Vec<u64>),
    Overridden {
        base: Box<PSeriesSpec>,
        table: BTreeMap<ExponentVector, Value>,
    },
}

/// A weight oracle on a polycyclic group.
#[derive(Debug, Clone)]
pub struct PSeriesSpec {
    group: Arc<PcPresentation>,
    cutoff: u64,
    source: Source,
}

impl PSeriesSpec {
    /// `w(g) = value(embed(g) - 1)`.
    pub fn from_algebra(ga: Arc<GroupAlgebra>) -> Self {
        Self {
            group: ga.presentation_arc(),
            cutoff: ga.cutoff(),
            source: Source::FromAlgebra(ga),
        }
    }

    /// The series on the infinite cyclic group whose factors all have
    /// order `p`. `group` is either `Z` on one generator or a tower
    /// `<g> ⊃ <g^p> ⊃ ... ⊃ <g^{p^N}>` with factors of order `p` above an
    /// infinite cyclic bottom.
    pub fn lower_p_series_example(group: Arc<PcPresentation>, cutoff: u64) -> Result<Self, PSeriesError> {
        if !is_cyclic_tower(&group) {
            return Err(PSeriesError::UnsupportedGroup(
                "an infinite cyclic group or a tower of p-th powers",
            ));
        }
        Ok(Self {
            group,
            cutoff,
            source: Source::LowerPSeriesExample,
        })
    }

    /// Dimension-subgroup weights on a free abelian group with generator
    /// weights `weights`.
    pub fn abelian_jennings(group: Arc<PcPresentation>, weights: Vec<u64>, cutoff: u64) -> Result<Self, PSeriesError> {
        if !group.is_abelian() || group.relative_orders().iter().any(|o| *o != RelativeOrder::Infinite) {
            return Err(PSeriesError::UnsupportedGroup("a free abelian group"));
        }
        if weights.len() != group.len() {
            return Err(PSeriesError::WeightCount {
                expected: group.len(),
                got: weights.len(),
            });
        }
        if weights.contains(&0) {
            return Err(PSeriesError::ZeroWeight);
        }
        Ok(Self {
            group,
            cutoff,
            source: Source::AbelianJennings(weights),
        })
    }

    /// `base` with some weights replaced by a table.
    pub fn overridden(base: PSeriesSpec, table: BTreeMap<ExponentVector, Value>) -> Self {
        Self {
            group: Arc::clone(&base.group),
            cutoff: base.cutoff,
            source: Source::Overridden {
                base: Box::new(base),
                table,
            },
        }
    }

    pub fn group(&self) -> &PcPresentation {
        &self.group
    }

    pub fn cutoff(&self) -> u64 {
        self.cutoff
    }

    pub fn kind(&self) -> &'static str {
        match self.source {
            Source::FromAlgebra(_) => "from_algebra",
            Source::LowerPSeriesExample => "lower_p_series_example",
            Source::AbelianJennings(_) => "abelian_jennings",
            Source::Overridden { .. } => "overridden",
        }
    }

    /// Weight of `g`; infinite for the identity and above the cutoff.
    pub fn weight_of(&self, g: &ExponentVector) -> Value {
        if g.is_identity() {
            return Value::Infinite;
        }
        let p = self.group.prime() as u64;
        let raw = match &self.source {
            Source::FromAlgebra(ga) => ga.weight(g),
            Source::LowerPSeriesExample => {
                let a = tower_integer(&self.group, g);
                let k = p_adic_valuation(&a, p);
                lower_series_weight(p, k + 1)
            }
            Source::AbelianJennings(f) => g
                .exponents()
                .iter()
                .zip(f)
                .filter(|(a, _)| !a.is_zero())
                .map(|(a, &w)| {
                    let k = p_adic_valuation(a, p);
                    match p.checked_pow(k).and_then(|q| q.checked_mul(w)) {
                        Some(v) => Value::Finite(v),
                        None => Value::Infinite,
                    }
                })
                .min()
                .unwrap_or(Value::Infinite),
            Source::Overridden { base, table } => match table.get(g) {
                Some(v) => *v,
                None => base.weight_of(g),
            },
        };
        raw.capped(self.cutoff)
    }

    /// Random element of bounded exponents, raised to `p^j` for a random
    /// `j < 4` half of the time so that deep elements are also sampled.
    pub fn sample_element<R: Rng>(&self, rng: &mut R, bound: i64) -> ExponentVector {
        let x = self.group.random_element(rng, bound);
        if rng.gen_bool(0.5) {
            let j = rng.gen_range(0..4u32);
            let e = num_traits::pow(BigInt::from(self.group.prime()), j as usize);
            self.group.power(&x, &e)
        } else {
            x
        }
    }

    /// Sample pairs and check both axioms, treating weights above the
    /// cutoff as infinite.
    pub fn check_axioms(&self, sample_count: usize, seed: u64) -> Result<AxiomReport, PSeriesError> {
        let mut rng = sample::rng(seed);
        let p = self.group.prime() as u64;
        let mut report = AxiomReport {
            samples: sample_count,
            seed,
            cutoff: self.cutoff,
            commutator_vacuous: self.group.is_abelian(),
            min_commutator_margin: None,
            min_power_margin: None,
        };
        let bump = |slot: &mut Option<i64>, m: Option<i64>| {
            if let Some(m) = m {
                *slot = Some(slot.map_or(m, |old| old.min(m)));
            }
        };
        for _ in 0..sample_count {
            let x = self.sample_element(&mut rng, 3);
            let y = self.sample_element(&mut rng, 3);
            let (wx, wy) = (self.weight_of(&x), self.weight_of(&y));
            if !report.commutator_vacuous {
                let c = self.group.commutator(&x, &y);
                let lhs = self.weight_of(&c);
                let rhs = wx.plus(wy).capped(self.cutoff);
                if lhs < rhs {
                    return Err(PSeriesError::AxiomViolated {
                        clause: "commutator",
                        x,
                        y,
                        lhs,
                        rhs,
                    });
                }
                bump(&mut report.min_commutator_margin, lhs.margin_over(rhs));
            }
            let xp = self.group.power(&x, &BigInt::from(p));
            let lhs = self.weight_of(&xp);
            let rhs = wx.times(p).capped(self.cutoff);
            if lhs < rhs {
                let id = self.group.identity();
                return Err(PSeriesError::AxiomViolated {
                    clause: "p-th power",
                    x,
                    y: id,
                    lhs,
                    rhs,
                });
            }
            bump(&mut report.min_power_margin, lhs.margin_over(rhs));
        }
        Ok(report)
    }

    /// Two-column text table: element normal form and weight.
    pub fn weight_table(&self, elements: &[ExponentVector]) -> String {
        let mut out = String::new();
        for g in elements {
            let _ = writeln!(out, "({g})\t{}", self.weight_of(g));
        }
        out
    }
}

/// Outcome of [`PSeriesSpec::check_axioms`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub samples: usize,
    pub seed: u64,
    pub cutoff: u64,
    /// The group is abelian, so the commutator clause holds trivially.
    pub commutator_vacuous: bool,
    pub min_commutator_margin: Option<i64>,
    pub min_power_margin: Option<i64>,
}

/// Finite refinement data between two weight functions on a sample.
///
/// For each weight `d` of the first function attained on the sample, the
/// row `(d, d')` gives the largest `d'` with
/// `{w_A >= d} ⊆ {w_B >= d'}` on the sample.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefinementTable {
    pub cutoff: u64,
    pub sample_size: usize,
    pub a_into_b: Vec<(u64, Value)>,
    pub b_into_a: Vec<(u64, Value)>,
}

/// Refinement tables in both directions over `elements`.
pub fn equivalent_up_to(a: &PSeriesSpec, b: &PSeriesSpec, elements: &[ExponentVector]) -> RefinementTable {
    let wa: Vec<Value> = elements.iter().map(|g| a.weight_of(g)).collect();
    let wb: Vec<Value> = elements.iter().map(|g| b.weight_of(g)).collect();
    RefinementTable {
        cutoff: a.cutoff.min(b.cutoff),
        sample_size: elements.len(),
        a_into_b: refine(&wa, &wb),
        b_into_a: refine(&wb, &wa),
    }
}

fn refine(from: &[Value], to: &[Value]) -> Vec<(u64, Value)> {
    let thresholds: BTreeSet<u64> = from.iter().filter_map(|v| v.finite()).collect();
    thresholds
        .into_iter()
        .map(|d| {
            let best = from
                .iter()
                .zip(to)
                .filter(|(f, _)| **f >= Value::Finite(d))
                .map(|(_, t)| *t)
                .min()
                .unwrap_or(Value::Infinite);
            (d, best)
        })
        .collect()
}

/// `w_n` of the recursion `w_1 = 1`, `w_{n+1} = p w_n + 1`.
pub fn lower_series_weight(p: u64, n: u32) -> Value {
    let mut w = 1u64;
    for _ in 1..n {
        match w.checked_mul(p).and_then(|x| x.checked_add(1)) {
            Some(x) => w = x,
            None => return Value::Infinite,
        }
    }
    Value::Finite(w)
}

fn p_adic_valuation(a: &BigInt, p: u64) -> u32 {
    let p = BigInt::from(p);
    let mut a = a.abs();
    let mut k = 0;
    while !a.is_zero() && a.is_multiple_of(&p) {
        a /= &p;
        k += 1;
    }
    k
}

fn is_cyclic_tower(pres: &PcPresentation) -> bool {
    let n = pres.len();
    if n == 0 || !pres.is_abelian() || pres.relative_orders()[n - 1] != RelativeOrder::Infinite {
        return false;
    }
    (0..n - 1).all(|i| {
        pres.relative_orders()[i] == RelativeOrder::PrimePower(1) && *pres.power_relation(i) == pres.generator(i + 1)
    })
}

/// The integer `a` with `g = x^a` for the top generator `x` of a tower.
fn tower_integer(pres: &PcPresentation, g: &ExponentVector) -> BigInt {
    let p = BigInt::from(pres.prime());
    let mut scale = BigInt::from(1);
    let mut a = BigInt::zero();
    for e in g.exponents() {
        a += e * &scale;
        scale *= &p;
    }
    a
}

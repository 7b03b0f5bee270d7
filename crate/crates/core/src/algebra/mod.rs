//! Truncated filtered algebras over `F_p` with a standard-monomial basis.
//!
//! An algebra has ordered variables `t_1 < ... < t_n` (`t_1` most central),
//! each with a positive weight and optionally a cap `p^m` bounding its
//! exponent in standard monomials. Products are brought to canonical form by
//! the rewrite system:
//!
//! * `t_j t_i = t_i t_j + tail(i, j)` for `i < j`, with `tail(i, j)`
//!   supported on `t_1..t_j`;
//! * `t_i^{cap_i} = ptail(i)`, with `ptail(i)` supported on `t_1..t_{i-1}`.
//!
//! All computation takes place modulo the span of monomials of value
//! greater than the cutoff `D`. The value of an element is the least value
//! of a monomial in its support.

mod element;
mod embed;
mod graded_check;
mod rewrite;

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use num_bigint::BigUint;
use rand::Rng;
use thiserror::Error;

pub use element::{FilteredElement, Monomial};
pub use embed::{GeneratorMap, GroupAlgebra};
pub use graded_check::GradedReport;

use element::Terms;
use rewrite::{add_scaled, add_term, ProductCache, Rewriter};

use crate::field::{FieldError, PrimeField};
use crate::value::Value;

static NEXT_ALGEBRA_ID: AtomicU64 = AtomicU64::new(1);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("element belongs to a different algebra")]
    AlgebraMismatch,
    #[error("element has zero constant term and is not a unit")]
    NotAUnit,
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("invalid variable {index}: {reason}")]
    InvalidVariable { index: usize, reason: String },
    #[error("invalid monomial: {0}")]
    InvalidMonomial(String),
    #[error("invalid rewrite rule: {0}")]
    InvalidRewrite(String),
    #[error("expected {expected} generator images, got {got}")]
    ImageCount { expected: usize, got: usize },
    #[error("graded check failed ({check}): x = {x}, y = {y}")]
    GradedCheckFailed { check: String, x: String, y: String },
}

/// A variable `t_i`: its weight `f(t_i)` and, for variables coming from
/// finite-order generators, the cap `p^m` on its exponent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedVariable {
    pub name: String,
    pub weight: u64,
    pub cap: Option<u32>,
}

impl WeightedVariable {
    pub fn new(name: impl Into<String>, weight: u64, cap: Option<u32>) -> Self {
        Self {
            name: name.into(),
            weight,
            cap,
        }
    }
}

/// Raw rewrite data: terms given as `(exponents, coefficient)`.
pub type RawTerms = Vec<(Vec<u32>, u32)>;

#[derive(Debug, Clone, Default)]
pub(crate) struct RewriteSystem {
    pub(crate) tails: BTreeMap<(usize, usize), Terms>,
    pub(crate) power_tails: BTreeMap<usize, Terms>,
}

#[derive(Debug, Clone)]
pub struct FilteredAlgebra {
    id: u64,
    field: PrimeField,
    vars: Vec<WeightedVariable>,
    weights: Vec<u64>,
    rewrite: RewriteSystem,
    cutoff: u64,
    /// Normal forms of monomial products, shared by clones.
    products: Arc<ProductCache>,
}

impl FilteredAlgebra {
    /// Build an algebra from its variables and rewrite rules.
    ///
    /// Tails must be supported on `t_1..t_j` with every monomial of value at
    /// least `weight_i + weight_j`; power tails on `t_1..t_{i-1}` with value
    /// at least `cap_i · weight_i`. These make the truncation well defined.
    /// Strictness of the tail values (which makes `gr` commutative) is not
    /// required here; [`FilteredAlgebra::check_graded_polynomial`] tests it.
    pub fn new(
        p: u32,
        vars: Vec<WeightedVariable>,
        tails: BTreeMap<(usize, usize), RawTerms>,
        power_tails: BTreeMap<usize, RawTerms>,
        cutoff: u64,
    ) -> Result<Self, AlgebraError> {
        let field = PrimeField::new(p as u64)?;
        for (i, v) in vars.iter().enumerate() {
            if v.weight == 0 {
                return Err(AlgebraError::InvalidVariable {
                    index: i,
                    reason: "weight must be at least 1".into(),
                });
            }
            if let Some(cap) = v.cap {
                if !is_power_of(cap as u64, p as u64) {
                    return Err(AlgebraError::InvalidVariable {
                        index: i,
                        reason: format!("cap {cap} is not a positive power of {p}"),
                    });
                }
            }
        }
        let weights: Vec<u64> = vars.iter().map(|v| v.weight).collect();
        let mut alg = Self {
            id: NEXT_ALGEBRA_ID.fetch_add(1, Ordering::Relaxed),
            field,
            vars,
            weights,
            rewrite: RewriteSystem::default(),
            cutoff,
            products: Arc::default(),
        };
        let n = alg.vars.len();
        for ((i, j), raw) in tails {
            if i >= j || j >= n {
                return Err(AlgebraError::InvalidRewrite(format!("tail index ({i}, {j})")));
            }
            let terms = alg.terms_from_raw(&raw)?;
            let floor = alg.weights[i] + alg.weights[j];
            for m in terms.keys() {
                if m.exps[j + 1..].iter().any(|&e| e > 0) {
                    return Err(AlgebraError::InvalidRewrite(format!(
                        "tail({}, {}) uses a variable beyond t{}",
                        i + 1,
                        j + 1,
                        j + 1
                    )));
                }
                if m.value < floor {
                    return Err(AlgebraError::InvalidRewrite(format!(
                        "tail({}, {}) has a term of value {} < {}",
                        i + 1,
                        j + 1,
                        m.value,
                        floor
                    )));
                }
            }
            if !terms.is_empty() {
                alg.rewrite.tails.insert((i, j), terms);
            }
        }
        for (i, raw) in power_tails {
            let cap = match alg.vars.get(i).and_then(|v| v.cap) {
                Some(c) => c,
                None => {
                    return Err(AlgebraError::InvalidRewrite(format!(
                        "power tail for uncapped variable {i}"
                    )))
                }
            };
            let terms = alg.terms_from_raw(&raw)?;
            let floor = cap as u64 * alg.weights[i];
            for m in terms.keys() {
                if m.exps[i..].iter().any(|&e| e > 0) {
                    return Err(AlgebraError::InvalidRewrite(format!(
                        "power tail of t{} must use only t1..t{}",
                        i + 1,
                        i
                    )));
                }
                if m.value < floor {
                    return Err(AlgebraError::InvalidRewrite(format!(
                        "power tail of t{} has a term of value {} < {}",
                        i + 1,
                        m.value,
                        floor
                    )));
                }
            }
            if !terms.is_empty() {
                alg.rewrite.power_tails.insert(i, terms);
            }
        }
        Ok(alg)
    }

    /// The algebra `F_p` with no variables.
    pub fn trivial(p: u32, cutoff: u64) -> Result<Self, AlgebraError> {
        Self::new(p, Vec::new(), BTreeMap::new(), BTreeMap::new(), cutoff)
    }

    /// Commutative truncated polynomial algebra with uncapped variables.
    pub fn polynomial(p: u32, weights: &[u64], cutoff: u64) -> Result<Self, AlgebraError> {
        let vars = weights
            .iter()
            .enumerate()
            .map(|(i, &w)| WeightedVariable::new(format!("t{}", i + 1), w, None))
            .collect();
        Self::new(p, vars, BTreeMap::new(), BTreeMap::new(), cutoff)
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn prime(&self) -> u32 {
        self.field.p()
    }

    pub fn cutoff(&self) -> u64 {
        self.cutoff
    }

    pub fn variables(&self) -> &[WeightedVariable] {
        &self.vars
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    fn elem(&self, terms: Terms) -> FilteredElement {
        FilteredElement {
            algebra: self.id,
            terms,
        }
    }

    fn check(&self, x: &FilteredElement) -> Result<(), AlgebraError> {
        if x.algebra == self.id {
            Ok(())
        } else {
            Err(AlgebraError::AlgebraMismatch)
        }
    }

    fn monomial_checked(&self, exps: &[u32]) -> Result<Monomial, AlgebraError> {
        if exps.len() != self.len() {
            return Err(AlgebraError::InvalidMonomial(format!(
                "expected {} exponents, got {}",
                self.len(),
                exps.len()
            )));
        }
        for (i, (&e, v)) in exps.iter().zip(&self.vars).enumerate() {
            if let Some(cap) = v.cap {
                if e >= cap {
                    return Err(AlgebraError::InvalidMonomial(format!(
                        "exponent {e} of t{} reaches its cap {cap}",
                        i + 1
                    )));
                }
            }
        }
        Ok(Monomial::new(exps.to_vec(), &self.weights))
    }

    fn terms_from_raw(&self, raw: &RawTerms) -> Result<Terms, AlgebraError> {
        let mut terms = Terms::new();
        for (exps, c) in raw {
            let m = self.monomial_checked(exps)?;
            if m.value <= self.cutoff {
                add_term(self.field, &mut terms, &m, c % self.field.p());
            }
        }
        Ok(terms)
    }

    pub fn zero(&self) -> FilteredElement {
        self.elem(Terms::new())
    }

    pub fn one(&self) -> FilteredElement {
        self.scalar(1)
    }

    pub fn scalar(&self, c: i64) -> FilteredElement {
        let mut t = Terms::new();
        add_term(
            self.field,
            &mut t,
            &Monomial::new(vec![0; self.len()], &self.weights),
            self.field.from_i64(c),
        );
        self.elem(t)
    }

    /// The variable `t_{i+1}` (0-based index `i`); zero if its weight exceeds
    /// the cutoff.
    pub fn variable(&self, i: usize) -> FilteredElement {
        let mut exps = vec![0; self.len()];
        exps[i] = 1;
        self.monomial(&exps, 1).expect("single variable is a standard monomial")
    }

    /// `c · t^exps` for a standard monomial, truncated.
    pub fn monomial(&self, exps: &[u32], c: i64) -> Result<FilteredElement, AlgebraError> {
        let m = self.monomial_checked(exps)?;
        let mut t = Terms::new();
        if m.value <= self.cutoff {
            add_term(self.field, &mut t, &m, self.field.from_i64(c));
        }
        Ok(self.elem(t))
    }

    /// Element from `(exponents, coefficient)` pairs of standard monomials.
    pub fn element(&self, raw: &[(Vec<u32>, i64)]) -> Result<FilteredElement, AlgebraError> {
        let raw: RawTerms = raw.iter().map(|(e, c)| (e.clone(), self.field.from_i64(*c))).collect();
        Ok(self.elem(self.terms_from_raw(&raw)?))
    }

    pub fn add(&self, x: &FilteredElement, y: &FilteredElement) -> Result<FilteredElement, AlgebraError> {
        self.check(x)?;
        self.check(y)?;
        let mut t = x.terms.clone();
        add_scaled(self.field, &mut t, &y.terms, 1);
        Ok(self.elem(t))
    }

    pub fn sub(&self, x: &FilteredElement, y: &FilteredElement) -> Result<FilteredElement, AlgebraError> {
        self.check(x)?;
        self.check(y)?;
        let mut t = x.terms.clone();
        add_scaled(self.field, &mut t, &y.terms, self.field.neg(1));
        Ok(self.elem(t))
    }

    pub fn scale(&self, c: i64, x: &FilteredElement) -> Result<FilteredElement, AlgebraError> {
        self.check(x)?;
        let mut t = Terms::new();
        add_scaled(self.field, &mut t, &x.terms, self.field.from_i64(c));
        Ok(self.elem(t))
    }

    pub fn neg(&self, x: &FilteredElement) -> Result<FilteredElement, AlgebraError> {
        self.scale(-1, x)
    }

    /// Canonical form of `x · y` modulo the span of monomials above the cutoff.
    pub fn mul(&self, x: &FilteredElement, y: &FilteredElement) -> Result<FilteredElement, AlgebraError> {
        self.check(x)?;
        self.check(y)?;
        let mut rw = Rewriter::new(self);
        Ok(self.elem(rw.mul_terms(&x.terms, &y.terms)))
    }

    /// `xy - yx`.
    pub fn commutator(&self, x: &FilteredElement, y: &FilteredElement) -> Result<FilteredElement, AlgebraError> {
        self.check(x)?;
        self.check(y)?;
        let mut rw = Rewriter::new(self);
        let mut t = rw.mul_terms(&x.terms, &y.terms);
        let yx = rw.mul_terms(&y.terms, &x.terms);
        add_scaled(self.field, &mut t, &yx, self.field.neg(1));
        Ok(self.elem(t))
    }

    pub fn pow(&self, x: &FilteredElement, e: u64) -> Result<FilteredElement, AlgebraError> {
        self.pow_big(x, &BigUint::from(e))
    }

    /// `x^e` by square-and-multiply.
    pub fn pow_big(&self, x: &FilteredElement, e: &BigUint) -> Result<FilteredElement, AlgebraError> {
        self.check(x)?;
        let mut rw = Rewriter::new(self);
        Ok(self.elem(pow_terms(&mut rw, self.one().terms, &x.terms, e)))
    }

    /// Least value of a monomial in the support; infinite for zero.
    pub fn value(&self, x: &FilteredElement) -> Value {
        match x.terms.keys().next() {
            Some(m) => Value::Finite(m.value),
            None => Value::Infinite,
        }
    }

    /// The slice of `x` on monomials of value exactly `d`.
    pub fn homogeneous_part(&self, x: &FilteredElement, d: u64) -> FilteredElement {
        FilteredElement {
            algebra: x.algebra,
            terms: x
                .terms
                .iter()
                .filter(|(m, _)| m.value == d)
                .map(|(m, &c)| (m.clone(), c))
                .collect(),
        }
    }

    /// Homogeneous part at `value(x)`; zero for zero.
    pub fn leading_part(&self, x: &FilteredElement) -> FilteredElement {
        match self.value(x) {
            Value::Finite(d) => self.homogeneous_part(x, d),
            Value::Infinite => self.zero(),
        }
    }

    /// Inverse of `c + y` with `c != 0` and `value(y) >= 1`, by the truncated
    /// geometric series `c^{-1} Σ (-c^{-1} y)^k`.
    pub fn unit_inverse(&self, x: &FilteredElement) -> Result<FilteredElement, AlgebraError> {
        self.check(x)?;
        let c = x.constant_term();
        let c_inv = self.field.inv(c).ok_or(AlgebraError::NotAUnit)?;
        // z = -c^{-1} (x - c)
        let mut z = Terms::new();
        for (m, &d) in &x.terms {
            if !m.is_one() {
                add_term(self.field, &mut z, m, self.field.neg(self.field.mul(c_inv, d)));
            }
        }
        let mut rw = Rewriter::new(self);
        let mut sum = self.one().terms;
        let mut power = sum.clone();
        loop {
            power = rw.mul_terms(&power, &z);
            if power.is_empty() {
                break;
            }
            add_scaled(self.field, &mut sum, &power, 1);
        }
        let mut out = Terms::new();
        add_scaled(self.field, &mut out, &sum, c_inv);
        Ok(self.elem(out))
    }

    /// Tail `t_j t_i - t_i t_j` for `i < j` (0-based).
    pub fn tail(&self, i: usize, j: usize) -> FilteredElement {
        self.elem(self.rewrite.tails.get(&(i, j)).cloned().unwrap_or_default())
    }

    /// Power tail `t_i^{cap_i}`, if `t_i` is capped.
    pub fn power_tail(&self, i: usize) -> Option<FilteredElement> {
        self.vars[i]
            .cap
            .map(|_| self.elem(self.rewrite.power_tails.get(&i).cloned().unwrap_or_default()))
    }

    pub(crate) fn raw_tails(&self) -> BTreeMap<(usize, usize), RawTerms> {
        self.rewrite.tails.iter().map(|(&k, t)| (k, to_raw(t))).collect()
    }

    pub(crate) fn raw_power_tails(&self) -> BTreeMap<usize, RawTerms> {
        self.rewrite.power_tails.iter().map(|(&k, t)| (k, to_raw(t))).collect()
    }

    /// Whether some capped variable has a nilpotent leading part in `gr`
    /// (its power tail has value above `cap · weight`, or is zero). Such
    /// algebras have zero divisors in `gr` and are not domains.
    pub fn has_nilpotent_caps(&self) -> bool {
        self.vars.iter().enumerate().any(|(i, v)| match v.cap {
            Some(cap) => {
                let floor = Value::Finite(cap as u64 * v.weight);
                let ptail = self.power_tail(i).expect("capped");
                self.value(&ptail) > floor
            }
            None => false,
        })
    }

    /// Image of `x`, an element of `src`, under the embedding that sends
    /// variable `k` of `src` to variable `k + offset` of `self`.
    pub fn lift_from(
        &self,
        src: &FilteredAlgebra,
        x: &FilteredElement,
        offset: usize,
    ) -> Result<FilteredElement, AlgebraError> {
        src.check(x)?;
        if offset + src.len() > self.len() || src.prime() != self.prime() {
            return Err(AlgebraError::AlgebraMismatch);
        }
        let mut t = Terms::new();
        for (m, &c) in &x.terms {
            let mut exps = vec![0; self.len()];
            exps[offset..offset + src.len()].copy_from_slice(&m.exps);
            let mm = Monomial::new(exps, &self.weights);
            if mm.value <= self.cutoff {
                add_term(self.field, &mut t, &mm, c);
            }
        }
        Ok(self.elem(t))
    }

    /// All standard monomials of value exactly `d`.
    pub fn standard_monomials(&self, d: u64) -> Vec<Monomial> {
        fn rec(alg: &FilteredAlgebra, i: usize, left: u64, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if i == alg.len() {
                if left == 0 {
                    out.push(Monomial::new(exps.clone(), &alg.weights));
                }
                return;
            }
            let w = alg.weights[i];
            let mut e = 0u32;
            while e as u64 * w <= left && alg.vars[i].cap.is_none_or(|c| e < c) {
                exps.push(e);
                rec(alg, i + 1, left - e as u64 * w, exps, out);
                exps.pop();
                e += 1;
            }
        }
        let mut out = Vec::new();
        rec(self, 0, d, &mut Vec::new(), &mut out);
        out.sort();
        out
    }

    /// Random element with up to `max_terms` terms, each a random standard
    /// monomial of value at most `max_value` with a nonzero coefficient.
    pub fn random_element<R: Rng>(&self, rng: &mut R, max_terms: usize, max_value: u64) -> FilteredElement {
        let mut t = Terms::new();
        let count = rng.gen_range(1..=max_terms.max(1));
        for _ in 0..count {
            let m = self.random_monomial(rng, max_value);
            if m.value <= self.cutoff {
                let c = rng.gen_range(1..self.prime());
                add_term(self.field, &mut t, &m, c);
            }
        }
        self.elem(t)
    }

    fn random_monomial<R: Rng>(&self, rng: &mut R, max_value: u64) -> Monomial {
        let n = self.len();
        let mut exps = vec![0u32; n];
        let mut left = max_value;
        let mut order: Vec<usize> = (0..n).collect();
        for k in (1..n).rev() {
            order.swap(k, rng.gen_range(0..=k));
        }
        for i in order {
            let w = self.weights[i];
            let mut top = left / w;
            if let Some(cap) = self.vars[i].cap {
                top = top.min(cap as u64 - 1);
            }
            if top == 0 || rng.gen_bool(0.4) {
                continue;
            }
            let e = rng.gen_range(1..=top.min(4));
            exps[i] = e as u32;
            left -= e * w;
        }
        Monomial::new(exps, &self.weights)
    }
}

fn pow_terms(rw: &mut Rewriter<'_>, one: Terms, x: &Terms, e: &BigUint) -> Terms {
    let mut acc = one;
    let mut base = x.clone();
    let bits = e.bits();
    for k in 0..bits {
        if e.bit(k) {
            acc = rw.mul_terms(&acc, &base);
        }
        if k + 1 < bits {
            base = rw.mul_terms(&base, &base);
        }
    }
    acc
}

pub(crate) fn to_raw(t: &Terms) -> RawTerms {
    t.iter().map(|(m, &c)| (m.exps.clone(), c)).collect()
}

pub(crate) fn to_raw_element(x: &FilteredElement) -> RawTerms {
    to_raw(&x.terms)
}

fn is_power_of(mut n: u64, p: u64) -> bool {
    if n < p {
        return false;
    }
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

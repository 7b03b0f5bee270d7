use std::collections::BTreeMap;
use std::fmt;

/// A standard monomial `t_1^{e_1} ... t_n^{e_n}` together with its value
/// `Σ e_i · weight_i`.
///
/// The derived order compares the value first and then the exponent vector
/// lexicographically, which is the storage order of [`FilteredElement`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub(crate) value: u64,
    pub(crate) exps: Vec<u32>,
}

impl Monomial {
    pub(crate) fn new(exps: Vec<u32>, weights: &[u64]) -> Self {
        let value = exps.iter().zip(weights).map(|(&e, &w)| e as u64 * w).sum();
        Self { value, exps }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Highest variable index with a nonzero exponent.
    pub fn last_variable(&self) -> Option<usize> {
        self.exps.iter().rposition(|&e| e > 0)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "t{}^{}", i + 1, e)?;
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

pub(crate) type Terms = BTreeMap<Monomial, u32>;

/// An element of a truncated filtered algebra in canonical form: a sparse
/// map from standard monomials of value `<= D` to nonzero coefficients.
///
/// Elements remember the id of the algebra they belong to; operations on
/// elements from different algebras are rejected.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FilteredElement {
    pub(crate) algebra: u64,
    pub(crate) terms: Terms,
}

impl FilteredElement {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn algebra_id(&self) -> u64 {
        self.algebra
    }

    /// Terms in storage order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, u32)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of the monomial with the given exponents.
    pub fn coefficient(&self, exps: &[u32]) -> u32 {
        self.terms
            .iter()
            .find(|(m, _)| m.exps == exps)
            .map(|(_, &c)| c)
            .unwrap_or(0)
    }

    /// Coefficient of the empty monomial.
    pub fn constant_term(&self) -> u32 {
        match self.terms.iter().next() {
            Some((m, &c)) if m.is_one() => c,
            _ => 0,
        }
    }
}

/// Canonical text form: terms in storage order joined by `" + "`, each term
/// written `c * t1^e1 ... tn^en` (variables with zero exponent omitted, the
/// constant term as plain `c`); zero is `"0"`.
impl fmt::Display for FilteredElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            if m.is_one() {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c} * {m}")?;
            }
        }
        Ok(())
    }
}

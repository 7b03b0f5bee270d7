//! The graded restricted Lie algebra of a p-series, realized inside `gr` of
//! a truncated filtered algebra.
//!
//! An element `g` of weight `d` contributes the homogeneous element
//! `(g - 1)~`, the degree-`d` part of `embed(g) - 1`. The bracket and the
//! `[p]`-map can be computed two ways: from the group (the degree `d + e`
//! part of `[g, h] - 1`, the degree `p d` part of `g^p - 1`) or from the
//! ring (commutator and `p`-th power of the bodies). Both must agree.

mod basis;

use std::fmt;

use thiserror::Error;

pub use basis::{classify, generate_subalgebra, Classification, GradedBasis};

use crate::algebra::{AlgebraError, FilteredAlgebra, FilteredElement, GroupAlgebra};
use crate::pcgroup::ExponentVector;
use crate::value::Value;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("the identity has no homogeneous component")]
    IdentityElement,
    #[error("degree {degree} exceeds the cutoff {cutoff}")]
    ExceedsCutoff { degree: Value, cutoff: u64 },
    #[error("{operation} needs group elements behind both inputs")]
    NoSource { operation: &'static str },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A homogeneous element of degree `d`: a body supported on monomials of
/// value exactly `d`, possibly zero. `source` records the group element it
/// came from, when there is one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomogeneousElement {
    degree: u64,
    body: FilteredElement,
    source: Option<ExponentVector>,
}

impl HomogeneousElement {
    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn body(&self) -> &FilteredElement {
        &self.body
    }

    pub fn source(&self) -> Option<&ExponentVector> {
        self.source.as_ref()
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }

    /// Homogeneous part of `x` at `degree`, without a group source.
    pub fn from_body(alg: &FilteredAlgebra, degree: u64, x: &FilteredElement) -> Self {
        Self {
            degree,
            body: alg.homogeneous_part(x, degree),
            source: None,
        }
    }
}

impl fmt::Display for HomogeneousElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.degree, self.body)
    }
}

fn check_degree(alg: &FilteredAlgebra, d: u64) -> Result<u64, LieError> {
    if d > alg.cutoff() {
        Err(LieError::ExceedsCutoff {
            degree: Value::Finite(d),
            cutoff: alg.cutoff(),
        })
    } else {
        Ok(d)
    }
}

/// `(g - 1)~`: the leading part of `embed(g) - 1`, in degree `weight(g)`.
pub fn hom_component(ga: &GroupAlgebra, g: &ExponentVector) -> Result<HomogeneousElement, LieError> {
    if g.is_identity() {
        return Err(LieError::IdentityElement);
    }
    let alg = ga.algebra();
    let x = ga.augmentation(g);
    match alg.value(&x) {
        Value::Finite(d) => Ok(HomogeneousElement {
            degree: d,
            body: alg.homogeneous_part(&x, d),
            source: Some(g.clone()),
        }),
        Value::Infinite => Err(LieError::ExceedsCutoff {
            degree: Value::Infinite,
            cutoff: alg.cutoff(),
        }),
    }
}

/// Bracket from the ring: degree `d_x + d_y` part of `xy - yx`.
pub fn bracket_ring(
    alg: &FilteredAlgebra,
    x: &HomogeneousElement,
    y: &HomogeneousElement,
) -> Result<HomogeneousElement, LieError> {
    let d = check_degree(alg, x.degree + y.degree)?;
    let c = alg.commutator(&x.body, &y.body)?;
    Ok(HomogeneousElement {
        degree: d,
        body: alg.homogeneous_part(&c, d),
        source: None,
    })
}

/// Bracket from the group: degree `d_x + d_y` part of `[g, h] - 1`, which is
/// zero when the commutator is deeper.
pub fn bracket_group(
    ga: &GroupAlgebra,
    x: &HomogeneousElement,
    y: &HomogeneousElement,
) -> Result<HomogeneousElement, LieError> {
    let (g, h) = match (&x.source, &y.source) {
        (Some(g), Some(h)) => (g, h),
        _ => return Err(LieError::NoSource { operation: "bracket" }),
    };
    let alg = ga.algebra();
    let d = check_degree(alg, x.degree + y.degree)?;
    let c = ga.presentation().commutator(g, h);
    Ok(HomogeneousElement {
        degree: d,
        body: alg.homogeneous_part(&ga.augmentation(&c), d),
        source: Some(c),
    })
}

/// Bracket via the group when both inputs come from group elements,
/// otherwise via the ring.
pub fn bracket(
    ga: &GroupAlgebra,
    x: &HomogeneousElement,
    y: &HomogeneousElement,
) -> Result<HomogeneousElement, LieError> {
    if x.source.is_some() && y.source.is_some() {
        bracket_group(ga, x, y)
    } else {
        bracket_ring(ga.algebra(), x, y)
    }
}

/// `[p]`-map from the ring: degree `p d` part of `x^p`.
pub fn p_power_ring(alg: &FilteredAlgebra, x: &HomogeneousElement) -> Result<HomogeneousElement, LieError> {
    let p = alg.prime() as u64;
    let d = check_degree(alg, x.degree * p)?;
    let xp = alg.pow(&x.body, p)?;
    Ok(HomogeneousElement {
        degree: d,
        body: alg.homogeneous_part(&xp, d),
        source: None,
    })
}

/// `[p]`-map from the group: degree `p d` part of `g^p - 1`.
pub fn p_power_group(ga: &GroupAlgebra, x: &HomogeneousElement) -> Result<HomogeneousElement, LieError> {
    let g = x.source.as_ref().ok_or(LieError::NoSource { operation: "p_power" })?;
    let alg = ga.algebra();
    let p = alg.prime() as u64;
    let d = check_degree(alg, x.degree * p)?;
    let gp = ga.presentation().power_i64(g, p as i64);
    Ok(HomogeneousElement {
        degree: d,
        body: alg.homogeneous_part(&ga.augmentation(&gp), d),
        source: Some(gp),
    })
}

/// `[p]`-map via the group when the input has a source.
pub fn p_power(ga: &GroupAlgebra, x: &HomogeneousElement) -> Result<HomogeneousElement, LieError> {
    if x.source.is_some() {
        p_power_group(ga, x)
    } else {
        p_power_ring(ga.algebra(), x)
    }
}

/// Homogeneous components of the polycyclic generators that are visible
/// below the cutoff.
pub fn generator_components(ga: &GroupAlgebra) -> Vec<HomogeneousElement> {
    let pres = ga.presentation();
    (0..pres.len())
        .filter_map(|i| hom_component(ga, &pres.generator(i)).ok())
        .collect()
}

/// Components of all elements with exponents in `[-bound, bound]` (normal
/// forms are taken for finite factors), skipping the identity and elements
/// above the cutoff.
pub fn box_components(ga: &GroupAlgebra, bound: i64) -> Vec<HomogeneousElement> {
    let pres = ga.presentation();
    let n = pres.len();
    let mut out = Vec::new();
    let mut exps = vec![-bound; n];
    let mut seen = std::collections::BTreeSet::new();
    if n == 0 {
        return out;
    }
    loop {
        let g = ga.element(&exps);
        if seen.insert(g.clone()) {
            if let Ok(h) = hom_component(ga, &g) {
                out.push(h);
            }
        }
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            if exps[i] < bound {
                exps[i] += 1;
                break;
            }
            exps[i] = -bound;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests;

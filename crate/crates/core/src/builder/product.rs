use std::collections::BTreeMap;
use std::sync::Arc;

use super::BuildError;
use crate::algebra::{FilteredAlgebra, GeneratorMap, GroupAlgebra, RawTerms};

/// Tensor product of two truncated algebras: the variables of `a` followed
/// by those of `b`, with the two families commuting.
pub fn direct_product(a: &FilteredAlgebra, b: &FilteredAlgebra) -> Result<FilteredAlgebra, BuildError> {
    if a.prime() != b.prime() {
        return Err(BuildError::PrimeMismatch {
            left: a.prime(),
            right: b.prime(),
        });
    }
    if a.cutoff() != b.cutoff() {
        return Err(BuildError::CutoffMismatch {
            left: a.cutoff(),
            right: b.cutoff(),
        });
    }
    let (na, nb) = (a.len(), b.len());
    let pad = |t: RawTerms, before: usize, after: usize| -> RawTerms {
        t.into_iter()
            .map(|(e, c)| {
                let mut v = vec![0; before];
                v.extend(e);
                v.extend(std::iter::repeat_n(0, after));
                (v, c)
            })
            .collect()
    };
    let mut tails = BTreeMap::new();
    for ((i, j), t) in a.raw_tails() {
        tails.insert((i, j), pad(t, 0, nb));
    }
    for ((i, j), t) in b.raw_tails() {
        tails.insert((i + na, j + na), pad(t, na, 0));
    }
    let mut power_tails = BTreeMap::new();
    for (i, t) in a.raw_power_tails() {
        power_tails.insert(i, pad(t, 0, nb));
    }
    for (i, t) in b.raw_power_tails() {
        power_tails.insert(i + na, pad(t, na, 0));
    }
    let mut vars = a.variables().to_vec();
    vars.extend(b.variables().iter().cloned());
    Ok(FilteredAlgebra::new(a.prime(), vars, tails, power_tails, a.cutoff())?)
}

/// Direct product of two realized groups. The generators of `g` come first
/// in the product presentation; the algebra is `direct_product` of the two
/// algebras and each factor keeps its own images.
pub fn direct_product_groups(g: &GroupAlgebra, h: &GroupAlgebra) -> Result<GroupAlgebra, BuildError> {
    let alg = direct_product(g.algebra(), h.algebra())?;
    let pres = g.presentation().direct_product(h.presentation())?;
    let mut images = Vec::with_capacity(pres.len());
    for u in g.map().images() {
        images.push(alg.lift_from(g.algebra(), u, 0)?);
    }
    for u in h.map().images() {
        images.push(alg.lift_from(h.algebra(), u, g.algebra().len())?);
    }
    let map = GeneratorMap::new(&alg, images)?;
    Ok(GroupAlgebra::new(Arc::new(pres), alg, map)?)
}

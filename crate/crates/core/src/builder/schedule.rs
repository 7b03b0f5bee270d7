use num_traits::Zero;

use super::BuildError;
use crate::pcgroup::{PcPresentation, RelativeOrder};

/// Weights of the variables of a tower, stored in variable order:
/// entry 0 is `t_1`, the variable of the deepest generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightSchedule {
    weights: Vec<u64>,
}

impl WeightSchedule {
    pub fn from_variable_weights(weights: Vec<u64>) -> Result<Self, BuildError> {
        if let Some(i) = weights.iter().position(|&w| w == 0) {
            return Err(BuildError::ZeroWeight { variable: i });
        }
        Ok(Self { weights })
    }

    /// Weights listed in polycyclic order, `g_1` (the top generator) first.
    pub fn from_generator_weights(mut weights: Vec<u64>) -> Result<Self, BuildError> {
        weights.reverse();
        Self::from_variable_weights(weights)
    }

    pub fn variable_weights(&self) -> &[u64] {
        &self.weights
    }

    /// Weights in polycyclic order.
    pub fn generator_weights(&self) -> Vec<u64> {
        self.weights.iter().rev().copied().collect()
    }

    /// Weight of generator `i` of an `n`-generator presentation.
    pub fn for_generator(&self, i: usize) -> u64 {
        self.weights[self.weights.len() - 1 - i]
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Check the layered doubling condition: every weight of a deeper layer
    /// exceeds twice every weight of a shallower one. `layers` lists the
    /// variable indices of each layer, deepest layer first.
    pub fn check_doubling(&self, layers: &[Vec<usize>]) -> Result<(), BuildError> {
        for pair in layers.windows(2) {
            let (deep, shallow) = (&pair[0], &pair[1]);
            for &i in deep {
                for &j in shallow {
                    if self.weights[i] <= 2 * self.weights[j] {
                        return Err(BuildError::DoublingViolated {
                            deeper: i,
                            deeper_weight: self.weights[i],
                            shallower: j,
                            shallower_weight: self.weights[j],
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Layers of the infinite-order generators of `pres`, grouped by equal
    /// weight and ordered from the largest weight (deepest) down.
    pub fn derived_layers(&self, pres: &PcPresentation) -> Vec<Vec<usize>> {
        let n = pres.len();
        let mut vars: Vec<usize> = (0..n)
            .filter(|&i| pres.relative_orders()[i] == RelativeOrder::Infinite)
            .map(|i| n - 1 - i)
            .collect();
        vars.sort_by(|a, b| self.weights[*b].cmp(&self.weights[*a]).then(a.cmp(b)));
        let mut layers: Vec<Vec<usize>> = Vec::new();
        for v in vars {
            match layers.last_mut() {
                Some(last) if self.weights[last[0]] == self.weights[v] => last.push(v),
                _ => layers.push(vec![v]),
            }
        }
        layers
    }
}

/// Layered weights `3^{k-i+1}` for layer `i = 1, 2, ...` (deepest first).
///
/// `layer_sizes` gives the number of variables in each layer, deepest
/// first; `k` must be at least the number of layers.
pub fn default_schedule(layer_sizes: &[usize], k: u32) -> Result<WeightSchedule, BuildError> {
    if (k as usize) < layer_sizes.len() {
        return Err(BuildError::KTooSmall {
            k,
            layers: layer_sizes.len(),
        });
    }
    let mut weights = Vec::new();
    for (i, &size) in layer_sizes.iter().enumerate() {
        let w = 3u64.checked_pow(k - i as u32).ok_or(BuildError::WeightOverflow)?;
        weights.extend(std::iter::repeat_n(w, size));
    }
    WeightSchedule::from_variable_weights(weights)
}

/// Commutator layer of each generator, in polycyclic order: 1 for a
/// generator that never appears in the correction term of a conjugation
/// relation, otherwise one more than the deeper of the two generators whose
/// relation produces it.
pub fn commutator_layers(pres: &PcPresentation) -> Vec<u32> {
    let n = pres.len();
    let mut layer = vec![1u32; n];
    for j in 0..n {
        for i in 0..j {
            let above = layer[i].max(layer[j]) + 1;
            for rel in [pres.conjugate(i, j), pres.conjugate_inverse(i, j)] {
                for (m, e) in rel.exponents().iter().enumerate().skip(j + 1) {
                    if !e.is_zero() {
                        layer[m] = layer[m].max(above);
                    }
                }
            }
        }
    }
    layer
}

/// The layered schedule `3^{k-i+1}` on a torsion-free presentation, with
/// layers numbered `i = 1, 2, ...` from the deepest commutator layer up.
/// `k` defaults to the number of layers.
pub fn layered_default_schedule(pres: &PcPresentation, k: Option<u32>) -> Result<WeightSchedule, BuildError> {
    if let Some(i) = pres
        .relative_orders()
        .iter()
        .position(|o| *o != RelativeOrder::Infinite)
    {
        return Err(BuildError::MalformedStep {
            generator: pres.name(i).to_string(),
            reason: "layered weights need generators of infinite order".into(),
        });
    }
    let layers = commutator_layers(pres);
    let depth = layers.iter().copied().max().unwrap_or(0);
    let k = k.unwrap_or(depth);
    if k < depth {
        return Err(BuildError::KTooSmall {
            k,
            layers: depth as usize,
        });
    }
    let weights = layers
        .iter()
        .map(|&l| 3u64.checked_pow(k - depth + l).ok_or(BuildError::WeightOverflow))
        .collect::<Result<Vec<_>, _>>()?;
    WeightSchedule::from_generator_weights(weights)
}

/// Schedule for a finite `p`-group whose series has every factor of order
/// `p`: `w(g_1) = 1` and `w(g_{i+1}) = p · w(g_i) + 1`, so each new central
/// generator gets the least weight exceeding `p` times everything above it.
pub fn finite_pgroup_schedule(pres: &PcPresentation) -> Result<WeightSchedule, BuildError> {
    for (i, ord) in pres.relative_orders().iter().enumerate() {
        match ord {
            RelativeOrder::Infinite => {
                return Err(BuildError::NotAFinitePGroup {
                    generator: pres.name(i).to_string(),
                })
            }
            RelativeOrder::PrimePower(1) => {}
            RelativeOrder::PrimePower(m) => {
                return Err(BuildError::RelativeOrderNotPrime {
                    generator: pres.name(i).to_string(),
                    m: *m,
                })
            }
        }
    }
    let p = pres.prime() as u64;
    let mut weights = Vec::with_capacity(pres.len());
    let mut w = 1u64;
    for _ in 0..pres.len() {
        weights.push(w);
        w = w
            .checked_mul(p)
            .and_then(|x| x.checked_add(1))
            .ok_or(BuildError::WeightOverflow)?;
    }
    WeightSchedule::from_generator_weights(weights)
}

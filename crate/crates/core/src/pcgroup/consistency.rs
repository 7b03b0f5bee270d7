use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::Rng;

use super::{ExponentVector, PcError, PcPresentation};
use crate::sample;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConsistencyReport {
    pub relation_checks: usize,
    pub sampled_triples: usize,
    pub seed: u64,
}

impl PcPresentation {
    /// Uniform random normal form: finite exponents in `[0, order)`, infinite
    /// ones in `[-bound, bound]`.
    pub fn random_element<R: Rng>(&self, rng: &mut R, bound: i64) -> ExponentVector {
        let exps = (0..self.len())
            .map(|i| match self.order(i) {
                Some(ord) => {
                    let o = ord.to_u64().unwrap_or(u64::MAX);
                    BigInt::from(rng.gen_range(0..o))
                }
                None => BigInt::from(rng.gen_range(-bound..=bound)),
            })
            .collect();
        ExponentVector::from_exponents(exps)
    }

    /// Test the presentation for consistency: associativity on generator
    /// triples and on `sample_count` random triples, inverses, and coherence
    /// of the power relations with conjugation.
    pub fn check_consistency(&self, sample_count: usize, seed: u64) -> Result<ConsistencyReport, PcError> {
        let n = self.len();
        let id = self.identity();
        let fail = |reason: String, x: &ExponentVector, y: &ExponentVector, z: &ExponentVector| {
            PcError::InconsistentPresentation {
                reason,
                x: x.clone(),
                y: y.clone(),
                z: z.clone(),
            }
        };
        let mut relation_checks = 0;

        // g_k^{order} commutes with g_k, and conjugation respects powers.
        for k in 0..n {
            if let Some(ord) = self.order(k) {
                let gk = self.generator(k);
                let w = self.power_relation(k);
                relation_checks += 1;
                if &self.conjugate_by(w, &gk) != w {
                    return Err(fail(
                        format!("{}^order does not commute with {}", self.name(k), self.name(k)),
                        &gk,
                        w,
                        &id,
                    ));
                }
                for i in 0..k {
                    let gi = self.generator(i);
                    let lhs = self.conjugate_by(w, &gi);
                    let rhs = self.power(self.conjugate(i, k), ord);
                    relation_checks += 1;
                    if lhs != rhs {
                        return Err(fail(
                            format!("conjugating the power relation of {} by {}", self.name(k), self.name(i)),
                            &gi,
                            &gk,
                            w,
                        ));
                    }
                }
            }
        }

        let check_triple = |x: &ExponentVector, y: &ExponentVector, z: &ExponentVector| -> Result<(), PcError> {
            let left = self.multiply(&self.multiply(x, y), z);
            let right = self.multiply(x, &self.multiply(y, z));
            if left != right {
                return Err(fail("(xy)z != x(yz)".into(), x, y, z));
            }
            let xi = self.inverse(x);
            if !self.multiply(x, &xi).is_identity() || !self.multiply(&xi, x).is_identity() {
                return Err(fail("x x^-1 != 1".into(), x, &xi, &id));
            }
            Ok(())
        };

        let mut gens = Vec::with_capacity(2 * n);
        for i in 0..n {
            gens.push(self.generator(i));
            gens.push(self.inverse(&self.generator(i)));
        }
        for x in &gens {
            for y in &gens {
                for z in &gens {
                    relation_checks += 1;
                    check_triple(x, y, z)?;
                }
            }
        }

        let mut rng = sample::rng(seed);
        for _ in 0..sample_count {
            let x = self.random_element(&mut rng, 3);
            let y = self.random_element(&mut rng, 3);
            let z = self.random_element(&mut rng, 3);
            check_triple(&x, &y, &z)?;
        }
        Ok(ConsistencyReport {
            relation_checks,
            sampled_triples: sample_count,
            seed,
        })
    }
}

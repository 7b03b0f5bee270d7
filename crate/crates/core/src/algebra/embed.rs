use std::sync::Arc;

use num_bigint::{BigInt, Sign};

use super::{AlgebraError, FilteredAlgebra, FilteredElement};
use crate::pcgroup::{ExponentVector, PcPresentation};
use crate::value::Value;

/// Images of the polycyclic generators as units of an algebra, with their
/// inverses precomputed.
#[derive(Debug, Clone)]
pub struct GeneratorMap {
    images: Vec<FilteredElement>,
    inverses: Vec<FilteredElement>,
}

impl GeneratorMap {
    /// Every image must be a unit (nonzero constant term).
    pub fn new(alg: &FilteredAlgebra, images: Vec<FilteredElement>) -> Result<Self, AlgebraError> {
        let inverses = images
            .iter()
            .map(|u| alg.unit_inverse(u))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self { images, inverses })
    }

    pub fn images(&self) -> &[FilteredElement] {
        &self.images
    }

    pub fn image(&self, i: usize) -> &FilteredElement {
        &self.images[i]
    }

    pub fn inverse_image(&self, i: usize) -> &FilteredElement {
        &self.inverses[i]
    }

    /// The unit `u_1^{e_1} ... u_n^{e_n}`.
    pub fn embed(&self, alg: &FilteredAlgebra, exps: &[BigInt]) -> FilteredElement {
        let mut acc = alg.one();
        for (i, e) in exps.iter().enumerate() {
            let base = match e.sign() {
                Sign::NoSign => continue,
                Sign::Plus => &self.images[i],
                Sign::Minus => &self.inverses[i],
            };
            let factor = alg.pow_big(base, e.magnitude()).expect("same algebra");
            acc = alg.mul(&acc, &factor).expect("same algebra");
        }
        acc
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }
}

/// A group together with a multiplicative map of its generators into a
/// truncated algebra, extended to all normal forms by
/// `g_1^{e_1} ... g_n^{e_n} ↦ u_1^{e_1} ... u_n^{e_n}`.
#[derive(Debug, Clone)]
pub struct GroupAlgebra {
    pres: Arc<PcPresentation>,
    algebra: FilteredAlgebra,
    map: GeneratorMap,
}

impl GroupAlgebra {
    pub fn new(pres: Arc<PcPresentation>, algebra: FilteredAlgebra, map: GeneratorMap) -> Result<Self, AlgebraError> {
        if map.len() != pres.len() {
            return Err(AlgebraError::ImageCount {
                expected: pres.len(),
                got: map.len(),
            });
        }
        Ok(Self { pres, algebra, map })
    }

    pub fn presentation(&self) -> &PcPresentation {
        &self.pres
    }

    pub fn presentation_arc(&self) -> Arc<PcPresentation> {
        Arc::clone(&self.pres)
    }

    pub fn algebra(&self) -> &FilteredAlgebra {
        &self.algebra
    }

    pub fn map(&self) -> &GeneratorMap {
        &self.map
    }

    pub fn cutoff(&self) -> u64 {
        self.algebra.cutoff()
    }

    /// The unit realizing `g`.
    pub fn embed(&self, g: &ExponentVector) -> FilteredElement {
        self.map.embed(&self.algebra, g.exponents())
    }

    /// `embed(g) - 1`.
    pub fn augmentation(&self, g: &ExponentVector) -> FilteredElement {
        let alg = &self.algebra;
        alg.sub(&self.embed(g), &alg.one()).expect("same algebra")
    }

    /// `value(embed(g) - 1)`; infinite means the value exceeds the cutoff.
    pub fn weight(&self, g: &ExponentVector) -> Value {
        self.algebra.value(&self.augmentation(g))
    }

    /// Normal form of a product of generator powers, for convenience.
    pub fn element(&self, exps: &[i64]) -> ExponentVector {
        self.pres.normalize(ExponentVector::from_i64(exps).exponents())
    }

    /// Group element `g_i^e`.
    pub fn generator_power(&self, i: usize, e: &BigInt) -> ExponentVector {
        self.pres.power(&self.pres.generator(i), e)
    }
}

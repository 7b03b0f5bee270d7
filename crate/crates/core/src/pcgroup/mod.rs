//! Polycyclic groups given by consistent polycyclic presentations.
//!
//! Generators `g_1, ..., g_n` (0-based in code) span a normal series
//! `G = G_1 ⊇ G_2 ⊇ ... ⊇ G_n ⊇ 1` with `G_j = <g_j, ..., g_n>`; each factor
//! is cyclic, either infinite or of order `p^m`. Elements are stored in the
//! normal form `g_1^{e_1} ... g_n^{e_n}` as an [`ExponentVector`].

mod collect;
mod consistency;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use consistency::ConsistencyReport;

/// A word as a list of syllables `(generator, exponent)`.
pub type Word = Vec<(usize, BigInt)>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PcError {
    #[error("generator index {index} out of range (n = {n})")]
    BadGenerator { index: usize, n: usize },
    #[error("relative order {order} of generator {generator} is not a power of {p}")]
    BadRelativeOrder { generator: String, order: u64, p: u32 },
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("power relation for {generator} must lie in the subgroup of deeper generators")]
    PowerOutOfRange { generator: String },
    #[error("power relation given for {generator}, which has infinite order")]
    PowerOnInfinite { generator: String },
    #[error("conjugate of {target} by {by} must lie in <{target}, ...>")]
    ConjugateOutOfRange { by: String, target: String },
    #[error("conjugation by {by} does not induce an automorphism on the factor of {target}")]
    NotAnAutomorphism { by: String, target: String },
    #[error("relation ({i}, {j}) must have i < j")]
    BadPair { i: usize, j: usize },
    #[error("inconsistent presentation: {reason}; witness ({x}) ({y}) ({z})")]
    InconsistentPresentation {
        reason: String,
        x: ExponentVector,
        y: ExponentVector,
        z: ExponentVector,
    },
}

/// Normal form of a group element: one exponent per generator.
///
/// Exponents of finite-order generators lie in `[0, order)`; exponents of
/// infinite-order generators are arbitrary integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentVector(Vec<BigInt>);

impl ExponentVector {
    pub fn identity(n: usize) -> Self {
        Self(vec![BigInt::zero(); n])
    }

    pub fn from_i64(exps: &[i64]) -> Self {
        Self(exps.iter().map(|&e| BigInt::from(e)).collect())
    }

    /// Unit vector `g_i^e` in a group with `n` generators.
    pub fn generator_power(n: usize, i: usize, e: impl Into<BigInt>) -> Self {
        let mut v = Self::identity(n);
        v.0[i] = e.into();
        v
    }

    pub fn exponents(&self) -> &[BigInt] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Index of the first generator with nonzero exponent.
    pub fn leading_generator(&self) -> Option<usize> {
        self.0.iter().position(|e| !e.is_zero())
    }

    pub fn syllables(&self) -> Word {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, e)| !e.is_zero())
            .map(|(i, e)| (i, e.clone()))
            .collect()
    }

    /// Wrap raw exponents; whether they form a normal form depends on the
    /// presentation (see [`PcPresentation::is_normal_form`]).
    pub fn from_exponents(v: Vec<BigInt>) -> Self {
        Self(v)
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

/// Relative order of a generator modulo the next term of the series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RelativeOrder {
    Infinite,
    /// Order `p^m` with `m >= 1`.
    PrimePower(u32),
}

#[derive(Debug, Clone)]
pub struct PcPresentation {
    p: u32,
    names: Vec<String>,
    orders: Vec<RelativeOrder>,
    /// `order_big[i]` is `p^m` for finite generators.
    order_big: Vec<Option<BigInt>>,
    /// `powers[i]`: normal form of `g_i^{order_i}` (identity when infinite).
    powers: Vec<ExponentVector>,
    /// `conj[i][j]` for `j > i`: normal form of `g_i^{-1} g_j g_i`.
    conj: Vec<Vec<ExponentVector>>,
    /// `conj_inv[i][j]` for `j > i`: normal form of `g_i g_j g_i^{-1}`.
    conj_inv: Vec<Vec<ExponentVector>>,
    /// `commutes[i][j]`: both conjugates of `g_j` by `g_i^{±1}` equal `g_j`.
    commutes: Vec<Vec<bool>>,
}

impl PcPresentation {
    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn relative_orders(&self) -> &[RelativeOrder] {
        &self.orders
    }

    /// `p^m` for a finite generator, `None` for an infinite one.
    pub fn order(&self, i: usize) -> Option<&BigInt> {
        self.order_big[i].as_ref()
    }

    pub fn power_relation(&self, i: usize) -> &ExponentVector {
        &self.powers[i]
    }

    /// Normal form of `g_i^{-1} g_j g_i` (`i < j`).
    pub fn conjugate(&self, i: usize, j: usize) -> &ExponentVector {
        &self.conj[i][j]
    }

    /// Normal form of `g_i g_j g_i^{-1}` (`i < j`).
    pub fn conjugate_inverse(&self, i: usize, j: usize) -> &ExponentVector {
        &self.conj_inv[i][j]
    }

    /// Number of infinite cyclic factors.
    pub fn hirsch_number(&self) -> usize {
        self.orders
            .iter()
            .filter(|o| matches!(o, RelativeOrder::Infinite))
            .count()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.len()).all(|i| (i + 1..self.len()).all(|j| self.commutes[i][j]))
    }

    pub fn is_finite(&self) -> bool {
        self.hirsch_number() == 0
    }

    pub fn identity(&self) -> ExponentVector {
        ExponentVector::identity(self.len())
    }

    pub fn generator(&self, i: usize) -> ExponentVector {
        ExponentVector::generator_power(self.len(), i, 1)
    }

    /// Bring a vector of arbitrary integer exponents into normal form by
    /// collecting the word `g_1^{e_1} ... g_n^{e_n}`.
    pub fn normalize(&self, exps: &[BigInt]) -> ExponentVector {
        let word: Word = exps
            .iter()
            .enumerate()
            .filter(|(_, e)| !e.is_zero())
            .map(|(i, e)| (i, e.clone()))
            .collect();
        self.collect(&word)
    }

    /// Collect a word of signed, 1-based generator letters: `k` means `g_k`
    /// and `-k` means `g_k^{-1}`.
    pub fn collect_signed(&self, letters: &[i64]) -> Result<ExponentVector, PcError> {
        let mut word = Word::with_capacity(letters.len());
        for &l in letters {
            let idx = l.unsigned_abs() as usize;
            if l == 0 || idx > self.len() {
                return Err(PcError::BadGenerator {
                    index: idx,
                    n: self.len(),
                });
            }
            word.push((idx - 1, BigInt::from(l.signum())));
        }
        Ok(self.collect(&word))
    }

    /// Whether `x` is a valid normal form for this presentation.
    pub fn is_normal_form(&self, x: &ExponentVector) -> bool {
        x.len() == self.len()
            && x.0.iter().enumerate().all(|(i, e)| match &self.order_big[i] {
                Some(ord) => !e.is_negative() && e < ord,
                None => true,
            })
    }

    /// Direct product: generators of `self` followed by those of `other`,
    /// with the two factors commuting.
    pub fn direct_product(&self, other: &PcPresentation) -> Result<PcPresentation, PcError> {
        if self.p != other.p {
            return Err(PcError::NotPrime(other.p));
        }
        let n1 = self.len();
        let mut b = PcPresentationBuilder::new(self.p);
        for (name, ord) in self.names.iter().zip(&self.orders) {
            b = b.generator(name, *ord);
        }
        for (name, ord) in other.names.iter().zip(&other.orders) {
            b = b.generator(name, *ord);
        }
        let shift = |w: Word, by: usize| -> Word { w.into_iter().map(|(i, e)| (i + by, e)).collect() };
        for i in 0..n1 {
            if self.order_big[i].is_some() {
                b = b.power(i, self.powers[i].syllables());
            }
            for j in i + 1..n1 {
                b = b.conjugate(i, j, self.conj[i][j].syllables()).conjugate_inverse(
                    i,
                    j,
                    self.conj_inv[i][j].syllables(),
                );
            }
        }
        for i in 0..other.len() {
            if other.order_big[i].is_some() {
                b = b.power(i + n1, shift(other.powers[i].syllables(), n1));
            }
            for j in i + 1..other.len() {
                b = b
                    .conjugate(i + n1, j + n1, shift(other.conj[i][j].syllables(), n1))
                    .conjugate_inverse(i + n1, j + n1, shift(other.conj_inv[i][j].syllables(), n1));
            }
        }
        b.build()
    }
}

/// Incremental construction of a [`PcPresentation`].
///
/// Relations are given as arbitrary words; `build` collects them to normal
/// form bottom-up. Missing conjugation relations mean the two generators
/// commute. Missing inverse conjugates `g_i g_j g_i^{-1}` are derived from
/// the forward ones.
#[derive(Debug, Clone)]
pub struct PcPresentationBuilder {
    p: u32,
    names: Vec<String>,
    orders: Vec<RelativeOrder>,
    powers: BTreeMap<usize, Word>,
    conj: BTreeMap<(usize, usize), Word>,
    conj_inv: BTreeMap<(usize, usize), Word>,
}

impl PcPresentationBuilder {
    pub fn new(p: u32) -> Self {
        Self {
            p,
            names: Vec::new(),
            orders: Vec::new(),
            powers: BTreeMap::new(),
            conj: BTreeMap::new(),
            conj_inv: BTreeMap::new(),
        }
    }

    pub fn generator(mut self, name: impl Into<String>, order: RelativeOrder) -> Self {
        self.names.push(name.into());
        self.orders.push(order);
        self
    }

    /// `g_i^{order_i} = word`.
    pub fn power(mut self, i: usize, word: Word) -> Self {
        self.powers.insert(i, word);
        self
    }

    /// `g_i^{-1} g_j g_i = word`.
    pub fn conjugate(mut self, i: usize, j: usize, word: Word) -> Self {
        self.conj.insert((i, j), word);
        self
    }

    /// `g_i g_j g_i^{-1} = word`.
    pub fn conjugate_inverse(mut self, i: usize, j: usize, word: Word) -> Self {
        self.conj_inv.insert((i, j), word);
        self
    }

    pub fn build(self) -> Result<PcPresentation, PcError> {
        let n = self.names.len();
        if !crate::field::PrimeField::new(self.p as u64).is_ok() {
            return Err(PcError::NotPrime(self.p));
        }
        let p_big = BigInt::from(self.p);
        let order_big: Vec<Option<BigInt>> = self
            .orders
            .iter()
            .map(|o| match o {
                RelativeOrder::Infinite => None,
                RelativeOrder::PrimePower(m) => Some(num_traits::pow(p_big.clone(), *m as usize)),
            })
            .collect();
        for (i, o) in self.orders.iter().enumerate() {
            if matches!(o, RelativeOrder::PrimePower(0)) {
                return Err(PcError::BadRelativeOrder {
                    generator: self.names[i].clone(),
                    order: 1,
                    p: self.p,
                });
            }
        }
        let check_word = |w: &Word| -> Result<(), PcError> {
            for (g, _) in w {
                if *g >= n {
                    return Err(PcError::BadGenerator { index: *g, n });
                }
            }
            Ok(())
        };
        for (&i, w) in &self.powers {
            if i >= n {
                return Err(PcError::BadGenerator { index: i, n });
            }
            check_word(w)?;
            if order_big[i].is_none() {
                return Err(PcError::PowerOnInfinite {
                    generator: self.names[i].clone(),
                });
            }
        }
        for (&(i, j), w) in self.conj.iter().chain(self.conj_inv.iter()) {
            if i >= j {
                return Err(PcError::BadPair { i, j });
            }
            if j >= n {
                return Err(PcError::BadGenerator { index: j, n });
            }
            check_word(w)?;
        }

        // Rows are filled from the deepest generator upward; collecting inside
        // G_{i+1} only reads rows > i, which are already complete.
        let mut pres = PcPresentation {
            p: self.p,
            names: self.names.clone(),
            orders: self.orders.clone(),
            order_big,
            powers: vec![ExponentVector::identity(n); n],
            conj: vec![vec![ExponentVector::identity(n); n]; n],
            conj_inv: vec![vec![ExponentVector::identity(n); n]; n],
            commutes: vec![vec![true; n]; n],
        };
        for i in (0..n).rev() {
            let name = |k: usize| self.names[k].clone();
            if let Some(w) = self.powers.get(&i) {
                let nf = pres.collect(w);
                if nf.0[..=i].iter().any(|e| !e.is_zero()) {
                    return Err(PcError::PowerOutOfRange { generator: name(i) });
                }
                pres.powers[i] = nf;
            }
            for j in i + 1..n {
                let gj = pres.generator(j);
                let fwd = match self.conj.get(&(i, j)) {
                    Some(w) => pres.collect(w),
                    None => gj.clone(),
                };
                pres.check_factor_automorphism(&fwd, i, j)?;
                pres.conj[i][j] = fwd;
            }
            for j in (i + 1..n).rev() {
                let bwd = match self.conj_inv.get(&(i, j)) {
                    Some(w) => pres.collect(w),
                    None => pres.derive_inverse_conjugate(i, j)?,
                };
                pres.check_factor_automorphism(&bwd, i, j)?;
                pres.conj_inv[i][j] = bwd;
            }
            for j in i + 1..n {
                let gj = pres.generator(j);
                pres.commutes[i][j] = pres.conj[i][j] == gj && pres.conj_inv[i][j] == gj;
            }
        }
        Ok(pres)
    }
}

impl PcPresentation {
    /// A conjugate of `g_j` must lie in `G_j` and map `g_j` to a generator of
    /// the cyclic factor `G_j / G_{j+1}`.
    fn check_factor_automorphism(&self, image: &ExponentVector, i: usize, j: usize) -> Result<(), PcError> {
        if image.0[..j].iter().any(|e| !e.is_zero()) {
            return Err(PcError::ConjugateOutOfRange {
                by: self.names[i].clone(),
                target: self.names[j].clone(),
            });
        }
        let lead = &image.0[j];
        let ok = match &self.order_big[j] {
            None => lead.abs().is_one(),
            Some(_) => !lead.is_multiple_of(&BigInt::from(self.p)),
        };
        if ok {
            Ok(())
        } else {
            Err(PcError::NotAnAutomorphism {
                by: self.names[i].clone(),
                target: self.names[j].clone(),
            })
        }
    }

    /// Solve `g_i^{-1} y g_i = g_j` for `y` by descending the series; uses
    /// the forward conjugates of row `i` and the already derived inverses
    /// for deeper targets.
    fn derive_inverse_conjugate(&self, i: usize, j: usize) -> Result<ExponentVector, PcError> {
        let n = self.len();
        let fwd = &self.conj[i][j];
        let lead = &fwd.0[j];
        let e = match &self.order_big[j] {
            None => lead.clone(),
            Some(ord) => {
                let ext = lead.extended_gcd(ord);
                if !ext.gcd.is_one() {
                    return Err(PcError::NotAnAutomorphism {
                        by: self.names[i].clone(),
                        target: self.names[j].clone(),
                    });
                }
                ext.x.mod_floor(ord)
            }
        };
        let y0 = ExponentVector::generator_power(n, j, e.clone());
        let image_y0 = self.power(fwd, &e);
        let residual = self.multiply(&self.inverse(&image_y0), &self.generator(j));
        if residual.0[..=j].iter().any(|x| !x.is_zero()) {
            return Err(PcError::NotAnAutomorphism {
                by: self.names[i].clone(),
                target: self.names[j].clone(),
            });
        }
        let mut corr = self.identity();
        for (l, r) in residual.syllables() {
            corr = self.multiply(&corr, &self.power(&self.conj_inv[i][l], &r));
        }
        Ok(self.multiply(&y0, &corr))
    }
}

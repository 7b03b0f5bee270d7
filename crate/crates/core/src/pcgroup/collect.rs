//! Collection from the left.
//!
//! The partial result is a normal form `r`; pending syllables sit on an
//! explicit stack. Multiplying `r = u · g_k^{r_k} · v` (with `v ∈ G_{k+1}`) by
//! `g_k^s` gives `u · g_k^{r_k+s} · v^{g_k^s}`, so the tail `v` is conjugated
//! and pushed back on the stack, and the power relation fires when the
//! exponent of a finite generator leaves `[0, order)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{ExponentVector, PcPresentation, Word};

impl PcPresentation {
    /// Normal form of a word of syllables.
    pub fn collect(&self, word: &[(usize, BigInt)]) -> ExponentVector {
        let mut r = vec![BigInt::zero(); self.len()];
        self.collect_into(&mut r, word.iter().rev().cloned().collect());
        ExponentVector::from_exponents(r)
    }

    fn collect_into(&self, r: &mut [BigInt], mut stack: Word) {
        let n = self.len();
        while let Some((k, s)) = stack.pop() {
            if s.is_zero() {
                continue;
            }
            let tail: Vec<usize> = (k + 1..n).filter(|&j| !r[j].is_zero()).collect();
            let commuting = tail.iter().all(|&j| self.commutes[k][j]);
            // Past a non-commuting tail we advance one step at a time.
            let step = if commuting {
                s.clone()
            } else if s.is_positive() {
                BigInt::one()
            } else {
                -BigInt::one()
            };
            let rest = &s - &step;
            if !rest.is_zero() {
                stack.push((k, rest));
            }
            let mut exp = &r[k] + &step;
            let mut wraps = BigInt::zero();
            if let Some(ord) = &self.order_big[k] {
                let (q, rem) = exp.div_mod_floor(ord);
                wraps = q;
                exp = rem;
            }
            r[k] = exp;
            if commuting && wraps.is_zero() {
                continue;
            }
            let mut pending = Word::new();
            if !wraps.is_zero() {
                pending.extend(self.power_syllables(&self.powers[k], &wraps));
            }
            for j in tail {
                let e = std::mem::take(&mut r[j]);
                if commuting {
                    pending.push((j, e));
                } else {
                    let image = if step.is_positive() {
                        &self.conj[k][j]
                    } else {
                        &self.conj_inv[k][j]
                    };
                    pending.extend(self.power_syllables(image, &e));
                }
            }
            stack.extend(pending.into_iter().rev());
        }
    }

    /// Syllables of `x^e`, avoiding a full power computation when `x` is a
    /// single syllable.
    fn power_syllables(&self, x: &ExponentVector, e: &BigInt) -> Word {
        let syl = x.syllables();
        if syl.len() == 1 {
            // The collector reduces finite exponents itself.
            return vec![(syl[0].0, &syl[0].1 * e)];
        }
        self.power(x, e).syllables()
    }

    pub fn multiply(&self, x: &ExponentVector, y: &ExponentVector) -> ExponentVector {
        let mut r = x.exponents().to_vec();
        let stack: Word = y.syllables().into_iter().rev().collect();
        self.collect_into(&mut r, stack);
        ExponentVector::from_exponents(r)
    }

    pub fn inverse(&self, x: &ExponentVector) -> ExponentVector {
        let word: Word = x.syllables().into_iter().rev().map(|(i, e)| (i, -e)).collect();
        self.collect(&word)
    }

    /// `x^e` by square-and-multiply; negative `e` inverts first.
    pub fn power(&self, x: &ExponentVector, e: &BigInt) -> ExponentVector {
        if e.is_zero() || x.is_identity() {
            return self.identity();
        }
        let (mut base, mut exp) = if e.is_negative() {
            (self.inverse(x), -e)
        } else {
            (x.clone(), e.clone())
        };
        let syl = base.syllables();
        if syl.len() == 1 {
            return self.collect(&[(syl[0].0, &syl[0].1 * &exp)]);
        }
        let mut acc = self.identity();
        let two = BigInt::from(2);
        while !exp.is_zero() {
            if exp.is_odd() {
                acc = self.multiply(&acc, &base);
            }
            exp = exp.div_floor(&two);
            if !exp.is_zero() {
                base = self.multiply(&base, &base);
            }
        }
        acc
    }

    pub fn power_i64(&self, x: &ExponentVector, e: i64) -> ExponentVector {
        self.power(x, &BigInt::from(e))
    }

    /// `[x, y] = x^{-1} y^{-1} x y`.
    pub fn commutator(&self, x: &ExponentVector, y: &ExponentVector) -> ExponentVector {
        let xy = self.multiply(x, y);
        let yx = self.multiply(y, x);
        self.multiply(&self.inverse(&yx), &xy)
    }

    /// `x^{-1} y x`.
    pub fn conjugate_by(&self, y: &ExponentVector, x: &ExponentVector) -> ExponentVector {
        self.multiply(&self.multiply(&self.inverse(x), y), x)
    }
}

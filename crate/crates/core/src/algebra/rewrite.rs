//! Normal forms of products by rewriting.
//!
//! A product of standard monomials is built by right-multiplying with one
//! variable at a time. When the current monomial ends in `t_j` with `j > i`,
//! the out-of-order pair `t_j t_i` is replaced by `t_i t_j + tail(i, j)`;
//! when an exponent reaches the cap of its variable, the power tail fires.
//! Every rewrite keeps or raises the value, so terms above the cutoff are
//! dropped as soon as they appear.

use std::collections::HashMap;
use std::sync::Mutex;

use super::element::{Monomial, Terms};
use super::FilteredAlgebra;
use crate::field::PrimeField;

pub(crate) fn add_scaled(field: PrimeField, acc: &mut Terms, src: &Terms, c: u32) {
    if c == 0 {
        return;
    }
    for (m, &d) in src {
        let prod = field.mul(c, d);
        add_term(field, acc, m, prod);
    }
}

pub(crate) fn add_term(field: PrimeField, acc: &mut Terms, m: &Monomial, c: u32) {
    if c == 0 {
        return;
    }
    match acc.get_mut(m) {
        Some(v) => {
            *v = field.add(*v, c);
            if *v == 0 {
                acc.remove(m);
            }
        }
        None => {
            acc.insert(m.clone(), c);
        }
    }
}

/// Entries kept before the cache is flushed.
const CACHE_LIMIT: usize = 1 << 20;

/// Memo of `a · b` for standard monomials, valid for the lifetime of an
/// algebra since its rules never change after construction.
#[derive(Debug, Default)]
pub(crate) struct ProductCache(Mutex<HashMap<(Monomial, Monomial), Terms>>);

impl ProductCache {
    fn get(&self, key: &(Monomial, Monomial)) -> Option<Terms> {
        self.0.lock().expect("cache lock").get(key).cloned()
    }

    fn put(&self, key: (Monomial, Monomial), value: Terms) {
        let mut map = self.0.lock().expect("cache lock");
        if map.len() >= CACHE_LIMIT {
            map.clear();
        }
        map.insert(key, value);
    }
}

/// Multiplication context; memoizes `monomial · t_i` for the lifetime of one
/// top-level operation.
pub(crate) struct Rewriter<'a> {
    alg: &'a FilteredAlgebra,
    memo: HashMap<(Monomial, usize), Terms>,
}

impl<'a> Rewriter<'a> {
    pub(crate) fn new(alg: &'a FilteredAlgebra) -> Self {
        Self {
            alg,
            memo: HashMap::new(),
        }
    }

    fn weights(&self) -> &[u64] {
        &self.alg.weights
    }

    /// Canonical form of `m · t_i`.
    fn times_var(&mut self, m: &Monomial, i: usize) -> Terms {
        let alg = self.alg;
        let d = alg.cutoff;
        if m.value + alg.weights[i] > d {
            return Terms::new();
        }
        let key = (m.clone(), i);
        if let Some(r) = self.memo.get(&key) {
            return r.clone();
        }
        let field = alg.field;
        let mut out = Terms::new();
        match m.last_variable() {
            Some(j) if j > i => {
                // m = m_lo · t_j and t_j t_i = t_i t_j + tail(i, j)
                let mut lo = m.exps.clone();
                lo[j] -= 1;
                let m_lo = Monomial {
                    value: m.value - alg.weights[j],
                    exps: lo,
                };
                let left = self.times_var(&m_lo, i);
                for (t, c) in &left {
                    let r = self.times_var(t, j);
                    add_scaled(field, &mut out, &r, *c);
                }
                if let Some(tail) = alg.rewrite.tails.get(&(i, j)) {
                    for (q, c) in tail {
                        if m_lo.value + q.value > d {
                            continue;
                        }
                        let r = self.monomial_product(&m_lo, q);
                        add_scaled(field, &mut out, &r, *c);
                    }
                }
            }
            _ => {
                let mut exps = m.exps.clone();
                exps[i] += 1;
                if alg.vars[i].cap == Some(exps[i]) {
                    exps[i] = 0;
                    let prefix = Monomial::new(exps, self.weights());
                    if let Some(ptail) = alg.rewrite.power_tails.get(&i) {
                        for (q, c) in ptail {
                            if prefix.value + q.value > d {
                                continue;
                            }
                            let r = self.monomial_product(&prefix, q);
                            add_scaled(field, &mut out, &r, *c);
                        }
                    }
                } else {
                    out.insert(
                        Monomial {
                            value: m.value + alg.weights[i],
                            exps,
                        },
                        1,
                    );
                }
            }
        }
        self.memo.insert(key, out.clone());
        out
    }

    /// Canonical form of `a · b` for standard monomials `a`, `b`.
    pub(crate) fn monomial_product(&mut self, a: &Monomial, b: &Monomial) -> Terms {
        if a.value + b.value > self.alg.cutoff {
            return Terms::new();
        }
        let key = (a.clone(), b.clone());
        if let Some(r) = self.alg.products.get(&key) {
            return r;
        }
        let r = self.product_uncached(a, b);
        self.alg.products.put(key, r.clone());
        r
    }

    fn product_uncached(&mut self, a: &Monomial, b: &Monomial) -> Terms {
        let field = self.alg.field;
        let mut cur = Terms::new();
        cur.insert(a.clone(), 1);
        for (i, &e) in b.exps.iter().enumerate() {
            for _ in 0..e {
                let mut next = Terms::new();
                for (m, c) in &cur {
                    let r = self.times_var(m, i);
                    add_scaled(field, &mut next, &r, *c);
                }
                cur = next;
                if cur.is_empty() {
                    return cur;
                }
            }
        }
        cur
    }

    pub(crate) fn mul_terms(&mut self, x: &Terms, y: &Terms) -> Terms {
        let field = self.alg.field;
        let d = self.alg.cutoff;
        let mut acc = Terms::new();
        for (a, ca) in x {
            for (b, cb) in y {
                if a.value + b.value > d {
                    // y is sorted by value
                    break;
                }
                let r = self.monomial_product(a, b);
                add_scaled(field, &mut acc, &r, field.mul(*ca, *cb));
            }
        }
        acc
    }
}

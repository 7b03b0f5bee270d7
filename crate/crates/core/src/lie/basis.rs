use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use super::{bracket_ring, p_power_ring, HomogeneousElement};
use crate::algebra::{FilteredAlgebra, FilteredElement};

/// Per-degree row-reduced bases of a graded subspace.
///
/// `rows[d]` is in reduced echelon form: every row has leading coefficient
/// 1 on its pivot monomial (its first monomial in storage order), and no
/// other row has a nonzero coefficient there. Rows are sorted by pivot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedBasis {
    cutoff: u64,
    rows: BTreeMap<u64, Vec<FilteredElement>>,
    /// The independent elements in the order they were added; they span
    /// the same space as the rows.
    spanning: BTreeMap<u64, Vec<HomogeneousElement>>,
}

impl GradedBasis {
    pub fn new(cutoff: u64) -> Self {
        Self {
            cutoff,
            rows: BTreeMap::new(),
            spanning: BTreeMap::new(),
        }
    }

    pub fn cutoff(&self) -> u64 {
        self.cutoff
    }

    /// Reduce `v` against the rows of degree `d`.
    fn reduce(&self, alg: &FilteredAlgebra, d: u64, v: &FilteredElement) -> FilteredElement {
        let mut v = v.clone();
        if let Some(rows) = self.rows.get(&d) {
            for row in rows {
                let pivot = row.terms().next().expect("rows are nonzero").0;
                let c = v.coefficient(pivot.exponents());
                if c != 0 {
                    let scaled = alg.scale(c as i64, row).expect("same algebra");
                    v = alg.sub(&v, &scaled).expect("same algebra");
                }
            }
        }
        v
    }

    /// Whether `x` lies in the span of degree `x.degree()`.
    pub fn contains(&self, alg: &FilteredAlgebra, x: &HomogeneousElement) -> bool {
        self.reduce(alg, x.degree(), x.body()).is_zero()
    }

    /// Add `x` if it is independent of what is already there; returns
    /// whether the dimension grew.
    pub fn insert(&mut self, alg: &FilteredAlgebra, x: &HomogeneousElement) -> bool {
        let d = x.degree();
        let v = self.reduce(alg, d, x.body());
        let (pivot, lead) = match v.terms().next() {
            Some((m, c)) => (m.clone(), c),
            None => return false,
        };
        let inv = alg.field().inv(lead).expect("nonzero coefficient");
        let v = alg.scale(inv as i64, &v).expect("same algebra");
        let rows = self.rows.entry(d).or_default();
        for row in rows.iter_mut() {
            let c = row.coefficient(pivot.exponents());
            if c != 0 {
                let scaled = alg.scale(c as i64, &v).expect("same algebra");
                *row = alg.sub(row, &scaled).expect("same algebra");
            }
        }
        let at = rows.partition_point(|r| r.terms().next().expect("nonzero").0 < &pivot);
        rows.insert(at, v);
        self.spanning.entry(d).or_default().push(x.clone());
        true
    }

    pub fn dim(&self, d: u64) -> usize {
        self.rows.get(&d).map_or(0, Vec::len)
    }

    /// Nonzero dimensions by degree.
    pub fn dims(&self) -> BTreeMap<u64, usize> {
        self.rows.iter().map(|(&d, r)| (d, r.len())).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.rows.values().map(Vec::len).sum()
    }

    pub fn rows(&self, d: u64) -> &[FilteredElement] {
        self.rows.get(&d).map_or(&[], Vec::as_slice)
    }

    pub fn degrees(&self) -> impl Iterator<Item = u64> + '_ {
        self.rows.keys().copied()
    }

    /// Independent elements of degree `d` in insertion order.
    pub fn spanning(&self, d: u64) -> &[HomogeneousElement] {
        self.spanning.get(&d).map_or(&[], Vec::as_slice)
    }

    fn all_spanning(&self) -> impl Iterator<Item = &HomogeneousElement> {
        self.spanning.values().flatten()
    }
}

/// One line per degree: `d: row; row; ...` in canonical text form.
impl fmt::Display for GradedBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (d, rows) in &self.rows {
            write!(f, "{d}:")?;
            for (i, r) in rows.iter().enumerate() {
                let sep = if i == 0 { " " } else { "; " };
                write!(f, "{sep}{r}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Closure of the span of `seeds` under the ring bracket and the ring
/// `[p]`-map, in degrees up to `cutoff` (at most the algebra's cutoff).
pub fn generate_subalgebra(alg: &FilteredAlgebra, seeds: &[HomogeneousElement], cutoff: u64) -> GradedBasis {
    let cutoff = cutoff.min(alg.cutoff());
    let p = alg.prime() as u64;
    let mut basis = GradedBasis::new(cutoff);
    let mut added: Vec<HomogeneousElement> = Vec::new();
    let mut queue: VecDeque<HomogeneousElement> = seeds.iter().cloned().collect();
    while let Some(x) = queue.pop_front() {
        if x.degree() == 0 || x.degree() > cutoff || x.is_zero() || !basis.insert(alg, &x) {
            continue;
        }
        for y in &added {
            if x.degree() + y.degree() <= cutoff {
                queue.push_back(bracket_ring(alg, &x, y).expect("degree within cutoff"));
            }
        }
        if x.degree() * p <= cutoff {
            queue.push_back(p_power_ring(alg, &x).expect("degree within cutoff"));
        }
        added.push(x);
    }
    basis
}

/// Structural summary of a generated subalgebra. Every field is a
/// statement about degrees up to `cutoff` only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub cutoff: u64,
    pub dims: BTreeMap<u64, usize>,
    pub abelian: bool,
    pub exponent_p: bool,
    pub free_abelian: bool,
    /// `Σ_{d <= D/p} (dim_d - dim of [p]-images in degree d)`.
    pub rank_estimate: usize,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "up to degree {}:", self.cutoff)?;
        writeln!(f, "  abelian: {}", self.abelian)?;
        writeln!(f, "  exponent p: {}", self.exponent_p)?;
        writeln!(f, "  free abelian: {}", self.free_abelian)?;
        write!(f, "  rank estimate: {}", self.rank_estimate)
    }
}

pub fn classify(alg: &FilteredAlgebra, basis: &GradedBasis) -> Classification {
    let cutoff = basis.cutoff();
    let p = alg.prime() as u64;
    let elems: Vec<&HomogeneousElement> = basis.all_spanning().collect();

    let mut abelian = true;
    'pairs: for (i, x) in elems.iter().enumerate() {
        for y in &elems[i + 1..] {
            if x.degree() + y.degree() <= cutoff && !bracket_ring(alg, x, y).expect("within cutoff").is_zero() {
                abelian = false;
                break 'pairs;
            }
        }
    }

    let mut exponent_p = true;
    let mut injective = true;
    let mut images = GradedBasis::new(cutoff);
    for d in basis.degrees() {
        if d * p > cutoff {
            continue;
        }
        for x in basis.spanning(d) {
            let y = p_power_ring(alg, x).expect("within cutoff");
            if !y.is_zero() {
                exponent_p = false;
            }
            if !images.insert(alg, &y) {
                injective = false;
            }
        }
    }

    let rank_estimate = basis
        .degrees()
        .filter(|&d| d * p <= cutoff)
        .map(|d| basis.dim(d) - images.dim(d))
        .sum();

    Classification {
        cutoff,
        dims: basis.dims(),
        abelian,
        exponent_p,
        free_abelian: abelian && injective,
        rank_estimate,
    }
}

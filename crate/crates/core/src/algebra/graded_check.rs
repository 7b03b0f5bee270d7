use super::{AlgebraError, FilteredAlgebra};
use crate::sample;
use crate::value::Value;

/// Outcome of [`FilteredAlgebra::check_graded_polynomial`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedReport {
    pub samples: usize,
    pub seed: u64,
    /// False when some capped variable is nilpotent in `gr`; the product
    /// rule is then checked only as an inequality.
    pub domain_checked: bool,
    /// Pairs whose value sum was within the cutoff.
    pub product_checks: usize,
    /// Least `value(xy - yx) - value(x) - value(y)` seen with a finite
    /// commutator value.
    pub min_commutator_margin: Option<i64>,
}

impl FilteredAlgebra {
    /// Sample pairs `x, y` and check that `gr` behaves like a commutative
    /// polynomial ring: `value(xy) = value(x) + value(y)` and
    /// `value(xy - yx) > value(x) + value(y)` whenever the sum is at most
    /// the cutoff.
    pub fn check_graded_polynomial(&self, sample_count: usize, seed: u64) -> Result<GradedReport, AlgebraError> {
        let mut rng = sample::rng(seed);
        let domain = !self.has_nilpotent_caps();
        let half = (self.cutoff / 2).max(1);
        let mut report = GradedReport {
            samples: sample_count,
            seed,
            domain_checked: domain,
            product_checks: 0,
            min_commutator_margin: None,
        };
        if self.is_empty() {
            return Ok(report);
        }
        for _ in 0..sample_count {
            let x = self.random_element(&mut rng, 4, half);
            let y = self.random_element(&mut rng, 4, half);
            let (vx, vy) = (self.value(&x), self.value(&y));
            let sum = vx.plus(vy);
            if sum > Value::Finite(self.cutoff) {
                continue;
            }
            report.product_checks += 1;
            let vxy = self.value(&self.mul(&x, &y)?);
            let product_ok = if domain { vxy == sum } else { vxy >= sum };
            if !product_ok {
                return Err(AlgebraError::GradedCheckFailed {
                    check: format!("value(xy) = {vxy}, expected {sum}"),
                    x: x.to_string(),
                    y: y.to_string(),
                });
            }
            let vc = self.value(&self.commutator(&x, &y)?);
            if vc <= sum {
                return Err(AlgebraError::GradedCheckFailed {
                    check: format!("value(xy - yx) = {vc} is not above {sum}"),
                    x: x.to_string(),
                    y: y.to_string(),
                });
            }
            if let Some(m) = vc.margin_over(sum) {
                report.min_commutator_margin = Some(report.min_commutator_margin.map_or(m, |old| old.min(m)));
            }
        }
        Ok(report)
    }
}

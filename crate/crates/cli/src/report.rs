//! Report types and their text rendering. Field names are stable; see
//! `docs/report-schema.md`.

use std::fmt::{self, Write as _};

use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub scenario: String,
    pub prime: u32,
    pub cutoff: u64,
    pub seed: u64,
    pub group: GroupInfo,
    /// Generator weights in polycyclic order; absent when the group comes
    /// with its own realization.
    pub schedule: Option<Vec<WeightEntry>>,
    pub build: BuildInfo,
    pub components: Vec<ComponentRow>,
    pub lie: Option<LieInfo>,
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupInfo {
    pub description: String,
    pub generators: Vec<String>,
    /// `"inf"` or the relative order as a decimal string.
    pub relative_orders: Vec<String>,
    pub hirsch_number: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightEntry {
    pub generator: String,
    pub weight: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BuildInfo {
    pub ok: bool,
    pub error: Option<String>,
    pub steps: Vec<StepInfo>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StepInfo {
    pub generator: String,
    pub kind: String,
    pub variable: usize,
    pub weight: u64,
    pub regime: Option<String>,
    /// Value of `s^(p^m) - 1`; `null` when infinite or not applicable.
    pub power_value: Option<u64>,
    pub margins: Vec<MarginInfo>,
    /// The log line as printed in text reports.
    pub line: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MarginInfo {
    pub target: String,
    pub direction: String,
    /// `null` when the conjugate agrees with the generator up to the cutoff.
    pub margin: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentRow {
    pub element: String,
    /// `null` when `element - 1` vanishes up to the cutoff.
    pub degree: Option<u64>,
    pub body: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LieInfo {
    pub seeds: String,
    pub dimensions: Vec<DimensionRow>,
    pub basis: Vec<BasisRow>,
    pub classification: ClassificationInfo,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DimensionRow {
    pub degree: u64,
    pub dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BasisRow {
    pub degree: u64,
    pub rows: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationInfo {
    /// Every statement below holds for degrees up to this bound only.
    pub up_to_degree: u64,
    pub abelian: bool,
    pub exponent_p: bool,
    pub free_abelian: bool,
    pub rank_estimate: usize,
    pub hirsch_number: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn pass(b: bool) -> &'static str {
    if b {
        "PASS"
    } else {
        "FAIL"
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "scenario: {}", self.scenario)?;
        writeln!(f, "prime: {}", self.prime)?;
        writeln!(f, "cutoff: {}", self.cutoff)?;
        writeln!(f, "seed: {}", self.seed)?;
        let g = &self.group;
        writeln!(
            f,
            "group: {}; generators {}; relative orders {}; hirsch number {}",
            g.description,
            g.generators.join(" "),
            g.relative_orders.join(" "),
            g.hirsch_number
        )?;
        match &self.schedule {
            Some(s) => {
                let mut line = String::new();
                for (i, w) in s.iter().enumerate() {
                    let sep = if i == 0 { "" } else { " " };
                    let _ = write!(line, "{sep}{}={}", w.generator, w.weight);
                }
                writeln!(f, "schedule: {line}")?;
            }
            None => writeln!(f, "schedule: built in")?,
        }

        writeln!(f)?;
        match &self.build.error {
            None => writeln!(f, "build: ok")?,
            Some(e) => writeln!(f, "build: failed: {e}")?,
        }
        for s in &self.build.steps {
            writeln!(f, "  {}", s.line)?;
        }

        if !self.components.is_empty() {
            writeln!(f)?;
            writeln!(f, "components:")?;
            for c in &self.components {
                match (&c.degree, &c.body) {
                    (Some(d), Some(b)) => writeln!(f, "  {}: [{d}] {b}", c.element)?,
                    _ => writeln!(f, "  {}: beyond cutoff", c.element)?,
                }
            }
        }

        if let Some(lie) = &self.lie {
            writeln!(f)?;
            writeln!(f, "lie algebra (seeds: {}):", lie.seeds)?;
            let dims: Vec<String> = lie
                .dimensions
                .iter()
                .map(|r| format!("{}:{}", r.degree, r.dim))
                .collect();
            writeln!(f, "  dimensions: {}", dims.join(" "))?;
            writeln!(f, "  basis:")?;
            for row in &lie.basis {
                writeln!(f, "    {}: {}", row.degree, row.rows.join("; "))?;
            }
            let c = &lie.classification;
            writeln!(
                f,
                "  classification up to degree {} (nothing is claimed above it):",
                c.up_to_degree
            )?;
            writeln!(f, "    abelian: {}", c.abelian)?;
            writeln!(f, "    exponent p: {}", c.exponent_p)?;
            writeln!(f, "    free abelian: {}", c.free_abelian)?;
            writeln!(f, "    rank estimate: {}", c.rank_estimate)?;
            writeln!(f, "    hirsch number: {}", c.hirsch_number)?;
        }

        writeln!(f)?;
        writeln!(f, "checks:")?;
        if self.checks.is_empty() {
            writeln!(f, "  none")?;
        }
        for c in &self.checks {
            writeln!(f, "  {} {}: {}", pass(c.passed), c.name, c.detail)?;
        }
        writeln!(f)?;
        writeln!(f, "result: {}", pass(self.passed))
    }
}

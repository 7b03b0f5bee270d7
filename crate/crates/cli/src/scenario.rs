//! Scenario files: a flat sectioned `key = value` format.
//!
//! ```text
//! [scenario]
//! name = heisenberg
//! prime = 2
//! cutoff = 12
//! seed = 1
//!
//! [group]
//! builtin = heisenberg
//!
//! [schedule]
//! a = 1
//! b = 1
//! z = 3
//!
//! [lie]
//! seeds = generators
//!
//! [checks]
//! graded_polynomial = 500
//! free_abelian = true
//! rank = 3
//! ```
//!
//! An explicit presentation replaces `builtin` in `[group]`:
//!
//! ```text
//! generators = a b z
//! order.a = inf
//! conj.a.b = b z^-1
//! ```
//!
//! `conj.x.y = w` means `x^-1 y x = w`, `conjinv.x.y = w` means
//! `x y x^-1 = w` and `power.x = w` means `x^n = w` for the relative order
//! `n` of `x`. Missing orders are infinite; missing conjugates commute.
//! Lines starting with `#` or `;` are comments.

use std::collections::BTreeSet;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        message: message.into(),
    })
}

/// A word `x^e y^f ...` as (generator name, exponent) pairs.
pub type NamedWord = Vec<(String, i64)>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NamedGroup {
    /// `Z^k`; `Z` is `Z^1`.
    FreeAbelian(usize),
    Heisenberg,
    /// Cyclic group of order `p^m`.
    Cyclic(u32),
    /// The infinite cyclic group with its lower p-series, on a tower of
    /// p-th powers deep enough for the cutoff.
    Tower,
    /// `Z^2` realized by the units `1 + t` and `1 + t + t^p` of `F_p[t]`.
    Units,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ExplicitGroup {
    pub generators: Vec<String>,
    /// Relative order per generator; `None` is infinite.
    pub orders: Vec<Option<u64>>,
    pub powers: Vec<(String, NamedWord)>,
    pub conjugates: Vec<(String, String, NamedWord)>,
    pub inverse_conjugates: Vec<(String, String, NamedWord)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Named(NamedGroup),
    Explicit(ExplicitGroup),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScheduleSpec {
    /// The group's own realization (tower and units).
    Builtin,
    /// Weight per generator name.
    Explicit(Vec<(String, u64)>),
    /// Every weight 1.
    Unit,
    /// Layered powers of 3 with an optional `k`.
    Default3Powers(Option<u32>),
    /// `w_1 = 1`, `w_{i+1} = p w_i + 1` for finite p-groups.
    FinitePGroup,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeedSpec {
    Generators,
    /// All elements with exponents in `[-b, b]`.
    Box(i64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Check {
    GradedPolynomial(usize),
    Axioms(usize),
    Associativity(usize),
    Routes(usize),
    Abelian(bool),
    ExponentP(bool),
    FreeAbelian(bool),
    Rank(usize),
}

impl Check {
    pub fn name(&self) -> &'static str {
        match self {
            Check::GradedPolynomial(_) => "graded_polynomial",
            Check::Axioms(_) => "axioms",
            Check::Associativity(_) => "associativity",
            Check::Routes(_) => "routes",
            Check::Abelian(_) => "abelian",
            Check::ExponentP(_) => "exponent_p",
            Check::FreeAbelian(_) => "free_abelian",
            Check::Rank(_) => "rank",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scenario {
    pub name: String,
    pub prime: u32,
    pub cutoff: u64,
    pub seed: u64,
    pub group: GroupSpec,
    pub schedule: ScheduleSpec,
    pub seeds: SeedSpec,
    pub checks: Vec<Check>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Section {
    Scenario,
    Group,
    Schedule,
    Lie,
    Checks,
}

fn parse_num<T: std::str::FromStr>(line: usize, key: &str, v: &str) -> Result<T, ParseError> {
    v.parse()
        .or_else(|_| err(line, format!("{key}: expected a number, got `{v}`")))
}

fn parse_bool(line: usize, key: &str, v: &str) -> Result<bool, ParseError> {
    match v {
        "true" | "yes" => Ok(true),
        "false" | "no" => Ok(false),
        _ => err(line, format!("{key}: expected true or false, got `{v}`")),
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic()) && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// `x^2 y z^-1`; `1` is the empty word.
fn parse_word(line: usize, v: &str) -> Result<NamedWord, ParseError> {
    if v == "1" {
        return Ok(Vec::new());
    }
    v.split_whitespace()
        .map(|syl| {
            let (name, e) = match syl.split_once('^') {
                Some((n, e)) => (n, parse_num::<i64>(line, "exponent", e)?),
                None => (syl, 1),
            };
            if !is_identifier(name) {
                return err(line, format!("bad generator name `{name}` in word"));
            }
            Ok((name.to_string(), e))
        })
        .collect()
}

/// `Z`, `Z^k`, `heisenberg`, `C_{p^m}`, `C_N`, `tower`, `units`.
fn parse_named_group(line: usize, prime: Option<u32>, v: &str) -> Result<NamedGroup, ParseError> {
    match v {
        "Z" => return Ok(NamedGroup::FreeAbelian(1)),
        "heisenberg" => return Ok(NamedGroup::Heisenberg),
        "tower" => return Ok(NamedGroup::Tower),
        "units" => return Ok(NamedGroup::Units),
        _ => {}
    }
    if let Some(k) = v.strip_prefix("Z^") {
        return Ok(NamedGroup::FreeAbelian(parse_num(line, "builtin", k)?));
    }
    if let Some(rest) = v.strip_prefix("C_") {
        let rest = rest.trim_start_matches('{').trim_end_matches('}');
        if let Some((q, m)) = rest.split_once('^') {
            let q: u32 = parse_num(line, "builtin", q)?;
            if Some(q) != prime {
                return err(line, format!("{v}: base {q} is not the scenario prime"));
            }
            return Ok(NamedGroup::Cyclic(parse_num(line, "builtin", m)?));
        }
        let Some(p) = prime else {
            return err(line, "cyclic group given by its order needs the prime first");
        };
        let mut n: u64 = parse_num(line, "builtin", rest)?;
        let mut m = 0;
        while n > 1 && n.is_multiple_of(p as u64) {
            n /= p as u64;
            m += 1;
        }
        if n != 1 || m == 0 {
            return err(line, format!("{v}: order is not a positive power of {p}"));
        }
        return Ok(NamedGroup::Cyclic(m));
    }
    err(line, format!("unknown built-in group `{v}`"))
}

pub fn parse_scenario(text: &str) -> Result<Scenario, ParseError> {
    let mut section: Option<Section> = None;
    let mut seen_sections = BTreeSet::new();
    let mut name = None;
    let mut prime: Option<u32> = None;
    let mut cutoff: Option<u64> = None;
    let mut seed: Option<u64> = None;
    let mut named: Option<NamedGroup> = None;
    let mut explicit = ExplicitGroup::default();
    let mut explicit_line = None;
    let mut orders: Vec<(usize, String, Option<u64>)> = Vec::new();
    // generator names used by relations, with their lines
    let mut references: Vec<(usize, String)> = Vec::new();
    let mut schedule: Option<ScheduleSpec> = None;
    let mut weights: Vec<(String, u64)> = Vec::new();
    let mut k: Option<u32> = None;
    let mut seeds = SeedSpec::Generators;
    let mut checks = Vec::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let s = raw.trim();
        if s.is_empty() || s.starts_with('#') || s.starts_with(';') {
            continue;
        }
        if let Some(head) = s.strip_prefix('[') {
            let Some(head) = head.strip_suffix(']') else {
                return err(line, "unterminated section header");
            };
            let sec = match head.trim() {
                "scenario" => Section::Scenario,
                "group" => Section::Group,
                "schedule" => Section::Schedule,
                "lie" => Section::Lie,
                "checks" => Section::Checks,
                other => return err(line, format!("unknown section [{other}]")),
            };
            if !seen_sections.insert(head.trim().to_string()) {
                return err(line, format!("duplicate section [{}]", head.trim()));
            }
            section = Some(sec);
            continue;
        }
        let Some((key, value)) = s.split_once('=') else {
            return err(line, "expected `key = value`");
        };
        let (key, value) = (key.trim(), value.trim());
        let Some(sec) = section else {
            return err(line, "key outside of any section");
        };
        match sec {
            Section::Scenario => match key {
                "name" => name = Some(value.to_string()),
                "prime" => prime = Some(parse_num(line, key, value)?),
                "cutoff" => cutoff = Some(parse_num(line, key, value)?),
                "seed" => seed = Some(parse_num(line, key, value)?),
                _ => return err(line, format!("unknown key `{key}` in [scenario]")),
            },
            Section::Group => {
                if key == "builtin" {
                    named = Some(parse_named_group(line, prime, value)?);
                    continue;
                }
                explicit_line.get_or_insert(line);
                if key == "generators" {
                    let gens: Vec<String> = value.split_whitespace().map(str::to_string).collect();
                    if let Some(bad) = gens.iter().find(|g| !is_identifier(g)) {
                        return err(line, format!("bad generator name `{bad}`"));
                    }
                    let distinct: BTreeSet<&String> = gens.iter().collect();
                    if distinct.len() != gens.len() {
                        return err(line, "generator names must be distinct");
                    }
                    explicit.generators = gens;
                } else if let Some(g) = key.strip_prefix("order.") {
                    let o = if value == "inf" {
                        None
                    } else {
                        Some(parse_num(line, key, value)?)
                    };
                    orders.push((line, g.to_string(), o));
                } else if let Some(g) = key.strip_prefix("power.") {
                    let w = parse_word(line, value)?;
                    references.extend(
                        std::iter::once(g)
                            .chain(w.iter().map(|(n, _)| n.as_str()))
                            .map(|n| (line, n.to_string())),
                    );
                    explicit.powers.push((g.to_string(), w));
                } else if let Some(pair) = key.strip_prefix("conj.") {
                    let Some((x, y)) = pair.split_once('.') else {
                        return err(line, "expected conj.x.y");
                    };
                    let w = parse_word(line, value)?;
                    references.extend(
                        [x, y]
                            .into_iter()
                            .chain(w.iter().map(|(n, _)| n.as_str()))
                            .map(|n| (line, n.to_string())),
                    );
                    explicit.conjugates.push((x.to_string(), y.to_string(), w));
                } else if let Some(pair) = key.strip_prefix("conjinv.") {
                    let Some((x, y)) = pair.split_once('.') else {
                        return err(line, "expected conjinv.x.y");
                    };
                    let w = parse_word(line, value)?;
                    references.extend(
                        [x, y]
                            .into_iter()
                            .chain(w.iter().map(|(n, _)| n.as_str()))
                            .map(|n| (line, n.to_string())),
                    );
                    explicit.inverse_conjugates.push((x.to_string(), y.to_string(), w));
                } else {
                    return err(line, format!("unknown key `{key}` in [group]"));
                }
            }
            Section::Schedule => match key {
                "named" => {
                    schedule = Some(match value {
                        "unit" => ScheduleSpec::Unit,
                        "default_3powers" => ScheduleSpec::Default3Powers(None),
                        "finite_pgroup" => ScheduleSpec::FinitePGroup,
                        _ => return err(line, format!("unknown schedule `{value}`")),
                    })
                }
                "k" => k = Some(parse_num(line, key, value)?),
                g => weights.push((g.to_string(), parse_num(line, g, value)?)),
            },
            Section::Lie => match key {
                "seeds" => {
                    seeds = if value == "generators" {
                        SeedSpec::Generators
                    } else if let Some(b) = value.strip_prefix("box") {
                        SeedSpec::Box(parse_num(line, key, b.trim())?)
                    } else {
                        return err(line, format!("seeds: expected `generators` or `box N`, got `{value}`"));
                    }
                }
                _ => return err(line, format!("unknown key `{key}` in [lie]")),
            },
            Section::Checks => checks.push(match key {
                "graded_polynomial" => Check::GradedPolynomial(parse_num(line, key, value)?),
                "axioms" => Check::Axioms(parse_num(line, key, value)?),
                "associativity" => Check::Associativity(parse_num(line, key, value)?),
                "routes" => Check::Routes(parse_num(line, key, value)?),
                "abelian" => Check::Abelian(parse_bool(line, key, value)?),
                "exponent_p" => Check::ExponentP(parse_bool(line, key, value)?),
                "free_abelian" => Check::FreeAbelian(parse_bool(line, key, value)?),
                "rank" => Check::Rank(parse_num(line, key, value)?),
                _ => return err(line, format!("unknown check `{key}`")),
            }),
        }
    }

    let end = last_line + 1;
    let Some(prime) = prime else {
        return err(end, "missing `prime` in [scenario]");
    };
    let Some(cutoff) = cutoff else {
        return err(end, "missing `cutoff` in [scenario]");
    };
    let Some(seed) = seed else {
        return err(end, "missing `seed` in [scenario]");
    };

    let group = match (named, explicit_line) {
        (Some(_), Some(line)) => return err(line, "`builtin` and an explicit presentation are exclusive"),
        (Some(g), None) => GroupSpec::Named(g),
        (None, Some(line)) => {
            if explicit.generators.is_empty() {
                return err(line, "explicit presentation needs `generators`");
            }
            explicit.orders = vec![None; explicit.generators.len()];
            for (line, g, o) in orders {
                match explicit.generators.iter().position(|x| *x == g) {
                    Some(i) => explicit.orders[i] = o,
                    None => return err(line, format!("unknown generator `{g}`")),
                }
            }
            if let Some((line, g)) = references.iter().find(|(_, g)| !explicit.generators.contains(g)) {
                return err(*line, format!("unknown generator `{g}`"));
            }
            GroupSpec::Explicit(explicit)
        }
        (None, None) => return err(end, "missing [group] description"),
    };

    let schedule = match (schedule, weights.is_empty()) {
        (Some(_), false) => return err(end, "give either a named schedule or explicit weights"),
        (Some(ScheduleSpec::Default3Powers(_)), true) => ScheduleSpec::Default3Powers(k),
        (Some(s), true) => s,
        (None, false) => ScheduleSpec::Explicit(weights),
        (None, true) => ScheduleSpec::Builtin,
    };

    Ok(Scenario {
        name: name.unwrap_or_else(|| "unnamed".to_string()),
        prime,
        cutoff,
        seed,
        group,
        schedule,
        seeds,
        checks,
    })
}

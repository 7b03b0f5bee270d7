//! Scenario-driven front end: parse a scenario, build the algebra, run the
//! requested checks and render a deterministic report.

pub mod report;
pub mod run;
pub mod scenario;

pub use report::Report;
pub use run::{run, RunError};
pub use scenario::{parse_scenario, ParseError, Scenario};

/// Scenarios shipped with the binary, runnable with `--builtin NAME`.
pub const BUILTIN_SCENARIOS: &[(&str, &str)] = &[
    ("z", include_str!("../scenarios/z.ini")),
    ("z2", include_str!("../scenarios/z2.ini")),
    ("heisenberg", include_str!("../scenarios/heisenberg.ini")),
    (
        "heisenberg-explicit",
        include_str!("../scenarios/heisenberg-explicit.ini"),
    ),
    (
        "heisenberg-default",
        include_str!("../scenarios/heisenberg-default.ini"),
    ),
    ("c4", include_str!("../scenarios/c4.ini")),
    ("c9", include_str!("../scenarios/c9.ini")),
    ("tower", include_str!("../scenarios/tower.ini")),
    ("units", include_str!("../scenarios/units.ini")),
];

pub fn builtin_scenario(name: &str) -> Option<&'static str> {
    BUILTIN_SCENARIOS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| *text)
}

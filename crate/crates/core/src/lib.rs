//! Exact computations with truncated completed group algebras of polycyclic
//! groups over prime fields.
//!
//! The crate is organised bottom-up:
//!
//! * [`pcgroup`]: polycyclic presentations and collection to normal form.
//! * [`algebra`]: truncated filtered algebras with a standard-monomial basis,
//!   multiplication by rewriting, and the value (pseudovaluation) function.
//! * [`builder`]: construction of the filtered algebra of a group by climbing
//!   its polycyclic series one cyclic extension at a time, plus weight
//!   schedules and direct products.
//! * [`pseries`]: p-series viewed as weight oracles and checks of their axioms.
//! * [`lie`]: the associated graded restricted Lie algebra (homogeneous
//!   components, bracket, `[p]`-map, generated subalgebras, classification).
//! * [`builtins`]: the named groups and realizations used by scenarios.
//!
//! Every computation happens modulo the filtration level above a global
//! cutoff `D`; statements about graded objects only hold "up to `D`".

pub mod algebra;
pub mod builder;
pub mod builtins;
pub mod field;
pub mod lie;
pub mod pcgroup;
pub mod pseries;
pub mod sample;
pub mod value;

pub use algebra::{
    AlgebraError, FilteredAlgebra, FilteredElement, GeneratorMap, GroupAlgebra, Monomial, WeightedVariable,
};
pub use builder::{
    build_group_algebra, commutator_layers, default_schedule, direct_product, direct_product_groups,
    finite_pgroup_schedule, layered_default_schedule, BuildError, BuildLog, ExtensionKind, ExtensionStep, Regime,
    Tower, WeightSchedule,
};
pub use field::PrimeField;
pub use lie::{Classification, GradedBasis, HomogeneousElement, LieError};
pub use pcgroup::{ExponentVector, PcError, PcPresentation, PcPresentationBuilder, RelativeOrder};
pub use pseries::{equivalent_up_to, AxiomReport, PSeriesError, PSeriesSpec, RefinementTable};
pub use value::Value;

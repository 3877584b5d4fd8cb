//! Bounds, adversarial search, strategy-proofness checking and the
//! counterexample constructors.

pub mod bounds;
pub mod counterexample;
pub mod search;
pub mod spec;
pub mod strategyproof;
pub mod sweep;
pub mod table;

pub use bounds::{closed_form_bounds, ratio, Bound};
pub use counterexample::{phantom_counterexample, Counterexample};
pub use search::{
    measure, measure_both, measure_consistency, measure_robustness, Mode, RatioReport,
    SearchConfig, Witness,
};
pub use spec::{Advice, AdviceKind, Family, MechanismSpec, Outcome, PhantomRule};
pub use strategyproof::{check_strategyproof, Violation};
pub use sweep::{default_params, tradeoff_sweep, SweepRow};

//! Exhaustive adversarial search over grid instances and predictions.
//!
//! Instances are all multisets of at most `max_agents` points of the grid
//! `{0, 1/res, ..., 1}`. Consistency fixes the predictions to the exact
//! optimum of each instance; robustness ranges over all grid predictions.
//! The reduction keeps the largest ratio and, among ties, the smallest
//! witness, so the result does not depend on how work is split.

use std::cmp::Ordering;
use std::fmt;

use rayon::prelude::*;

use super::bounds::{closed_form_bounds, ratio, Bound};
use super::spec::{Advice, AdviceKind, MechanismSpec};
use crate::mechanisms::{Prediction, PredictionPair};
use crate::model::{Instance, Location, Objective};
use crate::{Error, Rational, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Grid step is `1 / resolution`.
    pub resolution: u32,
    pub max_agents: usize,
    /// Slack allowed by [`RatioReport::is_tight`].
    pub tolerance: Rational,
    /// A finite worst case above this counts as divergence when the closed
    /// form is unbounded.
    pub divergence_threshold: Rational,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            resolution: 20,
            max_agents: 4,
            tolerance: Rational::ZERO,
            divergence_threshold: Rational::from_integer(100),
        }
    }
}

impl SearchConfig {
    pub fn new(resolution: u32, max_agents: usize) -> Result<Self> {
        let config = SearchConfig {
            resolution,
            max_agents,
            ..SearchConfig::default()
        };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if self.resolution < 2 {
            return Err(Error::Parse(format!(
                "grid resolution must be at least 2, got {}",
                self.resolution
            )));
        }
        if self.max_agents == 0 {
            return Err(Error::Parse("max agents must be at least 1".into()));
        }
        if self.tolerance < Rational::ZERO {
            return Err(Error::Parse("tolerance must be nonnegative".into()));
        }
        Ok(())
    }

    pub fn grid(&self) -> Vec<Location> {
        let res = self.resolution as i128;
        (0..=res).map(|k| Location::frac(k, res)).collect()
    }

    /// Every nondecreasing sequence of grid indices of length `1..=max_agents`.
    pub fn index_instances(&self) -> Vec<Vec<u16>> {
        let top = self.resolution as u16;
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(self.max_agents);
        fn extend(
            current: &mut Vec<u16>,
            from: u16,
            top: u16,
            max: usize,
            out: &mut Vec<Vec<u16>>,
        ) {
            for k in from..=top {
                current.push(k);
                out.push(current.clone());
                if current.len() < max {
                    extend(current, k, top, max, out);
                }
                current.pop();
            }
        }
        extend(&mut current, 0, top, self.max_agents, &mut out);
        out
    }

    pub fn instances(&self) -> Vec<Instance> {
        let grid = self.grid();
        self.index_instances()
            .into_iter()
            .map(|idx| {
                Instance::new(idx.iter().map(|&k| grid[k as usize]).collect()).expect("nonempty")
            })
            .collect()
    }

    /// Every grid prediction of the given kind.
    pub fn advices(&self, kind: AdviceKind) -> Vec<Advice> {
        let grid = self.grid();
        match kind {
            AdviceKind::None => vec![Advice::None],
            AdviceKind::Single => grid
                .iter()
                .map(|&p| Advice::Single(Prediction(p)))
                .collect(),
            AdviceKind::Pair => grid
                .iter()
                .enumerate()
                .flat_map(|(i, &a)| {
                    grid[i..]
                        .iter()
                        .map(move |&b| Advice::Pair(PredictionPair::new(a, b)))
                })
                .collect(),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Mode {
    Consistency,
    Robustness,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Consistency => "consistency",
            Mode::Robustness => "robustness",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// An instance and prediction on which a ratio is attained.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Witness {
    pub instance: Instance,
    pub advice: Advice,
}

impl Witness {
    /// Fewer agents first, then lexicographic on agents, then predictions.
    fn canonical_cmp(&self, other: &Witness) -> Ordering {
        self.instance
            .len()
            .cmp(&other.instance.len())
            .then_with(|| self.instance.cmp(&other.instance))
            .then_with(|| self.advice.cmp(&other.advice))
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "agents {}, prediction {}", self.instance, self.advice)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatioReport {
    pub mechanism: MechanismSpec,
    pub objective: Objective,
    pub mode: Mode,
    pub measured: Bound,
    /// `None` when the mechanism has no closed form.
    pub closed_form: Option<Bound>,
    pub witness: Option<Witness>,
    /// Ratio at the witness itself; equals `measured` unless divergence was
    /// declared from a large finite value.
    pub witness_ratio: Bound,
    pub instances_searched: usize,
}

impl RatioReport {
    /// The grid never beats a correct worst-case bound.
    pub fn is_sound(&self) -> bool {
        self.closed_form.is_none_or(|c| self.measured <= c)
    }

    /// Measured value within `tolerance` below a finite closed form.
    pub fn is_tight(&self, tolerance: Rational) -> bool {
        match (self.closed_form, self.measured) {
            (Some(Bound::Finite(c)), Bound::Finite(m)) => m >= c - tolerance,
            (Some(Bound::Finite(_)), Bound::Unbounded) => true,
            (Some(Bound::Unbounded), m) => m.is_unbounded(),
            (None, _) => true,
        }
    }
}

#[derive(Clone, Debug)]
struct Worst {
    ratio: Bound,
    witness: Witness,
}

fn better(a: Option<Worst>, b: Option<Worst>) -> Option<Worst> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(a), Some(b)) => match a.ratio.cmp(&b.ratio) {
            Ordering::Greater => Some(a),
            Ordering::Less => Some(b),
            Ordering::Equal => {
                if a.witness.canonical_cmp(&b.witness) != Ordering::Greater {
                    Some(a)
                } else {
                    Some(b)
                }
            }
        },
    }
}

/// Worst ratio for both objectives in one sweep of the grid.
fn scan(spec: &MechanismSpec, mode: Mode, config: &SearchConfig) -> ([Option<Worst>; 2], usize) {
    let instances: Vec<Instance> = config
        .instances()
        .into_iter()
        .filter(|i| spec.accepts(i.len()))
        .collect();
    let grid_advice = config.advices(spec.advice_kind());
    let count = instances.len();
    let worst = instances
        .par_iter()
        .map(|instance| {
            let opt = spec.optimum(instance);
            let correct;
            let advices: &[Advice] = match mode {
                Mode::Consistency => {
                    correct = [spec.correct_advice(instance)];
                    &correct
                }
                Mode::Robustness => &grid_advice,
            };
            let mut local: [Option<Worst>; 2] = [None, None];
            for advice in advices {
                let outcome = spec
                    .apply(instance, advice)
                    .expect("search feeds well-formed inputs");
                for (slot, objective) in local.iter_mut().zip(Objective::ALL) {
                    let r = ratio(
                        objective,
                        opt.value(objective),
                        outcome.value(instance, objective),
                    );
                    let keep = slot.as_ref().is_none_or(|w| r > w.ratio);
                    if keep {
                        *slot = Some(Worst {
                            ratio: r,
                            witness: Witness {
                                instance: instance.clone(),
                                advice: *advice,
                            },
                        });
                    }
                }
            }
            local
        })
        .reduce(
            || [None, None],
            |[a0, a1], [b0, b1]| [better(a0, b0), better(a1, b1)],
        );
    (worst, count)
}

fn report(
    spec: &MechanismSpec,
    objective: Objective,
    mode: Mode,
    config: &SearchConfig,
    worst: Option<Worst>,
    count: usize,
) -> RatioReport {
    let closed_form = closed_form_bounds(spec, objective)
        .ok()
        .map(|(c, r)| match mode {
            Mode::Consistency => c,
            Mode::Robustness => r,
        });
    let (witness_ratio, witness) = match worst {
        Some(w) => (w.ratio, Some(w.witness)),
        None => (Bound::one(), None),
    };
    let diverges = matches!(closed_form, Some(Bound::Unbounded))
        && matches!(witness_ratio, Bound::Finite(v) if v > config.divergence_threshold);
    let measured = if diverges {
        Bound::Unbounded
    } else {
        witness_ratio
    };
    RatioReport {
        mechanism: spec.clone(),
        objective,
        mode,
        measured,
        closed_form,
        witness,
        witness_ratio,
        instances_searched: count,
    }
}

/// Reports for both objectives from a single grid sweep.
pub fn measure_both(spec: &MechanismSpec, mode: Mode, config: &SearchConfig) -> [RatioReport; 2] {
    let ([md, mu], count) = scan(spec, mode, config);
    [
        report(spec, Objective::MaxDistance, mode, config, md, count),
        report(spec, Objective::MinUtility, mode, config, mu, count),
    ]
}

pub fn measure(
    spec: &MechanismSpec,
    objective: Objective,
    mode: Mode,
    config: &SearchConfig,
) -> RatioReport {
    let [md, mu] = measure_both(spec, mode, config);
    match objective {
        Objective::MaxDistance => md,
        Objective::MinUtility => mu,
    }
}

/// Worst ratio with the prediction(s) fixed to the exact optimum.
pub fn measure_consistency(
    spec: &MechanismSpec,
    objective: Objective,
    config: &SearchConfig,
) -> RatioReport {
    measure(spec, objective, Mode::Consistency, config)
}

/// Worst ratio over all grid predictions.
pub fn measure_robustness(
    spec: &MechanismSpec,
    objective: Objective,
    config: &SearchConfig,
) -> RatioReport {
    measure(spec, objective, Mode::Robustness, config)
}

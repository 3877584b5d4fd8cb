//! Randomized mechanisms as explicit finite lotteries over placements.
//!
//! No sampling happens anywhere: every lottery has at most a handful of
//! outcomes and expectations are computed exactly.

use std::collections::BTreeMap;
use std::fmt;

use crate::mechanisms::{min_max_2p, min_max_p, Prediction, PredictionPair};
use crate::model::{agent_cost, evaluate, opt_two, Instance, Location, Objective, Placement};
use crate::{Error, Rational, Result};

/// A probability distribution over placements.
///
/// Outcomes are merged and kept sorted, so equal distributions compare equal.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Lottery {
    outcomes: Vec<(Placement, Rational)>,
}

impl Lottery {
    /// Merges duplicate placements and drops zero-probability outcomes.
    ///
    /// Panics unless the probabilities are nonnegative and sum to one.
    pub fn from_outcomes<I>(outcomes: I) -> Self
    where
        I: IntoIterator<Item = (Placement, Rational)>,
    {
        let mut merged: BTreeMap<Placement, Rational> = BTreeMap::new();
        for (placement, p) in outcomes {
            assert!(p >= Rational::ZERO, "negative probability {p}");
            if !p.is_zero() {
                let slot = merged.entry(placement).or_default();
                *slot = *slot + p;
            }
        }
        let total: Rational = merged.values().copied().sum();
        assert_eq!(total, Rational::ONE, "probabilities must sum to one");
        Lottery {
            outcomes: merged.into_iter().collect(),
        }
    }

    pub fn point(placement: Placement) -> Self {
        Lottery {
            outcomes: vec![(placement, Rational::ONE)],
        }
    }

    pub fn outcomes(&self) -> &[(Placement, Rational)] {
        &self.outcomes
    }

    pub fn is_point_mass(&self) -> bool {
        self.outcomes.len() == 1
    }

    /// `weight * a + (1 - weight) * b`.
    pub fn mixture(weight: Rational, a: &Lottery, b: &Lottery) -> Self {
        let rest = Rational::ONE - weight;
        Lottery::from_outcomes(
            a.outcomes
                .iter()
                .map(|(pl, p)| (pl.clone(), *p * weight))
                .chain(b.outcomes.iter().map(|(pl, p)| (pl.clone(), *p * rest))),
        )
    }

    /// Expected distance from `agent` to its nearest facility.
    pub fn expected_cost(&self, agent: Location) -> Rational {
        self.outcomes
            .iter()
            .map(|(pl, p)| *p * agent_cost(agent, pl))
            .sum()
    }
}

impl fmt::Display for Lottery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (pl, p)) in self.outcomes.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{pl}: {p}")?;
        }
        f.write_str("}")
    }
}

/// Mixing parameter `delta` or `theta` in `[0, 1/2]`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct MixParam(Rational);

impl MixParam {
    pub fn delta(value: Rational) -> Result<Self> {
        if in_half_unit(value) {
            Ok(MixParam(value))
        } else {
            Err(Error::InvalidDelta(value))
        }
    }

    pub fn theta(value: Rational) -> Result<Self> {
        if in_half_unit(value) {
            Ok(MixParam(value))
        } else {
            Err(Error::InvalidTheta(value))
        }
    }

    pub fn value(self) -> Rational {
        self.0
    }

    /// Probability `2 * param` of running the randomized component.
    fn weight(self) -> Rational {
        self.0 * Rational::from_integer(2)
    }
}

fn in_half_unit(v: Rational) -> bool {
    v >= Rational::ZERO && v <= Rational::HALF
}

fn three_point(left: Location, right: Location) -> Lottery {
    let quarter = Rational::new(1, 4);
    Lottery::from_outcomes([
        (Placement::single(left), quarter),
        (Placement::single(left.midpoint(right)), Rational::HALF),
        (Placement::single(right), quarter),
    ])
}

/// `x_1` w.p. 1/4, the midpoint w.p. 1/2, `x_n` w.p. 1/4.
pub fn lrm(instance: &Instance) -> Lottery {
    three_point(instance.leftmost(), instance.rightmost())
}

/// [`lrm`] with both extremes first clamped into `[1/3, 2/3]`.
pub fn lrmt(instance: &Instance) -> Lottery {
    let lo = Location::frac(1, 3);
    let hi = Location::frac(2, 3);
    let y = instance.leftmost().max(lo).min(hi);
    let z = instance.rightmost().max(lo).min(hi);
    three_point(y, z)
}

/// [`lrm`] w.p. `2 delta`, otherwise `MinMaxP`.
pub fn lrm_p(instance: &Instance, prediction: Prediction, delta: MixParam) -> Lottery {
    Lottery::mixture(
        delta.weight(),
        &lrm(instance),
        &Lottery::point(min_max_p(instance, prediction)),
    )
}

/// [`lrmt`] w.p. `2 delta`, otherwise `MinMaxP`.
pub fn lrmt_p(instance: &Instance, prediction: Prediction, delta: MixParam) -> Lottery {
    Lottery::mixture(
        delta.weight(),
        &lrmt(instance),
        &Lottery::point(min_max_p(instance, prediction)),
    )
}

/// Two facilities at `(x_1, x_n)` w.p. 1/2, `(x_1 + 2d, x_n - 2d)` w.p. 1/6
/// and `(x_1 + d, x_n - d)` w.p. 1/3, where `d` is the optimal two-facility
/// maximum distance.
pub fn rand_ends(instance: &Instance) -> Lottery {
    let d = opt_two(instance).opt_max_distance;
    let lo = instance.leftmost().value();
    let hi = instance.rightmost().value();
    // 4d <= x_n - x_1, so every point below stays inside [x_1, x_n].
    let at = |v: Rational| Location::new(v).expect("inside [x_1, x_n]");
    let two = Rational::from_integer(2);
    Lottery::from_outcomes([
        (Placement::pair(at(lo), at(hi)), Rational::HALF),
        (
            Placement::pair(at(lo + two * d), at(hi - two * d)),
            Rational::new(1, 6),
        ),
        (Placement::pair(at(lo + d), at(hi - d)), Rational::new(1, 3)),
    ])
}

/// [`rand_ends`] w.p. `2 theta`, otherwise `MinMax2P`.
pub fn rand_ends_2p(instance: &Instance, predictions: PredictionPair, theta: MixParam) -> Lottery {
    Lottery::mixture(
        theta.weight(),
        &rand_ends(instance),
        &Lottery::point(min_max_2p(instance, predictions)),
    )
}

/// Exact expectation of `objective` over the lottery.
pub fn expected_value(lottery: &Lottery, instance: &Instance, objective: Objective) -> Rational {
    lottery
        .outcomes
        .iter()
        .map(|(pl, p)| *p * evaluate(instance, pl, objective))
        .sum()
}

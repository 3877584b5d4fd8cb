//! A uniform handle over every mechanism so the searches, the checker and
//! the CLI can treat them alike.

use std::fmt;

use crate::lottery::{self, expected_value, Lottery, MixParam};
use crate::mechanisms::{
    self, gen_median, min_max_2p, min_max_2p_lambda, min_max_p, min_max_p_gamma, PhantomProfile,
    Prediction, PredictionPair, Preset,
};
use crate::model::{
    evaluate, opt_single, opt_two, Instance, Location, Objective, OptimumReport, Placement,
};
use crate::{Error, Rational, Result};

/// How a generalized median chooses its `n - 1` phantoms.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum PhantomRule {
    /// Every phantom at the same point (`0` is Leftmost, `1` Rightmost).
    Constant(Location),
    /// `floor(n/2)` phantoms at 0, the rest at 1.
    Median,
    /// A fixed profile; only instances with `len + 1` agents are accepted.
    Explicit(PhantomProfile),
}

impl PhantomRule {
    pub fn profile(&self, n: usize) -> Result<PhantomProfile> {
        match self {
            PhantomRule::Constant(a) => Ok(PhantomProfile::constant(*a, n.saturating_sub(1))),
            PhantomRule::Median => Ok(Preset::Median.profile(n)),
            PhantomRule::Explicit(p) if p.len() + 1 == n => Ok(p.clone()),
            PhantomRule::Explicit(p) => Err(Error::PhantomCountMismatch {
                expected: n.saturating_sub(1),
                got: p.len(),
            }),
        }
    }

    /// Instance sizes this rule can serve.
    pub fn accepts(&self, n: usize) -> bool {
        match self {
            PhantomRule::Explicit(p) => p.len() + 1 == n,
            _ => true,
        }
    }
}

/// Mechanism families, without parameters.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Family {
    MinMaxP,
    MinMaxPGamma,
    MidOrNearest,
    GenMedian,
    LrmP,
    LrmtP,
    MinMax2P,
    MinMax2PLambda,
    RandEnds,
    RandEnds2P,
    BrokenThird,
}

impl Family {
    /// Legal parameter range, for parameterized families.
    pub fn param_range(self) -> Option<(Rational, Rational)> {
        match self {
            Family::MinMaxPGamma | Family::LrmP | Family::LrmtP | Family::RandEnds2P => {
                Some((Rational::ZERO, Rational::HALF))
            }
            Family::MinMax2PLambda => Some((Rational::ZERO, Rational::new(1, 4))),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::MinMaxP => "minmaxp",
            Family::MinMaxPGamma => "minmaxp-gamma",
            Family::MidOrNearest => "midornearest",
            Family::GenMedian => "genmedian",
            Family::LrmP => "lrmp",
            Family::LrmtP => "lrmtp",
            Family::MinMax2P => "minmax2p",
            Family::MinMax2PLambda => "minmax2p-lambda",
            Family::RandEnds => "randends",
            Family::RandEnds2P => "randends2p",
            Family::BrokenThird => "broken-third",
        }
    }
}

/// What a mechanism is told in addition to the reports.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Advice {
    None,
    Single(Prediction),
    Pair(PredictionPair),
}

impl Advice {
    fn kind(&self) -> &'static str {
        match self {
            Advice::None => "no prediction",
            Advice::Single(_) => "one prediction",
            Advice::Pair(_) => "two predictions",
        }
    }
}

impl fmt::Display for Advice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Advice::None => f.write_str("-"),
            Advice::Single(p) => write!(f, "{p}"),
            Advice::Pair(p) => write!(f, "{p}"),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AdviceKind {
    None,
    Single,
    Pair,
}

/// A mechanism with its parameter, ready to run.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum MechanismSpec {
    MinMaxP,
    MinMaxPGamma(Rational),
    MidOrNearest,
    GenMedian(PhantomRule),
    LrmP(MixParam),
    LrmtP(MixParam),
    MinMax2P,
    MinMax2PLambda(Rational),
    RandEnds,
    RandEnds2P(MixParam),
    /// Manipulable negative control.
    BrokenThird,
}

impl MechanismSpec {
    /// Builds a family member, validating the parameter.
    pub fn new(family: Family, param: Option<Rational>) -> Result<Self> {
        let need = |p: Option<Rational>| {
            p.ok_or_else(|| Error::Parse(format!("{} needs --param", family.name())))
        };
        Ok(match family {
            Family::MinMaxP => MechanismSpec::MinMaxP,
            Family::MidOrNearest => MechanismSpec::MidOrNearest,
            Family::MinMax2P => MechanismSpec::MinMax2P,
            Family::RandEnds => MechanismSpec::RandEnds,
            Family::BrokenThird => MechanismSpec::BrokenThird,
            Family::GenMedian => {
                let a = Location::new(need(param)?)?;
                MechanismSpec::GenMedian(PhantomRule::Constant(a))
            }
            Family::MinMaxPGamma => {
                let g = need(param)?;
                if g < Rational::ZERO || g > Rational::HALF {
                    return Err(Error::InvalidGamma(g));
                }
                MechanismSpec::MinMaxPGamma(g)
            }
            Family::MinMax2PLambda => {
                let l = need(param)?;
                if l < Rational::ZERO || l > Rational::new(1, 4) {
                    return Err(Error::InvalidLambda(l));
                }
                MechanismSpec::MinMax2PLambda(l)
            }
            Family::LrmP => MechanismSpec::LrmP(MixParam::delta(need(param)?)?),
            Family::LrmtP => MechanismSpec::LrmtP(MixParam::delta(need(param)?)?),
            Family::RandEnds2P => MechanismSpec::RandEnds2P(MixParam::theta(need(param)?)?),
        })
    }

    pub fn family(&self) -> Family {
        match self {
            MechanismSpec::MinMaxP => Family::MinMaxP,
            MechanismSpec::MinMaxPGamma(_) => Family::MinMaxPGamma,
            MechanismSpec::MidOrNearest => Family::MidOrNearest,
            MechanismSpec::GenMedian(_) => Family::GenMedian,
            MechanismSpec::LrmP(_) => Family::LrmP,
            MechanismSpec::LrmtP(_) => Family::LrmtP,
            MechanismSpec::MinMax2P => Family::MinMax2P,
            MechanismSpec::MinMax2PLambda(_) => Family::MinMax2PLambda,
            MechanismSpec::RandEnds => Family::RandEnds,
            MechanismSpec::RandEnds2P(_) => Family::RandEnds2P,
            MechanismSpec::BrokenThird => Family::BrokenThird,
        }
    }

    /// Numeric parameter (gamma, delta, lambda, theta, or a constant phantom).
    pub fn param(&self) -> Option<Rational> {
        match self {
            MechanismSpec::MinMaxPGamma(v) | MechanismSpec::MinMax2PLambda(v) => Some(*v),
            MechanismSpec::LrmP(m) | MechanismSpec::LrmtP(m) | MechanismSpec::RandEnds2P(m) => {
                Some(m.value())
            }
            MechanismSpec::GenMedian(PhantomRule::Constant(a)) => Some(a.value()),
            _ => None,
        }
    }

    pub fn facilities(&self) -> usize {
        match self {
            MechanismSpec::MinMax2P
            | MechanismSpec::MinMax2PLambda(_)
            | MechanismSpec::RandEnds
            | MechanismSpec::RandEnds2P(_) => 2,
            _ => 1,
        }
    }

    pub fn advice_kind(&self) -> AdviceKind {
        match self {
            MechanismSpec::MinMaxP
            | MechanismSpec::MinMaxPGamma(_)
            | MechanismSpec::LrmP(_)
            | MechanismSpec::LrmtP(_) => AdviceKind::Single,
            MechanismSpec::MinMax2P
            | MechanismSpec::MinMax2PLambda(_)
            | MechanismSpec::RandEnds2P(_) => AdviceKind::Pair,
            _ => AdviceKind::None,
        }
    }

    pub fn is_randomized(&self) -> bool {
        matches!(
            self,
            MechanismSpec::LrmP(_)
                | MechanismSpec::LrmtP(_)
                | MechanismSpec::RandEnds
                | MechanismSpec::RandEnds2P(_)
        )
    }

    /// Whether the mechanism is defined for `n` agents.
    pub fn accepts(&self, n: usize) -> bool {
        match self {
            MechanismSpec::GenMedian(rule) => rule.accepts(n),
            _ => true,
        }
    }

    /// Optimal solution with this mechanism's number of facilities.
    pub fn optimum(&self, instance: &Instance) -> OptimumReport {
        if self.facilities() == 2 {
            opt_two(instance)
        } else {
            opt_single(instance)
        }
    }

    /// The correct prediction(s) for `instance`.
    pub fn correct_advice(&self, instance: &Instance) -> Advice {
        match self.advice_kind() {
            AdviceKind::None => Advice::None,
            AdviceKind::Single => {
                Advice::Single(Prediction(opt_single(instance).placement.facilities()[0]))
            }
            AdviceKind::Pair => {
                let opt = opt_two(instance);
                let f = opt.placement.facilities();
                Advice::Pair(PredictionPair::new(f[0], f[1]))
            }
        }
    }

    fn wrong_advice(&self, got: &Advice) -> Error {
        let expected = match self.advice_kind() {
            AdviceKind::None => "no prediction",
            AdviceKind::Single => "one prediction",
            AdviceKind::Pair => "two predictions",
        };
        Error::PredictionArity {
            mechanism: self.to_string(),
            expected,
            got: got.kind(),
        }
    }

    /// Runs the mechanism. Prediction-free mechanisms ignore `advice`.
    pub fn apply(&self, instance: &Instance, advice: &Advice) -> Result<Outcome> {
        if !matches!(self.advice_kind(), AdviceKind::None) {
            let ok = matches!(
                (self.advice_kind(), advice),
                (AdviceKind::Single, Advice::Single(_)) | (AdviceKind::Pair, Advice::Pair(_))
            );
            if !ok {
                return Err(self.wrong_advice(advice));
            }
        }
        let single = || match advice {
            Advice::Single(p) => *p,
            _ => unreachable!(),
        };
        let pair = || match advice {
            Advice::Pair(p) => *p,
            _ => unreachable!(),
        };
        use Outcome::{Deterministic as D, Randomized as R};
        Ok(match self {
            MechanismSpec::MinMaxP => D(min_max_p(instance, single())),
            MechanismSpec::MinMaxPGamma(g) => D(min_max_p_gamma(instance, single(), *g)?),
            MechanismSpec::MidOrNearest => D(mechanisms::preset(instance, Preset::MidOrNearest)),
            MechanismSpec::GenMedian(rule) => {
                D(gen_median(instance, &rule.profile(instance.len())?)?)
            }
            MechanismSpec::LrmP(d) => R(lottery::lrm_p(instance, single(), *d)),
            MechanismSpec::LrmtP(d) => R(lottery::lrmt_p(instance, single(), *d)),
            MechanismSpec::MinMax2P => D(min_max_2p(instance, pair())),
            MechanismSpec::MinMax2PLambda(l) => D(min_max_2p_lambda(instance, pair(), *l)?),
            MechanismSpec::RandEnds => R(lottery::rand_ends(instance)),
            MechanismSpec::RandEnds2P(t) => R(lottery::rand_ends_2p(instance, pair(), *t)),
            MechanismSpec::BrokenThird => D(mechanisms::broken_third(instance)),
        })
    }
}

impl fmt::Display for MechanismSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MechanismSpec::GenMedian(PhantomRule::Constant(a)) if *a == Location::ZERO => {
                f.write_str("leftmost")
            }
            MechanismSpec::GenMedian(PhantomRule::Constant(a)) if *a == Location::ONE => {
                f.write_str("rightmost")
            }
            MechanismSpec::GenMedian(PhantomRule::Median) => f.write_str("median"),
            MechanismSpec::GenMedian(PhantomRule::Explicit(p)) => {
                write!(f, "genmedian{:?}", p.phantoms())
            }
            other => match other.param() {
                Some(p) => write!(f, "{}({p})", other.family().name()),
                None => f.write_str(other.family().name()),
            },
        }
    }
}

/// A mechanism's output: one placement, or a lottery over placements.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Outcome {
    Deterministic(Placement),
    Randomized(Lottery),
}

impl Outcome {
    /// Objective value, in expectation for lotteries.
    pub fn value(&self, instance: &Instance, objective: Objective) -> Rational {
        match self {
            Outcome::Deterministic(p) => evaluate(instance, p, objective),
            Outcome::Randomized(l) => expected_value(l, instance, objective),
        }
    }

    /// Expected distance from `agent` to its nearest facility.
    pub fn cost(&self, agent: Location) -> Rational {
        match self {
            Outcome::Deterministic(p) => crate::model::agent_cost(agent, p),
            Outcome::Randomized(l) => l.expected_cost(agent),
        }
    }

    pub fn to_lottery(&self) -> Lottery {
        match self {
            Outcome::Deterministic(p) => Lottery::point(p.clone()),
            Outcome::Randomized(l) => l.clone(),
        }
    }
}

//! Approximation ratios and the closed-form consistency/robustness bounds.

use std::fmt;

use super::spec::{MechanismSpec, PhantomRule};
use crate::model::Objective;
use crate::{Error, Rational, Result};

/// An approximation ratio, possibly unbounded. `Finite < Unbounded`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Bound {
    Finite(Rational),
    Unbounded,
}

impl Bound {
    pub fn finite(numer: i128, denom: i128) -> Self {
        Bound::Finite(Rational::new(numer, denom))
    }

    pub fn one() -> Self {
        Bound::Finite(Rational::ONE)
    }

    pub fn as_finite(&self) -> Option<Rational> {
        match self {
            Bound::Finite(v) => Some(*v),
            Bound::Unbounded => None,
        }
    }

    pub fn is_unbounded(&self) -> bool {
        matches!(self, Bound::Unbounded)
    }

    /// Exact rational plus six-decimal rendering; `inf` when unbounded.
    pub fn render(&self) -> String {
        match self {
            Bound::Finite(v) => format!("{v} ({})", v.to_decimal(6)),
            Bound::Unbounded => "inf".to_string(),
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Finite(v) => fmt::Display::fmt(v, f),
            Bound::Unbounded => f.write_str("inf"),
        }
    }
}

impl From<Rational> for Bound {
    fn from(v: Rational) -> Self {
        Bound::Finite(v)
    }
}

/// Ratio of `achieved` to `optimum`, oriented so that it is at least one.
///
/// A zero optimal maximum distance gives 1 when matched exactly and
/// `Unbounded` otherwise; a zero achieved minimum utility is `Unbounded`.
pub fn ratio(objective: Objective, optimum: Rational, achieved: Rational) -> Bound {
    match objective {
        Objective::MaxDistance => match achieved.checked_div(optimum) {
            Some(q) => Bound::Finite(q),
            None if achieved.is_zero() => Bound::one(),
            None => Bound::Unbounded,
        },
        Objective::MinUtility => match optimum.checked_div(achieved) {
            Some(q) => Bound::Finite(q),
            None => Bound::Unbounded,
        },
    }
}

/// `num / den`, or `Unbounded` when `den` is zero.
fn quotient(num: Rational, den: Rational) -> Bound {
    num.checked_div(den).map_or(Bound::Unbounded, Bound::Finite)
}

fn int(n: i128) -> Rational {
    Rational::from_integer(n)
}

/// Worst ratio of a generalized median whose phantoms all sit at `a`:
/// `(1 + a') / (2 a')` with `a' = min(a, 1 - a)`.
fn constant_phantom_min_utility(a: Rational) -> Bound {
    let near = a.min(Rational::ONE - a);
    quotient(Rational::ONE + near, int(2) * near)
}

/// `(consistency, robustness)` closed forms for `spec` under `objective`.
///
/// Generalized medians with a fixed phantom profile, and the negative
/// control, have no closed form and yield [`Error::UnknownFamily`].
pub fn closed_form_bounds(spec: &MechanismSpec, objective: Objective) -> Result<(Bound, Bound)> {
    use Objective::{MaxDistance as MD, MinUtility as MU};
    let one = Rational::ONE;
    let two = int(2);
    let three = int(3);
    let f = Bound::Finite;
    let inf = Bound::Unbounded;
    Ok(match (spec, objective) {
        (MechanismSpec::MinMaxP, MD) => (Bound::one(), f(two)),
        (MechanismSpec::MinMaxP, MU) => (Bound::one(), inf),

        (MechanismSpec::MidOrNearest, MD) => (f(two), f(two)),
        (MechanismSpec::MidOrNearest, MU) => (Bound::finite(3, 2), Bound::finite(3, 2)),

        (MechanismSpec::MinMaxPGamma(g), MD) if g.is_zero() => (Bound::one(), f(two)),
        (MechanismSpec::MinMaxPGamma(_), MD) => (f(two), f(two)),
        (MechanismSpec::MinMaxPGamma(g), MU) => (
            f((two - *g) / (two - two * *g)),
            quotient(one + *g, two * *g),
        ),

        // Output always lies in [x_1, x_n]; the prediction is ignored.
        (MechanismSpec::GenMedian(PhantomRule::Constant(_) | PhantomRule::Median), MD) => {
            (f(two), f(two))
        }
        (MechanismSpec::GenMedian(PhantomRule::Constant(a)), MU) => {
            let b = constant_phantom_min_utility(a.value());
            (b, b)
        }
        (MechanismSpec::GenMedian(PhantomRule::Median), MU) => (inf, inf),

        (MechanismSpec::LrmP(d), MD) => {
            let d = d.value();
            (f(one + d), f(two - d))
        }
        (MechanismSpec::LrmP(d), MU) => {
            let d = d.value();
            (f(one / (one - d)), quotient(one, d))
        }

        (MechanismSpec::LrmtP(d), MD) => (f(one + two * d.value()), f(two)),
        (MechanismSpec::LrmtP(d), MU) => {
            let d = d.value();
            (f(two / (two - d)), quotient(two, three * d))
        }

        (MechanismSpec::MinMax2P, MD) => (Bound::one(), inf),
        (MechanismSpec::MinMax2P, MU) => (Bound::one(), Bound::finite(3, 2)),

        (MechanismSpec::MinMax2PLambda(l), MD) if l.is_zero() => (Bound::one(), inf),
        (MechanismSpec::MinMax2PLambda(_), MD) => (inf, inf),
        (MechanismSpec::MinMax2PLambda(l), MU) => (
            f((two - *l) / (two - two * *l)),
            f((three + two * *l) / (two * (one + two * *l))),
        ),

        (MechanismSpec::RandEnds, MD) => (Bound::finite(5, 3), Bound::finite(5, 3)),
        (MechanismSpec::RandEnds, MU) => (Bound::finite(9, 7), Bound::finite(9, 7)),

        (MechanismSpec::RandEnds2P(t), MD) => {
            let t = t.value();
            let robust = if t == Rational::HALF {
                Bound::finite(5, 3)
            } else {
                inf
            };
            (f((three + int(4) * t) / three), robust)
        }
        (MechanismSpec::RandEnds2P(t), MU) => {
            let t = t.value();
            (
                f(int(9) / (int(9) - int(4) * t)),
                f(int(9) / (two * (three + t))),
            )
        }

        (
            other @ (MechanismSpec::GenMedian(PhantomRule::Explicit(_))
            | MechanismSpec::BrokenThird),
            _,
        ) => return Err(Error::UnknownFamily(other.to_string())),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::spec::Family;
    use crate::model::Location;
    use crate::rational::r;

    fn spec(family: Family, p: Option<Rational>) -> MechanismSpec {
        MechanismSpec::new(family, p).unwrap()
    }

    #[test]
    fn ratio_orientation_and_zero_policy() {
        use Objective::*;
        assert_eq!(ratio(MaxDistance, r(1, 4), r(1, 2)), Bound::finite(2, 1));
        assert_eq!(
            ratio(MaxDistance, Rational::ZERO, Rational::ZERO),
            Bound::one()
        );
        assert_eq!(
            ratio(MaxDistance, Rational::ZERO, r(1, 8)),
            Bound::Unbounded
        );
        assert_eq!(ratio(MinUtility, r(1, 2), Rational::ZERO), Bound::Unbounded);
        assert_eq!(ratio(MinUtility, r(3, 4), r(1, 2)), Bound::finite(3, 2));
    }

    #[test]
    fn bound_order_puts_unbounded_last() {
        assert!(Bound::finite(1000, 1) < Bound::Unbounded);
        assert!(Bound::finite(3, 2) < Bound::finite(2, 1));
        assert_eq!(Bound::Unbounded.to_string(), "inf");
        assert_eq!(Bound::finite(9, 7).render(), "9/7 (1.285714)");
    }

    #[test]
    fn closed_form_examples() {
        use Objective::*;
        assert_eq!(
            closed_form_bounds(&spec(Family::MinMaxPGamma, Some(r(1, 2))), MinUtility).unwrap(),
            (Bound::finite(3, 2), Bound::finite(3, 2))
        );
        assert_eq!(
            closed_form_bounds(&spec(Family::LrmtP, Some(r(1, 2))), MinUtility).unwrap(),
            (Bound::finite(4, 3), Bound::finite(4, 3))
        );
        assert_eq!(
            closed_form_bounds(&spec(Family::RandEnds2P, Some(r(1, 2))), MinUtility).unwrap(),
            (Bound::finite(9, 7), Bound::finite(9, 7))
        );
        assert_eq!(
            closed_form_bounds(&MechanismSpec::MinMaxP, MinUtility).unwrap(),
            (Bound::one(), Bound::Unbounded)
        );
        assert_eq!(
            closed_form_bounds(&spec(Family::MinMaxPGamma, Some(r(1, 4))), MinUtility).unwrap(),
            (Bound::finite(7, 6), Bound::finite(5, 2))
        );
        assert_eq!(
            closed_form_bounds(&spec(Family::MinMax2PLambda, Some(r(1, 8))), MaxDistance).unwrap(),
            (Bound::Unbounded, Bound::Unbounded)
        );
        assert_eq!(
            closed_form_bounds(&spec(Family::RandEnds2P, Some(r(1, 4))), MaxDistance).unwrap(),
            (Bound::finite(4, 3), Bound::Unbounded)
        );
    }

    #[test]
    fn constant_phantom_bounds() {
        let g = |a| MechanismSpec::GenMedian(PhantomRule::Constant(a));
        let mu = Objective::MinUtility;
        assert_eq!(
            closed_form_bounds(&g(Location::frac(1, 4)), mu).unwrap().1,
            Bound::finite(5, 2)
        );
        assert_eq!(
            closed_form_bounds(&g(Location::frac(3, 4)), mu).unwrap().1,
            Bound::finite(5, 2)
        );
        assert_eq!(
            closed_form_bounds(&g(Location::HALF), mu).unwrap().1,
            Bound::finite(3, 2)
        );
        assert_eq!(
            closed_form_bounds(&g(Location::ZERO), mu).unwrap().1,
            Bound::Unbounded
        );
    }

    #[test]
    fn no_closed_form_for_control() {
        assert!(matches!(
            closed_form_bounds(&MechanismSpec::BrokenThird, Objective::MaxDistance),
            Err(Error::UnknownFamily(_))
        ));
    }
}

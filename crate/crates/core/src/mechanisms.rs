//! Deterministic mechanisms: the generalized median family and the
//! prediction-guided `MinMaxP` variants for one and two facilities.
//!
//! Apart from the generalized medians, every mechanism here reads only the
//! extreme reports `x_1` and `x_n` plus the prediction(s).

use std::fmt;

use crate::model::{truncate, Instance, Location, Placement};
use crate::{Error, Rational, Result};

/// Predicted optimal location of a single facility.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Prediction(pub Location);

impl Prediction {
    pub fn value(self) -> Location {
        self.0
    }

    /// Predictions at an end of the interval.
    pub fn is_extreme(self) -> bool {
        self.0 == Location::ZERO || self.0 == Location::ONE
    }
}

impl fmt::Display for Prediction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

/// Predicted locations of the left and right facility, stored `left <= right`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct PredictionPair {
    left: Prediction,
    right: Prediction,
}

impl PredictionPair {
    /// Reversed inputs are swapped.
    pub fn new(a: Location, b: Location) -> Self {
        PredictionPair {
            left: Prediction(a.min(b)),
            right: Prediction(a.max(b)),
        }
    }

    pub fn left(&self) -> Prediction {
        self.left
    }

    pub fn right(&self) -> Prediction {
        self.right
    }
}

impl fmt::Display for PredictionPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.left, self.right)
    }
}

/// Fixed phantom reports merged with the agents' reports.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct PhantomProfile(Vec<Location>);

impl PhantomProfile {
    pub fn new(phantoms: Vec<Location>) -> Self {
        PhantomProfile(phantoms)
    }

    /// `count` phantoms all at `at`.
    pub fn constant(at: Location, count: usize) -> Self {
        PhantomProfile(vec![at; count])
    }

    pub fn phantoms(&self) -> &[Location] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Element `z_i` with fewer than `ceil(p/2)` values strictly below it and at
/// most `floor(p/2)` strictly above. For even `p` this is the lower median.
pub fn median_of(values: &[Location]) -> Result<Location> {
    if values.is_empty() {
        return Err(Error::EmptyList);
    }
    let mut sorted = values.to_vec();
    sorted.sort();
    Ok(sorted[(sorted.len() - 1) / 2])
}

/// Median of the `n` reports merged with `n - 1` phantoms.
pub fn gen_median(instance: &Instance, phantoms: &PhantomProfile) -> Result<Placement> {
    let expected = instance.len() - 1;
    if phantoms.len() != expected {
        return Err(Error::PhantomCountMismatch {
            expected,
            got: phantoms.len(),
        });
    }
    let merged: Vec<Location> = instance
        .agents()
        .iter()
        .chain(phantoms.phantoms())
        .copied()
        .collect();
    median_of(&merged).map(Placement::single)
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Preset {
    Leftmost,
    Rightmost,
    Median,
    MidOrNearest,
}

impl Preset {
    pub const ALL: [Preset; 4] = [
        Preset::Leftmost,
        Preset::Rightmost,
        Preset::Median,
        Preset::MidOrNearest,
    ];

    /// Phantom profile realizing this preset for `n` agents.
    pub fn profile(self, n: usize) -> PhantomProfile {
        let count = n.saturating_sub(1);
        match self {
            Preset::Leftmost => PhantomProfile::constant(Location::ZERO, count),
            Preset::Rightmost => PhantomProfile::constant(Location::ONE, count),
            Preset::MidOrNearest => PhantomProfile::constant(Location::HALF, count),
            Preset::Median => {
                let zeros = (n / 2).min(count);
                let mut v = vec![Location::ZERO; zeros];
                v.resize(count, Location::ONE);
                PhantomProfile::new(v)
            }
        }
    }
}

pub fn preset(instance: &Instance, name: Preset) -> Placement {
    gen_median(instance, &name.profile(instance.len())).expect("preset profile has n - 1 phantoms")
}

fn clamp_to_reports(instance: &Instance, y: Location) -> Location {
    y.max(instance.leftmost()).min(instance.rightmost())
}

/// The prediction, clamped into `[x_1, x_n]`.
pub fn min_max_p(instance: &Instance, prediction: Prediction) -> Placement {
    Placement::single(clamp_to_reports(instance, prediction.value()))
}

fn check_gamma(gamma: Rational) -> Result<()> {
    if gamma < Rational::ZERO || gamma > Rational::HALF {
        Err(Error::InvalidGamma(gamma))
    } else {
        Ok(())
    }
}

/// `MinMaxP` after censoring the prediction into `[gamma, 1 - gamma]`.
pub fn min_max_p_gamma(
    instance: &Instance,
    prediction: Prediction,
    gamma: Rational,
) -> Result<Placement> {
    check_gamma(gamma)?;
    let lo = Location::new(gamma)?;
    let censored = truncate(prediction.value(), lo, lo.mirror())?;
    Ok(min_max_p(instance, Prediction(censored)))
}

/// One `MinMaxP` facility per prediction.
pub fn min_max_2p(instance: &Instance, predictions: PredictionPair) -> Placement {
    Placement::pair(
        clamp_to_reports(instance, predictions.left().value()),
        clamp_to_reports(instance, predictions.right().value()),
    )
}

fn check_lambda(lambda: Rational) -> Result<()> {
    if lambda < Rational::ZERO || lambda > Rational::new(1, 4) {
        Err(Error::InvalidLambda(lambda))
    } else {
        Ok(())
    }
}

/// `MinMax2P` with the left prediction censored into `[lambda, 1 - 3 lambda]`
/// and the right one into `[3 lambda, 1 - lambda]`.
pub fn min_max_2p_lambda(
    instance: &Instance,
    predictions: PredictionPair,
    lambda: Rational,
) -> Result<Placement> {
    check_lambda(lambda)?;
    let three = Rational::from_integer(3);
    let lam = Location::new(lambda)?;
    let lam3 = Location::new(three * lambda)?;
    let left = truncate(predictions.left().value(), lam, lam3.mirror())?;
    let right = truncate(predictions.right().value(), lam3, lam.mirror())?;
    // Censoring is monotone and both band ends move right, so the order holds.
    debug_assert!(left <= right);
    Ok(min_max_2p(instance, PredictionPair::new(left, right)))
}

/// Negative control: `x_1 + (x_n - x_1) / 3`, which is manipulable.
pub fn broken_third(instance: &Instance) -> Placement {
    let lo = instance.leftmost().value();
    let hi = instance.rightmost().value();
    let y = lo + (hi - lo) / Rational::from_integer(3);
    Placement::single(Location::new(y).expect("point between two locations"))
}

//! Witness instances showing that a phantom away from the "right" place
//! costs a constant factor.
//!
//! Without a prediction, a generalized median with a phantom at `a != 1/2`
//! loses `(1 + a') / (2 a')` in minimum utility, `a' = min(a, 1 - a)`. With a
//! non-extreme prediction `pi` and a phantom `rho != pi`, it is twice the
//! optimal maximum distance even though the prediction is correct.

use super::bounds::{ratio, Bound};
use super::spec::{Advice, MechanismSpec, PhantomRule};
use crate::mechanisms::{PhantomProfile, Prediction};
use crate::model::{Instance, Location, Objective};
use crate::{Error, Rational, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Counterexample {
    pub instance: Instance,
    pub phantoms: PhantomProfile,
    pub objective: Objective,
    /// The ratio the construction promises.
    pub ratio: Bound,
    pub case: &'static str,
}

impl Counterexample {
    /// The generalized median these phantoms define.
    pub fn mechanism(&self) -> MechanismSpec {
        MechanismSpec::GenMedian(PhantomRule::Explicit(self.phantoms.clone()))
    }

    /// Ratio obtained by actually running the mechanism on the instance.
    pub fn evaluate(&self) -> Bound {
        let spec = self.mechanism();
        let outcome = spec
            .apply(&self.instance, &Advice::None)
            .expect("profile sized for the instance");
        let opt = spec.optimum(&self.instance).value(self.objective);
        ratio(
            self.objective,
            opt,
            outcome.value(&self.instance, self.objective),
        )
    }

    fn mirror(self) -> Self {
        Counterexample {
            instance: self.instance.mirror(),
            phantoms: PhantomProfile::new(
                self.phantoms
                    .phantoms()
                    .iter()
                    .map(|p| p.mirror())
                    .collect(),
            ),
            ..self
        }
    }
}

fn repeat(at: Location, count: usize) -> impl Iterator<Item = Location> {
    std::iter::repeat_n(at, count)
}

fn build(
    agents: Vec<Location>,
    phantoms: Vec<Location>,
    objective: Objective,
    ratio: Bound,
    case: &'static str,
) -> Counterexample {
    Counterexample {
        instance: Instance::new(agents).expect("nonempty"),
        phantoms: PhantomProfile::new(phantoms),
        objective,
        ratio,
        case,
    }
}

/// Builds the witness for a generalized median whose first phantom is
/// `phantom` and whose remaining `n - 2` phantoms sit at 1/2 (no prediction)
/// or at the prediction.
pub fn phantom_counterexample(
    phantom: Location,
    prediction: Option<Prediction>,
    n: usize,
) -> Result<Counterexample> {
    if n < 2 {
        return Err(Error::InvalidCase(format!(
            "need at least two agents, got {n}"
        )));
    }
    match prediction {
        None => without_prediction(phantom, n),
        Some(p) => with_prediction(phantom, p.value(), n),
    }
}

fn without_prediction(a: Location, n: usize) -> Result<Counterexample> {
    if a == Location::HALF {
        return Err(Error::InvalidCase(
            "a phantom at 1/2 is the midpoint mechanism itself".into(),
        ));
    }
    if a > Location::HALF {
        return without_prediction(a.mirror(), n).map(Counterexample::mirror);
    }
    let av = a.value();
    let bound = (Rational::ONE + av)
        .checked_div(Rational::from_integer(2) * av)
        .map_or(Bound::Unbounded, Bound::Finite);
    let agents = repeat(a, n - 1).chain([Location::ONE]).collect();
    let phantoms = [a]
        .into_iter()
        .chain(repeat(Location::HALF, n - 2))
        .collect();
    Ok(build(
        agents,
        phantoms,
        Objective::MinUtility,
        bound,
        "agents at a and 1",
    ))
}

fn with_prediction(rho: Location, pi: Location, n: usize) -> Result<Counterexample> {
    if pi == Location::ZERO || pi == Location::ONE {
        return Err(Error::InvalidCase(format!("prediction {pi} is extreme")));
    }
    if rho == pi {
        return Err(Error::InvalidCase(format!(
            "phantom {rho} equals the prediction"
        )));
    }
    if pi > Location::HALF {
        return with_prediction(rho.mirror(), pi.mirror(), n).map(Counterexample::mirror);
    }
    let two = Rational::from_integer(2);
    let reflect = Location::new(two * pi.value() - rho.value());
    let phantoms: Vec<Location> = [rho].into_iter().chain(repeat(pi, n - 2)).collect();
    let (agents, case): (Vec<Location>, _) = if rho < pi {
        let far = reflect.expect("2pi - rho lies in (pi, 1] when rho < pi <= 1/2");
        (
            repeat(rho, n - 1).chain([far]).collect(),
            "phantom left of the prediction",
        )
    } else if let Ok(near) = reflect {
        (
            [near].into_iter().chain(repeat(rho, n - 1)).collect(),
            "phantom right of the prediction",
        )
    } else {
        let twice = Location::new(two * pi.value()).expect("2pi <= 1");
        (
            [Location::ZERO]
                .into_iter()
                .chain(repeat(twice, n - 1))
                .collect(),
            "phantom beyond twice the prediction",
        )
    };
    Ok(build(
        agents,
        phantoms,
        Objective::MaxDistance,
        Bound::Finite(two),
        case,
    ))
}

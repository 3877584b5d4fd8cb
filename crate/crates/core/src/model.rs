//! Domain types for facility location on `[0, 1]`, the two egalitarian
//! objectives, and optimal one- and two-facility solutions.
//!
//! An agent's cost is its distance to the nearest facility and its utility
//! is `1 - cost`. The maximum-distance objective is the largest cost over
//! all agents; the minimum-utility objective is one minus that.

use std::fmt;
use std::str::FromStr;

use crate::{Error, Rational, Result};

/// A point of the unit interval.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Location(Rational);

impl Location {
    pub const ZERO: Location = Location(Rational::ZERO);
    pub const HALF: Location = Location(Rational::HALF);
    pub const ONE: Location = Location(Rational::ONE);

    pub fn new(value: Rational) -> Result<Self> {
        if value < Rational::ZERO || value > Rational::ONE {
            Err(Error::OutOfRange(value))
        } else {
            Ok(Location(value))
        }
    }

    /// `numer / denom`; panics when the value is outside `[0, 1]`.
    pub fn frac(numer: i128, denom: i128) -> Self {
        Location::new(Rational::new(numer, denom)).expect("location outside [0, 1]")
    }

    pub fn value(self) -> Rational {
        self.0
    }

    pub fn distance(self, other: Location) -> Rational {
        (self.0 - other.0).abs()
    }

    /// Mirror image `1 - x`.
    pub fn mirror(self) -> Location {
        Location(Rational::ONE - self.0)
    }

    pub fn midpoint(self, other: Location) -> Location {
        Location((self.0 + other.0) * Rational::HALF)
    }
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Debug for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl FromStr for Location {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Location::new(s.parse()?)
    }
}

impl From<Location> for Rational {
    fn from(loc: Location) -> Rational {
        loc.0
    }
}

/// Clamps `x` into `[lo, hi]`.
pub fn truncate(x: Location, lo: Location, hi: Location) -> Result<Location> {
    if lo > hi {
        return Err(Error::InvalidBand {
            lo: lo.value(),
            hi: hi.value(),
        });
    }
    Ok(x.max(lo).min(hi))
}

/// A nonempty multiset of agent reports, kept sorted ascending.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Instance {
    agents: Vec<Location>,
}

impl Instance {
    pub fn new(mut agents: Vec<Location>) -> Result<Self> {
        if agents.is_empty() {
            return Err(Error::EmptyInstance);
        }
        agents.sort();
        Ok(Instance { agents })
    }

    /// Builds an instance from raw rationals, validating each against `[0, 1]`.
    pub fn from_values<I>(values: I) -> Result<Self>
    where
        I: IntoIterator<Item = Rational>,
    {
        let agents = values
            .into_iter()
            .map(Location::new)
            .collect::<Result<Vec<_>>>()?;
        Instance::new(agents)
    }

    pub fn agents(&self) -> &[Location] {
        &self.agents
    }

    pub fn len(&self) -> usize {
        self.agents.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Leftmost report `x_1`.
    pub fn leftmost(&self) -> Location {
        self.agents[0]
    }

    /// Rightmost report `x_n`.
    pub fn rightmost(&self) -> Location {
        self.agents[self.agents.len() - 1]
    }

    /// The instance with one copy of `from` replaced by `to`.
    pub fn with_report(&self, from: Location, to: Location) -> Option<Instance> {
        let idx = self.agents.iter().position(|&a| a == from)?;
        let mut agents = self.agents.clone();
        agents[idx] = to;
        agents.sort();
        Some(Instance { agents })
    }

    pub fn mirror(&self) -> Instance {
        let mut agents: Vec<Location> = self.agents.iter().map(|a| a.mirror()).collect();
        agents.sort();
        Instance { agents }
    }
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_locations(f, &self.agents)
    }
}

/// Sorts the given locations into an [`Instance`].
pub fn make_instance(locations: Vec<Location>) -> Result<Instance> {
    Instance::new(locations)
}

/// Facility locations chosen by a mechanism: one or two points, sorted.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Placement {
    facilities: Vec<Location>,
}

impl Placement {
    pub fn single(y: Location) -> Self {
        Placement {
            facilities: vec![y],
        }
    }

    /// Two facilities; they may coincide.
    pub fn pair(a: Location, b: Location) -> Self {
        Placement {
            facilities: vec![a.min(b), a.max(b)],
        }
    }

    pub fn facilities(&self) -> &[Location] {
        &self.facilities
    }
}

impl fmt::Display for Placement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_locations(f, &self.facilities)
    }
}

fn write_locations(f: &mut fmt::Formatter<'_>, locs: &[Location]) -> fmt::Result {
    f.write_str("[")?;
    for (i, loc) in locs.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{loc}")?;
    }
    f.write_str("]")
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Objective {
    MaxDistance,
    MinUtility,
}

impl Objective {
    pub const ALL: [Objective; 2] = [Objective::MaxDistance, Objective::MinUtility];

    pub fn name(self) -> &'static str {
        match self {
            Objective::MaxDistance => "max-distance",
            Objective::MinUtility => "min-utility",
        }
    }

    /// Converts a maximum distance into this objective's value.
    pub fn from_max_distance(self, max_distance: Rational) -> Rational {
        match self {
            Objective::MaxDistance => max_distance,
            Objective::MinUtility => Rational::ONE - max_distance,
        }
    }
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Objective {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "max-distance" | "maxdist" | "md" => Ok(Objective::MaxDistance),
            "min-utility" | "minutil" | "mu" => Ok(Objective::MinUtility),
            _ => Err(Error::Parse(format!(
                "unknown objective {s:?} (expected max-distance or min-utility)"
            ))),
        }
    }
}

/// Distance from `agent` to the nearest facility.
pub fn agent_cost(agent: Location, placement: &Placement) -> Rational {
    placement
        .facilities
        .iter()
        .map(|&y| agent.distance(y))
        .min()
        .expect("placement has at least one facility")
}

pub fn max_distance(instance: &Instance, placement: &Placement) -> Rational {
    instance
        .agents
        .iter()
        .map(|&a| agent_cost(a, placement))
        .max()
        .expect("instance is nonempty")
}

pub fn evaluate(instance: &Instance, placement: &Placement, objective: Objective) -> Rational {
    objective.from_max_distance(max_distance(instance, placement))
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OptimumReport {
    pub placement: Placement,
    pub opt_max_distance: Rational,
    pub opt_min_utility: Rational,
}

impl OptimumReport {
    fn new(placement: Placement, opt_max_distance: Rational) -> Self {
        OptimumReport {
            placement,
            opt_max_distance,
            opt_min_utility: Rational::ONE - opt_max_distance,
        }
    }

    pub fn value(&self, objective: Objective) -> Rational {
        objective.from_max_distance(self.opt_max_distance)
    }
}

/// Best single facility: the midpoint of the extreme reports.
pub fn opt_single(instance: &Instance) -> OptimumReport {
    let lo = instance.leftmost();
    let hi = instance.rightmost();
    OptimumReport::new(
        Placement::single(lo.midpoint(hi)),
        (hi.value() - lo.value()) * Rational::HALF,
    )
}

/// Best pair of facilities.
///
/// Some optimal solution serves a contiguous prefix of the sorted agents
/// from one facility and the suffix from the other, each facility sitting at
/// the midpoint of its group. Ties between splits go to the leftmost split.
pub fn opt_two(instance: &Instance) -> OptimumReport {
    let xs = instance.agents();
    let n = xs.len();
    if n == 1 {
        return OptimumReport::new(Placement::pair(xs[0], xs[0]), Rational::ZERO);
    }
    let (first, last) = (xs[0], xs[n - 1]);
    let (best_split, best) = (1..n)
        .map(|k| {
            let left = xs[k - 1].value() - first.value();
            let right = last.value() - xs[k].value();
            (k, left.max(right) * Rational::HALF)
        })
        .min_by(|a, b| a.1.cmp(&b.1).then(a.0.cmp(&b.0)))
        .expect("n >= 2");
    OptimumReport::new(
        Placement::pair(
            first.midpoint(xs[best_split - 1]),
            xs[best_split].midpoint(last),
        ),
        best,
    )
}

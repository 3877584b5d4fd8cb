//! Cross-checks against independent computations: integer brute force for
//! the optima, symmetry under reflection, lottery invariants, and the search
//! engine's refinement and scheduling properties.

use facloc::analysis::bounds::Bound;
use facloc::analysis::search::{measure_both, Mode, SearchConfig};
use facloc::analysis::spec::{Advice, AdviceKind, Family, MechanismSpec};
use facloc::lottery::{expected_value, rand_ends};
use facloc::mechanisms::{Prediction, PredictionPair};
use facloc::model::{opt_single, opt_two, Instance, Location, Objective, Placement};
use facloc::Rational;
use proptest::prelude::*;

/// All nondecreasing integer sequences of length 1..=max over 0..=top.
fn multisets(top: i64, max: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut stack: Vec<Vec<i64>> = (0..=top).map(|k| vec![k]).collect();
    while let Some(v) = stack.pop() {
        if v.len() < max {
            let last = *v.last().unwrap();
            for k in last..=top {
                let mut w = v.clone();
                w.push(k);
                stack.push(w);
            }
        }
        out.push(v);
    }
    out
}

fn instance_on(points: &[i64], denom: i128) -> Instance {
    Instance::new(
        points
            .iter()
            .map(|&k| Location::frac(k as i128, denom))
            .collect(),
    )
    .unwrap()
}

#[test]
fn optima_match_integer_brute_force() {
    // Agents on the 1/10 grid, facilities on the 1/100 grid, distances in
    // hundredths. Optimal facilities are midpoints of agent groups, so they
    // lie on the finer grid.
    for agents in multisets(10, 4) {
        let xs: Vec<i64> = agents.iter().map(|&k| 10 * k).collect();
        let single = (0..=100)
            .map(|f| xs.iter().map(|&x| (x - f).abs()).max().unwrap())
            .min()
            .unwrap();
        let mut pair = i64::MAX;
        for f in 0..=100 {
            for g in f..=100 {
                let worst = xs
                    .iter()
                    .map(|&x| (x - f).abs().min((x - g).abs()))
                    .max()
                    .unwrap();
                pair = pair.min(worst);
            }
        }
        let inst = instance_on(&agents, 10);
        let hundredths = |v: Rational| Rational::from_integer(100) * v;
        assert_eq!(
            hundredths(opt_single(&inst).opt_max_distance),
            Rational::from_integer(single as i128),
            "{inst}"
        );
        assert_eq!(
            hundredths(opt_two(&inst).opt_max_distance),
            Rational::from_integer(pair as i128),
            "{inst}"
        );
    }
}

#[test]
fn optimum_placements_attain_their_value() {
    for agents in multisets(12, 4) {
        let inst = instance_on(&agents, 12);
        for opt in [opt_single(&inst), opt_two(&inst)] {
            let got = facloc::model::max_distance(&inst, &opt.placement);
            assert_eq!(got, opt.opt_max_distance);
            assert_eq!(opt.opt_min_utility, Rational::ONE - got);
        }
    }
}

fn mirror_advice(a: &Advice) -> Advice {
    match a {
        Advice::None => Advice::None,
        Advice::Single(p) => Advice::Single(Prediction(p.value().mirror())),
        Advice::Pair(p) => Advice::Pair(PredictionPair::new(
            p.left().value().mirror(),
            p.right().value().mirror(),
        )),
    }
}

fn mirror_placement(p: &Placement) -> Placement {
    match p.facilities() {
        [a] => Placement::single(a.mirror()),
        [a, b] => Placement::pair(a.mirror(), b.mirror()),
        _ => unreachable!(),
    }
}

/// Mechanisms whose definition is symmetric under `x -> 1 - x`.
fn symmetric_mechanisms() -> Vec<MechanismSpec> {
    let half = Some(Rational::HALF);
    let quarter = Some(Rational::new(1, 4));
    vec![
        MechanismSpec::MinMaxP,
        MechanismSpec::MidOrNearest,
        MechanismSpec::new(Family::MinMaxPGamma, quarter).unwrap(),
        MechanismSpec::new(Family::LrmP, quarter).unwrap(),
        MechanismSpec::new(Family::LrmtP, half).unwrap(),
        MechanismSpec::MinMax2P,
        MechanismSpec::new(Family::MinMax2PLambda, Some(Rational::new(1, 8))).unwrap(),
        MechanismSpec::RandEnds,
        MechanismSpec::new(Family::RandEnds2P, quarter).unwrap(),
    ]
}

fn arb_location() -> impl Strategy<Value = Location> {
    (0i128..=60).prop_map(|k| Location::frac(k, 60))
}

proptest! {
    #[test]
    fn reflection_commutes_with_mechanisms(
        agents in prop::collection::vec(arb_location(), 1..6),
        p in arb_location(),
        q in arb_location(),
    ) {
        let inst = Instance::new(agents).unwrap();
        let mirrored = inst.mirror();
        for spec in symmetric_mechanisms() {
            let advice = match spec.advice_kind() {
                AdviceKind::None => Advice::None,
                AdviceKind::Single => Advice::Single(Prediction(p)),
                AdviceKind::Pair => Advice::Pair(PredictionPair::new(p, q)),
            };
            let direct = spec.apply(&inst, &advice).unwrap().to_lottery();
            let reflected = spec.apply(&mirrored, &mirror_advice(&advice)).unwrap().to_lottery();
            let mut a: Vec<_> = direct.outcomes().iter().map(|(pl, w)| (mirror_placement(pl), *w)).collect();
            let mut b = reflected.outcomes().to_vec();
            a.sort();
            b.sort();
            prop_assert_eq!(a, b, "{}", spec);
        }
    }

    #[test]
    fn lotteries_are_distributions_with_complementary_objectives(
        agents in prop::collection::vec(arb_location(), 1..6),
        p in arb_location(),
        q in arb_location(),
    ) {
        let inst = Instance::new(agents).unwrap();
        for spec in symmetric_mechanisms() {
            let advice = match spec.advice_kind() {
                AdviceKind::None => Advice::None,
                AdviceKind::Single => Advice::Single(Prediction(p)),
                AdviceKind::Pair => Advice::Pair(PredictionPair::new(p, q)),
            };
            let lot = spec.apply(&inst, &advice).unwrap().to_lottery();
            let total: Rational = lot.outcomes().iter().map(|(_, w)| *w).sum();
            prop_assert_eq!(total, Rational::ONE);
            prop_assert!(lot.outcomes().iter().all(|(pl, w)| *w > Rational::ZERO && pl.facilities().len() == spec.facilities()));
            let md = expected_value(&lot, &inst, Objective::MaxDistance);
            let mu = expected_value(&lot, &inst, Objective::MinUtility);
            prop_assert_eq!(md + mu, Rational::ONE);
            let opt = spec.optimum(&inst);
            prop_assert!(md >= opt.opt_max_distance);
        }
    }
}

#[test]
fn randends_expected_utility_when_agents_span_the_line() {
    // With agents at both ends the worst agent is always an end agent, and
    // the expectation is 1/2 + (1 - 2d)/6 + (1 - d)/3 = (3 - 5d)/3.
    for inner in multisets(20, 2) {
        let mut pts = vec![0];
        pts.extend(inner);
        pts.push(20);
        let inst = instance_on(&pts, 20);
        let d = opt_two(&inst).opt_max_distance;
        let ev = expected_value(&rand_ends(&inst), &inst, Objective::MinUtility);
        assert_eq!(
            ev,
            (Rational::from_integer(3) - Rational::from_integer(5) * d) / Rational::from_integer(3),
            "{inst}"
        );
    }
}

#[test]
fn finer_grids_never_lower_the_worst_case() {
    let coarse = SearchConfig::new(5, 3).unwrap();
    let fine = SearchConfig::new(10, 3).unwrap();
    for spec in [
        MechanismSpec::MidOrNearest,
        MechanismSpec::new(Family::MinMaxPGamma, Some(Rational::new(1, 4))).unwrap(),
        MechanismSpec::new(Family::LrmP, Some(Rational::new(1, 4))).unwrap(),
        MechanismSpec::RandEnds,
    ] {
        for mode in [Mode::Consistency, Mode::Robustness] {
            let a = measure_both(&spec, mode, &coarse);
            let b = measure_both(&spec, mode, &fine);
            for (a, b) in a.iter().zip(&b) {
                assert!(
                    a.measured <= b.measured,
                    "{spec} {} {mode}: {} > {}",
                    a.objective,
                    a.measured,
                    b.measured
                );
            }
        }
    }
}

#[test]
fn search_is_schedule_independent() {
    let config = SearchConfig::new(10, 3).unwrap();
    let spec = MechanismSpec::new(Family::MinMax2PLambda, Some(Rational::new(1, 8))).unwrap();
    let serial = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap()
        .install(|| measure_both(&spec, Mode::Robustness, &config));
    let parallel = rayon::ThreadPoolBuilder::new()
        .num_threads(4)
        .build()
        .unwrap()
        .install(|| measure_both(&spec, Mode::Robustness, &config));
    assert_eq!(serial, parallel);
}

#[test]
fn measured_never_below_one() {
    let config = SearchConfig::new(8, 2).unwrap();
    for spec in symmetric_mechanisms() {
        for rep in measure_both(&spec, Mode::Robustness, &config) {
            assert!(rep.measured >= Bound::one(), "{spec}");
        }
    }
}

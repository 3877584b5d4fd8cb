//! Consistency/robustness trade-off curves for the parameterized families.

use super::bounds::{closed_form_bounds, Bound};
use super::spec::{Family, MechanismSpec};
use crate::model::Objective;
use crate::{Error, Rational, Result};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SweepRow {
    pub param: Rational,
    pub consistency: Bound,
    pub robustness: Bound,
}

/// Closed-form bounds at each parameter, in ascending parameter order.
pub fn tradeoff_sweep(
    family: Family,
    params: &[Rational],
    objective: Objective,
) -> Result<Vec<SweepRow>> {
    if family.param_range().is_none() {
        return Err(Error::UnknownFamily(format!(
            "{} has no trade-off parameter",
            family.name()
        )));
    }
    let mut params = params.to_vec();
    params.sort();
    params.dedup();
    params
        .into_iter()
        .map(|param| {
            let spec = MechanismSpec::new(family, Some(param))?;
            let (consistency, robustness) = closed_form_bounds(&spec, objective)?;
            Ok(SweepRow {
                param,
                consistency,
                robustness,
            })
        })
        .collect()
}

/// `steps + 1` evenly spaced parameters covering the family's legal range.
pub fn default_params(family: Family, steps: u32) -> Result<Vec<Rational>> {
    let (lo, hi) = family.param_range().ok_or_else(|| {
        Error::UnknownFamily(format!("{} has no trade-off parameter", family.name()))
    })?;
    let steps = steps.max(1) as i128;
    Ok((0..=steps)
        .map(|k| lo + (hi - lo) * Rational::new(k, steps))
        .collect())
}

/// Consistency never improves and robustness never worsens along the curve.
pub fn is_tradeoff_monotone(rows: &[SweepRow]) -> bool {
    rows.windows(2)
        .all(|w| w[0].consistency <= w[1].consistency && w[0].robustness >= w[1].robustness)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::r;

    #[test]
    fn gamma_curve() {
        let rows = tradeoff_sweep(
            Family::MinMaxPGamma,
            &[r(1, 2), Rational::ZERO, r(1, 4)],
            Objective::MinUtility,
        )
        .unwrap();
        let got: Vec<_> = rows
            .iter()
            .map(|s| (s.param, s.consistency, s.robustness))
            .collect();
        assert_eq!(
            got,
            vec![
                (Rational::ZERO, Bound::one(), Bound::Unbounded),
                (r(1, 4), Bound::finite(7, 6), Bound::finite(5, 2)),
                (r(1, 2), Bound::finite(3, 2), Bound::finite(3, 2)),
            ]
        );
        assert!(is_tradeoff_monotone(&rows));
    }

    #[test]
    fn lrmp_half_max_distance() {
        let rows = tradeoff_sweep(Family::LrmP, &[r(1, 2)], Objective::MaxDistance).unwrap();
        assert_eq!(
            (rows[0].consistency, rows[0].robustness),
            (Bound::finite(3, 2), Bound::finite(3, 2))
        );
    }

    #[test]
    fn randends2p_theta_zero() {
        let rows =
            tradeoff_sweep(Family::RandEnds2P, &[Rational::ZERO], Objective::MinUtility).unwrap();
        assert_eq!(
            (rows[0].consistency, rows[0].robustness),
            (Bound::one(), Bound::finite(3, 2))
        );
    }

    #[test]
    fn default_grid_and_errors() {
        let p = default_params(Family::MinMax2PLambda, 20).unwrap();
        assert_eq!(p.len(), 21);
        assert_eq!(*p.last().unwrap(), r(1, 4));
        assert!(default_params(Family::RandEnds, 20).is_err());
        assert!(tradeoff_sweep(Family::LrmP, &[r(3, 4)], Objective::MinUtility).is_err());
    }

    #[test]
    fn every_min_utility_curve_is_monotone() {
        for family in [
            Family::MinMaxPGamma,
            Family::LrmP,
            Family::LrmtP,
            Family::RandEnds2P,
            Family::MinMax2PLambda,
        ] {
            let rows = tradeoff_sweep(
                family,
                &default_params(family, 20).unwrap(),
                Objective::MinUtility,
            )
            .unwrap();
            assert!(is_tradeoff_monotone(&rows), "{}", family.name());
        }
    }
}

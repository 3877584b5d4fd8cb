//! The published summary table, transcribed cell by cell, and a checker
//! that recomputes every formula cell from [`closed_form_bounds`].
//!
//! The transcription is deliberately independent of `bounds.rs`: each cell
//! is restated here as written in the table, so a typo on either side shows
//! up as a mismatch.

use std::fmt::Write as _;

use super::bounds::{closed_form_bounds, Bound};
use super::spec::{Family, MechanismSpec};
use crate::model::Objective;
use crate::Rational;

/// One entry of the table as published.
#[derive(Clone, Copy)]
pub enum Cell {
    Value(Bound),
    /// A function of the row parameter.
    Formula(fn(Rational) -> Bound),
    /// Non-numeric entry (e.g. `n-2`).
    Text(&'static str),
}

impl Cell {
    fn at(&self, param: Rational) -> Option<Bound> {
        match self {
            Cell::Value(b) => Some(*b),
            Cell::Formula(f) => Some(f(param)),
            Cell::Text(_) => None,
        }
    }
}

/// A row: four cells ordered max-distance (consistency, robustness), then
/// min-utility (consistency, robustness).
pub struct Row {
    pub group: &'static str,
    pub label: &'static str,
    /// `None` for cited lower bounds.
    pub family: Option<Family>,
    /// Parameters at which a parametric row is checked.
    pub samples: &'static [(i128, i128)],
    pub cells: [Cell; 4],
}

fn q(n: i128, d: i128) -> Rational {
    Rational::new(n, d)
}

fn over(num: Rational, den: Rational) -> Bound {
    num.checked_div(den).map_or(Bound::Unbounded, Bound::Finite)
}

const INF: Cell = Cell::Value(Bound::Unbounded);

const fn v(n: i128, d: i128) -> Cell {
    Cell::Value(Bound::Finite(Rational::new_reduced(n, d)))
}

const NONE: &[(i128, i128)] = &[];

pub fn rows() -> Vec<Row> {
    use Cell::Formula as F;
    vec![
        Row {
            group: "1 facility, deterministic",
            label: "lower bound",
            family: None,
            samples: NONE,
            cells: [v(1, 1), v(2, 1), v(1, 1), v(3, 2)],
        },
        Row {
            group: "1 facility, deterministic",
            label: "MinMaxP",
            family: Some(Family::MinMaxP),
            samples: NONE,
            cells: [v(1, 1), v(2, 1), v(1, 1), INF],
        },
        Row {
            group: "1 facility, deterministic",
            label: "MidOrNearest",
            family: Some(Family::MidOrNearest),
            samples: NONE,
            cells: [v(2, 1), v(2, 1), v(3, 2), v(3, 2)],
        },
        Row {
            group: "1 facility, deterministic",
            label: "MinMaxP_gamma, gamma > 0",
            family: Some(Family::MinMaxPGamma),
            samples: &[(1, 8), (1, 4), (3, 8), (1, 2)],
            cells: [
                v(2, 1),
                v(2, 1),
                F(|g| over(q(2, 1) - g, q(2, 1) - q(2, 1) * g)),
                F(|g| over(q(1, 1) + g, q(2, 1) * g)),
            ],
        },
        Row {
            group: "1 facility, deterministic",
            label: "MinMaxP_gamma, gamma = 1/2",
            family: Some(Family::MinMaxPGamma),
            samples: &[(1, 2)],
            cells: [v(2, 1), v(2, 1), v(3, 2), v(3, 2)],
        },
        Row {
            group: "1 facility, randomized",
            label: "lower bound",
            family: None,
            samples: NONE,
            cells: [v(1, 1), v(3, 2), v(1, 1), v(4, 3)],
        },
        Row {
            group: "1 facility, randomized",
            label: "LrmP",
            family: Some(Family::LrmP),
            samples: &[(0, 1), (1, 8), (1, 4), (3, 8), (1, 2)],
            cells: [
                F(|d| Bound::Finite(q(1, 1) + d)),
                F(|d| Bound::Finite(q(2, 1) - d)),
                F(|d| over(q(1, 1), q(1, 1) - d)),
                F(|d| over(q(1, 1), d)),
            ],
        },
        Row {
            group: "1 facility, randomized",
            label: "LrmP, delta = 1/2",
            family: Some(Family::LrmP),
            samples: &[(1, 2)],
            cells: [v(3, 2), v(3, 2), v(2, 1), v(2, 1)],
        },
        Row {
            group: "1 facility, randomized",
            label: "LrmtP",
            family: Some(Family::LrmtP),
            samples: &[(0, 1), (1, 8), (1, 4), (3, 8), (1, 2)],
            cells: [
                F(|d| Bound::Finite(q(1, 1) + q(2, 1) * d)),
                v(2, 1),
                F(|d| over(q(2, 1), q(2, 1) - d)),
                F(|d| over(q(2, 1), q(3, 1) * d)),
            ],
        },
        Row {
            group: "1 facility, randomized",
            label: "LrmtP, delta = 1/2",
            family: Some(Family::LrmtP),
            samples: &[(1, 2)],
            cells: [v(2, 1), v(2, 1), v(4, 3), v(4, 3)],
        },
        Row {
            group: "2 facilities, deterministic",
            label: "lower bound",
            family: None,
            samples: NONE,
            cells: [v(1, 1), Cell::Text("n-2"), v(1, 1), v(10, 9)],
        },
        Row {
            group: "2 facilities, deterministic",
            label: "MinMax2P",
            family: Some(Family::MinMax2P),
            samples: NONE,
            cells: [v(1, 1), INF, v(1, 1), v(3, 2)],
        },
        Row {
            group: "2 facilities, deterministic",
            label: "MinMax2P_lambda, lambda > 0",
            family: Some(Family::MinMax2PLambda),
            samples: &[(1, 16), (1, 8), (1, 4)],
            cells: [
                INF,
                INF,
                F(|l| over(q(2, 1) - l, q(2, 1) - q(2, 1) * l)),
                F(|l| over(q(3, 1) + q(2, 1) * l, q(2, 1) * (q(1, 1) + q(2, 1) * l))),
            ],
        },
        Row {
            group: "2 facilities, deterministic",
            label: "MinMax2P_lambda, lambda = 1/4",
            family: Some(Family::MinMax2PLambda),
            samples: &[(1, 4)],
            cells: [INF, INF, v(7, 6), v(7, 6)],
        },
        Row {
            group: "2 facilities, randomized",
            label: "lower bound",
            family: None,
            samples: NONE,
            cells: [v(1, 1), v(3, 2), v(1, 1), v(10, 9)],
        },
        Row {
            group: "2 facilities, randomized",
            label: "RandEnds2P, theta = 0",
            family: Some(Family::RandEnds2P),
            samples: &[(0, 1)],
            cells: [v(1, 1), INF, v(1, 1), v(3, 2)],
        },
        Row {
            group: "2 facilities, randomized",
            label: "RandEnds2P, theta < 1/2",
            family: Some(Family::RandEnds2P),
            samples: &[(0, 1), (1, 8), (1, 4), (3, 8)],
            cells: [
                F(|t| over(q(3, 1) + q(4, 1) * t, q(3, 1))),
                INF,
                F(|t| over(q(9, 1), q(9, 1) - q(4, 1) * t)),
                F(|t| over(q(9, 1), q(2, 1) * (q(3, 1) + t))),
            ],
        },
        Row {
            group: "2 facilities, randomized",
            label: "RandEnds2P, theta = 1/2",
            family: Some(Family::RandEnds2P),
            samples: &[(1, 2)],
            cells: [v(5, 3), v(5, 3), v(9, 7), v(9, 7)],
        },
    ]
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Status {
    Match,
    Mismatch,
    /// Prior-work lower bound; nothing to compute.
    Cited,
}

/// One row evaluated at one parameter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckedRow {
    pub group: &'static str,
    pub label: &'static str,
    pub param: Option<Rational>,
    pub stored: [Option<Bound>; 4],
    /// Text cells are carried verbatim.
    pub stored_text: [Option<&'static str>; 4],
    pub computed: Option<[Bound; 4]>,
    pub status: Status,
}

/// Recomputes every formula cell at every sample parameter.
pub fn check_table() -> Vec<CheckedRow> {
    let mut out = Vec::new();
    for row in rows() {
        let text = row.cells.map(|c| match c {
            Cell::Text(t) => Some(t),
            _ => None,
        });
        let Some(family) = row.family else {
            out.push(CheckedRow {
                group: row.group,
                label: row.label,
                param: None,
                stored: row.cells.map(|c| c.at(Rational::ZERO)),
                stored_text: text,
                computed: None,
                status: Status::Cited,
            });
            continue;
        };
        let params: Vec<Option<Rational>> = if row.samples.is_empty() {
            vec![None]
        } else {
            row.samples.iter().map(|&(n, d)| Some(q(n, d))).collect()
        };
        for param in params {
            let stored = row.cells.map(|c| c.at(param.unwrap_or(Rational::ZERO)));
            let computed = MechanismSpec::new(family, param).ok().and_then(|spec| {
                let (a, b) = closed_form_bounds(&spec, Objective::MaxDistance).ok()?;
                let (c, d) = closed_form_bounds(&spec, Objective::MinUtility).ok()?;
                Some([a, b, c, d])
            });
            let status = match computed {
                Some(c) if c.iter().zip(&stored).all(|(c, s)| Some(*c) == *s) => Status::Match,
                _ => Status::Mismatch,
            };
            out.push(CheckedRow {
                group: row.group,
                label: row.label,
                param,
                stored,
                stored_text: text,
                computed,
                status,
            });
        }
    }
    out
}

fn cell_text(b: Option<Bound>, text: Option<&str>) -> String {
    match (b, text) {
        (Some(b), _) => b.render(),
        (None, Some(t)) => t.to_string(),
        (None, None) => "-".to_string(),
    }
}

/// Plain-text rendering, one line per checked row.
pub fn render(rows: &[CheckedRow]) -> String {
    let mut s = String::new();
    let mut group = "";
    for row in rows {
        if row.group != group {
            group = row.group;
            let _ = writeln!(s, "== {group} ==  [max-distance consistency, robustness | min-utility consistency, robustness]");
        }
        let label = match row.param {
            Some(p) => format!("{} @ {p}", row.label),
            None => row.label.to_string(),
        };
        let cells = match row.computed {
            Some(c) => c.map(|b| b.render()),
            None => [0, 1, 2, 3].map(|i| cell_text(row.stored[i], row.stored_text[i])),
        };
        let status = match row.status {
            Status::Match => "ok".to_string(),
            Status::Cited => "cited, not verified".to_string(),
            Status::Mismatch => format!(
                "MISMATCH (table: {})",
                [0, 1, 2, 3]
                    .map(|i| cell_text(row.stored[i], row.stored_text[i]))
                    .join(", ")
            ),
        };
        let _ = writeln!(
            s,
            "{label:<38} {}, {} | {}, {}  {status}",
            cells[0], cells[1], cells[2], cells[3]
        );
    }
    s
}

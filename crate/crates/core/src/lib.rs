//! Strategy-proof facility location on `[0, 1]` with predictions.
//!
//! Everything is computed with exact rationals: mechanisms, optimal
//! placements, expected costs of lotteries and approximation ratios. The
//! [`analysis`] module measures worst-case ratios by exhaustive grid search
//! and checks them against closed-form bounds.

pub mod analysis;
pub mod cli;
pub mod error;
pub mod lottery;
pub mod mechanisms;
pub mod model;
pub mod rational;

pub use error::{Error, Result};
pub use rational::Rational;

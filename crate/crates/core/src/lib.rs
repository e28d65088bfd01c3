pub mod error;
pub mod model;
pub mod oracle;
pub mod rational;

pub use error::{Error, Result};
pub use rational::Rational;
pub mod exact_dp;
pub mod identical;
pub mod search;
pub mod covering;
pub mod lp_flow;
pub mod ptas;
pub mod bench;
pub mod cli;

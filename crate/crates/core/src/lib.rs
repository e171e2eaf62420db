pub mod classconst;
pub mod cli;
pub mod config;
pub mod domain;
pub mod error;
pub mod generic;
pub mod means;
pub mod oracle;
pub mod output;
pub mod power;
pub mod quadrature;
pub mod scalar;
pub mod verify;

pub use config::SearchConfig;
pub use domain::{Case, ExponentPair, ExtReal, GammaDomain, Interval};
pub use error::{Error, Result};

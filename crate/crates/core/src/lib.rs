pub mod alcove;
pub mod cli;
pub mod error;
pub mod klpoly;
pub mod loewy;
pub mod oracle;
pub mod periodic;
pub mod rootsys;
pub mod weight;

pub use error::{Error, Result};
pub use rootsys::{ParabolicDatum, RootDatum};
pub use weight::Weight;

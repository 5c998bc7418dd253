pub mod causal;
pub mod cli;
pub mod corpus;
pub mod embed_match;
pub mod extraction;
pub mod error;
pub mod lexicon;
pub mod mixture;
pub mod report;
pub mod rng;
pub mod stats;

pub use error::{Error, Result};

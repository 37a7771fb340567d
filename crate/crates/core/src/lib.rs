pub mod cli;
pub mod error;
pub mod expansions;
pub mod hyperseries;
pub mod jet;
pub mod modular;
pub mod numerics;
pub mod qexpansion;
pub mod solver;

pub use error::{Error, Result};

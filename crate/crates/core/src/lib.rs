//! Exact signature cocycles on symplectic groups.

pub mod acceptance;
pub mod bundle;
pub mod circle;
pub mod congruence;
pub mod conventions;
pub mod error;
pub mod forms;
pub mod io;
pub mod maslov;
pub mod matrix;
pub mod meyer;
pub mod rational;
pub mod rng;
pub mod symplectic;

pub use error::{Error, Result};
pub use matrix::Mat;
pub use rational::Rat;
pub use symplectic::SpMat;

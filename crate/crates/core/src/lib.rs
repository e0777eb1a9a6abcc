pub mod error;
pub mod poly;
pub mod ratfunc;
pub mod rational;
pub mod registry;

pub use error::{Error, Result};
pub use poly::Poly;
pub use ratfunc::RatFunc;
pub use rational::Rational;
pub mod cycle;
pub mod lincomb;
pub mod linalg;
pub mod dga;
pub mod bar;
pub mod expr;
pub mod goncharov;
pub mod dsl;
pub mod suites;

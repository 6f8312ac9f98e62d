pub mod determinantal;
pub mod error;
pub mod frobenius;
pub mod ideals;
pub mod poly;
pub mod random;
pub mod rational;
pub mod selfcheck;
pub mod testideal;

pub use error::{Error, Result};

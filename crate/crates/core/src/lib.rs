pub mod chartab;
pub mod ekrverify;
pub mod error;
pub mod graphs;
pub mod linalg;
pub mod permgroup;
pub mod scheme;

pub use error::{Error, Result};

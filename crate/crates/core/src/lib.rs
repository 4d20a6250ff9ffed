//! Multivariate semisimple codes over finite chain rings.

pub mod ambient;
pub mod cli;
pub mod codes;
pub mod decompose;
pub mod distance;
pub mod duality;
pub mod error;
pub mod factorize;
pub mod hensel;
pub mod kerdock;
pub mod linalg;
pub mod oracle;
pub mod poly;
pub mod ring;
pub mod text;

pub use error::{Error, Result};

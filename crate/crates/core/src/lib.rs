pub mod cli;
pub mod error;
pub mod identities;
pub mod index;
pub mod num;
pub mod posets;
pub mod sums;
pub mod values;
pub mod words;

pub use error::{MzvError, Result};

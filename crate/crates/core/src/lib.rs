pub mod algebra;
pub mod covers;
pub mod error;
pub mod lang;
pub mod pipeline;
pub mod rating;
pub mod saturation;

pub use error::{Error, Result};

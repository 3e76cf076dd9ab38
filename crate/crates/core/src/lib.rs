pub mod cech;
pub mod cli;
pub mod error;
pub mod factor;
pub mod fgab;
pub mod simplicial;
pub mod tower;
pub mod witnesses;
pub mod zlinalg;

pub use error::{Error, Result};

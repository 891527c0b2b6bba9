//! File formats, the end-to-end pipeline and the `nucleus` command-line tool
//! on top of `nucleus-core`.

pub mod edgelist;
pub mod error;
pub mod export;
pub mod pipeline;
pub mod random;
pub mod validate;

pub use error::Error;

pub mod chartab;
pub mod cli;
pub mod diagram;
pub mod error;
pub mod group;
pub mod groupspec;
pub mod io;
pub mod mckay;
pub mod quat;
pub mod survey;
pub mod verify;

pub use error::{Error, Result};

pub mod abelian;
pub mod cli;
pub mod equivalence;
pub mod error;
pub mod functor_groupoid;
pub mod group;
pub mod cosheaf;
pub mod costack;
pub mod diagrams;
pub mod groupoid;
pub mod io;
pub mod presentation;
pub mod space;
mod util;

pub use error::{Error, Result};

//! Quantale-valued order theory on finite instances.
//!
//! The crate is layered bottom-up: [`quantale`] provides the truth values,
//! [`qorder`] and [`distributor`] the Q-ordered sets, [`fuzzy`] the lower and
//! upper sets over them, [`ideal`] the three ideal classes, [`completion`]
//! the ideal spaces and saturation checks, and [`scott`] the Scott
//! Q-(co)topologies. [`suites`] bundles the named checks run by the CLI.

pub mod completion;
pub mod distributor;
pub mod error;
pub mod exec;
pub mod fuzzy;
pub mod ideal;
pub mod io;
pub mod qorder;
pub mod quantale;
pub mod random;
pub mod scott;
pub mod suites;

pub use error::{Budget, Error, QuantaleError, Result};

#![cfg_attr(not(test), no_std)]
extern crate alloc;

pub mod dualside;
pub mod error;
pub mod hecke;
pub mod iwahori;
pub mod lattice;
pub mod rootdata;
pub mod scalar;
pub mod testfn;

pub use error::{Error, Result};

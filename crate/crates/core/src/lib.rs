//! Exact fusion rings over the golden integers, the rings of the
//! golden-dimension classification, and a bounded word-rewriting engine for
//! quotients of free products of Fibonacci categories.
#![no_std]

extern crate alloc;

pub mod classify;
pub mod constructors;
pub mod error;
pub mod quadint;
pub mod ring;
pub mod words;

pub use error::{Error, Result};
pub use quadint::QuadInt;
pub use ring::{FusionRing, ObjectVec};

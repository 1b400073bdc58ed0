//! Finite posets as finite T0-spaces.
//!
//! A finite T0-space is the same thing as a finite poset: `x <= y` when `x`
//! lies in every open set containing `y`. This crate works on that side of
//! the correspondence and provides
//!
//! * posets, monotone maps, products, unions, joins ([`poset`], [`iso`]);
//! * beat points, cores and contractibility ([`homotopy`]);
//! * standard families, cones and suspensions ([`constructions`]);
//! * embeddings into Boolean lattices and the exact 2-dimension, the least
//!   number of Sierpinski factors a poset embeds into ([`dimension`]);
//! * posets of every admissible 2-dimension ([`family`]);
//! * exhaustive and random generation plus census checks ([`census`]).
//!
//! The crate is `no_std` and only needs `alloc`.
//!
//! ```
//! use posetdim_core::{constructions::chain, dimension::two_dimension};
//!
//! let cert = two_dimension(&chain(5)).unwrap();
//! assert_eq!(cert.value, 4);
//! assert!(cert.witness.verify());
//! ```

#![no_std]

extern crate alloc;

pub mod census;
pub mod constructions;
pub mod dimension;
mod error;
pub mod family;
pub mod homotopy;
pub mod iso;
pub mod poset;

pub use error::{Error, Result};
pub use poset::{MonotoneMap, Poset};

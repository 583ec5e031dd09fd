//! Exact computations with finite group actions on integral lattices.

pub mod action;
pub mod binary;
pub mod catalog;
pub mod degeneration;
pub mod enumerate;
pub mod error;
pub mod folding;
pub mod group;
pub mod lattice;
pub mod matrix;
pub mod normal_form;
pub mod poly;
pub mod roots;
pub mod walls;
pub mod wedge;

pub use error::{Error, ErrorKind, Result};

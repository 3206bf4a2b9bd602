//! Brute-force oracles shared by the integration tests. Nothing here calls
//! the search routines it is meant to check.
#![allow(dead_code)]

pub mod congruence;
pub mod cpp;
pub mod golden;
pub mod lattices;
pub mod ramsey;

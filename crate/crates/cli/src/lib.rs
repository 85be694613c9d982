//! Structure file format, corpus generation, counterexample search and
//! report emission around the homology engine.

pub mod corpus;
pub mod format;
pub mod search;

//! Exact Casson-Walker invariants of regular cyclic covering pairs described
//! by pairwise Dehn surgery, with the supporting computer algebra: Dedekind
//! sums, symmetrized Alexander polynomials and their lifts to branched cyclic
//! covers, Seifert matrices, and surgery-slope arithmetic.

pub mod casson;
pub mod cli;
pub mod intpoly;
pub mod knotdata;
pub mod rational;
pub mod slopes;
pub mod sympoly;

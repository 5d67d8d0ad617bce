//! Generalized discriminants, Jacobson stratifications and fiber analysis for
//! finite algebras over polynomial and Laurent coordinate rings, with rank-1
//! Iwahori–Hecke algebras as the principal application.

pub mod algebra;
pub mod fiber;
pub mod hecke;
pub mod poly;
pub mod samples;
pub mod towers;

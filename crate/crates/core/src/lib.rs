//! Exact algebra for proper surgery theory.

pub mod chains;
pub mod coefficients;
pub mod corpus;
pub mod duality_verifier;
pub mod endtowers;
pub mod selftest;
pub mod simplicial;
pub mod torsion;
pub mod tree_modules;
